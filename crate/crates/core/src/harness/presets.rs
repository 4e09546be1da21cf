//! Shipped experiment presets, one per reproduced table.

use crate::error::{Error, Result};

use super::config::ExperimentConfig;

const TABLE1: &str = include_str!("../../presets/table1.toml");
const TABLE2: &str = include_str!("../../presets/table2.toml");
const TABLE3_LINKFAIL: &str = include_str!("../../presets/table3_linkfail.toml");
const TABLE3_MOTION: &str = include_str!("../../presets/table3_motion.toml");
const TABLE3_RANDOM: &str = include_str!("../../presets/table3_random.toml");
const TABLE4: &str = include_str!("../../presets/table4.toml");
const TABLE5: &str = include_str!("../../presets/table5.toml");
const TABLE6: &str = include_str!("../../presets/table6.toml");

pub const PRESET_NAMES: [&str; 6] = ["table1", "table2", "table3", "table4", "table5", "table6"];

/// The configs of a preset, each with the file stem its CSV is written to.
pub fn preset(name: &str) -> Result<Vec<(String, ExperimentConfig)>> {
    let sources: &[(&str, &str)] = match name {
        "table1" => &[("table1", TABLE1)],
        "table2" => &[("table2", TABLE2)],
        "table3" => &[
            ("table3_linkfail", TABLE3_LINKFAIL),
            ("table3_motion", TABLE3_MOTION),
            ("table3_random", TABLE3_RANDOM),
        ],
        "table4" => &[("table4", TABLE4)],
        "table5" => &[("table5", TABLE5)],
        "table6" => &[("table6", TABLE6)],
        other => {
            return Err(Error::Config(format!(
                "unknown preset {other:?}, expected one of {}",
                PRESET_NAMES.join(", ")
            )))
        }
    };
    sources
        .iter()
        .map(|(stem, text)| Ok((stem.to_string(), ExperimentConfig::from_toml(text)?)))
        .collect()
}
