//! Experiment configuration: a flat TOML document of `key = value` lines.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::cheby::ChebyParams;
use crate::engine::{MethodKind, StopRule};
use crate::error::{Error, Result};
use crate::graphs::{ScenarioConfig, ScenarioKind};
use crate::weights::WeightKind;

/// Parameters attached to one table cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParamCell {
    /// Plain averaging has no parameters.
    None,
    /// Resolved per graph from the spectrum of its weight matrix.
    Optimal,
    /// A fixed Chebyshev interval.
    Interval(ChebyParams),
    /// Fixed-gain `beta = 2 / (1 + sqrt(1 - lambda_M^2))` for a guessed `lambda_M`.
    GainFrom(f64),
}

/// One row of a result table before tolerances are expanded.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub method: MethodKind,
    pub weights: WeightKind,
    pub params: ParamCell,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub n_graphs: usize,
    pub n_inits: usize,
    pub n_nodes: usize,
    pub side: f64,
    pub radius: f64,
    pub scenario: ScenarioKind,
    pub failure_prob: f64,
    pub add_prob: f64,
    pub step_size: f64,
    pub weights: Vec<WeightKind>,
    /// Methods run with parameters tuned to each graph.
    pub methods: Vec<MethodKind>,
    /// Methods run over the parameter grid: `cheby` on every valid
    /// `(lambda_m, lambda_M)` pair, `fixedgain` once per `lambda_M`.
    pub grid_methods: Vec<MethodKind>,
    pub lambda_m: Vec<f64>,
    #[serde(rename = "lambda_M")]
    pub lambda_max: Vec<f64>,
    /// Sorted in descending order.
    pub tolerances: Vec<f64>,
    pub max_rounds: usize,
    pub stop_rule: StopRule,
    pub seed: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        let scen = ScenarioConfig::default();
        Self {
            n_graphs: 10,
            n_inits: 10,
            n_nodes: 30,
            side: scen.side,
            radius: scen.radius,
            scenario: ScenarioKind::Fixed,
            failure_prob: scen.failure_prob,
            add_prob: scen.add_prob,
            step_size: scen.step_size,
            weights: vec![WeightKind::LocalDegree],
            methods: vec![MethodKind::Chebyshev],
            grid_methods: Vec::new(),
            lambda_m: Vec::new(),
            lambda_max: Vec::new(),
            tolerances: vec![1e-3],
            max_rounds: 3000,
            stop_rule: StopRule::Error,
            seed: 0,
        }
    }
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serialises")
    }

    /// Scenario parameters for trials of this experiment.
    pub fn scenario_config(&self) -> ScenarioConfig {
        ScenarioConfig {
            kind: self.scenario,
            failure_prob: self.failure_prob,
            add_prob: self.add_prob,
            step_size: self.step_size,
            side: self.side,
            radius: self.radius,
            seed: self.seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.n_graphs == 0 || self.n_inits == 0 || self.max_rounds == 0 {
            return bad("n_graphs, n_inits and max_rounds must be at least 1".into());
        }
        if self.n_nodes < 2 {
            return bad(format!("n_nodes must be at least 2, got {}", self.n_nodes));
        }
        self.scenario_config().validate()?;
        if self.weights.is_empty() {
            return bad("at least one weight kind is required".into());
        }
        if self.weights.contains(&WeightKind::Custom) {
            return bad("custom weights cannot be used in experiments".into());
        }
        if self.methods.is_empty() && self.grid_methods.is_empty() {
            return bad("at least one method is required".into());
        }
        if self.tolerances.is_empty() {
            return bad("at least one tolerance is required".into());
        }
        if self.tolerances.iter().any(|t| !(*t > 0.0 && t.is_finite())) {
            return bad(format!("tolerances must be positive, got {:?}", self.tolerances));
        }
        if self.tolerances.windows(2).any(|w| w[0] <= w[1]) {
            return bad(format!(
                "tolerances must be strictly descending, got {:?}",
                self.tolerances
            ));
        }
        for m in &self.grid_methods {
            if !matches!(m, MethodKind::Chebyshev | MethodKind::FixedGain) {
                return bad(format!("{m} has no parameter grid"));
            }
        }
        if self.grid_methods.contains(&MethodKind::Chebyshev)
            && (self.lambda_m.is_empty() || self.lambda_max.is_empty())
        {
            return bad("a cheby grid needs both lambda_m and lambda_M axes".into());
        }
        if self.grid_methods.contains(&MethodKind::FixedGain) && self.lambda_max.is_empty() {
            return bad("a fixedgain grid needs the lambda_M axis".into());
        }
        if self.lambda_max.iter().any(|v| !(v.abs() < 1.0)) || self.lambda_m.iter().any(|v| !(v.abs() < 1.0)) {
            return bad("grid values must lie in (-1, 1)".into());
        }
        if self.scenario != ScenarioKind::Fixed {
            let mut all = self.methods.iter().chain(&self.grid_methods);
            if all.any(|m| *m == MethodKind::Newton2) {
                return bad("newton2 needs a fixed topology".into());
            }
            if self.weights.contains(&WeightKind::NonSymmetric) {
                return bad("switching topologies need symmetric weights".into());
            }
        }
        Ok(())
    }

    /// Table rows in output order: for each weight kind, the tuned methods,
    /// then the grid methods.
    pub fn cells(&self) -> Vec<Cell> {
        let mut cells = Vec::new();
        for &weights in &self.weights {
            for &method in &self.methods {
                let params = match method {
                    MethodKind::Power => ParamCell::None,
                    _ => ParamCell::Optimal,
                };
                cells.push(Cell {
                    method,
                    weights,
                    params,
                });
            }
            for &method in &self.grid_methods {
                match method {
                    MethodKind::Chebyshev => cells.extend(
                        parameter_grid(&self.lambda_m, &self.lambda_max)
                            .into_iter()
                            .map(|p| Cell {
                                method,
                                weights,
                                params: ParamCell::Interval(p),
                            }),
                    ),
                    MethodKind::FixedGain => cells.extend(self.lambda_max.iter().map(|&l| Cell {
                        method,
                        weights,
                        params: ParamCell::GainFrom(l),
                    })),
                    _ => {}
                }
            }
        }
        cells
    }
}

/// Every valid `(lambda_m, lambda_M)` pair, `lambda_m` varying slowest.
pub fn parameter_grid(lambda_m: &[f64], lambda_max: &[f64]) -> Vec<ChebyParams> {
    lambda_m
        .iter()
        .flat_map(|&lo| lambda_max.iter().filter_map(move |&hi| ChebyParams::new(lo, hi).ok()))
        .collect()
}
