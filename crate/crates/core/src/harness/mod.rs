//! Experiment configuration, Monte Carlo runs and CSV output.

pub mod config;
pub mod experiment;
pub mod output;
pub mod presets;

pub use config::{parameter_grid, Cell, ExperimentConfig, ParamCell};
pub use experiment::{
    aggregate, experiment_graph, experiment_x0, initial_state, mean_for, run_experiment, run_trials, trial_rng,
    CellOutcome, ResultRow, ResultTable, TrialOutcome,
};
pub use output::{emit_csv, emit_trace_plotdata, write_table};
pub use presets::{preset, PRESET_NAMES};
