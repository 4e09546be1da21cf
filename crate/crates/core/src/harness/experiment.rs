//! Monte Carlo orchestration: graphs x initial states x table cells.

use log::{debug, warn};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::engine::{run, MatrixSource, MethodKind, MethodSpec, RunOptions, SwitchingWeights};
use crate::error::Result;
use crate::graphs::{random_geometric_with, Graph, Scenario, ScenarioKind, DEFAULT_RETRY_BUDGET};
use crate::spectral::{eigenvalues, fixed_gain_beta, Spectrum};
use crate::weights::{WeightKind, WeightMatrix};

use super::config::{Cell, ExperimentConfig, ParamCell};

const STREAM_GRAPH: u64 = 1 << 60;
const STREAM_INIT: u64 = 2 << 60;
const STREAM_SCENARIO: u64 = 3 << 60;

/// Deterministic RNG for one purpose of one trial. Streams never overlap for
/// fewer than `2^30` graphs and inits.
pub fn trial_rng(seed: u64, purpose: u64, graph: usize, init: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(purpose | (graph as u64) << 30 | init as u64);
    rng
}

/// Connected random geometric graph number `graph` of an experiment.
pub fn experiment_graph(cfg: &ExperimentConfig, graph: usize) -> Result<Graph> {
    let mut rng = trial_rng(cfg.seed, STREAM_GRAPH, graph, 0);
    random_geometric_with(cfg.n_nodes, cfg.side, cfg.radius, &mut rng, DEFAULT_RETRY_BUDGET)
}

/// Initial state number `init` for graph `graph`, uniform in `(0, 1)^N`.
pub fn experiment_x0(cfg: &ExperimentConfig, graph: usize, init: usize) -> Vec<f64> {
    initial_state(cfg.seed, cfg.n_nodes, graph, init)
}

/// `n` values uniform in `(0, 1)` from the init stream of `(graph, init)`.
pub fn initial_state(seed: u64, n: usize, graph: usize, init: usize) -> Vec<f64> {
    let mut rng = trial_rng(seed, STREAM_INIT, graph, init);
    (0..n).map(|_| rng.random::<f64>()).collect()
}

/// Result of one cell in one trial.
#[derive(Debug, Clone, PartialEq)]
pub enum CellOutcome {
    Ran {
        /// Round at which each tolerance was met, in config order.
        rounds: Vec<Option<usize>>,
        diverged: bool,
    },
    Failed(String),
}

/// All cells of one (graph, init) pair.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialOutcome {
    pub graph: usize,
    pub init: usize,
    /// `Err` when the trial could not start, e.g. graph generation failed.
    pub cells: std::result::Result<Vec<CellOutcome>, String>,
}

/// One output row: a cell at one tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub cell: Cell,
    pub tol: f64,
    /// Mean over trials that met the tolerance without diverging.
    pub mean_rounds: Option<f64>,
    pub n_reached: usize,
    pub n_diverged: usize,
    /// Trials that ran this cell, including diverged and unfinished ones.
    pub n_trials: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultTable {
    pub rows: Vec<ResultRow>,
    pub max_rounds: usize,
    /// Cell runs that failed before producing a trace.
    pub n_failed: usize,
}

impl ResultTable {
    pub fn empty(max_rounds: usize) -> Self {
        Self {
            rows: Vec::new(),
            max_rounds,
            n_failed: 0,
        }
    }

    pub fn find(&self, pred: impl Fn(&ResultRow) -> bool) -> Option<&ResultRow> {
        self.rows.iter().find(|r| pred(r))
    }
}

struct GraphSetup {
    graph: Graph,
    matrices: Vec<Result<(WeightMatrix, Spectrum)>>,
}

fn setup_graph(cfg: &ExperimentConfig, index: usize) -> Result<GraphSetup> {
    let graph = experiment_graph(cfg, index)?;
    let matrices = cfg
        .weights
        .iter()
        .map(|&kind| {
            let w = WeightMatrix::for_graph(&graph, kind)?;
            let s = eigenvalues(&w)?;
            Ok((w, s))
        })
        .collect();
    Ok(GraphSetup { graph, matrices })
}

fn resolve(cell: &Cell, spectrum: &Spectrum) -> Result<MethodSpec> {
    match cell.params {
        ParamCell::None => Ok(MethodSpec::Power),
        ParamCell::Optimal => MethodSpec::optimal(cell.method, spectrum),
        ParamCell::Interval(p) => Ok(MethodSpec::Chebyshev(p)),
        ParamCell::GainFrom(l) => Ok(MethodSpec::FixedGain {
            beta: fixed_gain_beta(l)?,
        }),
    }
}

fn run_cell(
    cfg: &ExperimentConfig,
    setup: &GraphSetup,
    cell: &Cell,
    x0: &[f64],
    graph: usize,
    init: usize,
    opts: &RunOptions,
) -> Result<CellOutcome> {
    let k = cfg
        .weights
        .iter()
        .position(|w| *w == cell.weights)
        .expect("cell weights come from the config");
    let (w, s) = match &setup.matrices[k] {
        Ok(pair) => pair,
        Err(e) => return Err(crate::error::Error::Config(e.to_string())),
    };
    let method = resolve(cell, s)?;
    let mut fixed;
    let mut switching;
    let source: &mut dyn MatrixSource = if cfg.scenario == ScenarioKind::Fixed {
        fixed = w.clone();
        &mut fixed
    } else {
        // the same seed for every cell, so all methods see the same topology sequence
        let rng = trial_rng(cfg.seed, STREAM_SCENARIO, graph, init);
        let scenario = Scenario::with_rng(setup.graph.clone(), cfg.scenario_config(), rng)?;
        switching = SwitchingWeights::new(scenario, cell.weights)?;
        &mut switching
    };
    let trace = run(&method, source, x0, opts)?;
    Ok(CellOutcome::Ran {
        rounds: trace.rounds_to_tol.iter().map(|(_, r)| *r).collect(),
        diverged: trace.diverged,
    })
}

/// Runs every trial. Output is ordered by `(graph, init)` regardless of
/// scheduling.
pub fn run_trials(cfg: &ExperimentConfig) -> Result<Vec<TrialOutcome>> {
    cfg.validate()?;
    let cells = cfg.cells();
    let opts = RunOptions::with_tolerances(cfg.tolerances.clone(), cfg.max_rounds)
        .stop_rule(cfg.stop_rule)
        .state_budget(0);
    let setups: Vec<Result<GraphSetup>> = (0..cfg.n_graphs).into_par_iter().map(|g| setup_graph(cfg, g)).collect();
    let pairs: Vec<(usize, usize)> = (0..cfg.n_graphs)
        .flat_map(|g| (0..cfg.n_inits).map(move |k| (g, k)))
        .collect();
    let outcomes = pairs
        .par_iter()
        .map(|&(graph, init)| {
            let setup = match &setups[graph] {
                Ok(s) => s,
                Err(e) => {
                    warn!("graph {graph}: {e}");
                    return TrialOutcome {
                        graph,
                        init,
                        cells: Err(e.to_string()),
                    };
                }
            };
            let x0 = experiment_x0(cfg, graph, init);
            let results = cells
                .iter()
                .map(|cell| match run_cell(cfg, setup, cell, &x0, graph, init, &opts) {
                    Ok(o) => o,
                    Err(e) => {
                        warn!("graph {graph} init {init} {} {}: {e}", cell.method, cell.weights);
                        CellOutcome::Failed(e.to_string())
                    }
                })
                .collect();
            debug!("graph {graph} init {init} done");
            TrialOutcome {
                graph,
                init,
                cells: Ok(results),
            }
        })
        .collect();
    Ok(outcomes)
}

/// Aggregates trial outcomes into one row per cell and tolerance. Trials are
/// folded in `(graph, init)` order so the floating-point sums do not depend
/// on the order of `outcomes`.
pub fn aggregate(cfg: &ExperimentConfig, outcomes: &[TrialOutcome]) -> ResultTable {
    let cells = cfg.cells();
    let mut ordered: Vec<&TrialOutcome> = outcomes.iter().collect();
    ordered.sort_by_key(|o| (o.graph, o.init));

    let mut table = ResultTable::empty(cfg.max_rounds);
    for (ci, cell) in cells.iter().enumerate() {
        for (ti, &tol) in cfg.tolerances.iter().enumerate() {
            let mut sum = 0.0;
            let mut row = ResultRow {
                cell: *cell,
                tol,
                mean_rounds: None,
                n_reached: 0,
                n_diverged: 0,
                n_trials: 0,
            };
            for o in &ordered {
                let Ok(results) = &o.cells else { continue };
                match &results[ci] {
                    CellOutcome::Ran { rounds, diverged } => {
                        row.n_trials += 1;
                        match rounds[ti] {
                            Some(r) => {
                                sum += r as f64;
                                row.n_reached += 1;
                            }
                            None if *diverged => row.n_diverged += 1,
                            None => {}
                        }
                    }
                    CellOutcome::Failed(_) => {
                        if ti == 0 {
                            table.n_failed += 1;
                        }
                    }
                }
            }
            if row.n_reached > 0 {
                row.mean_rounds = Some(sum / row.n_reached as f64);
            }
            table.rows.push(row);
        }
    }
    for o in &ordered {
        if o.cells.is_err() {
            table.n_failed += cells.len();
        }
    }
    table
}

/// Runs the whole experiment. Deterministic given the config.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ResultTable> {
    let outcomes = run_trials(cfg)?;
    Ok(aggregate(cfg, &outcomes))
}

/// Mean rounds of one method in a table, for quick comparisons.
pub fn mean_for(table: &ResultTable, method: MethodKind, weights: WeightKind, tol: f64) -> Option<f64> {
    table
        .find(|r| {
            r.cell.method == method
                && r.cell.weights == weights
                && r.tol == tol
                && !matches!(r.cell.params, ParamCell::Interval(_) | ParamCell::GainFrom(_))
        })
        .and_then(|r| r.mean_rounds)
}
