//! The consensus iterations: Chebyshev, plain averaging, the degree-2 Newton
//! polynomial and the fixed-gain second-order recurrence.
//!
//! Every method counts communication rounds, i.e. matrix-vector products with
//! the weight matrix, so their round counts are directly comparable.

use std::fmt;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use nalgebra::DVector;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cheby::ChebyParams;
use crate::error::{Error, Result};
use crate::graphs::Scenario;
use crate::spectral::{fixed_gain_beta, optimal_newton_alpha, optimal_params, Spectrum};
use crate::weights::{WeightKind, WeightMatrix};

/// Errors above this (or non-finite) mark a run as diverged.
pub const DIVERGENCE_THRESHOLD: f64 = 1e9;

/// Maximum number of stored state scalars (`N * (rounds + 1)`).
pub const DEFAULT_STATE_BUDGET: usize = 10_000_000;

const PERRON_TOL: f64 = 1e-12;
const PERRON_MAX_ITER: usize = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MethodKind {
    #[serde(rename = "cheby")]
    Chebyshev,
    #[serde(rename = "power")]
    Power,
    #[serde(rename = "newton2")]
    Newton2,
    #[serde(rename = "fixedgain")]
    FixedGain,
}

impl MethodKind {
    pub const ALL: [MethodKind; 4] = [Self::Chebyshev, Self::Power, Self::Newton2, Self::FixedGain];

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Chebyshev => "cheby",
            Self::Power => "power",
            Self::Newton2 => "newton2",
            Self::FixedGain => "fixedgain",
        }
    }
}

impl fmt::Display for MethodKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MethodKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cheby" | "chebyshev" => Ok(Self::Chebyshev),
            "power" => Ok(Self::Power),
            "newton2" => Ok(Self::Newton2),
            "fixedgain" => Ok(Self::FixedGain),
            other => Err(Error::Config(format!("unknown method {other:?}"))),
        }
    }
}

/// A method together with its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MethodSpec {
    Chebyshev(ChebyParams),
    Power,
    /// Repeated `N_2(A) = (A - alpha I)^2 / (1 - alpha)^2`.
    Newton2 {
        alpha: f64,
    },
    /// `x(n) = beta A x(n-1) + (1 - beta) x(n-2)`.
    FixedGain {
        beta: f64,
    },
}

impl MethodSpec {
    pub fn kind(&self) -> MethodKind {
        match self {
            Self::Chebyshev(_) => MethodKind::Chebyshev,
            Self::Power => MethodKind::Power,
            Self::Newton2 { .. } => MethodKind::Newton2,
            Self::FixedGain { .. } => MethodKind::FixedGain,
        }
    }

    /// Parameters tuned to a spectrum: the optimal Chebyshev interval,
    /// `alpha = (lambda_2 + lambda_N) / 2` and `beta` from `lambda_2`.
    pub fn optimal(kind: MethodKind, s: &Spectrum) -> Result<Self> {
        match kind {
            MethodKind::Chebyshev => Ok(Self::Chebyshev(optimal_params(s)?)),
            MethodKind::Power => Ok(Self::Power),
            MethodKind::Newton2 => {
                optimal_params(s)?;
                Ok(Self::Newton2 {
                    alpha: optimal_newton_alpha(s),
                })
            }
            MethodKind::FixedGain => {
                optimal_params(s)?;
                Ok(Self::FixedGain {
                    beta: fixed_gain_beta(s.lambda_2())?,
                })
            }
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            Self::Newton2 { alpha } if !(alpha.is_finite() && alpha < 1.0) => {
                Err(Error::Domain(format!("newton2 needs alpha < 1, got {alpha}")))
            }
            Self::FixedGain { beta } if !beta.is_finite() => {
                Err(Error::Domain(format!("fixed-gain beta must be finite, got {beta}")))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for MethodSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Chebyshev(p) => write!(f, "cheby(lambda_m={}, lambda_M={})", p.lambda_m(), p.lambda_max()),
            Self::Power => f.write_str("power"),
            Self::Newton2 { alpha } => write!(f, "newton2(alpha={alpha})"),
            Self::FixedGain { beta } => write!(f, "fixedgain(beta={beta})"),
        }
    }
}

/// What a tolerance is compared against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum StopRule {
    /// `max_i |x_i(n) - consensus value|`.
    #[default]
    #[serde(rename = "error")]
    Error,
    /// `max_i x_i(n) - min_i x_i(n)`: decidable without knowing the target.
    #[serde(rename = "spread")]
    Spread,
}

impl FromStr for StopRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "error" => Ok(Self::Error),
            "spread" => Ok(Self::Spread),
            other => Err(Error::Config(format!("unknown stop rule {other:?}"))),
        }
    }
}

/// Supplies the weight matrix used in each round.
pub trait MatrixSource {
    fn n_nodes(&self) -> usize;

    /// The matrix for round `round >= 1`.
    fn matrix(&mut self, round: usize) -> Result<&WeightMatrix>;

    /// The matrix when it never changes.
    fn fixed(&self) -> Option<&WeightMatrix> {
        None
    }

    /// Whether every matrix this source produces is symmetric.
    fn symmetric(&self) -> bool;
}

impl MatrixSource for WeightMatrix {
    fn n_nodes(&self) -> usize {
        self.n()
    }

    fn matrix(&mut self, _round: usize) -> Result<&WeightMatrix> {
        Ok(self)
    }

    fn fixed(&self) -> Option<&WeightMatrix> {
        Some(self)
    }

    fn symmetric(&self) -> bool {
        self.is_symmetric()
    }
}

/// Rebuilds the weights from an evolving graph every round.
#[derive(Debug, Clone)]
pub struct SwitchingWeights {
    scenario: Scenario,
    kind: WeightKind,
    current: Option<WeightMatrix>,
}

impl SwitchingWeights {
    pub fn new(scenario: Scenario, kind: WeightKind) -> Result<Self> {
        if kind == WeightKind::Custom {
            return Err(Error::Unsupported(
                "custom weights cannot follow a changing graph".into(),
            ));
        }
        Ok(Self {
            scenario,
            kind,
            current: None,
        })
    }

    pub fn scenario(&self) -> &Scenario {
        &self.scenario
    }
}

impl MatrixSource for SwitchingWeights {
    fn n_nodes(&self) -> usize {
        self.scenario.base().n_nodes()
    }

    fn matrix(&mut self, _round: usize) -> Result<&WeightMatrix> {
        let g = self.scenario.advance();
        Ok(self.current.insert(WeightMatrix::for_graph(g, self.kind)?))
    }

    fn symmetric(&self) -> bool {
        self.kind.is_symmetric()
    }
}

/// Picks a matrix uniformly at random from a fixed pool every round.
#[derive(Debug, Clone)]
pub struct RandomChoice {
    pool: Vec<WeightMatrix>,
    rng: ChaCha8Rng,
}

impl RandomChoice {
    pub fn new(pool: Vec<WeightMatrix>, rng: ChaCha8Rng) -> Result<Self> {
        let Some(first) = pool.first() else {
            return Err(Error::Domain("empty matrix pool".into()));
        };
        if pool.iter().any(|w| w.n() != first.n()) {
            return Err(Error::Domain("matrix pool mixes sizes".into()));
        }
        Ok(Self { pool, rng })
    }

    pub fn pool(&self) -> &[WeightMatrix] {
        &self.pool
    }
}

impl MatrixSource for RandomChoice {
    fn n_nodes(&self) -> usize {
        self.pool[0].n()
    }

    fn matrix(&mut self, _round: usize) -> Result<&WeightMatrix> {
        let k = self.rng.random_range(0..self.pool.len());
        Ok(&self.pool[k])
    }

    fn symmetric(&self) -> bool {
        self.pool.iter().all(|w| w.is_symmetric())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOptions {
    /// The run stops once all of these are reached.
    pub tolerances: Vec<f64>,
    pub max_rounds: usize,
    pub stop_rule: StopRule,
    /// States are kept when `N * (max_rounds + 1)` fits in this many scalars.
    pub state_budget: usize,
}

impl RunOptions {
    pub fn new(tol: f64, max_rounds: usize) -> Self {
        Self {
            tolerances: vec![tol],
            max_rounds,
            stop_rule: StopRule::Error,
            state_budget: DEFAULT_STATE_BUDGET,
        }
    }

    pub fn with_tolerances(tolerances: Vec<f64>, max_rounds: usize) -> Self {
        Self {
            tolerances,
            ..Self::new(1.0, max_rounds)
        }
    }

    pub fn stop_rule(mut self, rule: StopRule) -> Self {
        self.stop_rule = rule;
        self
    }

    pub fn state_budget(mut self, budget: usize) -> Self {
        self.state_budget = budget;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.tolerances.is_empty() {
            return Err(Error::Config("at least one tolerance is required".into()));
        }
        if let Some(t) = self.tolerances.iter().find(|t| !(**t > 0.0 && t.is_finite())) {
            return Err(Error::Config(format!("tolerance must be positive, got {t}")));
        }
        Ok(())
    }
}

/// Record of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct ConsensusTrace {
    pub method: MethodKind,
    pub consensus_value: f64,
    pub initial_error: f64,
    pub initial_spread: f64,
    /// `errors[k - 1]` is the error after round `k`.
    pub errors: Vec<f64>,
    /// `spreads[k - 1]` is `max x - min x` after round `k`.
    pub spreads: Vec<f64>,
    /// `states[k]` is `x(k)`, starting from `x(0)`, when within the state budget.
    pub states: Option<Vec<Vec<f64>>>,
    pub final_state: Vec<f64>,
    /// First round at which each tolerance was met, in the order given.
    pub rounds_to_tol: Vec<(f64, Option<usize>)>,
    pub stop_rule: StopRule,
    pub diverged: bool,
    pub divergence_round: Option<usize>,
    /// Matrix-vector products performed.
    pub comm_rounds: usize,
}

impl ConsensusTrace {
    pub fn rounds(&self) -> usize {
        self.errors.len()
    }

    pub fn rounds_to(&self, tol: f64) -> Option<usize> {
        self.rounds_to_tol.iter().find(|(t, _)| *t == tol).and_then(|(_, r)| *r)
    }

    pub fn last_error(&self) -> f64 {
        self.errors.last().copied().unwrap_or(self.initial_error)
    }

    /// `round,error` rows for rounds `1..`, plus `x_0 .. x_{N-1}` when states are kept.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let n = self.final_state.len();
        let mut header = vec!["round".to_string(), "error".to_string()];
        if self.states.is_some() {
            header.extend((0..n).map(|i| format!("x_{i}")));
        }
        w.write_record(&header)?;
        for (k, e) in self.errors.iter().enumerate() {
            let mut row = vec![(k + 1).to_string(), e.to_string()];
            if let Some(states) = &self.states {
                row.extend(states[k + 1].iter().map(|v| v.to_string()));
            }
            w.write_record(&row)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn write_csv_file(&self, path: impl AsRef<Path>) -> Result<()> {
        self.write_csv(std::fs::File::create(path)?)
    }
}

/// Value every agent converges to: the plain average for symmetric weights,
/// `w^T x0 / w^T 1` with `w` the left eigenvector for eigenvalue 1 otherwise.
pub fn consensus_value(source: &dyn MatrixSource, x0: &[f64]) -> Result<f64> {
    if let Some(w) = source.fixed() {
        if w.is_symmetric() {
            return Ok(mean(x0));
        }
        let left = left_perron_vector(w)?;
        let num: f64 = left.iter().zip(x0).map(|(a, b)| a * b).sum();
        let den: f64 = left.iter().sum();
        return Ok(num / den);
    }
    if source.symmetric() {
        Ok(mean(x0))
    } else {
        Err(Error::Unsupported(
            "consensus value of switching non-symmetric weights is not defined".into(),
        ))
    }
}

/// Left eigenvector for eigenvalue 1, normalised to sum 1, by power iteration
/// on `(I + A^T) / 2` until `||A^T w - w||_inf` drops below `1e-12`.
pub fn left_perron_vector(w: &WeightMatrix) -> Result<Vec<f64>> {
    let n = w.n();
    let at = w.entries().transpose();
    let mut v = DVector::from_element(n, 1.0 / n as f64);
    let mut av = DVector::zeros(n);
    for _ in 0..PERRON_MAX_ITER {
        av.gemv(1.0, &at, &v, 0.0);
        if (&av - &v).amax() < PERRON_TOL {
            let s = av.sum();
            return Ok(av.iter().map(|x| x / s).collect());
        }
        v += &av;
        let s = v.sum();
        v /= s;
    }
    Err(Error::EigenNonConvergence)
}

fn mean(x: &[f64]) -> f64 {
    x.iter().sum::<f64>() / x.len() as f64
}

fn spread(x: &DVector<f64>) -> f64 {
    x.max() - x.min()
}

fn error_of(x: &DVector<f64>, target: f64) -> f64 {
    x.iter()
        .map(|v| (v - target).abs())
        .fold(0.0, |a, b| if b.is_nan() { f64::NAN } else { a.max(b) })
}

/// Chebyshev iteration with constant interval, valid for fixed and switching sources.
pub fn cheby_run(
    params: &ChebyParams,
    source: &mut dyn MatrixSource,
    x0: &[f64],
    opts: &RunOptions,
) -> Result<ConsensusTrace> {
    run(&MethodSpec::Chebyshev(*params), source, x0, opts)
}

/// `x(n) = A x(n-1)`.
pub fn power_run(source: &mut dyn MatrixSource, x0: &[f64], opts: &RunOptions) -> Result<ConsensusTrace> {
    run(&MethodSpec::Power, source, x0, opts)
}

/// Repeated `N_2(A)`; each application is two rounds. Fixed matrices only.
pub fn newton2_run(alpha: f64, source: &mut dyn MatrixSource, x0: &[f64], opts: &RunOptions) -> Result<ConsensusTrace> {
    run(&MethodSpec::Newton2 { alpha }, source, x0, opts)
}

pub fn fixed_gain_run(
    beta: f64,
    source: &mut dyn MatrixSource,
    x0: &[f64],
    opts: &RunOptions,
) -> Result<ConsensusTrace> {
    run(&MethodSpec::FixedGain { beta }, source, x0, opts)
}

/// Runs any method until every tolerance is met, the run diverges, or
/// `max_rounds` rounds have been spent.
///
/// If `x0` already meets every tolerance no round is performed.
pub fn run(
    method: &MethodSpec,
    source: &mut dyn MatrixSource,
    x0: &[f64],
    opts: &RunOptions,
) -> Result<ConsensusTrace> {
    opts.validate()?;
    method.validate()?;
    let n = source.n_nodes();
    if x0.len() != n {
        return Err(Error::Domain(format!(
            "x0 has {} entries but the graph has {n} nodes",
            x0.len()
        )));
    }
    if matches!(method, MethodSpec::Newton2 { .. }) && source.fixed().is_none() {
        return Err(Error::Unsupported("newton2 needs a fixed weight matrix".into()));
    }
    let target = consensus_value(source, x0)?;

    let mut x = DVector::from_column_slice(x0);
    let mut prev = DVector::zeros(n);
    let mut ax = DVector::zeros(n);

    let keep_states = n.saturating_mul(opts.max_rounds.saturating_add(1)) <= opts.state_budget;
    let mut states = keep_states.then(|| vec![x0.to_vec()]);
    let mut trace = ConsensusTrace {
        method: method.kind(),
        consensus_value: target,
        initial_error: error_of(&x, target),
        initial_spread: spread(&x),
        errors: Vec::new(),
        spreads: Vec::new(),
        states: None,
        final_state: Vec::new(),
        rounds_to_tol: opts.tolerances.iter().map(|&t| (t, None)).collect(),
        stop_rule: opts.stop_rule,
        diverged: false,
        divergence_round: None,
        comm_rounds: 0,
    };
    let measure = |e: f64, s: f64| match opts.stop_rule {
        StopRule::Error => e,
        StopRule::Spread => s,
    };
    let mut pending = mark_reached(
        &mut trace.rounds_to_tol,
        measure(trace.initial_error, trace.initial_spread),
        0,
    );

    let mut ratios = match method {
        MethodSpec::Chebyshev(p) => Some((p.ratios(), p.c(), p.d())),
        _ => None,
    };

    let mut round = 0;
    while pending > 0 && round < opts.max_rounds {
        round += 1;
        let a = source.matrix(round)?;
        ax.gemv(1.0, a.entries(), &x, 0.0);
        trace.comm_rounds += 1;

        let next = match *method {
            MethodSpec::Power => ax.clone(),
            MethodSpec::Chebyshev(_) => {
                let (it, c, d) = ratios.as_mut().expect("chebyshev ratios");
                let r = it.next().expect("ratio iterator is infinite");
                assert!(
                    r.prev > 0.0 && r.prev < 1.0 && r.prev2 >= 0.0 && r.prev2 < 1.0,
                    "ratio out of range: {r:?}"
                );
                let shifted = &ax * *c - &x * *d;
                if r.n == 1 {
                    shifted * r.prev
                } else {
                    shifted * (2.0 * r.prev) - &prev * r.prev2
                }
            }
            MethodSpec::Newton2 { alpha } => (&ax - &x * alpha) / (1.0 - alpha),
            MethodSpec::FixedGain { beta } => {
                if round == 1 {
                    ax.clone()
                } else {
                    &ax * beta + &prev * (1.0 - beta)
                }
            }
        };
        prev = std::mem::replace(&mut x, next);

        let e = error_of(&x, target);
        let s = spread(&x);
        trace.errors.push(e);
        trace.spreads.push(s);
        if let Some(st) = states.as_mut() {
            st.push(x.as_slice().to_vec());
        }
        if !e.is_finite() || e > DIVERGENCE_THRESHOLD {
            trace.diverged = true;
            trace.divergence_round = Some(round);
            break;
        }
        // Newton steps only count once the degree-2 application is complete
        let complete = !matches!(method, MethodSpec::Newton2 { .. }) || round % 2 == 0;
        if complete {
            pending = mark_reached(&mut trace.rounds_to_tol, measure(e, s), round);
        }
    }
    trace.states = states;
    trace.final_state = x.as_slice().to_vec();
    Ok(trace)
}

fn mark_reached(rounds: &mut [(f64, Option<usize>)], value: f64, round: usize) -> usize {
    let mut pending = 0;
    for (tol, hit) in rounds.iter_mut() {
        if hit.is_none() {
            if value < *tol {
                *hit = Some(round);
            } else {
                pending += 1;
            }
        }
    }
    pending
}
