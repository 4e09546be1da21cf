//! C ABI over `cheby_consensus`.
//!
//! Objects cross the boundary as opaque handles created by `*_new` style
//! functions and released with the matching `*_free`. Fallible calls return a
//! [`CcStatus`] and write results through out-pointers; the message of the
//! most recent failure on the calling thread is available from
//! [`cc_last_error`]. Panics are caught at the boundary and reported as
//! [`CcStatus::Panic`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cheby_consensus::cheby::{chebyshev_t, conv_factor_nu, kappa1, tau_real};
use cheby_consensus::engine::{run, SwitchingWeights};
use cheby_consensus::graphs::random_geometric;
use cheby_consensus::spectral::{check_switching_convergence, eigenvalues, SwitchingEnvelope};
use cheby_consensus::weights::STOCHASTIC_TOL;
use cheby_consensus::{
    ChebyParams, ConsensusTrace, Error, Graph, MethodKind, MethodSpec, RunOptions, Scenario, ScenarioConfig,
    ScenarioKind, WeightKind, WeightMatrix,
};
use nalgebra::DMatrix;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidParams = 3,
    GenerationFailed = 4,
    Disconnected = 5,
    NotSymmetric = 6,
    EigenFailure = 7,
    DegenerateSpectrum = 8,
    Unsupported = 9,
    Io = 10,
    Panic = 11,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CcWeightKind {
    LocalDegree = 0,
    BestConstant = 1,
    NonSymmetric = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CcMethod {
    Chebyshev = 0,
    Power = 1,
    Newton2 = 2,
    FixedGain = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CcScenario {
    Fixed = 0,
    LinkFailure = 1,
    Motion = 2,
    RandomNetwork = 3,
    AddedLinks = 4,
}

/// Iteration and its parameters.
///
/// With `tuned` set, parameters come from the spectrum of the weight matrix
/// and `a`, `b` are ignored. Otherwise Chebyshev reads `a = lambda_m`,
/// `b = lambda_M`; Newton reads `a = alpha`; fixed gain reads `a = beta`.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct CcMethodSpec {
    pub method: CcMethod,
    pub tuned: bool,
    pub a: f64,
    pub b: f64,
}

/// Topology evolution for switching runs.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct CcScenarioSpec {
    pub kind: CcScenario,
    pub failure_prob: f64,
    pub add_prob: f64,
    pub step_size: f64,
    pub side: f64,
    pub radius: f64,
    pub seed: u64,
}

/// Opaque communication graph.
pub struct CcGraph(Graph);

/// Opaque weight matrix.
pub struct CcWeights(WeightMatrix);

/// Opaque run record.
pub struct CcTrace(ConsensusTrace);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> CcStatus {
    match err {
        Error::Domain(_) | Error::Config(_) | Error::Parse { .. } => CcStatus::InvalidArgument,
        Error::InvalidParams { .. } => CcStatus::InvalidParams,
        Error::GenerationFailed { .. } => CcStatus::GenerationFailed,
        Error::Disconnected => CcStatus::Disconnected,
        Error::NotSymmetric(_) => CcStatus::NotSymmetric,
        Error::EigenNonConvergence => CcStatus::EigenFailure,
        Error::DegenerateSpectrum { .. } => CcStatus::DegenerateSpectrum,
        Error::Unsupported(_) => CcStatus::Unsupported,
        Error::Io(_) | Error::Csv(_) => CcStatus::Io,
    }
}

enum Fail {
    Null(&'static str),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

/// Runs `f`, converting errors and panics to a status and recording the message.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> CcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CcStatus::Ok,
        Ok(Err(Fail::Null(what))) => {
            set_last_error(format!("null pointer: {what}"));
            CcStatus::NullPointer
        }
        Ok(Err(Fail::Lib(e))) => {
            set_last_error(e.to_string());
            status_of(&e)
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("panic: {msg}"));
            CcStatus::Panic
        }
    }
}

unsafe fn borrow<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null(what))
}

unsafe fn out<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or(Fail::Null(what))
}

unsafe fn slice<'a, T>(p: *const T, len: usize, what: &'static str) -> Result<&'a [T], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

/// Message of the last failure on this thread, or NULL. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn cc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn cc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Chebyshev polynomial of the first kind, `T_n(x)`.
#[no_mangle]
pub extern "C" fn cc_chebyshev_t(n: usize, x: f64) -> f64 {
    chebyshev_t(n, x)
}

/// Smaller-modulus root of `t^2 - 2 x t + 1` for real `|x| > 1`.
///
/// # Safety
/// `result` must be a valid pointer to a double.
#[no_mangle]
pub unsafe extern "C" fn cc_tau(x: f64, result: *mut f64) -> CcStatus {
    guard(|| {
        *out(result, "result")? = tau_real(x)?;
        Ok(())
    })
}

/// `x + sqrt(x^2 + 1)` for `x >= 0`.
///
/// # Safety
/// `result` must be a valid pointer to a double.
#[no_mangle]
pub unsafe extern "C" fn cc_kappa1(x: f64, result: *mut f64) -> CcStatus {
    guard(|| {
        *out(result, "result")? = kappa1(x)?;
        Ok(())
    })
}

/// Asymptotic contraction per round of the Chebyshev iteration on
/// `[lambda_m, lambda_max]` for a spectrum with extremes `lambda_2`, `lambda_n`.
///
/// # Safety
/// `result` must be a valid pointer to a double.
#[no_mangle]
pub unsafe extern "C" fn cc_conv_factor(
    lambda_m: f64,
    lambda_max: f64,
    lambda_2: f64,
    lambda_n: f64,
    result: *mut f64,
) -> CcStatus {
    guard(|| {
        let p = ChebyParams::new(lambda_m, lambda_max)?;
        *out(result, "result")? = conv_factor_nu(&p, lambda_2, lambda_n)?;
        Ok(())
    })
}

/// Switching-topology sufficient condition for interval
/// `[lambda_m, lambda_max]` against the envelope `[env_min, env_max]`.
/// `pass` receives 1 when the condition holds.
///
/// # Safety
/// `product` and `pass` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn cc_check_switching(
    lambda_m: f64,
    lambda_max: f64,
    env_max: f64,
    env_min: f64,
    product: *mut f64,
    pass: *mut c_int,
) -> CcStatus {
    guard(|| {
        let p = ChebyParams::new(lambda_m, lambda_max)?;
        let env = SwitchingEnvelope::new(env_max, env_min)?;
        let check = check_switching_convergence(&p, &env);
        *out(product, "product")? = check.product;
        *out(pass, "pass")? = check.pass as c_int;
        Ok(())
    })
}

/// Connected random geometric graph in a `side` x `side` square.
///
/// # Safety
/// `graph` must be a valid pointer; on success it receives a handle to free
/// with [`cc_graph_free`].
#[no_mangle]
pub unsafe extern "C" fn cc_graph_random_geometric(
    n: usize,
    side: f64,
    radius: f64,
    seed: u64,
    graph: *mut *mut CcGraph,
) -> CcStatus {
    guard(|| {
        let slot = out(graph, "graph")?;
        let g = random_geometric(n, side, radius, seed)?;
        *slot = Box::into_raw(Box::new(CcGraph(g)));
        Ok(())
    })
}

/// Graph from `n_edges` node pairs stored flat in `pairs` (`2 * n_edges`
/// entries).
///
/// # Safety
/// `pairs` must point to `2 * n_edges` values (may be NULL when `n_edges` is
/// 0); `graph` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_graph_from_edges(
    n: usize,
    pairs: *const usize,
    n_edges: usize,
    graph: *mut *mut CcGraph,
) -> CcStatus {
    guard(|| {
        let slot = out(graph, "graph")?;
        let flat = slice(pairs, n_edges * 2, "pairs")?;
        let g = Graph::from_edges(n, flat.chunks_exact(2).map(|p| (p[0], p[1])))?;
        *slot = Box::into_raw(Box::new(CcGraph(g)));
        Ok(())
    })
}

/// Number of nodes, or 0 for a NULL handle.
///
/// # Safety
/// `graph` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cc_graph_n_nodes(graph: *const CcGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.n_nodes())
}

/// Number of undirected edges, or 0 for a NULL handle.
///
/// # Safety
/// `graph` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cc_graph_n_edges(graph: *const CcGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.n_edges())
}

/// 1 if the graph is connected, 0 otherwise or for NULL.
///
/// # Safety
/// `graph` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cc_graph_is_connected(graph: *const CcGraph) -> c_int {
    graph.as_ref().is_some_and(|g| g.0.is_connected()) as c_int
}

/// # Safety
/// `graph` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cc_graph_free(graph: *mut CcGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

fn weight_kind(k: CcWeightKind) -> WeightKind {
    match k {
        CcWeightKind::LocalDegree => WeightKind::LocalDegree,
        CcWeightKind::BestConstant => WeightKind::BestConstant,
        CcWeightKind::NonSymmetric => WeightKind::NonSymmetric,
    }
}

/// Weight matrix of the given kind for `graph`.
///
/// # Safety
/// `graph` must be a live handle and `weights` a valid pointer; on success it
/// receives a handle to free with [`cc_weights_free`].
#[no_mangle]
pub unsafe extern "C" fn cc_weights_new(
    graph: *const CcGraph,
    kind: CcWeightKind,
    weights: *mut *mut CcWeights,
) -> CcStatus {
    guard(|| {
        let g = borrow(graph, "graph")?;
        let slot = out(weights, "weights")?;
        let w = WeightMatrix::for_graph(&g.0, weight_kind(kind))?;
        *slot = Box::into_raw(Box::new(CcWeights(w)));
        Ok(())
    })
}

/// Weight matrix from `n * n` row-major entries, which must be non-negative
/// with unit row sums.
///
/// # Safety
/// `entries` must point to `n * n` doubles and `weights` be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_weights_from_dense(
    n: usize,
    entries: *const f64,
    weights: *mut *mut CcWeights,
) -> CcStatus {
    guard(|| {
        let slot = out(weights, "weights")?;
        let data = slice(entries, n * n, "entries")?;
        if n == 0 {
            return Err(Error::Domain("weight matrix must have at least one row".into()).into());
        }
        for (i, row) in data.chunks_exact(n).enumerate() {
            if row.iter().any(|v| !(*v >= 0.0 && v.is_finite())) {
                return Err(Error::Domain(format!("row {i} has a negative or non-finite entry")).into());
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > STOCHASTIC_TOL * n as f64 {
                return Err(Error::Domain(format!("row {i} sums to {sum}, not 1")).into());
            }
        }
        let w = WeightMatrix::from_matrix(DMatrix::from_row_slice(n, n, data), WeightKind::Custom)?;
        *slot = Box::into_raw(Box::new(CcWeights(w)));
        Ok(())
    })
}

/// Dimension, or 0 for NULL.
///
/// # Safety
/// `weights` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cc_weights_n(weights: *const CcWeights) -> usize {
    weights.as_ref().map_or(0, |w| w.0.n())
}

/// Entry `(i, j)`.
///
/// # Safety
/// `weights` must be a live handle and `value` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_weights_get(weights: *const CcWeights, i: usize, j: usize, value: *mut f64) -> CcStatus {
    guard(|| {
        let w = borrow(weights, "weights")?;
        let slot = out(value, "value")?;
        let n = w.0.n();
        if i >= n || j >= n {
            return Err(Error::Domain(format!("index ({i}, {j}) out of range for {n} nodes")).into());
        }
        *slot = w.0.get(i, j);
        Ok(())
    })
}

/// # Safety
/// `weights` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cc_weights_free(weights: *mut CcWeights) {
    if !weights.is_null() {
        drop(Box::from_raw(weights));
    }
}

/// Second-largest and smallest real eigenvalues of the weight matrix.
///
/// # Safety
/// `weights` must be a live handle; `lambda_2` and `lambda_n` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn cc_spectrum_extremes(
    weights: *const CcWeights,
    lambda_2: *mut f64,
    lambda_n: *mut f64,
) -> CcStatus {
    guard(|| {
        let w = borrow(weights, "weights")?;
        let (l2, ln) = (out(lambda_2, "lambda_2")?, out(lambda_n, "lambda_n")?);
        let s = eigenvalues(&w.0)?;
        *l2 = s.lambda_2();
        *ln = s.lambda_n();
        Ok(())
    })
}

fn method_spec(spec: &CcMethodSpec, w: &WeightMatrix) -> Result<MethodSpec, Error> {
    let kind = match spec.method {
        CcMethod::Chebyshev => MethodKind::Chebyshev,
        CcMethod::Power => MethodKind::Power,
        CcMethod::Newton2 => MethodKind::Newton2,
        CcMethod::FixedGain => MethodKind::FixedGain,
    };
    if spec.tuned && kind != MethodKind::Power {
        return MethodSpec::optimal(kind, &eigenvalues(w)?);
    }
    Ok(match kind {
        MethodKind::Chebyshev => MethodSpec::Chebyshev(ChebyParams::new(spec.a, spec.b)?),
        MethodKind::Power => MethodSpec::Power,
        MethodKind::Newton2 => MethodSpec::Newton2 { alpha: spec.a },
        MethodKind::FixedGain => MethodSpec::FixedGain { beta: spec.a },
    })
}

fn options(tol: f64, max_rounds: usize) -> RunOptions {
    RunOptions::new(tol, max_rounds).state_budget(0)
}

/// Runs an iteration on a fixed weight matrix until the error drops below
/// `tol` or `max_rounds` pass.
///
/// # Safety
/// `weights` and `spec` must be valid; `x0` must point to `n` doubles where
/// `n` is the matrix dimension; `trace` must be a valid pointer and on success
/// receives a handle to free with [`cc_trace_free`].
#[no_mangle]
pub unsafe extern "C" fn cc_run(
    weights: *const CcWeights,
    spec: *const CcMethodSpec,
    x0: *const f64,
    n: usize,
    tol: f64,
    max_rounds: usize,
    trace: *mut *mut CcTrace,
) -> CcStatus {
    guard(|| {
        let w = borrow(weights, "weights")?;
        let spec = borrow(spec, "spec")?;
        let x0 = slice(x0, n, "x0")?;
        let slot = out(trace, "trace")?;
        let method = method_spec(spec, &w.0)?;
        let mut source = w.0.clone();
        let t = run(&method, &mut source, x0, &options(tol, max_rounds))?;
        *slot = Box::into_raw(Box::new(CcTrace(t)));
        Ok(())
    })
}

/// Runs an iteration over a switching topology that starts from `graph`.
/// Tuned parameters come from the base graph's weight matrix; Newton is not
/// available here.
///
/// # Safety
/// As for [`cc_run`], with `graph` and `scenario` valid.
#[no_mangle]
pub unsafe extern "C" fn cc_run_switching(
    graph: *const CcGraph,
    scenario: *const CcScenarioSpec,
    kind: CcWeightKind,
    spec: *const CcMethodSpec,
    x0: *const f64,
    n: usize,
    tol: f64,
    max_rounds: usize,
    trace: *mut *mut CcTrace,
) -> CcStatus {
    guard(|| {
        let g = borrow(graph, "graph")?;
        let sc = borrow(scenario, "scenario")?;
        let spec = borrow(spec, "spec")?;
        let x0 = slice(x0, n, "x0")?;
        let slot = out(trace, "trace")?;
        let cfg = ScenarioConfig {
            kind: match sc.kind {
                CcScenario::Fixed => ScenarioKind::Fixed,
                CcScenario::LinkFailure => ScenarioKind::LinkFailure,
                CcScenario::Motion => ScenarioKind::MotionEvolution,
                CcScenario::RandomNetwork => ScenarioKind::RandomNetwork,
                CcScenario::AddedLinks => ScenarioKind::AddedLinks,
            },
            failure_prob: sc.failure_prob,
            add_prob: sc.add_prob,
            step_size: sc.step_size,
            side: sc.side,
            radius: sc.radius,
            seed: sc.seed,
        };
        let base = WeightMatrix::for_graph(&g.0, weight_kind(kind))?;
        let method = method_spec(spec, &base)?;
        let mut source = SwitchingWeights::new(Scenario::new(g.0.clone(), cfg)?, weight_kind(kind))?;
        let t = run(&method, &mut source, x0, &options(tol, max_rounds))?;
        *slot = Box::into_raw(Box::new(CcTrace(t)));
        Ok(())
    })
}

/// Rounds performed, or 0 for NULL.
///
/// # Safety
/// `trace` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cc_trace_rounds(trace: *const CcTrace) -> usize {
    trace.as_ref().map_or(0, |t| t.0.rounds())
}

/// Round at which the tolerance was first met; `reached` receives 0 when it
/// never was.
///
/// # Safety
/// `trace` must be a live handle; `round` and `reached` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn cc_trace_rounds_to_tol(
    trace: *const CcTrace,
    round: *mut usize,
    reached: *mut c_int,
) -> CcStatus {
    guard(|| {
        let t = borrow(trace, "trace")?;
        let hit = t.0.rounds_to_tol.first().and_then(|(_, r)| *r);
        *out(round, "round")? = hit.unwrap_or(0);
        *out(reached, "reached")? = hit.is_some() as c_int;
        Ok(())
    })
}

/// 1 if the run was stopped by divergence.
///
/// # Safety
/// `trace` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cc_trace_diverged(trace: *const CcTrace) -> c_int {
    trace.as_ref().is_some_and(|t| t.0.diverged) as c_int
}

/// Value the states converge to, or NaN for NULL.
///
/// # Safety
/// `trace` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cc_trace_consensus_value(trace: *const CcTrace) -> f64 {
    trace.as_ref().map_or(f64::NAN, |t| t.0.consensus_value)
}

/// Copies up to `len` per-round errors (round 1 first) into `buf` and
/// returns the total number available.
///
/// # Safety
/// `trace` must be NULL or a live handle; `buf` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn cc_trace_errors(trace: *const CcTrace, buf: *mut f64, len: usize) -> usize {
    copy_out(trace.as_ref().map(|t| t.0.errors.as_slice()), buf, len)
}

/// Copies up to `len` entries of the final state into `buf` and returns the
/// state length.
///
/// # Safety
/// `trace` must be NULL or a live handle; `buf` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn cc_trace_final_state(trace: *const CcTrace, buf: *mut f64, len: usize) -> usize {
    copy_out(trace.as_ref().map(|t| t.0.final_state.as_slice()), buf, len)
}

unsafe fn copy_out(src: Option<&[f64]>, buf: *mut f64, len: usize) -> usize {
    let Some(src) = src else { return 0 };
    if !buf.is_null() {
        let k = len.min(src.len());
        ptr::copy_nonoverlapping(src.as_ptr(), buf, k);
    }
    src.len()
}

/// # Safety
/// `trace` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cc_trace_free(trace: *mut CcTrace) {
    if !trace.is_null() {
        drop(Box::from_raw(trace));
    }
}
