//! Spectra of weight matrices, parameter selection and the convergence
//! predicates for fixed and switching topologies.

use std::fmt;

use nalgebra::{DMatrix, Schur, SymmetricEigen};
use num_complex::Complex64;

use crate::cheby::{kappa1, tau_complex, tau_real, ChebyParams};
use crate::error::{Error, Result};
use crate::weights::{WeightMatrix, STOCHASTIC_TOL};

/// Eigenvalues closer than this to 1 (after the first) signal a disconnected graph.
pub const UNIT_EIG_TOL: f64 = 1e-9;

/// Imaginary parts below this are treated as round-off on a real eigenvalue.
pub const IMAG_TOL: f64 = 1e-10;

/// Default back-off applied to the strict inequalities of the switching corollaries.
pub const DEFAULT_SAFETY_MARGIN: f64 = 1e-4;

const SCHUR_MAX_ITER: usize = 10_000;

/// Full spectrum of a weight matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    real_eigs: Vec<f64>,
    complex_eigs: Vec<Complex64>,
}

impl Spectrum {
    /// Real eigenvalues are sorted in descending order. At least one is
    /// required.
    pub fn new(mut real_eigs: Vec<f64>, complex_eigs: Vec<Complex64>) -> Result<Self> {
        if real_eigs.is_empty() {
            return Err(Error::Domain("a spectrum needs a real eigenvalue".into()));
        }
        if real_eigs.iter().any(|v| !v.is_finite()) || complex_eigs.iter().any(|z| !z.is_finite()) {
            return Err(Error::Domain("non-finite eigenvalue".into()));
        }
        real_eigs.sort_by(|a, b| b.total_cmp(a));
        Ok(Self {
            real_eigs,
            complex_eigs,
        })
    }

    /// Spectrum `{1, lambda_2, lambda_n}` plus optional complex eigenvalues;
    /// enough for every predicate in this module.
    pub fn from_extremes(lambda_2: f64, lambda_n: f64, complex_eigs: Vec<Complex64>) -> Result<Self> {
        Self::new(vec![1.0, lambda_2, lambda_n], complex_eigs)
    }

    pub fn real_eigs(&self) -> &[f64] {
        &self.real_eigs
    }

    pub fn complex_eigs(&self) -> &[Complex64] {
        &self.complex_eigs
    }

    pub fn largest(&self) -> f64 {
        self.real_eigs[0]
    }

    /// Second largest real eigenvalue, or the only one if there is just one.
    pub fn lambda_2(&self) -> f64 {
        self.real_eigs[1.min(self.real_eigs.len() - 1)]
    }

    /// Smallest real eigenvalue.
    pub fn lambda_n(&self) -> f64 {
        self.real_eigs[self.real_eigs.len() - 1]
    }

    /// `max(|lambda_2|, |lambda_N|)`: the asymptotic rate of plain averaging.
    pub fn second_modulus(&self) -> f64 {
        self.lambda_2().abs().max(self.lambda_n().abs())
    }

    /// Number of real eigenvalues within [`UNIT_EIG_TOL`] of 1.
    pub fn unit_multiplicity(&self) -> usize {
        self.real_eigs
            .iter()
            .filter(|&&v| (v - 1.0).abs() <= UNIT_EIG_TOL)
            .count()
    }

    /// More than one unit eigenvalue: the underlying graph is disconnected.
    pub fn is_disconnected(&self) -> bool {
        self.unit_multiplicity() > 1
    }

    pub fn max_complex_modulus(&self) -> f64 {
        self.complex_eigs.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Eigenvalues of a symmetric weight matrix.
pub fn sym_eigenvalues(w: &WeightMatrix) -> Result<Spectrum> {
    let asym = w.max_asymmetry();
    if asym > STOCHASTIC_TOL {
        return Err(Error::NotSymmetric(asym));
    }
    sym_eigenvalues_of(w.entries())
}

fn sym_eigenvalues_of(m: &DMatrix<f64>) -> Result<Spectrum> {
    let eig = SymmetricEigen::new(m.clone());
    Spectrum::new(eig.eigenvalues.as_slice().to_vec(), Vec::new())
}

/// Eigenvalues of an arbitrary square weight matrix, complex pairs included.
pub fn general_eigenvalues(w: &WeightMatrix) -> Result<Spectrum> {
    general_eigenvalues_of(w.entries())
}

fn general_eigenvalues_of(m: &DMatrix<f64>) -> Result<Spectrum> {
    let schur = Schur::try_new(m.clone(), f64::EPSILON, SCHUR_MAX_ITER).ok_or(Error::EigenNonConvergence)?;
    let mut real = Vec::new();
    let mut complex = Vec::new();
    for z in schur.complex_eigenvalues().iter() {
        if z.im.abs() <= IMAG_TOL {
            real.push(z.re);
        } else {
            complex.push(Complex64::new(z.re, z.im));
        }
    }
    complex.sort_by(|a, b| b.re.total_cmp(&a.re).then(b.im.total_cmp(&a.im)));
    Spectrum::new(real, complex)
}

/// Symmetric solver when the matrix is symmetric, general solver otherwise.
pub fn eigenvalues(w: &WeightMatrix) -> Result<Spectrum> {
    if w.is_symmetric() {
        sym_eigenvalues(w)
    } else {
        general_eigenvalues(w)
    }
}

/// Optimal fixed-topology interval: `lambda_M = lambda_2`, `lambda_m = lambda_N`.
pub fn optimal_params(s: &Spectrum) -> Result<ChebyParams> {
    let (l2, ln) = (s.lambda_2(), s.lambda_n());
    if s.real_eigs().len() < 2 {
        return Err(Error::DegenerateSpectrum {
            lambda_2: l2,
            lambda_n: ln,
        });
    }
    if s.is_disconnected() || l2 >= 1.0 - UNIT_EIG_TOL {
        return Err(Error::Disconnected);
    }
    if l2 == ln {
        return Err(Error::DegenerateSpectrum {
            lambda_2: l2,
            lambda_n: ln,
        });
    }
    ChebyParams::new(ln, l2)
}

/// Newton interpolation node `(lambda_2 + lambda_N) / 2`.
pub fn optimal_newton_alpha(s: &Spectrum) -> f64 {
    (s.lambda_2() + s.lambda_n()) / 2.0
}

/// Fixed-gain second-order coefficient `2 / (1 + sqrt(1 - lambda^2))`.
pub fn fixed_gain_beta(lambda: f64) -> Result<f64> {
    if !(lambda.abs() < 1.0) {
        return Err(Error::Domain(format!(
            "fixed-gain beta needs |lambda| < 1, got {lambda}"
        )));
    }
    Ok(2.0 / (1.0 + (1.0 - lambda * lambda).sqrt()))
}

/// Open upper bound `2 lambda / (lambda^2 + 1)` on a symmetric `lambda_M`
/// that still beats plain averaging at rate `lambda`.
pub fn safe_symmetric_bound(lambda: f64) -> Result<f64> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::Domain(format!(
            "safe_symmetric_bound needs 0 < lambda < 1, got {lambda}"
        )));
    }
    Ok(2.0 * lambda / (lambda * lambda + 1.0))
}

/// Whether `z` lies strictly inside the ellipse with foci `lambda_m`,
/// `lambda_M` whose right real vertex is 1. The boundary is excluded.
pub fn ellipse_contains(params: &ChebyParams, z: Complex64) -> bool {
    let (lo, hi) = (params.lambda_m(), params.lambda_max());
    let centre = (hi + lo) / 2.0;
    let e1 = 1.0 - centre;
    let e2 = ((1.0 - hi) * (1.0 - lo)).sqrt();
    let u = (z.re - centre) / e1;
    let v = z.im / e2;
    u * u + v * v < 1.0
}

/// The same region through Chebyshev growth rates:
/// `|tau(c z - d)| > tau(c - d)`.
pub fn tau_criterion(params: &ChebyParams, z: Complex64) -> bool {
    let w = z * params.c() - params.d();
    let base = tau_real(params.shift()).expect("valid params have shift > 1");
    tau_complex(w).norm() > base
}

/// Outcome of the fixed-topology convergence check.
#[derive(Debug, Clone, PartialEq)]
pub enum FixedVerdict {
    Pass,
    /// `lambda_N <= lambda_M + lambda_m - 1`.
    SmallestBelowBound {
        lambda_n: f64,
        bound: f64,
    },
    /// A complex eigenvalue outside the convergence ellipse.
    ComplexOutside(Complex64),
}

impl FixedVerdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Self::Pass)
    }
}

impl fmt::Display for FixedVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Pass => f.write_str("pass"),
            Self::SmallestBelowBound { lambda_n, bound } => write!(
                f,
                "fail: lambda_N = {lambda_n} is not above lambda_M + lambda_m - 1 = {bound}"
            ),
            Self::ComplexOutside(z) => {
                write!(
                    f,
                    "fail: complex eigenvalue {} {:+}i lies outside the ellipse",
                    z.re, z.im
                )
            }
        }
    }
}

/// Convergence of the fixed-topology iteration for a spectrum.
pub fn check_fixed_convergence(params: &ChebyParams, s: &Spectrum) -> FixedVerdict {
    let bound = params.divergence_bound();
    if !(s.lambda_n() > bound) {
        return FixedVerdict::SmallestBelowBound {
            lambda_n: s.lambda_n(),
            bound,
        };
    }
    match s.complex_eigs().iter().find(|&&z| !ellipse_contains(params, z)) {
        Some(&z) => FixedVerdict::ComplexOutside(z),
        None => FixedVerdict::Pass,
    }
}

/// Range of the non-unit eigenvalues over every matrix a switching sequence
/// may use.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SwitchingEnvelope {
    lambda_max: f64,
    lambda_min: f64,
}

impl SwitchingEnvelope {
    pub fn new(lambda_max: f64, lambda_min: f64) -> Result<Self> {
        if !(lambda_min > -1.0 && lambda_min <= lambda_max && lambda_max < 1.0) {
            return Err(Error::Domain(format!(
                "envelope needs -1 < lambda_min <= lambda_max < 1, got lambda_min={lambda_min}, lambda_max={lambda_max}"
            )));
        }
        Ok(Self { lambda_max, lambda_min })
    }

    /// Envelope of the real eigenvalues below the unit one across several
    /// spectra. Fails if any spectrum is disconnected.
    pub fn from_spectra<'a, I>(spectra: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a Spectrum>,
    {
        let mut hi = f64::NEG_INFINITY;
        let mut lo = f64::INFINITY;
        let mut any = false;
        for s in spectra {
            if s.is_disconnected() {
                return Err(Error::Disconnected);
            }
            hi = hi.max(s.lambda_2());
            lo = lo.min(s.lambda_n());
            any = true;
        }
        if !any {
            return Err(Error::Domain("envelope of an empty set of spectra".into()));
        }
        Self::new(hi, lo)
    }

    pub fn lambda_max(&self) -> f64 {
        self.lambda_max
    }

    pub fn lambda_min(&self) -> f64 {
        self.lambda_min
    }

    pub fn contains(&self, s: &Spectrum) -> bool {
        s.lambda_2() <= self.lambda_max && s.lambda_n() >= self.lambda_min
    }
}

/// Outcome of the switching-topology sufficient condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SwitchingCheck {
    /// `kappa1(max(|c lambda_max - d|, |c lambda_min - d|)) * tau(c - d)`.
    pub product: f64,
    pub pass: bool,
}

pub fn check_switching_convergence(params: &ChebyParams, env: &SwitchingEnvelope) -> SwitchingCheck {
    let spread = params
        .map(env.lambda_max())
        .abs()
        .max(params.map(env.lambda_min()).abs());
    let growth = kappa1(spread).expect("absolute value is non-negative");
    let decay = tau_real(params.shift()).expect("valid params have shift > 1");
    let product = growth * decay;
    SwitchingCheck {
        product,
        pass: product < 1.0,
    }
}

/// Symmetric interval half-width `sqrt(1 - lambda_max^2) - margin` that
/// satisfies the switching condition when `lambda_max >= |lambda_min|`.
pub fn corollary_symmetric_param(env: &SwitchingEnvelope, margin: f64) -> Result<f64> {
    if env.lambda_max() < env.lambda_min().abs() {
        return Err(Error::Domain(format!(
            "symmetric choice needs lambda_max >= |lambda_min|, got lambda_max={}, lambda_min={}",
            env.lambda_max(),
            env.lambda_min()
        )));
    }
    let bound = (1.0 - env.lambda_max() * env.lambda_max()).sqrt();
    let lambda = bound - margin;
    if !(lambda > 0.0) {
        return Err(Error::Domain(format!(
            "margin {margin} leaves no admissible symmetric interval below {bound}"
        )));
    }
    Ok(lambda)
}

/// Interval centred on `(lambda_max + lambda_min) / 2` with width
/// `sqrt(4 (1 - lambda_max)(1 - lambda_min)) - margin`.
///
/// When that interval would leave `(-1, 1)` the width shrinks around the same
/// centre until it fits, which keeps both conditions of the construction.
pub fn corollary_asymmetric_params(env: &SwitchingEnvelope, margin: f64) -> Result<ChebyParams> {
    let centre = (env.lambda_max() + env.lambda_min()) / 2.0;
    let bound = (4.0 * (1.0 - env.lambda_max()) * (1.0 - env.lambda_min())).sqrt();
    let width = (bound - margin).min(2.0 * (1.0 - centre.abs()) - margin);
    if !(width > 0.0) {
        return Err(Error::Domain(format!(
            "margin {margin} leaves no admissible interval around {centre}"
        )));
    }
    ChebyParams::new(centre - width / 2.0, centre + width / 2.0)
}
