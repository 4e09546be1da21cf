//! Scalar Chebyshev machinery.
//!
//! First-kind polynomials `T_n`, the characteristic root `tau`, the shifted
//! and normalised polynomial `P_n(x) = T_n(cx - d) / T_n(c - d)`, and the
//! scalar quantities used to reason about switching topologies (`kappa1`,
//! alternating worst-case successions).
//!
//! Raw `T_n(c - d)` grows geometrically once `c - d > 1`, so everything the
//! iteration needs is expressed through the bounded ratios yielded by
//! [`TRatios`].

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Width of the band around `|x| = 1` where `sqrt(x^2 - 1)` is treated as zero.
const BRANCH_EPS: f64 = 1e-12;

/// Modulus difference below which the two roots of `tau^2 - 2 z tau + 1` tie.
const TIE_EPS: f64 = 1e-14;

/// `T_n(x)` by the three-term recurrence.
pub fn chebyshev_t(n: usize, x: f64) -> f64 {
    match n {
        0 => 1.0,
        1 => x,
        _ => {
            let (mut t0, mut t1) = (1.0, x);
            for _ in 2..=n {
                let t2 = 2.0 * x * t1 - t0;
                t0 = t1;
                t1 = t2;
            }
            t1
        }
    }
}

/// `T_n(x)` through its closed form `(tau^n + tau^-n) / 2`.
///
/// Inside `(-1, 1)` the root is complex with unit modulus. Next to the branch
/// points `x = +-1` the recurrence is used instead.
pub fn chebyshev_t_direct(n: usize, x: f64) -> f64 {
    if (x * x - 1.0).abs() < BRANCH_EPS {
        return chebyshev_t(n, x);
    }
    let exp = i32::try_from(n).unwrap_or(i32::MAX);
    if x.abs() > 1.0 {
        // |x| > 1 so tau_real cannot fail
        let t = tau_real(x).unwrap_or(f64::NAN);
        0.5 * (t.powi(exp) + t.powi(-exp))
    } else {
        let t = tau_complex(Complex64::new(x, 0.0));
        let tn = t.powi(exp);
        // |tau| = 1, so tau^-n is the conjugate of tau^n
        tn.re
    }
}

/// The real root of `tau^2 - 2x tau + 1 = 0` with modulus at most one.
///
/// Defined for `|x| >= 1`; returns `x - sqrt(x^2 - 1)` for positive `x` and
/// `x + sqrt(x^2 - 1)` for negative `x`.
pub fn tau_real(x: f64) -> Result<f64> {
    if x.is_nan() || x.abs() < 1.0 {
        return Err(Error::Domain(format!(
            "tau_real requires |x| >= 1, got {x}; use tau_complex"
        )));
    }
    let root = (x * x - 1.0).max(0.0).sqrt();
    // the small root is the reciprocal of the large one; this avoids cancellation
    Ok(if x >= 0.0 { 1.0 / (x + root) } else { 1.0 / (x - root) })
}

/// Complex `tau`: the root of `tau^2 - 2z tau + 1 = 0` with the smaller modulus.
///
/// When both roots have (numerically) the same modulus, which happens on the
/// real segment `[-1, 1]`, the root with non-negative imaginary part wins.
pub fn tau_complex(z: Complex64) -> Complex64 {
    let s = (z * z - 1.0).sqrt();
    let r1 = z - s;
    let r2 = z + s;
    let (m1, m2) = (r1.norm(), r2.norm());
    if (m1 - m2).abs() < TIE_EPS {
        return if r1.im >= 0.0 { r1 } else { r2 };
    }
    // roots are reciprocal; invert the large one for accuracy
    let large = if m1 > m2 { r1 } else { r2 };
    large.inv()
}

/// `kappa1(x) = x + sqrt(x^2 + 1)`, the growth root of `T*_n = 2x T*_{n-1} + T*_{n-2}`.
pub fn kappa1(x: f64) -> Result<f64> {
    if x.is_nan() || x < 0.0 {
        return Err(Error::Domain(format!("kappa1 requires x >= 0, got {x}")));
    }
    Ok(x + (x * x + 1.0).sqrt())
}

/// Interval `[lambda_m, lambda_M]` mapped onto `[-1, 1]` by `x -> c x - d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChebyParams {
    lambda_m: f64,
    lambda_max: f64,
    c: f64,
    d: f64,
}

impl ChebyParams {
    /// Requires `1 > lambda_max > lambda_m > -1`.
    pub fn new(lambda_m: f64, lambda_max: f64) -> Result<Self> {
        let ordered = lambda_max < 1.0 && lambda_max > lambda_m && lambda_m > -1.0;
        if !ordered {
            return Err(Error::InvalidParams { lambda_m, lambda_max });
        }
        let width = lambda_max - lambda_m;
        Ok(Self {
            lambda_m,
            lambda_max,
            c: 2.0 / width,
            d: (lambda_max + lambda_m) / width,
        })
    }

    /// `lambda_M = -lambda_m = lambda`.
    pub fn symmetric(lambda: f64) -> Result<Self> {
        Self::new(-lambda, lambda)
    }

    pub fn lambda_m(&self) -> f64 {
        self.lambda_m
    }

    /// Upper interval end `lambda_M`.
    pub fn lambda_max(&self) -> f64 {
        self.lambda_max
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    /// `c - d`, the image of 1 under the interval map. Always greater than one.
    pub fn shift(&self) -> f64 {
        self.c - self.d
    }

    /// `lambda_M + lambda_m - 1`: real eigenvalues at or below this make `|P_n| >= 1`.
    pub fn divergence_bound(&self) -> f64 {
        self.lambda_max + self.lambda_m - 1.0
    }

    /// Image of `x` under the interval map.
    pub fn map(&self, x: f64) -> f64 {
        self.c * x - self.d
    }

    /// Ratios of consecutive `T_n(c - d)` driving the iteration.
    pub fn ratios(&self) -> TRatios {
        TRatios::new(self.shift())
    }
}

/// Normalised ratios of `T_n(a)` for a fixed `a > 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TRatio {
    /// Polynomial degree `n >= 1`.
    pub n: usize,
    /// `T_{n-1}(a) / T_n(a)`.
    pub prev: f64,
    /// `T_{n-2}(a) / T_n(a)`; zero for `n = 1`.
    pub prev2: f64,
}

/// Infinite iterator over [`TRatio`] for `n = 1, 2, ...`.
///
/// Uses `rho_1 = 1/a`, `rho_n = 1 / (2a - rho_{n-1})`, so every stored value
/// stays in `(0, 1)` when `a > 1` instead of overflowing like `T_n(a)` itself.
#[derive(Debug, Clone)]
pub struct TRatios {
    shift: f64,
    n: usize,
    rho: f64,
}

impl TRatios {
    pub fn new(shift: f64) -> Self {
        Self { shift, n: 0, rho: 0.0 }
    }
}

impl Iterator for TRatios {
    type Item = TRatio;

    fn next(&mut self) -> Option<TRatio> {
        self.n += 1;
        if self.n == 1 {
            self.rho = 1.0 / self.shift;
            return Some(TRatio {
                n: 1,
                prev: self.rho,
                prev2: 0.0,
            });
        }
        let last = self.rho;
        self.rho = 1.0 / (2.0 * self.shift - last);
        Some(TRatio {
            n: self.n,
            prev: self.rho,
            prev2: last * self.rho,
        })
    }
}

/// `P_n(x) = T_n(cx - d) / T_n(c - d)`, evaluated by the normalised recurrence.
pub fn p_poly(n: usize, x: f64, params: &ChebyParams) -> f64 {
    let y = params.map(x);
    let (mut p0, mut p1) = (1.0, 1.0);
    for r in params.ratios().take(n) {
        let next = if r.n == 1 {
            r.prev * y
        } else {
            2.0 * r.prev * y * p1 - r.prev2 * p0
        };
        p0 = p1;
        p1 = next;
    }
    p1
}

/// Asymptotic per-round contraction of the Chebyshev iteration for a real
/// spectrum with extremes `lambda_2` and `lambda_n` (below the unit eigenvalue).
///
/// Eigenvalues inside the interval contribute `tau(c - d)`; eigenvalues
/// outside it contribute `tau(c - d) / |tau(c lambda - d)|`.
pub fn conv_factor_nu(params: &ChebyParams, lambda_2: f64, lambda_n: f64) -> Result<f64> {
    if !(lambda_2 < 1.0 && lambda_2 >= lambda_n && lambda_n > -1.0) {
        return Err(Error::Domain(format!(
            "conv_factor_nu requires 1 > lambda_2 >= lambda_N > -1, got lambda_2={lambda_2}, lambda_N={lambda_n}"
        )));
    }
    let base = tau_real(params.shift())?;
    if params.lambda_m() <= lambda_n && lambda_2 <= params.lambda_max() {
        return Ok(base);
    }
    let factor = |lambda: f64| base / tau_complex(Complex64::new(params.map(lambda), 0.0)).norm();
    Ok(factor(lambda_n).max(factor(lambda_2)))
}

/// Ordered sequence `lambda(1), lambda(2), ...` confined to an envelope.
#[derive(Debug, Clone, PartialEq)]
pub struct Succession {
    values: Vec<f64>,
    lambda_min: f64,
    lambda_max: f64,
}

impl Succession {
    pub fn new(values: Vec<f64>, lambda_min: f64, lambda_max: f64) -> Result<Self> {
        if !(lambda_min <= lambda_max) {
            return Err(Error::Domain(format!("empty envelope [{lambda_min}, {lambda_max}]")));
        }
        if let Some(v) = values.iter().find(|v| !(lambda_min..=lambda_max).contains(*v)) {
            return Err(Error::Domain(format!(
                "succession value {v} outside [{lambda_min}, {lambda_max}]"
            )));
        }
        Ok(Self {
            values,
            lambda_min,
            lambda_max,
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn envelope(&self) -> (f64, f64) {
        (self.lambda_min, self.lambda_max)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `T_n(Lambda)` with `n = self.len()`.
    pub fn eval_t(&self) -> f64 {
        eval_t_on_succession(&self.values)
    }
}

/// The alternating succession between `lambda_max` and `lambda_min`.
///
/// Odd positions (1-based) take `lambda_max` when `|lambda_min| <= lambda_max`,
/// and the parity is swapped otherwise.
pub fn worst_succession(n: usize, lambda_min: f64, lambda_max: f64) -> Result<Succession> {
    if n == 0 {
        return Err(Error::Domain("worst_succession requires n >= 1".into()));
    }
    if !(lambda_min < 0.0 && lambda_max > 0.0) {
        return Err(Error::Domain(format!(
            "worst_succession requires lambda_min < 0 < lambda_max, got [{lambda_min}, {lambda_max}]"
        )));
    }
    let (odd, even) = if lambda_min.abs() <= lambda_max {
        (lambda_max, lambda_min)
    } else {
        (lambda_min, lambda_max)
    };
    let values = (1..=n).map(|k| if k % 2 == 1 { odd } else { even }).collect();
    Succession::new(values, lambda_min, lambda_max)
}

/// `T_n(Lambda)`: `T_0 = 1`, `T_1 = lambda(1)`, `T_n = 2 lambda(n) T_{n-1} - T_{n-2}`.
pub fn eval_t_on_succession(values: &[f64]) -> f64 {
    let Some((&first, rest)) = values.split_first() else {
        return 1.0;
    };
    let (mut t0, mut t1) = (1.0, first);
    for &lambda in rest {
        let t2 = 2.0 * lambda * t1 - t0;
        t0 = t1;
        t1 = t2;
    }
    t1
}
