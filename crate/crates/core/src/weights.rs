//! Weight matrices built from a graph, and checks of the stochasticity
//! assumptions the iterations rely on.
//!
//! Local-degree weights follow the rule `a_ij = 1 / (1 + max(d_i, d_j))` on
//! edges, with the diagonal absorbing the remainder of each row.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::Graph;

/// Row-sum and symmetry tolerance.
pub const STOCHASTIC_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WeightKind {
    #[serde(rename = "localdegree")]
    LocalDegree,
    /// `I - alpha L` with the best constant `alpha` for the Laplacian spectrum.
    #[serde(rename = "bestconstant")]
    BestConstant,
    /// `a_ij = 1 / (d_i + 1)` on the closed neighbourhood of `i`.
    #[serde(rename = "nonsymmetric")]
    NonSymmetric,
    /// Loaded from a file or built by hand.
    #[serde(rename = "custom")]
    Custom,
}

impl WeightKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::LocalDegree => "localdegree",
            Self::BestConstant => "bestconstant",
            Self::NonSymmetric => "nonsymmetric",
            Self::Custom => "custom",
        }
    }

    /// Whether constructions of this kind are symmetric by design.
    pub fn is_symmetric(&self) -> bool {
        matches!(self, Self::LocalDegree | Self::BestConstant)
    }
}

impl fmt::Display for WeightKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for WeightKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "localdegree" => Ok(Self::LocalDegree),
            "bestconstant" => Ok(Self::BestConstant),
            "nonsymmetric" => Ok(Self::NonSymmetric),
            "custom" => Ok(Self::Custom),
            other => Err(Error::Config(format!("unknown weight kind {other:?}"))),
        }
    }
}

/// Step size used by the best-constant construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantStep {
    /// `2 / (lambda_1(L) + lambda_{N-1}(L))`.
    pub optimal: f64,
    /// The value actually used.
    pub applied: f64,
    /// Set when `optimal * max_degree >= 1` forced `applied = 1 / (max_degree + 1)`.
    pub clamped: bool,
}

/// Dense row-stochastic weight matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightMatrix {
    entries: DMatrix<f64>,
    kind: WeightKind,
    step: Option<ConstantStep>,
}

impl WeightMatrix {
    /// Wraps an arbitrary square matrix. Nothing is validated here; see
    /// [`validate_assumption1`].
    pub fn from_matrix(entries: DMatrix<f64>, kind: WeightKind) -> Result<Self> {
        if !entries.is_square() {
            return Err(Error::Domain(format!(
                "weight matrix must be square, got {}x{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        Ok(Self {
            entries,
            kind,
            step: None,
        })
    }

    pub fn for_graph(g: &Graph, kind: WeightKind) -> Result<Self> {
        match kind {
            WeightKind::LocalDegree => Ok(local_degree_weights(g)),
            WeightKind::BestConstant => best_constant_weights(g),
            WeightKind::NonSymmetric => Ok(nonsymmetric_weights(g)),
            WeightKind::Custom => Err(Error::Unsupported(
                "custom weights cannot be derived from a graph".into(),
            )),
        }
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn kind(&self) -> WeightKind {
        self.kind
    }

    /// Best-constant step metadata, when applicable.
    pub fn step(&self) -> Option<ConstantStep> {
        self.step
    }

    pub fn n(&self) -> usize {
        self.entries.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[(i, j)]
    }

    /// Largest `|a_ij - a_ji|`.
    pub fn max_asymmetry(&self) -> f64 {
        let n = self.n();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i + 1..n {
                worst = worst.max((self.entries[(i, j)] - self.entries[(j, i)]).abs());
            }
        }
        worst
    }

    pub fn is_symmetric(&self) -> bool {
        self.max_asymmetry() <= STOCHASTIC_TOL
    }

    /// `y = A x`.
    pub fn apply(&self, x: &[f64], y: &mut [f64]) {
        let n = self.n();
        debug_assert_eq!(x.len(), n);
        debug_assert_eq!(y.len(), n);
        for (i, yi) in y.iter_mut().enumerate() {
            *yi = (0..n).map(|j| self.entries[(i, j)] * x[j]).sum();
        }
    }

    /// Dense CSV: one row per line, no header.
    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut w = csv::WriterBuilder::new().has_headers(false).from_path(path)?;
        for row in self.entries.row_iter() {
            w.write_record(row.iter().map(|v| v.to_string()))?;
        }
        w.flush()?;
        Ok(())
    }

    /// Reads a dense CSV written by [`WeightMatrix::write_csv`] as a custom matrix.
    pub fn read_csv(path: impl AsRef<Path>) -> Result<Self> {
        let mut r = csv::ReaderBuilder::new().has_headers(false).from_path(path)?;
        let mut rows: Vec<Vec<f64>> = Vec::new();
        for (k, rec) in r.records().enumerate() {
            let rec = rec?;
            let row = rec
                .iter()
                .map(|s| s.trim().parse::<f64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::Parse {
                    line: k + 1,
                    msg: e.to_string(),
                })?;
            rows.push(row);
        }
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Parse {
                line: 0,
                msg: format!("matrix with {n} rows is not square"),
            });
        }
        Self::from_matrix(DMatrix::from_fn(n, n, |i, j| rows[i][j]), WeightKind::Custom)
    }
}

/// Symmetric local-degree weights: `a_ij = 1 / (1 + max(d_i, d_j))` for edges.
pub fn local_degree_weights(g: &Graph) -> WeightMatrix {
    let n = g.n_nodes();
    let mut a = DMatrix::zeros(n, n);
    for (i, j) in g.edges() {
        let w = 1.0 / (1.0 + g.degree(i).max(g.degree(j)) as f64);
        a[(i, j)] = w;
        a[(j, i)] = w;
    }
    fill_diagonal(&mut a);
    WeightMatrix {
        entries: a,
        kind: WeightKind::LocalDegree,
        step: None,
    }
}

/// Graph Laplacian `D - Adj`.
pub fn laplacian(g: &Graph) -> DMatrix<f64> {
    let n = g.n_nodes();
    let mut l = DMatrix::zeros(n, n);
    for (i, j) in g.edges() {
        l[(i, j)] = -1.0;
        l[(j, i)] = -1.0;
    }
    for i in 0..n {
        l[(i, i)] = g.degree(i) as f64;
    }
    l
}

/// `2 / (lambda_1(L) + lambda_{N-1}(L))`: largest plus smallest positive
/// Laplacian eigenvalue. Fails on disconnected graphs.
pub fn best_constant_alpha(g: &Graph) -> Result<f64> {
    if g.n_nodes() < 2 || !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut eig = SymmetricEigen::new(laplacian(g)).eigenvalues.as_slice().to_vec();
    eig.sort_by(|a, b| a.total_cmp(b));
    let largest = eig[eig.len() - 1];
    let smallest_positive = eig[1];
    Ok(2.0 / (largest + smallest_positive))
}

/// `I - alpha L` with the best constant `alpha`.
///
/// When `alpha * max_degree >= 1` some diagonal entry would be zero or
/// negative, so `alpha` drops to `1 / (max_degree + 1)` and the result is
/// flagged through [`WeightMatrix::step`].
pub fn best_constant_weights(g: &Graph) -> Result<WeightMatrix> {
    let optimal = best_constant_alpha(g)?;
    let dmax = g.max_degree() as f64;
    let clamped = optimal * dmax >= 1.0;
    let applied = if clamped { 1.0 / (dmax + 1.0) } else { optimal };

    let n = g.n_nodes();
    let mut a = DMatrix::zeros(n, n);
    for (i, j) in g.edges() {
        a[(i, j)] = applied;
        a[(j, i)] = applied;
    }
    fill_diagonal(&mut a);
    Ok(WeightMatrix {
        entries: a,
        kind: WeightKind::BestConstant,
        step: Some(ConstantStep {
            optimal,
            applied,
            clamped,
        }),
    })
}

/// `a_ij = 1 / (d_i + 1)` for `j` in the closed neighbourhood of `i`.
pub fn nonsymmetric_weights(g: &Graph) -> WeightMatrix {
    let n = g.n_nodes();
    let mut a = DMatrix::zeros(n, n);
    for i in 0..n {
        let w = 1.0 / (g.degree(i) as f64 + 1.0);
        a[(i, i)] = w;
        for &j in g.neighbors(i) {
            a[(i, j)] = w;
        }
    }
    WeightMatrix {
        entries: a,
        kind: WeightKind::NonSymmetric,
        step: None,
    }
}

fn fill_diagonal(a: &mut DMatrix<f64>) {
    for i in 0..a.nrows() {
        let off: f64 = (0..a.ncols()).filter(|&j| j != i).map(|j| a[(i, j)]).sum();
        a[(i, i)] = 1.0 - off;
    }
}

/// First clause of a stochasticity assumption that a matrix violates.
#[derive(Debug, Clone, PartialEq)]
pub enum AssumptionViolation {
    Dimension {
        matrix: usize,
        graph: usize,
    },
    NonFinite {
        i: usize,
        j: usize,
    },
    RowSum {
        row: usize,
        sum: f64,
    },
    ZeroDiagonal {
        i: usize,
    },
    OffPattern {
        i: usize,
        j: usize,
        value: f64,
    },
    Asymmetric {
        i: usize,
        j: usize,
        diff: f64,
    },
    /// Diagonal entry not above `epsilon`.
    DegenerateDiagonal {
        i: usize,
        value: f64,
    },
    /// Nonzero off-diagonal entry outside `[epsilon, 1)`.
    DegenerateEntry {
        i: usize,
        j: usize,
        value: f64,
    },
}

impl fmt::Display for AssumptionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Dimension { matrix, graph } => {
                write!(f, "matrix has {matrix} rows but graph has {graph} nodes")
            }
            Self::NonFinite { i, j } => write!(f, "entry ({i}, {j}) is not finite"),
            Self::RowSum { row, sum } => write!(f, "row {row} sums to {sum}"),
            Self::ZeroDiagonal { i } => write!(f, "diagonal entry {i} is zero"),
            Self::OffPattern { i, j, value } => {
                write!(f, "entry ({i}, {j}) = {value} but ({i}, {j}) is not an edge")
            }
            Self::Asymmetric { i, j, diff } => {
                write!(f, "entries ({i}, {j}) and ({j}, {i}) differ by {diff:e}")
            }
            Self::DegenerateDiagonal { i, value } => {
                write!(f, "diagonal entry {i} = {value} is not above epsilon")
            }
            Self::DegenerateEntry { i, j, value } => {
                write!(f, "entry ({i}, {j}) = {value} is outside [epsilon, 1)")
            }
        }
    }
}

/// Outcome of an assumption check.
#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    Pass,
    Fail(AssumptionViolation),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Self::Pass)
    }
}

/// Row stochastic, nonzero diagonal, off-diagonal support inside the edge set.
pub fn validate_assumption1(w: &WeightMatrix, g: &Graph) -> Verdict {
    match check_assumption1(w, g) {
        Ok(()) => Verdict::Pass,
        Err(v) => Verdict::Fail(v),
    }
}

/// Assumption 1 plus symmetry and non-degeneracy: `a_ii > epsilon` and every
/// off-diagonal entry in `{0} U [epsilon, 1)`.
pub fn validate_assumption2(w: &WeightMatrix, g: &Graph, epsilon: f64) -> Verdict {
    let check = || -> std::result::Result<(), AssumptionViolation> {
        check_assumption1(w, g)?;
        let a = w.entries();
        let n = w.n();
        for i in 0..n {
            for j in i + 1..n {
                let diff = (a[(i, j)] - a[(j, i)]).abs();
                if diff > STOCHASTIC_TOL {
                    return Err(AssumptionViolation::Asymmetric { i, j, diff });
                }
            }
        }
        for i in 0..n {
            if !(a[(i, i)] > epsilon) {
                return Err(AssumptionViolation::DegenerateDiagonal { i, value: a[(i, i)] });
            }
            for j in (0..n).filter(|&j| j != i) {
                let value = a[(i, j)];
                if value != 0.0 && !(value >= epsilon && value < 1.0) {
                    return Err(AssumptionViolation::DegenerateEntry { i, j, value });
                }
            }
        }
        Ok(())
    };
    match check() {
        Ok(()) => Verdict::Pass,
        Err(v) => Verdict::Fail(v),
    }
}

fn check_assumption1(w: &WeightMatrix, g: &Graph) -> std::result::Result<(), AssumptionViolation> {
    let a = w.entries();
    let n = w.n();
    if n != g.n_nodes() {
        return Err(AssumptionViolation::Dimension {
            matrix: n,
            graph: g.n_nodes(),
        });
    }
    for i in 0..n {
        for j in 0..n {
            if !a[(i, j)].is_finite() {
                return Err(AssumptionViolation::NonFinite { i, j });
            }
        }
    }
    for i in 0..n {
        let sum: f64 = a.row(i).iter().sum();
        if (sum - 1.0).abs() > STOCHASTIC_TOL {
            return Err(AssumptionViolation::RowSum { row: i, sum });
        }
    }
    for i in 0..n {
        if a[(i, i)] == 0.0 {
            return Err(AssumptionViolation::ZeroDiagonal { i });
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && a[(i, j)] != 0.0 && !g.has_edge(i, j) {
                return Err(AssumptionViolation::OffPattern { i, j, value: a[(i, j)] });
            }
        }
    }
    Ok(())
}
