//! Chebyshev-accelerated distributed average consensus.
//!
//! Agents on a communication graph repeatedly mix their state with their
//! neighbours through a row-stochastic weight matrix. Shifting and scaling the
//! weight matrix and running the Chebyshev three-term recurrence on it gives a
//! second-order iteration that converges much faster than plain averaging, on
//! fixed graphs and, under a spectral envelope condition, on switching ones.

// Negated comparisons are used on purpose so that NaN inputs are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cheby;
pub mod engine;
pub mod error;
pub mod graphs;
pub mod harness;
pub mod spectral;
pub mod weights;

pub use cheby::ChebyParams;
pub use engine::{ConsensusTrace, MethodKind, MethodSpec, RunOptions};
pub use error::{Error, Result};
pub use graphs::{Graph, Scenario, ScenarioConfig, ScenarioKind};
pub use weights::{WeightKind, WeightMatrix};
