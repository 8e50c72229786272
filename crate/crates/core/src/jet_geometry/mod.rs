//! Exact evaluation backend.
//!
//! Provides the two sample generators (random metric jets and random
//! algebraic curvature tensors), curvature computation from a jet, explicit
//! index-summation evaluation of invariant polynomials, and the direct
//! defining-sum evaluation of the wedge-contracted invariants. The direct
//! sums deliberately bypass the symbolic expansion so the two routes can be
//! checked against each other.

mod curvature;
mod direct;
mod eval;
mod jet;
mod poly;

pub use curvature::{
    constant_curvature, curvature_from_jet, random_algebraic_curvature, CurvatureData,
    CurvatureValues,
};
pub use direct::{permutations_with_sign, pfaffian_direct, t2_direct};
pub use eval::{
    evaluate, evaluate_scalar, evaluate_scalar_exact, evaluate_sym2, evaluate_sym2_exact,
    EvalOutput, EvalScalar, SymMat,
};
pub use jet::{random_metric_jet, sphere_normal_jet, MetricJet};
pub use poly::TruncatedPoly;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum JetError {
    #[error("truncation order {order} too low: computing {requested} covariant derivatives needs order >= {needed}")]
    TruncationTooLow { order: u32, requested: usize, needed: u32 },
    #[error("jet is not in normal form: {0}")]
    NotNormalized(String),
    #[error("curvature data has {available} derivative orders, polynomial needs {needed}")]
    InsufficientDerivatives { available: usize, needed: usize },
    #[error("dimension mismatch: data is dimension {data}, requested {requested}")]
    DimensionMismatch { data: usize, requested: usize },
    #[error("weight {weight} is not supported here (must be even and <= {max})")]
    UnsupportedWeight { weight: u32, max: u32 },
}
