//! Discovery and verification of universal identities: vanishing tests over
//! random evaluations, exact nullspaces of evaluation matrices, and
//! coefficient solving against the direct-sum oracles.
//!
//! Everything here is evaluation-based rather than rewrite-based: exact
//! rational arithmetic on randomized samples gives unconditional verdicts on
//! every tested instance and sidesteps multi-term canonicalization entirely.

mod catalog;
mod gram;
mod kernel;
mod nullspace;
mod sample;
mod solve;
mod vanish;

pub use catalog::{catalog, find_identity, KnownIdentity, VerifyKind};
pub use gram::{gram_relation_check, GramReport};
pub use kernel::{independent_subset, kernel_basis, kernel_basis_bounded, EvaluationMatrix, KernelReport};
pub use nullspace::{nullspace, rank};
pub use sample::{generate_sample, generate_samples, sample_count, SampleKind, SamplePlan};
pub use solve::solve_coefficients;
pub use vanish::{vanishing_test, vanishing_test_bounded};

use thiserror::Error;

use crate::invariant_enum::EnumError;
use crate::jet_geometry::JetError;
use crate::tensor_expr::TensorError;

#[derive(Debug, Error)]
pub enum LabError {
    #[error("too few trials: need at least {required}, got {got}")]
    TooFewTrials { required: usize, got: usize },
    #[error("inconclusive rank: {detail}; rerun with more trials")]
    Inconclusive { detail: String },
    #[error("inconsistent linear system: {detail}")]
    Inconsistent { detail: String },
    #[error("underdetermined system: rank {rank} < {cols} unknowns; more trials or a larger dimension needed")]
    Underdetermined { rank: usize, cols: usize },
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Jet(#[from] JetError),
    #[error(transparent)]
    Enumeration(#[from] EnumError),
}
