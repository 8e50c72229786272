//! Enumeration of full pair-contraction spanning sets and expansion of the
//! wedge-contracted invariants into canonical monomials.
//!
//! Spanning sets are dimension-generic: no dimension-specific relation is
//! applied at enumeration time (that collapse is exactly what the kernel
//! machinery measures downstream), and multi-term identities such as the
//! first Bianchi identity are likewise left alone, so enumerated sets can be
//! larger than a minimal basis.

mod delta;
mod enumerate;
mod expand;

pub use delta::GeneralizedDelta;
pub use enumerate::{enumerate_spanning_set, EnumParams, SpanningSet};
pub use expand::{pfaffian_expand, t2_expand};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnumError {
    #[error("weight {weight} unsupported: must be even and <= {max}")]
    UnsupportedWeight { weight: u32, max: u32 },
    #[error("spanning-set element mismatch: {0}")]
    InvalidElement(String),
}
