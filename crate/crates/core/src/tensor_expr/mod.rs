//! Abstract-index curvature monomials and their rational linear combinations.
//!
//! A monomial is a product of curvature factors `R[i,j,k,l;a,...]` (four base
//! slots plus an ordered list of covariant-derivative slots) in which every
//! contraction label appears exactly twice, either across factor slots or on
//! the two slots of an optional symmetric free pair `s2[u,v]`. Scalar-valued
//! monomials have no free pair; symmetric-2-form valued monomials have one.
//!
//! Canonicalization reduces a monomial to a unique representative under
//! relabeling, factor permutation, and the sign symmetries of the curvature
//! factor, with the accumulated sign tracked. The first Bianchi identity is
//! deliberately *not* folded in here: it is a multi-term relation and is
//! handled downstream by evaluation-based linear algebra.

mod canonical;
mod monomial;
mod poly;
mod text;

pub use canonical::{canonicalize, CanonicalForm};
pub use monomial::{CurvatureFactor, Label, Monomial, TensorError, Valence};
pub use poly::InvariantPolynomial;
pub use text::{parse_monomial, parse_polynomial};
