//! Model geometries and the two experiments that need them: the closed-form
//! Gauss-Bonnet constant on sphere products (exact, with symbolic powers of
//! pi) and the finite-difference Euler-Lagrange experiment on perturbed flat
//! tori (the one floating-point corner of the crate).

mod gauss_bonnet;
mod model;
mod pi;
mod quadrature;
mod torus;
mod variation;

pub use gauss_bonnet::{gauss_bonnet_constant, gauss_bonnet_report, GaussBonnetReport, GbCheck};
pub use model::{model_curvature, ModelGeometry};
pub use pi::PiRational;
pub use quadrature::{integrate_2d_gated, QuadratureSpec};
pub use torus::{SymTensorField, TrigTerm, Wave};
pub use variation::{euler_lagrange_check, euler_lagrange_with, VariationOptions, VariationReport};

use thiserror::Error;

use crate::invariant_enum::EnumError;
use crate::jet_geometry::JetError;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("the Euler characteristic integrand is only defined for even dimension, got {0}")]
    OddDimension(usize),
    #[error("dimension {dim} unsupported here (max {max})")]
    UnsupportedDimension { dim: usize, max: usize },
    #[error("point outside chart: {0}")]
    DomainError(String),
    #[error("quadrature did not converge: coarse {coarse:e}, fine {fine:e}, relative deviation {relative:e} > {tol:e}")]
    QuadratureDiverged { coarse: f64, fine: f64, relative: f64, tol: f64 },
    #[error("variation experiment supports weight n in {{2,4}} and dimension m in {{n, n+1}}, got m={m}, n={n}")]
    UnsupportedVariation { m: usize, n: u32 },
    #[error(transparent)]
    Jet(#[from] JetError),
    #[error(transparent)]
    Enumeration(#[from] EnumError),
}
