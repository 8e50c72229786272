//! Exact symbolic-numeric machinery for universal curvature invariants.
//!
//! The crate is organized around a pipeline:
//!
//! * [`tensor_expr`] — abstract-index curvature monomials, canonicalization
//!   under the mono-term symmetries, and rational linear combinations.
//! * [`invariant_enum`] — enumeration of full pair-contraction spanning sets
//!   and expansion of the wedge-contracted invariants (the Pfaffian family
//!   and its symmetric 2-form analogue) into canonical monomials.
//! * [`jet_geometry`] — exact evaluation backends: random metric jets,
//!   random algebraic curvature tensors, curvature from a jet, and explicit
//!   index-summation evaluation of invariant polynomials.
//! * [`identity_lab`] — vanishing tests, exact nullspaces of evaluation
//!   matrices, and coefficient solving against direct-sum oracles.
//! * [`geometry_models`] — closed-form sphere/product geometries, the
//!   Gauss-Bonnet constant, and finite-difference variational experiments
//!   on perturbed flat tori.
//!
//! All symbolic and linear-algebra paths are exact over arbitrary-precision
//! rationals; floating point appears only in the quadrature machinery of
//! [`geometry_models`].

pub mod geometry_models;
pub mod identity_lab;
pub mod invariant_enum;
pub mod jet_geometry;
pub mod rational;
pub mod rng;
pub mod tensor_expr;

pub use rational::{rat, Rational};
pub use rng::Rng64;
pub use tensor_expr::{
    CurvatureFactor, InvariantPolynomial, Label, Monomial, TensorError, Valence,
};

pub use geometry_models::{
    euler_lagrange_check, gauss_bonnet_constant, gauss_bonnet_report, model_curvature,
    GaussBonnetReport, ModelError, ModelGeometry, PiRational, QuadratureSpec, SymTensorField,
    VariationOptions, VariationReport,
};

pub use identity_lab::{
    catalog, find_identity, gram_relation_check, independent_subset, kernel_basis,
    solve_coefficients, vanishing_test, GramReport, KernelReport, KnownIdentity, LabError,
    VerifyKind,
};

pub use invariant_enum::{
    enumerate_spanning_set, pfaffian_expand, t2_expand, EnumError, EnumParams, GeneralizedDelta,
    SpanningSet,
};

pub use jet_geometry::{
    constant_curvature, curvature_from_jet, evaluate, pfaffian_direct, random_algebraic_curvature,
    random_metric_jet, sphere_normal_jet, t2_direct, CurvatureData, CurvatureValues, EvalOutput,
    EvalScalar, JetError, MetricJet, SymMat,
};
