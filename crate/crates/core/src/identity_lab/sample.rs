//! Deterministic sample streams for the evaluation experiments.

use crate::jet_geometry::{curvature_from_jet, random_algebraic_curvature, random_metric_jet, CurvatureData};
use crate::rng::Rng64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SampleKind {
    /// Curvature-only tensors built from symmetric matrices; fast, exact,
    /// and valid whenever no derivative monomials are involved.
    Algebraic,
    /// Jet-based samples carrying covariant derivatives.
    Jet,
    /// Both streams, interleaved algebraic-first.
    Mixed,
}

#[derive(Clone, Copy, Debug)]
pub struct SamplePlan {
    pub dim: usize,
    pub trials: usize,
    pub seed: u64,
    pub max_deriv: usize,
    pub kind: SampleKind,
    /// Numerator bound for random jet coefficients.
    pub coefficient_bound: i64,
}

impl SamplePlan {
    /// Picks the sample kind for a polynomial: jets whenever derivative
    /// monomials are present, algebraic otherwise.
    pub fn auto(dim: usize, trials: usize, seed: u64, max_deriv: usize) -> SamplePlan {
        let kind = if max_deriv == 0 { SampleKind::Algebraic } else { SampleKind::Jet };
        SamplePlan { dim, trials, seed, max_deriv, kind, coefficient_bound: 9 }
    }

    pub fn derived_seed(&self, index: usize) -> u64 {
        Rng64::substream(self.seed, index as u64).next_u64()
    }
}

/// Number of wedge terms per algebraic sample; enough to make the Ricci
/// tensor generic at desk scale.
const ALGEBRAIC_TERMS: usize = 3;

/// Total samples the plan will produce.
pub fn sample_count(plan: &SamplePlan) -> usize {
    match plan.kind {
        SampleKind::Mixed => 2 * plan.trials,
        _ => plan.trials,
    }
}

/// The `index`-th sample of the plan (algebraic samples first in a mixed
/// stream); streaming callers can stop early without paying for the rest.
pub fn generate_sample(plan: &SamplePlan, index: usize) -> CurvatureData {
    let algebraic = match plan.kind {
        SampleKind::Algebraic | SampleKind::Mixed => plan.trials,
        SampleKind::Jet => 0,
    };
    let seed = plan.derived_seed(index);
    if index < algebraic {
        random_algebraic_curvature(plan.dim, seed, ALGEBRAIC_TERMS)
    } else {
        let order = plan.max_deriv as u32 + 2;
        let jet = random_metric_jet(plan.dim, order, seed, plan.coefficient_bound);
        curvature_from_jet(&jet, plan.max_deriv)
            .expect("jet order chosen to cover the requested derivatives")
    }
}

pub fn generate_samples(plan: &SamplePlan) -> Vec<CurvatureData> {
    (0..sample_count(plan)).map(|i| generate_sample(plan, i)).collect()
}

pub fn seeds_used(plan: &SamplePlan) -> Vec<u64> {
    let count = match plan.kind {
        SampleKind::Mixed => 2 * plan.trials,
        _ => plan.trials,
    };
    (0..count).map(|i| plan.derived_seed(i)).collect()
}
