//! Vanishing tests: does a universal polynomial evaluate to zero for every
//! generated sample in a given dimension?

use crate::jet_geometry::evaluate;
use crate::tensor_expr::InvariantPolynomial;

use super::sample::{generate_sample, sample_count, SampleKind, SamplePlan};
use super::LabError;

/// True iff `p` evaluates to exactly zero on every sample in dimension `m`.
///
/// Curvature-only polynomials are tried on both algebraic and jet samples
/// (`trials` of each); polynomials with derivative monomials use jets.
/// Exact arithmetic plus `trials >= 20` makes a false positive practically
/// impossible (a nonzero polynomial would have to vanish on every sample).
pub fn vanishing_test(
    p: &InvariantPolynomial,
    m: usize,
    trials: usize,
    seed: u64,
) -> Result<bool, LabError> {
    vanishing_test_bounded(p, m, trials, seed, 9)
}

/// Same test with an explicit numerator bound for the jet coefficients.
pub fn vanishing_test_bounded(
    p: &InvariantPolynomial,
    m: usize,
    trials: usize,
    seed: u64,
    coefficient_bound: i64,
) -> Result<bool, LabError> {
    if trials < 20 {
        return Err(LabError::TooFewTrials { required: 20, got: trials });
    }
    if p.is_zero() {
        return Ok(true);
    }
    let mut plan = SamplePlan::auto(m, trials, seed, p.max_deriv_order());
    plan.coefficient_bound = coefficient_bound;
    if p.max_deriv_order() == 0 {
        plan.kind = SampleKind::Mixed;
    }
    // Streamed so a counterexample returns without generating the rest.
    for index in 0..sample_count(&plan) {
        let sample = generate_sample(&plan, index);
        if !evaluate(p, &sample)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::InvariantPolynomial;

    #[test]
    fn tau_vanishes_in_dim_one() {
        let tau = InvariantPolynomial::parse("R[a,b,b,a]").unwrap();
        assert!(vanishing_test(&tau, 1, 20, 3).unwrap());
        assert!(!vanishing_test(&tau, 2, 20, 3).unwrap());
    }

    #[test]
    fn quadratic_identity_vanishes_in_dim_three_only() {
        let combo = InvariantPolynomial::parse(
            "R[a,b,b,a] R[c,d,d,c] - 4 R[a,b,c,a] R[d,b,c,d] + R[a,b,c,d] R[a,b,c,d]",
        )
        .unwrap();
        assert!(vanishing_test(&combo, 2, 20, 3).unwrap());
        assert!(vanishing_test(&combo, 3, 20, 3).unwrap());
        assert!(!vanishing_test(&combo, 4, 20, 3).unwrap());
    }

    #[test]
    fn trial_floor_is_enforced() {
        let tau = InvariantPolynomial::parse("R[a,b,b,a]").unwrap();
        assert!(matches!(
            vanishing_test(&tau, 1, 5, 3),
            Err(LabError::TooFewTrials { required: 20, got: 5 })
        ));
    }
}
