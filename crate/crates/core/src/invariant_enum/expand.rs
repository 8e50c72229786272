//! Expansion of the wedge-contracted invariants into canonical monomials.
//!
//! The defining sums contract chains of curvature factors against a
//! generalized Kronecker delta. Substituting the determinant as a signed
//! permutation sum turns each permutation into one contraction monomial,
//! which is canonicalized and collected: 24 terms at weight 4, 720 at
//! weight 6, 120 for the symmetric 2-form at weight 4.

use crate::rational::rat;
use crate::tensor_expr::{CurvatureFactor, InvariantPolynomial, Label, Monomial, Valence};

use super::delta::GeneralizedDelta;
use super::EnumError;

const MAX_PFAFFIAN: u32 = 6;
const MAX_T2: u32 = 4;

fn inverse_permutation(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0usize; perm.len()];
    for (a, &b) in perm.iter().enumerate() {
        inv[b] = a;
    }
    inv
}

/// The scalar wedge invariant of even weight `n` expanded over canonical
/// monomials (dimension-generic; curvature-only by construction).
pub fn pfaffian_expand(n: u32) -> Result<InvariantPolynomial, EnumError> {
    if n % 2 != 0 || n > MAX_PFAFFIAN {
        return Err(EnumError::UnsupportedWeight { weight: n, max: MAX_PFAFFIAN });
    }
    if n == 0 {
        return Ok(InvariantPolynomial::one());
    }
    let n = n as usize;
    let mut out = InvariantPolynomial::zero(Valence::Scalar, n as u32);
    for (perm, sign) in GeneralizedDelta::new(n).terms() {
        let inv = inverse_permutation(&perm);
        let factors: Vec<CurvatureFactor> = (0..n / 2)
            .map(|r| {
                CurvatureFactor::new(
                    [
                        Label(2 * r as u8),
                        Label(2 * r as u8 + 1),
                        Label(inv[2 * r + 1] as u8),
                        Label(inv[2 * r] as u8),
                    ],
                    vec![],
                )
            })
            .collect();
        out.accumulate(&Monomial::scalar(factors), rat(sign as i64, 1))
            .expect("expansion terms share weight and valence");
    }
    Ok(out)
}

/// The symmetric-2-form wedge invariant of even weight `n` (wedge rank
/// `n + 1`), expanded over canonical monomials.
pub fn t2_expand(n: u32) -> Result<InvariantPolynomial, EnumError> {
    if n % 2 != 0 || n > MAX_T2 {
        return Err(EnumError::UnsupportedWeight { weight: n, max: MAX_T2 });
    }
    let n = n as usize;
    let mut out = InvariantPolynomial::zero(Valence::Sym2, n as u32);
    for (perm, sign) in GeneralizedDelta::new(n + 1).terms() {
        let inv = inverse_permutation(&perm);
        let factors: Vec<CurvatureFactor> = (0..n / 2)
            .map(|r| {
                CurvatureFactor::new(
                    [
                        Label(2 * r as u8),
                        Label(2 * r as u8 + 1),
                        Label(inv[2 * r + 1] as u8),
                        Label(inv[2 * r] as u8),
                    ],
                    vec![],
                )
            })
            .collect();
        let sym2 = (Label(n as u8), Label(inv[n] as u8));
        out.accumulate(&Monomial::sym2(factors, sym2), rat(sign as i64, 1))
            .expect("expansion terms share weight and valence");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet_geometry::{
        evaluate_scalar, evaluate_sym2, pfaffian_direct, random_algebraic_curvature, t2_direct,
    };

    fn poly(s: &str) -> InvariantPolynomial {
        InvariantPolynomial::parse(s).unwrap()
    }

    #[test]
    fn weight_zero_is_the_constant_one() {
        assert_eq!(pfaffian_expand(0).unwrap(), InvariantPolynomial::one());
    }

    #[test]
    fn weight_two_is_twice_tau() {
        assert_eq!(pfaffian_expand(2).unwrap(), poly("2 R[a,b,b,a]"));
        assert_eq!(pfaffian_expand(2).unwrap().to_string(), "2 R[a,b,b,a]");
    }

    #[test]
    fn weight_four_collects_the_quadratic_combination() {
        let e4 = pfaffian_expand(4).unwrap();
        let expected = poly(
            "4 R[a,b,b,a] R[c,d,d,c] - 16 R[a,b,c,a] R[d,b,c,d] + 4 R[a,b,c,d] R[a,b,c,d]",
        );
        assert_eq!(e4, expected);
    }

    #[test]
    fn expansions_are_curvature_only() {
        for n in [0u32, 2, 4, 6] {
            let e = pfaffian_expand(n).unwrap();
            assert_eq!(e.max_deriv_order(), 0);
            assert_eq!(e.weight(), n);
        }
    }

    #[test]
    fn t2_weight_zero_is_the_metric() {
        assert_eq!(t2_expand(0).unwrap(), poly("s2[a,a]"));
    }

    #[test]
    fn t2_weight_two_matches_the_displayed_form() {
        let t = t2_expand(2).unwrap();
        assert_eq!(t, poly("2 R[a,b,b,a] s2[c,c] - 4 R[a,b,c,a] s2[b,c]"));
    }

    #[test]
    fn t2_terms_have_two_free_slots_and_the_right_weight() {
        for n in [0u32, 2, 4] {
            let t = t2_expand(n).unwrap();
            assert_eq!(t.valence(), Valence::Sym2);
            assert_eq!(t.weight(), n);
            for (m, _) in t.terms() {
                assert!(m.sym2.is_some());
                assert_eq!(m.weight(), n);
            }
        }
    }

    #[test]
    fn unsupported_weights_error() {
        assert!(pfaffian_expand(3).is_err());
        assert!(pfaffian_expand(8).is_err());
        assert!(t2_expand(6).is_err());
    }

    #[test]
    fn expansion_agrees_with_direct_sum() {
        for n in [2u32, 4] {
            let e = pfaffian_expand(n).unwrap();
            for m in [n as usize, n as usize + 1, n as usize + 2] {
                for seed in 0..10 {
                    let c = random_algebraic_curvature(m, seed, 3);
                    let via_expand = evaluate_scalar(&e, &c).unwrap();
                    let via_direct = pfaffian_direct(&c, n).unwrap();
                    assert_eq!(via_expand, via_direct, "n={n} m={m} seed={seed}");
                }
            }
        }
    }

    #[test]
    fn t2_expansion_agrees_with_direct_sum() {
        for n in [0u32, 2, 4] {
            let t = t2_expand(n).unwrap();
            for m in [n as usize + 1, n as usize + 2] {
                for seed in 0..6 {
                    let c = random_algebraic_curvature(m.max(2), seed, 3);
                    let via_expand = evaluate_sym2(&t, &c).unwrap();
                    let via_direct = t2_direct(&c, n).unwrap();
                    assert_eq!(via_expand, via_direct, "n={n} m={m} seed={seed}");
                }
            }
        }
    }
}
