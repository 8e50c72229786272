//! Metric jets: truncated Taylor expansions of a metric at a point, in
//! coordinates normalized so that `g_ij(0) = delta_ij` and `dg_ij(0) = 0`.
//! At such a point the coordinate components of curvature coincide with
//! orthonormal-frame components.

use num_traits::{One, Zero};

use crate::rational::{rat, Rational};
use crate::rng::Rng64;

use super::poly::TruncatedPoly;
use super::JetError;

#[derive(Clone, Debug)]
pub struct MetricJet {
    dim: usize,
    order: u32,
    /// Row-major `dim * dim` symmetric matrix of truncated polynomials.
    g: Vec<TruncatedPoly>,
}

impl MetricJet {
    /// Wraps entries after checking the normal-form invariants.
    pub fn new(dim: usize, order: u32, g: Vec<TruncatedPoly>) -> Result<Self, JetError> {
        assert_eq!(g.len(), dim * dim);
        let jet = MetricJet { dim, order, g };
        jet.validate()?;
        Ok(jet)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn entry(&self, i: usize, j: usize) -> &TruncatedPoly {
        &self.g[i * self.dim + j]
    }

    fn validate(&self) -> Result<(), JetError> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let e = self.entry(i, j);
                if e != self.entry(j, i) {
                    return Err(JetError::NotNormalized(format!("g_{i}{j} != g_{j}{i}")));
                }
                let expect = if i == j { Rational::one() } else { Rational::zero() };
                if e.eval_zero() != expect {
                    return Err(JetError::NotNormalized(format!(
                        "g_{i}{j}(0) != delta_{i}{j}"
                    )));
                }
                let off = e.sub(&TruncatedPoly::constant(self.dim, self.order, expect));
                if let Some(v) = off.valuation() {
                    if v < 2 {
                        return Err(JetError::NotNormalized(format!(
                            "g_{i}{j} has nonzero first derivatives at 0"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Enumerates exponent vectors of total degree in `[min_deg, max_deg]`.
fn multi_indices(dim: usize, min_deg: u32, max_deg: u32) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut current = vec![0u8; dim];
    fn rec(pos: usize, remaining: u32, current: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if pos + 1 == current.len() {
            current[pos] = remaining as u8;
            out.push(current.clone());
            return;
        }
        for d in 0..=remaining {
            current[pos] = d as u8;
            rec(pos + 1, remaining - d, current, out);
        }
    }
    for deg in min_deg..=max_deg {
        rec(0, deg, &mut current, &mut out);
    }
    out
}

/// Random normalized metric jet: identity at the origin, no linear terms,
/// and uniformly random small-rational coefficients on every monomial of
/// degree 2..=order. `coefficient_bound = 0` gives the flat jet.
pub fn random_metric_jet(dim: usize, order: u32, seed: u64, coefficient_bound: i64) -> MetricJet {
    assert!(dim >= 1 && order >= 2);
    let mut rng = Rng64::new(seed);
    let mut g = vec![TruncatedPoly::zero(dim, order); dim * dim];
    let indices = multi_indices(dim, 2, order);
    for i in 0..dim {
        for j in i..dim {
            let mut e = TruncatedPoly::zero(dim, order);
            if i == j {
                e.add_term(vec![0; dim], Rational::one());
            }
            for expo in &indices {
                e.add_term(expo.clone(), rng.small_rational(coefficient_bound));
            }
            g[i * dim + j] = e.clone();
            g[j * dim + i] = e;
        }
    }
    MetricJet::new(dim, order, g).expect("random jet is normalized by construction")
}

/// Degree-4 normal-coordinate jet of the round sphere `S^p` of the given
/// rational radius:
///
/// `g_ij = delta_ij (1 - q/3 + 2 q^2/45) + x_i x_j (1/(3 r^2) - 2 |x|^2/(45 r^4))`
///
/// with `q = |x|^2 / r^2`.
pub fn sphere_normal_jet(dim: usize, radius: Rational) -> MetricJet {
    assert!(dim >= 2);
    let order = 4u32;
    let r2 = &radius * &radius;
    let r4 = &r2 * &r2;

    // |x|^2 as a polynomial.
    let mut norm2 = TruncatedPoly::zero(dim, order);
    for k in 0..dim {
        let mut e = vec![0u8; dim];
        e[k] = 2;
        norm2.add_term(e, Rational::one());
    }
    let norm4 = norm2.mul(&norm2);

    let mut g = vec![TruncatedPoly::zero(dim, order); dim * dim];
    for i in 0..dim {
        for j in i..dim {
            let mut e = TruncatedPoly::zero(dim, order);
            if i == j {
                e.add_term(vec![0; dim], Rational::one());
                e.add_assign(&norm2.scale(&(rat(-1, 3) / &r2)));
                e.add_assign(&norm4.scale(&(rat(2, 45) / &r4)));
            }
            // x_i x_j coefficient polynomial.
            let mut xij = vec![0u8; dim];
            xij[i] += 1;
            xij[j] += 1;
            let mut xx = TruncatedPoly::zero(dim, order);
            xx.add_term(xij, Rational::one());
            e.add_assign(&xx.scale(&(rat(1, 3) / &r2)));
            e.add_assign(&xx.mul(&norm2).scale(&(rat(-2, 45) / &r4)));
            g[i * dim + j] = e.clone();
            g[j * dim + i] = e;
        }
    }
    MetricJet::new(dim, order, g).expect("sphere jet is normalized")
}
