//! Pointwise curvature data and its two generators.
//!
//! `CurvatureValues<T>` stores the components of `R` and its covariant
//! derivatives up to a requested order, in an orthonormal frame at a single
//! point. The exact alias `CurvatureData` is used everywhere outside the
//! floating-point quadrature paths.

use num_traits::Zero;

use crate::rational::Rational;
use crate::rng::Rng64;

use super::eval::EvalScalar;
use super::jet::MetricJet;
use super::poly::TruncatedPoly;
use super::JetError;

#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureValues<T> {
    dim: usize,
    max_deriv: usize,
    /// `levels[d]` holds the rank-(4+d) tensor `R_{ijkl;a_1...a_d}` flattened
    /// row-major; length `dim^(4+d)`.
    levels: Vec<Vec<T>>,
}

pub type CurvatureData = CurvatureValues<Rational>;

impl<T: EvalScalar> CurvatureValues<T> {
    pub fn new_zero(dim: usize, max_deriv: usize) -> Self {
        let levels = (0..=max_deriv)
            .map(|d| vec![T::zero(); dim.pow(4 + d as u32)])
            .collect();
        CurvatureValues { dim, max_deriv, levels }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn max_deriv(&self) -> usize {
        self.max_deriv
    }

    #[inline]
    pub fn flat(&self, base: [usize; 4], derivs: &[usize]) -> usize {
        let m = self.dim;
        let mut idx = ((base[0] * m + base[1]) * m + base[2]) * m + base[3];
        for &a in derivs {
            idx = idx * m + a;
        }
        idx
    }

    #[inline]
    pub fn get(&self, base: [usize; 4], derivs: &[usize]) -> &T {
        &self.levels[derivs.len()][self.flat(base, derivs)]
    }

    pub fn set(&mut self, base: [usize; 4], derivs: &[usize], v: T) {
        let idx = self.flat(base, derivs);
        self.levels[derivs.len()][idx] = v;
    }

    pub fn level(&self, d: usize) -> &[T] {
        &self.levels[d]
    }

    pub fn level_mut(&mut self, d: usize) -> &mut Vec<T> {
        &mut self.levels[d]
    }
}

impl CurvatureData {
    /// Rescales as under `g -> c^2 g`: the frame components of the order-`k`
    /// covariant derivative of `R` pick up `c^{-2-k}`.
    pub fn rescale_metric(&self, c: &Rational) -> CurvatureData {
        let mut out = self.clone();
        for d in 0..=self.max_deriv {
            let mut factor = Rational::from_integer(1.into());
            let inv = Rational::from_integer(1.into()) / c;
            for _ in 0..(2 + d) {
                factor *= &inv;
            }
            for v in out.levels[d].iter_mut() {
                *v *= &factor;
            }
        }
        out
    }

    /// Checks the algebraic curvature identities on every stored level:
    /// antisymmetry in the first and second slot pairs, pair exchange, and
    /// the first Bianchi identity.
    pub fn check_invariants(&self) -> Result<(), String> {
        let m = self.dim;
        for d in 0..=self.max_deriv {
            let mut derivs = vec![0usize; d];
            loop {
                for i in 0..m {
                    for j in 0..m {
                        for k in 0..m {
                            for l in 0..m {
                                let v = self.get([i, j, k, l], &derivs);
                                let anti1 = -self.get([j, i, k, l], &derivs).clone();
                                if *v != anti1 {
                                    return Err(format!("antisymmetry (1,2) fails at level {d}"));
                                }
                                let anti2 = -self.get([i, j, l, k], &derivs).clone();
                                if *v != anti2 {
                                    return Err(format!("antisymmetry (3,4) fails at level {d}"));
                                }
                                let pair = self.get([k, l, i, j], &derivs);
                                if v != pair {
                                    return Err(format!("pair exchange fails at level {d}"));
                                }
                                let bianchi = self.get([i, j, k, l], &derivs).clone()
                                    + self.get([i, k, l, j], &derivs)
                                    + self.get([i, l, j, k], &derivs);
                                if !bianchi.is_zero() {
                                    return Err(format!("first Bianchi fails at level {d}"));
                                }
                            }
                        }
                    }
                }
                // Advance the derivative multi-index.
                let mut p = 0;
                while p < d {
                    derivs[p] += 1;
                    if derivs[p] < m {
                        break;
                    }
                    derivs[p] = 0;
                    p += 1;
                }
                if p == d {
                    break;
                }
            }
        }
        Ok(())
    }

    /// JSON for fixture pinning; rationals as `"num/den"` strings.
    pub fn to_json(&self) -> serde_json::Value {
        use crate::rational::format_rational;
        let levels: Vec<Vec<String>> = self
            .levels
            .iter()
            .map(|l| l.iter().map(format_rational).collect())
            .collect();
        serde_json::json!({
            "dim": self.dim,
            "max_deriv": self.max_deriv,
            "levels": levels,
        })
    }
}

/// Constant-curvature data: `R_{ijkl} = kappa (d_il d_jk - d_ik d_jl)`,
/// the unit round sphere at `kappa = 1`.
pub fn constant_curvature(dim: usize, kappa: &Rational) -> CurvatureData {
    let mut c = CurvatureData::new_zero(dim, 0);
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                for l in 0..dim {
                    let mut v = Rational::zero();
                    if i == l && j == k {
                        v += kappa;
                    }
                    if i == k && j == l {
                        v -= kappa;
                    }
                    c.set([i, j, k, l], &[], v);
                }
            }
        }
    }
    c
}

/// Random algebraic curvature tensor `R = sum_t phi^t ^ phi^t` built from
/// random rational symmetric matrices, so every sample satisfies the
/// curvature symmetries and the first Bianchi identity by construction.
pub fn random_algebraic_curvature(dim: usize, seed: u64, num_terms: usize) -> CurvatureData {
    assert!(dim >= 1 && num_terms >= 1);
    let mut rng = Rng64::new(seed);
    let mut c = CurvatureData::new_zero(dim, 0);
    for _ in 0..num_terms {
        let mut phi = vec![Rational::zero(); dim * dim];
        for i in 0..dim {
            for j in i..dim {
                let v = rng.small_rational(9);
                phi[i * dim + j] = v.clone();
                phi[j * dim + i] = v;
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    for l in 0..dim {
                        let add = &phi[i * dim + l] * &phi[j * dim + k]
                            - &phi[i * dim + k] * &phi[j * dim + l];
                        let idx = c.flat([i, j, k, l], &[]);
                        c.level_mut(0)[idx] += add;
                    }
                }
            }
        }
    }
    c
}

fn mat_identity(dim: usize, order: u32) -> Vec<TruncatedPoly> {
    let mut id = vec![TruncatedPoly::zero(dim, order); dim * dim];
    for i in 0..dim {
        id[i * dim + i] = TruncatedPoly::constant(dim, order, Rational::from_integer(1.into()));
    }
    id
}

fn mat_mul(a: &[TruncatedPoly], b: &[TruncatedPoly], dim: usize, order: u32) -> Vec<TruncatedPoly> {
    let mut out = vec![TruncatedPoly::zero(dim, order); dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            let mut acc = TruncatedPoly::zero(dim, order);
            for k in 0..dim {
                acc.add_assign(&a[i * dim + k].mul(&b[k * dim + j]));
            }
            out[i * dim + j] = acc;
        }
    }
    out
}

/// Covariant derivative of a rank-`rank` covariant tensor of polynomials.
fn covariant_derivative(
    tensor: &[TruncatedPoly],
    rank: usize,
    gamma: &[TruncatedPoly],
    dim: usize,
    order: u32,
) -> Vec<TruncatedPoly> {
    let mut out = vec![TruncatedPoly::zero(dim, order); tensor.len() * dim];
    let mut index = vec![0usize; rank];
    for (flat, entry) in tensor.iter().enumerate() {
        // Decode the row-major index.
        let mut f = flat;
        for s in (0..rank).rev() {
            index[s] = f % dim;
            f /= dim;
        }
        for a in 0..dim {
            let mut v = entry.partial(a);
            for s in 0..rank {
                let is = index[s];
                for n in 0..dim {
                    // - Gamma_{a is}^n T_{... n ...}
                    let mut swapped = index.clone();
                    swapped[s] = n;
                    let tflat: usize = swapped.iter().fold(0, |acc, &x| acc * dim + x);
                    let g = &gamma[(a * dim + is) * dim + n];
                    v.add_assign(&g.mul(&tensor[tflat]).neg());
                }
            }
            out[flat * dim + a] = v;
        }
    }
    out
}

/// Curvature and covariant derivatives at the origin of a normalized jet.
///
/// The inverse metric is the Neumann series of `g - id` (exact in the
/// truncated ring), Christoffel symbols and curvature follow the classical
/// formulas, and `;` is iterated covariant differentiation.
pub fn curvature_from_jet(jet: &MetricJet, max_deriv: usize) -> Result<CurvatureData, JetError> {
    let needed = max_deriv as u32 + 2;
    if jet.order() < needed {
        return Err(JetError::TruncationTooLow {
            order: jet.order(),
            requested: max_deriv,
            needed,
        });
    }
    let m = jet.dim();
    let order = jet.order();

    if max_deriv == 0 {
        // At a normalized point the Christoffel symbols vanish, so the
        // curvature is a plain combination of second metric derivatives:
        // R_ijkl(0) = (g_jl/ki + g_ik/lj - g_jk/li - g_il/kj) / 2.
        let mut hess = vec![Rational::zero(); m * m * m * m];
        for i in 0..m {
            for j in i..m {
                let entry = jet.entry(i, j);
                for k in 0..m {
                    let dk = entry.partial(k);
                    for l in k..m {
                        let v = dk.partial(l).eval_zero();
                        for (a, b) in [(i, j), (j, i)] {
                            hess[((a * m + b) * m + k) * m + l] = v.clone();
                            hess[((a * m + b) * m + l) * m + k] = v.clone();
                        }
                    }
                }
            }
        }
        let h = |a: usize, b: usize, c: usize, d: usize| &hess[((a * m + b) * m + c) * m + d];
        let half = crate::rational::rat(1, 2);
        let mut data = CurvatureData::new_zero(m, 0);
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    for l in 0..m {
                        let v = (h(j, l, k, i) + h(i, k, l, j) - h(j, k, l, i) - h(i, l, k, j))
                            * &half;
                        data.set([i, j, k, l], &[], v);
                    }
                }
            }
        }
        return Ok(data);
    }

    let g: Vec<TruncatedPoly> = (0..m * m)
        .map(|f| jet.entry(f / m, f % m).clone())
        .collect();

    // g^{-1} = sum_k (-E)^k with E = g - id; E has valuation >= 2.
    let id = mat_identity(m, order);
    let e: Vec<TruncatedPoly> = g.iter().zip(id.iter()).map(|(a, b)| a.sub(b)).collect();
    let mut ginv = id.clone();
    let mut power = e.clone();
    let mut k = 1u32;
    while 2 * k <= order && power.iter().any(|p| !p.is_zero()) {
        for (o, p) in ginv.iter_mut().zip(power.iter()) {
            if k % 2 == 1 {
                o.add_assign(&p.neg());
            } else {
                o.add_assign(p);
            }
        }
        power = mat_mul(&power, &e, m, order);
        k += 1;
    }

    // Gamma_{ij}^k = 1/2 g^{kl} (d_i g_jl + d_j g_il - d_l g_ij)
    let half = crate::rational::rat(1, 2);
    let mut gamma = vec![TruncatedPoly::zero(m, order); m * m * m];
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                let mut acc = TruncatedPoly::zero(m, order);
                for l in 0..m {
                    let mut t = g[j * m + l].partial(i);
                    t.add_assign(&g[i * m + l].partial(j));
                    t.add_assign(&g[i * m + j].partial(l).neg());
                    acc.add_assign(&ginv[k * m + l].mul(&t));
                }
                gamma[(i * m + j) * m + k] = acc.scale(&half);
            }
        }
    }

    // R_{ijk}^l, then lower the last index with g.
    let mut r_up = vec![TruncatedPoly::zero(m, order); m * m * m * m];
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                for l in 0..m {
                    let mut v = gamma[(j * m + k) * m + l].partial(i);
                    v.add_assign(&gamma[(i * m + k) * m + l].partial(j).neg());
                    for n in 0..m {
                        v.add_assign(&gamma[(i * m + n) * m + l].mul(&gamma[(j * m + k) * m + n]));
                        v.add_assign(
                            &gamma[(j * m + n) * m + l].mul(&gamma[(i * m + k) * m + n]).neg(),
                        );
                    }
                    r_up[((i * m + j) * m + k) * m + l] = v;
                }
            }
        }
    }
    let mut r_low = vec![TruncatedPoly::zero(m, order); m * m * m * m];
    for i in 0..m * m * m {
        for l in 0..m {
            let mut acc = TruncatedPoly::zero(m, order);
            for a in 0..m {
                acc.add_assign(&r_up[i * m + a].mul(&g[a * m + l]));
            }
            r_low[i * m + l] = acc;
        }
    }

    let mut data = CurvatureData::new_zero(m, max_deriv);
    let mut tensor = r_low;
    let mut rank = 4;
    for d in 0..=max_deriv {
        for (flat, p) in tensor.iter().enumerate() {
            data.level_mut(d)[flat] = p.eval_zero();
        }
        if d < max_deriv {
            tensor = covariant_derivative(&tensor, rank, &gamma, m, order);
            rank += 1;
        }
    }
    Ok(data)
}
