//! Trigonometric-polynomial symmetric 2-tensor fields on the flat torus
//! `[0, 2pi)^m`, and pointwise curvature of `g = id + field` in an
//! orthonormal frame.
//!
//! Fields depend on at most two coordinates, so every integral over the
//! torus reduces to a 2-cell integral times a volume factor while the
//! tensors stay genuinely m-dimensional. Derivatives are analytic (the
//! field is a trig polynomial), so pointwise curvature carries no
//! truncation error, only f64 roundoff.


use crate::jet_geometry::{CurvatureValues, MetricJet, TruncatedPoly};
use crate::rational::{rat, rational_to_f64, Rational};
use crate::rng::Rng64;

use super::ModelError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Wave {
    /// `cos(u) - 1`: vanishes to second order at the origin, so a field built
    /// from these keeps the jet normalized there (exact-jet backgrounds).
    CosM1,
    Cos,
    Sin,
}

impl Wave {
    fn value(self, u: f64) -> f64 {
        match self {
            Wave::CosM1 => u.cos() - 1.0,
            Wave::Cos => u.cos(),
            Wave::Sin => u.sin(),
        }
    }

    fn d1(self, u: f64) -> f64 {
        match self {
            Wave::CosM1 | Wave::Cos => -u.sin(),
            Wave::Sin => u.cos(),
        }
    }

    fn d2(self, u: f64) -> f64 {
        match self {
            Wave::CosM1 | Wave::Cos => -u.cos(),
            Wave::Sin => -u.sin(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrigTerm {
    pub i: usize,
    pub j: usize,
    pub coords: (usize, usize),
    pub freq: (i32, i32),
    pub amp: Rational,
    pub wave: Wave,
}

/// A symmetric 2-tensor field `h_ij(x) = sum amp * wave(k . x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymTensorField {
    dim: usize,
    terms: Vec<TrigTerm>,
}

impl SymTensorField {
    pub fn new(dim: usize, terms: Vec<TrigTerm>) -> Self {
        for t in &terms {
            assert!(t.i <= t.j && t.j < dim);
            assert!(t.coords.0 < dim && t.coords.1 < dim);
        }
        SymTensorField { dim, terms }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[TrigTerm] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Short descriptor for reports.
    pub fn descriptor(&self) -> String {
        self.terms
            .iter()
            .map(|t| {
                let w = match t.wave {
                    Wave::CosM1 => "cos-1",
                    Wave::Cos => "cos",
                    Wave::Sin => "sin",
                };
                format!(
                    "h[{},{}] += {} {w}({}x{}+{}x{})",
                    t.i,
                    t.j,
                    crate::rational::format_rational(&t.amp),
                    t.freq.0,
                    t.coords.0,
                    t.freq.1,
                    t.coords.1
                )
            })
            .collect::<Vec<_>>()
            .join("; ")
    }

    /// Random background: cos-1 waves only, frequencies in -2..=2 on the
    /// first two coordinates, amplitudes small enough that `id + h` stays
    /// positive definite with a wide margin.
    pub fn random_background(dim: usize, seed: u64) -> Self {
        Self::random(dim, seed, true)
    }

    /// Random variation direction: mixed wave shapes, same footprint.
    pub fn random_direction(dim: usize, seed: u64) -> Self {
        Self::random(dim, seed, false)
    }

    fn random(dim: usize, seed: u64, background: bool) -> Self {
        assert!(dim >= 2);
        let mut rng = Rng64::new(seed);
        let mut terms = Vec::new();
        for i in 0..dim {
            for j in i..dim {
                for _ in 0..2 {
                    let (k1, k2) = loop {
                        let k1 = rng.int_in(-2, 2) as i32;
                        let k2 = rng.int_in(-2, 2) as i32;
                        if (k1, k2) != (0, 0) {
                            break (k1, k2);
                        }
                    };
                    let num = rng.int_in(1, 4) * if rng.below(2) == 0 { 1 } else { -1 };
                    // Denominator grows with dimension so id + h stays
                    // positive definite by diagonal dominance.
                    let amp = rat(num, 50 * dim as i64);
                    let wave = if background {
                        Wave::CosM1
                    } else {
                        match rng.below(3) {
                            0 => Wave::Cos,
                            1 => Wave::Sin,
                            _ => Wave::CosM1,
                        }
                    };
                    terms.push(TrigTerm { i, j, coords: (0, 1), freq: (k1, k2), amp, wave });
                }
            }
        }
        SymTensorField::new(dim, terms)
    }

    /// Termwise sum of two fields on the same torus.
    pub fn plus(&self, other: &SymTensorField) -> SymTensorField {
        assert_eq!(self.dim, other.dim);
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        SymTensorField::new(self.dim, terms)
    }

    /// Field with every amplitude scaled.
    pub fn scaled(&self, factor: &Rational) -> SymTensorField {
        let terms = self
            .terms
            .iter()
            .map(|t| TrigTerm { amp: &t.amp * factor, ..t.clone() })
            .collect();
        SymTensorField::new(self.dim, terms)
    }

    /// Field value as a full matrix.
    pub fn value(&self, x: &[f64]) -> Vec<f64> {
        let m = self.dim;
        let mut h = vec![0.0; m * m];
        for t in &self.terms {
            let u = t.freq.0 as f64 * x[t.coords.0] + t.freq.1 as f64 * x[t.coords.1];
            let v = rational_to_f64(&t.amp) * t.wave.value(u);
            h[t.i * m + t.j] += v;
            if t.i != t.j {
                h[t.j * m + t.i] += v;
            }
        }
        h
    }

    /// First derivatives: `out[k][i][j] = d_k h_ij`, flattened `k*m*m + i*m + j`.
    pub fn d1(&self, x: &[f64]) -> Vec<f64> {
        let m = self.dim;
        let mut out = vec![0.0; m * m * m];
        for t in &self.terms {
            let u = t.freq.0 as f64 * x[t.coords.0] + t.freq.1 as f64 * x[t.coords.1];
            let base = rational_to_f64(&t.amp) * t.wave.d1(u);
            for (c, k) in [(t.coords.0, t.freq.0), (t.coords.1, t.freq.1)] {
                if k == 0 {
                    continue;
                }
                // Same coordinate twice is allowed; contributions add.
                let v = base * k as f64;
                out[(c * m + t.i) * m + t.j] += v;
                if t.i != t.j {
                    out[(c * m + t.j) * m + t.i] += v;
                }
            }
        }
        out
    }

    /// Second derivatives: `out[((k*m)+l)*m*m + i*m + j] = d_k d_l h_ij`.
    pub fn d2(&self, x: &[f64]) -> Vec<f64> {
        let m = self.dim;
        let mut out = vec![0.0; m * m * m * m];
        for t in &self.terms {
            let u = t.freq.0 as f64 * x[t.coords.0] + t.freq.1 as f64 * x[t.coords.1];
            let base = rational_to_f64(&t.amp) * t.wave.d2(u);
            for (c1, k1) in [(t.coords.0, t.freq.0), (t.coords.1, t.freq.1)] {
                for (c2, k2) in [(t.coords.0, t.freq.0), (t.coords.1, t.freq.1)] {
                    if k1 == 0 || k2 == 0 {
                        continue;
                    }
                    let v = base * (k1 * k2) as f64;
                    out[((c1 * m + c2) * m + t.i) * m + t.j] += v;
                    if t.i != t.j {
                        out[((c1 * m + c2) * m + t.j) * m + t.i] += v;
                    }
                }
            }
        }
        out
    }

    /// Exact degree-4 Taylor jet of `id + h` at the origin. Only cos-1 waves
    /// are admissible: anything else breaks the normal-form normalization.
    pub fn exact_jet_at_origin(&self, order: u32) -> Result<MetricJet, ModelError> {
        let m = self.dim;
        for t in &self.terms {
            if t.wave != Wave::CosM1 {
                return Err(ModelError::DomainError(
                    "exact jets need cos-1 backgrounds (normalized at the origin)".into(),
                ));
            }
        }
        let mut g = vec![TruncatedPoly::zero(m, order); m * m];
        for i in 0..m {
            g[i * m + i] = TruncatedPoly::constant(m, order, Rational::from_integer(1.into()));
        }
        for t in &self.terms {
            // u = k1 x_{c1} + k2 x_{c2}; cos(u) - 1 = -u^2/2 + u^4/24 - ...
            let mut u = TruncatedPoly::zero(m, order);
            let mut e1 = vec![0u8; m];
            e1[t.coords.0] = 1;
            u.add_term(e1, rat(t.freq.0 as i64, 1));
            let mut e2 = vec![0u8; m];
            e2[t.coords.1] = 1;
            u.add_term(e2, rat(t.freq.1 as i64, 1));
            let u2 = u.mul(&u);
            let u4 = u2.mul(&u2);
            let mut wave = u2.scale(&rat(-1, 2));
            wave.add_assign(&u4.scale(&rat(1, 24)));
            if order >= 6 {
                let u6 = u4.mul(&u2);
                wave.add_assign(&u6.scale(&rat(-1, 720)));
            }
            let contrib = wave.scale(&t.amp);
            g[t.i * m + t.j].add_assign(&contrib);
            if t.i != t.j {
                g[t.j * m + t.i].add_assign(&contrib);
            }
        }
        MetricJet::new(m, order, g).map_err(ModelError::Jet)
    }
}

/// Pointwise curvature of `g = id + background + eps * direction` at `x`, in
/// an orthonormal frame, together with the frame transform of `direction`
/// and the volume density `sqrt(det g)`.
pub struct PointFrame {
    pub curvature: CurvatureValues<f64>,
    pub direction_frame: Vec<f64>,
    pub density: f64,
}

pub fn frame_curvature_at(
    background: &SymTensorField,
    direction: Option<(&SymTensorField, f64)>,
    x: &[f64],
) -> PointFrame {
    let m = background.dim();
    let mut g = background.value(x);
    let mut dg = background.d1(x);
    let mut d2g = background.d2(x);
    if let Some((h, eps)) = direction {
        for (a, b) in g.iter_mut().zip(h.value(x)) {
            *a += eps * b;
        }
        for (a, b) in dg.iter_mut().zip(h.d1(x)) {
            *a += eps * b;
        }
        for (a, b) in d2g.iter_mut().zip(h.d2(x)) {
            *a += eps * b;
        }
    }
    for i in 0..m {
        g[i * m + i] += 1.0;
    }

    let ginv = invert(&g, m);
    // dginv[p] = -ginv dg[p] ginv
    let mut dginv = vec![0.0; m * m * m];
    for p in 0..m {
        for i in 0..m {
            for j in 0..m {
                let mut acc = 0.0;
                for a in 0..m {
                    for b in 0..m {
                        acc -= ginv[i * m + a] * dg[(p * m + a) * m + b] * ginv[b * m + j];
                    }
                }
                dginv[(p * m + i) * m + j] = acc;
            }
        }
    }

    // Christoffel symbols and their derivatives.
    let chr = |dg: &[f64], i: usize, j: usize, l: usize| -> f64 {
        dg[(i * m + j) * m + l] + dg[(j * m + i) * m + l] - dg[(l * m + i) * m + j]
    };
    let mut gamma = vec![0.0; m * m * m]; // Gamma_{ij}^k
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                let mut acc = 0.0;
                for l in 0..m {
                    acc += ginv[k * m + l] * chr(&dg, i, j, l);
                }
                gamma[(i * m + j) * m + k] = 0.5 * acc;
            }
        }
    }
    // d_p d_q g_ij lookup; second derivatives are symmetric in (p, q).
    let d2 = |p: usize, q: usize, i: usize, j: usize| -> f64 {
        d2g[((p * m + q) * m + i) * m + j]
    };
    let mut dgamma = vec![0.0; m * m * m * m]; // [p][i][j][k]
    for p in 0..m {
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    let mut acc = 0.0;
                    for l in 0..m {
                        let dchr = d2(p, i, j, l) + d2(p, j, i, l) - d2(p, l, i, j);
                        acc += dginv[(p * m + k) * m + l] * chr(&dg, i, j, l)
                            + ginv[k * m + l] * dchr;
                    }
                    dgamma[((p * m + i) * m + j) * m + k] = 0.5 * acc;
                }
            }
        }
    }

    // R_{ijk}^l, lowered to R_{ijkl}.
    let mut r_low = vec![0.0; m * m * m * m];
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                for l_up in 0..m {
                    let mut v = dgamma[((i * m + j) * m + k) * m + l_up]
                        - dgamma[((j * m + i) * m + k) * m + l_up];
                    for n in 0..m {
                        v += gamma[(i * m + n) * m + l_up] * gamma[(j * m + k) * m + n]
                            - gamma[(j * m + n) * m + l_up] * gamma[(i * m + k) * m + n];
                    }
                    for l in 0..m {
                        r_low[((i * m + j) * m + k) * m + l] += v * g[l_up * m + l];
                    }
                }
            }
        }
    }

    // Orthonormal frame from the Cholesky factor: g = L L^T, B = L^{-1}.
    let l = cholesky(&g, m);
    let b = invert_lower(&l, m);
    let density: f64 = (0..m).map(|i| l[i * m + i]).product();

    let transformed = transform4(&r_low, &b, m);
    let mut curvature = CurvatureValues::<f64>::new_zero(m, 0);
    curvature.level_mut(0).copy_from_slice(&transformed);

    let mut direction_frame = vec![0.0; m * m];
    if let Some((h, _)) = direction {
        let hv = h.value(x);
        for a in 0..m {
            for bb in 0..m {
                let mut acc = 0.0;
                for i in 0..m {
                    for j in 0..m {
                        acc += b[a * m + i] * b[bb * m + j] * hv[i * m + j];
                    }
                }
                direction_frame[a * m + bb] = acc;
            }
        }
    }

    PointFrame { curvature, direction_frame, density }
}

fn invert(g: &[f64], m: usize) -> Vec<f64> {
    let mut a = g.to_vec();
    let mut inv = vec![0.0; m * m];
    for i in 0..m {
        inv[i * m + i] = 1.0;
    }
    for col in 0..m {
        let mut pr = col;
        for r in col + 1..m {
            if a[r * m + col].abs() > a[pr * m + col].abs() {
                pr = r;
            }
        }
        for c in 0..m {
            a.swap(col * m + c, pr * m + c);
            inv.swap(col * m + c, pr * m + c);
        }
        let pivot = a[col * m + col];
        for c in 0..m {
            a[col * m + c] /= pivot;
            inv[col * m + c] /= pivot;
        }
        for r in 0..m {
            if r != col {
                let f = a[r * m + col];
                if f != 0.0 {
                    for c in 0..m {
                        a[r * m + c] -= f * a[col * m + c];
                        inv[r * m + c] -= f * inv[col * m + c];
                    }
                }
            }
        }
    }
    inv
}

fn cholesky(g: &[f64], m: usize) -> Vec<f64> {
    let mut l = vec![0.0; m * m];
    for i in 0..m {
        for j in 0..=i {
            let mut s = g[i * m + j];
            for k in 0..j {
                s -= l[i * m + k] * l[j * m + k];
            }
            if i == j {
                assert!(s > 0.0, "metric lost positive definiteness");
                l[i * m + i] = s.sqrt();
            } else {
                l[i * m + j] = s / l[j * m + j];
            }
        }
    }
    l
}

fn invert_lower(l: &[f64], m: usize) -> Vec<f64> {
    let mut b = vec![0.0; m * m];
    for i in 0..m {
        b[i * m + i] = 1.0 / l[i * m + i];
        for j in 0..i {
            let mut s = 0.0;
            for k in j..i {
                s += l[i * m + k] * b[k * m + j];
            }
            b[i * m + j] = -s / l[i * m + i];
        }
    }
    b
}

/// Applies `B` to all four indices, one index at a time.
fn transform4(r: &[f64], b: &[f64], m: usize) -> Vec<f64> {
    let mut cur = r.to_vec();
    for _pass in 0..4 {
        // Transform the first index, then rotate indices: (i,j,k,l) -> (j,k,l,i').
        let mut next = vec![0.0; m * m * m * m];
        for rest in 0..m * m * m {
            for a in 0..m {
                let mut acc = 0.0;
                for i in 0..m {
                    acc += b[a * m + i] * cur[i * m * m * m + rest];
                }
                // Write to position (rest, a): the rotation appends the new
                // index at the end.
                next[rest * m + a] = acc;
            }
        }
        cur = next;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet_geometry::curvature_from_jet;

    #[test]
    fn flat_torus_has_zero_curvature() {
        let bg = SymTensorField::new(3, vec![]);
        let p = frame_curvature_at(&bg, None, &[0.3, 0.7, 0.0]);
        assert!(p.curvature.level(0).iter().all(|v| v.abs() < 1e-14));
        assert!((p.density - 1.0).abs() < 1e-14);
    }

    #[test]
    fn pointwise_curvature_matches_exact_jet_at_origin() {
        let bg = SymTensorField::random_background(3, 5);
        let x = [0.0, 0.0, 0.0];
        let numeric = frame_curvature_at(&bg, None, &x);
        let jet = bg.exact_jet_at_origin(2).unwrap();
        let exact = curvature_from_jet(&jet, 0).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        let e = rational_to_f64(exact.get([i, j, k, l], &[]));
                        let n = numeric.curvature.get([i, j, k, l], &[]);
                        assert!(
                            (e - n).abs() < 1e-10,
                            "R[{i}{j}{k}{l}]: exact {e}, numeric {n}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn frame_curvature_has_the_symmetries_everywhere() {
        let bg = SymTensorField::random_background(3, 9);
        let dir = SymTensorField::random_direction(3, 10);
        let x = [1.1, 2.3, 0.0];
        let p = frame_curvature_at(&bg, Some((&dir, 0.001)), &x);
        let r = |i, j, k, l| *p.curvature.get([i, j, k, l], &[]);
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        assert!((r(i, j, k, l) + r(j, i, k, l)).abs() < 1e-12);
                        assert!((r(i, j, k, l) + r(i, j, l, k)).abs() < 1e-12);
                        assert!((r(i, j, k, l) - r(k, l, i, j)).abs() < 1e-12);
                        let bianchi = r(i, j, k, l) + r(i, k, l, j) + r(i, l, j, k);
                        assert!(bianchi.abs() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn exact_jet_rejects_unnormalized_waves() {
        let field = SymTensorField::new(
            2,
            vec![TrigTerm {
                i: 0,
                j: 1,
                coords: (0, 1),
                freq: (1, 0),
                amp: rat(1, 10),
                wave: Wave::Sin,
            }],
        );
        assert!(field.exact_jet_at_origin(4).is_err());
    }
}
