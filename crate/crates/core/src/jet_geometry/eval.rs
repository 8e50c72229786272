//! Evaluation of invariant polynomials by explicit index summation.
//!
//! Contractions are summed over all index assignments `1..=dim` for every
//! contraction label. Monomials are split into connected components (factors
//! linked by shared labels) so disconnected pieces multiply instead of
//! inflating the summation depth. Scalar type is generic: exact rationals
//! everywhere, `f64` only inside the quadrature machinery.

use num_traits::{One, Zero};

use crate::rational::{rational_to_f64, Rational};
use crate::tensor_expr::{InvariantPolynomial, Label, Monomial, Valence};

use super::curvature::CurvatureValues;
use super::JetError;

/// Minimal scalar interface for the evaluation loops.
pub trait EvalScalar: Clone + PartialEq + std::fmt::Debug + Zero + One {
    fn add_assign_ref(&mut self, other: &Self);
    fn mul_ref(&self, other: &Self) -> Self;
    fn from_rational(r: &Rational) -> Self;
}

impl EvalScalar for Rational {
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
}

impl EvalScalar for f64 {
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn from_rational(r: &Rational) -> Self {
        rational_to_f64(r)
    }
}

/// Machine-integer scalar for the internal fast path: curvature data scaled
/// to a common denominator. Only integral rationals convert.
impl EvalScalar for i128 {
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn from_rational(r: &Rational) -> Self {
        assert!(
            r.denom() == &num_bigint::BigInt::from(1),
            "integer fast path fed a non-integral coefficient"
        );
        i128::try_from(r.numer().clone()).expect("coefficient fits i128")
    }
}

/// Symmetric matrix with packed upper-triangular storage.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMat<T> {
    dim: usize,
    data: Vec<T>,
}

impl<T: EvalScalar> SymMat<T> {
    pub fn zero(dim: usize) -> Self {
        SymMat { dim, data: vec![T::zero(); dim * (dim + 1) / 2] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    fn idx(&self, u: usize, v: usize) -> usize {
        let (u, v) = if u <= v { (u, v) } else { (v, u) };
        u * self.dim - u * (u + 1) / 2 + v
    }

    pub fn get(&self, u: usize, v: usize) -> &T {
        &self.data[self.idx(u, v)]
    }

    pub fn add_at(&mut self, u: usize, v: usize, value: &T) {
        let i = self.idx(u, v);
        self.data[i].add_assign_ref(value);
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (a, b) in self.data.iter_mut().zip(other.data.iter()) {
            a.add_assign_ref(b);
        }
    }

    pub fn scale(&self, r: &T) -> Self {
        SymMat { dim: self.dim, data: self.data.iter().map(|v| v.mul_ref(r)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    /// Frobenius pairing `sum_{u,v} A_uv B_uv` (off-diagonal counted twice).
    pub fn pairing(&self, other: &Self) -> T {
        let mut acc = T::zero();
        for u in 0..self.dim {
            for v in u..self.dim {
                let p = self.get(u, v).mul_ref(other.get(u, v));
                acc.add_assign_ref(&p);
                if u != v {
                    acc.add_assign_ref(&p);
                }
            }
        }
        acc
    }
}

/// Result of evaluating a polynomial: a number or a symmetric matrix.
#[derive(Clone, Debug, PartialEq)]
pub enum EvalOutput {
    Scalar(Rational),
    Sym2(SymMat<Rational>),
}

impl EvalOutput {
    pub fn is_zero(&self) -> bool {
        match self {
            EvalOutput::Scalar(r) => r.is_zero(),
            EvalOutput::Sym2(m) => m.is_zero(),
        }
    }

    pub fn as_scalar(&self) -> Option<&Rational> {
        match self {
            EvalOutput::Scalar(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_sym2(&self) -> Option<&SymMat<Rational>> {
        match self {
            EvalOutput::Sym2(m) => Some(m),
            _ => None,
        }
    }
}

/// A factor prepared for the summation loop: local label indices per slot.
struct PreparedFactor {
    base: [usize; 4],
    derivs: Vec<usize>,
}

/// One connected component of a monomial's contraction graph.
struct Component {
    factors: Vec<PreparedFactor>,
    /// Local label ids (indices into the assignment vector) in scan order.
    labels: Vec<usize>,
    /// Positions (within `labels`) of the free-pair labels it contains.
    free_positions: Vec<(usize, u8)>, // (position in labels, 0 or 1 for u/v)
}

fn split_components(m: &Monomial) -> (Vec<Component>, Option<(Label, Label)>) {
    let labels = m.labels_in_order();
    let lid = |l: Label| labels.iter().position(|&x| x == l).unwrap();

    // Union-find over labels.
    let mut parent: Vec<usize> = (0..labels.len()).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
        }
        parent[x]
    }
    let union = |parent: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(parent, a), find(parent, b));
        if ra != rb {
            parent[ra] = rb;
        }
    };
    for f in &m.factors {
        let slots: Vec<usize> = f.slots().map(lid).collect();
        for w in slots.windows(2) {
            union(&mut parent, w[0], w[1]);
        }
    }
    if let Some((u, v)) = m.sym2 {
        // The free pair itself links its two labels into one component so a
        // factor-free metric monomial still forms a component.
        union(&mut parent, lid(u), lid(v));
    }

    let mut components: Vec<Component> = Vec::new();
    let mut root_of_component: Vec<usize> = Vec::new();
    let mut component_of_label = vec![usize::MAX; labels.len()];
    for i in 0..labels.len() {
        let r = find(&mut parent, i);
        let c = match root_of_component.iter().position(|&x| x == r) {
            Some(c) => c,
            None => {
                root_of_component.push(r);
                components.push(Component {
                    factors: Vec::new(),
                    labels: Vec::new(),
                    free_positions: Vec::new(),
                });
                components.len() - 1
            }
        };
        component_of_label[i] = c;
        components[c].labels.push(i);
    }

    for f in &m.factors {
        let slots: Vec<usize> = f.slots().map(lid).collect();
        let c = component_of_label[slots[0]];
        let comp = &mut components[c];
        let local = |comp: &Component, gid: usize| comp.labels.iter().position(|&x| x == gid).unwrap();
        let base = [
            local(comp, slots[0]),
            local(comp, slots[1]),
            local(comp, slots[2]),
            local(comp, slots[3]),
        ];
        let derivs = slots[4..].iter().map(|&g| local(comp, g)).collect();
        comp.factors.push(PreparedFactor { base, derivs });
    }

    if let Some((u, v)) = m.sym2 {
        let (gu, gv) = (lid(u), lid(v));
        let cu = component_of_label[gu];
        let comp = &mut components[cu];
        let pu = comp.labels.iter().position(|&x| x == gu).unwrap();
        comp.free_positions.push((pu, 0));
        let cv = component_of_label[gv];
        if u != v {
            let comp = &mut components[cv];
            let pv = comp.labels.iter().position(|&x| x == gv).unwrap();
            comp.free_positions.push((pv, 1));
        } else {
            // Metric-type free pair: one label used twice.
            let comp = &mut components[cu];
            comp.free_positions.push((pu, 1));
        }
    }

    (components, m.sym2)
}

/// Sums a component over all assignments of its labels, dispatching the
/// product into `sink(u_value, v_value, product)` where missing free labels
/// report `usize::MAX`.
fn sweep_component<T: EvalScalar>(
    comp: &Component,
    data: &CurvatureValues<T>,
    mut sink: impl FnMut(usize, usize, &T),
) {
    let m = data.dim();
    let nl = comp.labels.len();
    let mut assign = vec![0usize; nl];
    loop {
        let mut prod = T::one();
        let mut zero = false;
        for f in &comp.factors {
            let base = [
                assign[f.base[0]],
                assign[f.base[1]],
                assign[f.base[2]],
                assign[f.base[3]],
            ];
            let derivs: Vec<usize> = f.derivs.iter().map(|&p| assign[p]).collect();
            let v = data.get(base, &derivs);
            if v.is_zero() {
                zero = true;
                break;
            }
            prod = prod.mul_ref(v);
        }
        if !zero {
            let mut u_val = usize::MAX;
            let mut v_val = usize::MAX;
            for &(pos, which) in &comp.free_positions {
                if which == 0 {
                    u_val = assign[pos];
                } else {
                    v_val = assign[pos];
                }
            }
            sink(u_val, v_val, &prod);
        }
        // Odometer.
        let mut p = 0;
        while p < nl {
            assign[p] += 1;
            if assign[p] < m {
                break;
            }
            assign[p] = 0;
            p += 1;
        }
        if p == nl {
            break;
        }
    }
}

fn eval_monomial_scalar<T: EvalScalar>(m: &Monomial, data: &CurvatureValues<T>) -> T {
    let (components, _) = split_components(m);
    let mut total = T::one();
    for comp in &components {
        let mut sum = T::zero();
        sweep_component(comp, data, |_, _, p| sum.add_assign_ref(p));
        if sum.is_zero() {
            return T::zero();
        }
        total = total.mul_ref(&sum);
    }
    total
}

/// Raw symmetric evaluation: the full (possibly asymmetric) accumulation
/// `A_uv` over assignments, and the product of the purely scalar components.
/// The caller symmetrizes: `M_uv = (A_uv + A_vu) / 2 * scalar_part`.
fn eval_monomial_sym2_raw<T: EvalScalar>(m: &Monomial, data: &CurvatureValues<T>) -> (Vec<T>, T) {
    let dim = data.dim();
    let (components, _) = split_components(m);

    let mut scalar_part = T::one();
    let mut u_vec: Option<Vec<T>> = None;
    let mut v_vec: Option<Vec<T>> = None;
    let mut uv_mat: Option<Vec<T>> = None; // full dim*dim accumulation

    for comp in &components {
        match comp.free_positions.len() {
            0 => {
                let mut sum = T::zero();
                sweep_component(comp, data, |_, _, p| sum.add_assign_ref(p));
                scalar_part = scalar_part.mul_ref(&sum);
            }
            1 => {
                let which = comp.free_positions[0].1;
                let mut vec = vec![T::zero(); dim];
                sweep_component(comp, data, |u, v, p| {
                    let at = if which == 0 { u } else { v };
                    vec[at].add_assign_ref(p);
                });
                if which == 0 {
                    u_vec = Some(vec);
                } else {
                    v_vec = Some(vec);
                }
            }
            2 => {
                if comp.free_positions[0].0 == comp.free_positions[1].0 {
                    // Metric-type pair s2[c,c]: each value of the shared label
                    // feeds one diagonal entry.
                    let mut mat = vec![T::zero(); dim * dim];
                    sweep_component(comp, data, |u, _, p| {
                        mat[u * dim + u].add_assign_ref(p);
                    });
                    uv_mat = Some(mat);
                } else {
                    let mut mat = vec![T::zero(); dim * dim];
                    sweep_component(comp, data, |u, v, p| {
                        mat[u * dim + v].add_assign_ref(p);
                    });
                    uv_mat = Some(mat);
                }
            }
            _ => unreachable!("a free pair has two slots"),
        }
    }

    // Assemble the full (possibly asymmetric) accumulation A_uv.
    let full: Vec<T> = match (uv_mat, u_vec, v_vec) {
        (Some(mat), None, None) => mat,
        (None, Some(u), Some(v)) => {
            let mut mat = vec![T::zero(); dim * dim];
            for a in 0..dim {
                for b in 0..dim {
                    mat[a * dim + b] = u[a].mul_ref(&v[b]);
                }
            }
            mat
        }
        (mat, u, v) => unreachable!(
            "inconsistent free-pair decomposition: mat={} u={} v={}",
            mat.is_some(),
            u.is_some(),
            v.is_some()
        ),
    };
    (full, scalar_part)
}

fn eval_monomial_sym2<T: EvalScalar>(m: &Monomial, data: &CurvatureValues<T>) -> SymMat<T> {
    let dim = data.dim();
    let (full, scalar_part) = eval_monomial_sym2_raw(m, data);
    // Symmetrize: components of A_ij e^i o e^j are (A_uv + A_vu)/2.
    let half = T::from_rational(&crate::rational::rat(1, 2));
    let mut out = SymMat::zero(dim);
    for u in 0..dim {
        for v in u..dim {
            let mut s = full[u * dim + v].clone();
            s.add_assign_ref(&full[v * dim + u]);
            let s = s.mul_ref(&half).mul_ref(&scalar_part);
            out.add_at(u, v, &s);
        }
    }
    out
}

fn check_compat<T: EvalScalar>(
    p: &InvariantPolynomial,
    data: &CurvatureValues<T>,
) -> Result<(), JetError> {
    let needed = p.max_deriv_order();
    if needed > data.max_deriv() {
        return Err(JetError::InsufficientDerivatives { available: data.max_deriv(), needed });
    }
    Ok(())
}

/// Evaluates a scalar-valued polynomial.
pub fn evaluate_scalar<T: EvalScalar>(
    p: &InvariantPolynomial,
    data: &CurvatureValues<T>,
) -> Result<T, JetError> {
    assert_eq!(p.valence(), Valence::Scalar, "scalar evaluation of a sym2 polynomial");
    check_compat(p, data)?;
    let mut acc = T::zero();
    for (mono, coeff) in p.terms() {
        let v = eval_monomial_scalar(mono, data).mul_ref(&T::from_rational(coeff));
        acc.add_assign_ref(&v);
    }
    Ok(acc)
}

/// Evaluates a symmetric-2-form valued polynomial into an `m x m` matrix.
pub fn evaluate_sym2<T: EvalScalar>(
    p: &InvariantPolynomial,
    data: &CurvatureValues<T>,
) -> Result<SymMat<T>, JetError> {
    assert_eq!(p.valence(), Valence::Sym2, "sym2 evaluation of a scalar polynomial");
    check_compat(p, data)?;
    let mut acc = SymMat::zero(data.dim());
    for (mono, coeff) in p.terms() {
        let mat = eval_monomial_sym2(mono, data);
        acc.add_assign(&mat.scale(&T::from_rational(coeff)));
    }
    Ok(acc)
}

/// Curvature data rescaled to a common denominator so contraction sweeps
/// run in machine integers. Exactness is preserved: every monomial value is
/// reconstructed as `integer / denom^(factor count)`.
struct ScaledTensor {
    data: CurvatureValues<i128>,
    denom: num_bigint::BigInt,
    max_abs: u128,
}

impl ScaledTensor {
    fn build(source: &CurvatureValues<Rational>) -> Option<ScaledTensor> {
        use num_integer::Integer;
        let one = num_bigint::BigInt::from(1);
        let mut denom = one.clone();
        for d in 0..=source.max_deriv() {
            for v in source.level(d) {
                denom = denom.lcm(v.denom());
                if denom.bits() > 48 {
                    return None;
                }
            }
        }
        let mut data = CurvatureValues::<i128>::new_zero(source.dim(), source.max_deriv());
        let mut max_abs: u128 = 0;
        for d in 0..=source.max_deriv() {
            for (i, v) in source.level(d).iter().enumerate() {
                let scaled = v.numer() * (&denom / v.denom());
                let as_int = i128::try_from(scaled).ok()?;
                max_abs = max_abs.max(as_int.unsigned_abs());
                data.level_mut(d)[i] = as_int;
            }
        }
        Some(ScaledTensor { data, denom, max_abs })
    }

    /// Worst-case bound `dim^labels * max_abs^factors` must leave headroom
    /// in i128 (an extra factor of 4 covers the symmetrization sums).
    fn monomial_fits(&self, mono: &Monomial) -> bool {
        let dim = self.data.dim() as u128;
        let mut bound: u128 = 1;
        let limit = u128::MAX >> 8;
        for _ in 0..mono.labels_in_order().len() {
            bound = match bound.checked_mul(dim) {
                Some(b) if b < limit => b,
                _ => return false,
            };
        }
        for _ in 0..mono.factors.len() {
            bound = match bound.checked_mul(self.max_abs.max(1)) {
                Some(b) if b < limit => b,
                _ => return false,
            };
        }
        bound <= (i128::MAX as u128) >> 3
    }

    fn denom_power(&self, factors: usize) -> num_bigint::BigInt {
        let mut p = num_bigint::BigInt::from(1);
        for _ in 0..factors {
            p *= &self.denom;
        }
        p
    }
}

/// Exact scalar evaluation with the integer fast path.
pub fn evaluate_scalar_exact(
    p: &InvariantPolynomial,
    data: &CurvatureValues<Rational>,
) -> Result<Rational, JetError> {
    assert_eq!(p.valence(), Valence::Scalar);
    check_compat(p, data)?;
    let scaled = ScaledTensor::build(data);
    let mut acc = Rational::zero();
    for (mono, coeff) in p.terms() {
        let value = match &scaled {
            Some(s) if s.monomial_fits(mono) => {
                let int = eval_monomial_scalar::<i128>(mono, &s.data);
                Rational::new(int.into(), s.denom_power(mono.factors.len()))
            }
            _ => eval_monomial_scalar::<Rational>(mono, data),
        };
        acc += value * coeff;
    }
    Ok(acc)
}

/// Exact symmetric-2-form evaluation with the integer fast path.
pub fn evaluate_sym2_exact(
    p: &InvariantPolynomial,
    data: &CurvatureValues<Rational>,
) -> Result<SymMat<Rational>, JetError> {
    assert_eq!(p.valence(), Valence::Sym2);
    check_compat(p, data)?;
    let dim = data.dim();
    let scaled = ScaledTensor::build(data);
    let mut acc = SymMat::zero(dim);
    for (mono, coeff) in p.terms() {
        match &scaled {
            Some(s) if s.monomial_fits(mono) => {
                let (full, scalar_part) = eval_monomial_sym2_raw::<i128>(mono, &s.data);
                let den: num_bigint::BigInt = s.denom_power(mono.factors.len()) * 2;
                for u in 0..dim {
                    for v in u..dim {
                        let sum = (full[u * dim + v] + full[v * dim + u]) * scalar_part;
                        if sum != 0 {
                            let val = Rational::new(sum.into(), den.clone()) * coeff;
                            acc.add_at(u, v, &val);
                        }
                    }
                }
            }
            _ => {
                let mat = eval_monomial_sym2::<Rational>(mono, data);
                acc.add_assign(&mat.scale(coeff));
            }
        }
    }
    Ok(acc)
}

/// Exact evaluation dispatching on valence.
pub fn evaluate(p: &InvariantPolynomial, data: &CurvatureValues<Rational>) -> Result<EvalOutput, JetError> {
    match p.valence() {
        Valence::Scalar => Ok(EvalOutput::Scalar(evaluate_scalar_exact(p, data)?)),
        Valence::Sym2 => Ok(EvalOutput::Sym2(evaluate_sym2_exact(p, data)?)),
    }
}
