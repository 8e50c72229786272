//! Weyl spanning sets: every full pair-contraction monomial of a given
//! weight and valence, reduced to canonical keys.

use std::collections::BTreeSet;

use num_traits::One;

use crate::rational::Rational;
use crate::tensor_expr::{
    canonicalize, CanonicalForm, CurvatureFactor, InvariantPolynomial, Label, Monomial, Valence,
};

use super::EnumError;

const MAX_WEIGHT: u32 = 6;
const MAX_FACTORS: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumParams {
    pub max_factors: usize,
    pub max_deriv_order: usize,
}

/// A spanning set: pairwise distinct canonical single-monomial elements of
/// one weight and valence, in canonical key order.
#[derive(Clone, Debug, PartialEq)]
pub struct SpanningSet {
    weight: u32,
    valence: Valence,
    elements: Vec<InvariantPolynomial>,
    provenance: Option<EnumParams>,
}

impl SpanningSet {
    /// Wraps explicitly chosen elements (e.g. a pinned catalog basis).
    pub fn from_elements(
        weight: u32,
        valence: Valence,
        elements: Vec<InvariantPolynomial>,
    ) -> Result<Self, EnumError> {
        for e in &elements {
            if e.is_zero() {
                return Err(EnumError::InvalidElement("zero element".into()));
            }
            if e.weight() != weight || e.valence() != valence {
                return Err(EnumError::InvalidElement(format!(
                    "element {e} has weight {} valence {}, set is ({weight}, {valence})",
                    e.weight(),
                    e.valence()
                )));
            }
        }
        Ok(SpanningSet { weight, valence, elements, provenance: None })
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn valence(&self) -> Valence {
        self.valence
    }

    pub fn elements(&self) -> &[InvariantPolynomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn provenance(&self) -> Option<&EnumParams> {
        self.provenance.as_ref()
    }

    /// Grammar strings of the elements, for reports.
    pub fn element_strings(&self) -> Vec<String> {
        self.elements.iter().map(|e| e.to_string()).collect()
    }

    /// The subset at the given positions, preserving order.
    pub fn subset(&self, keep: &[usize]) -> SpanningSet {
        SpanningSet {
            weight: self.weight,
            valence: self.valence,
            elements: keep.iter().map(|&i| self.elements[i].clone()).collect(),
            provenance: self.provenance.clone(),
        }
    }

    /// Largest derivative order appearing in any element.
    pub fn max_deriv_order(&self) -> usize {
        self.elements.iter().map(|e| e.max_deriv_order()).max().unwrap_or(0)
    }
}

/// Factor shapes: non-increasing derivative counts `d_1 >= d_2 >= ...` with
/// `sum (2 + d_i) = weight`.
fn shapes(weight: u32, max_deriv: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(remaining: u32, max_d: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        if current.len() == MAX_FACTORS {
            return;
        }
        let cap = (remaining.saturating_sub(2)) as usize;
        let cap = cap.min(max_d);
        for d in (0..=cap).rev() {
            if 2 + d as u32 > remaining {
                continue;
            }
            current.push(d);
            rec(remaining - 2 - d as u32, d, current, out);
            current.pop();
        }
    }
    rec(weight, max_deriv, &mut Vec::new(), &mut out);
    out
}

/// All perfect matchings on `0..slots` (slots even), as pair lists.
fn for_each_matching(slots: usize, f: &mut impl FnMut(&[(usize, usize)])) {
    let mut matched = vec![false; slots];
    let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(slots / 2);
    fn rec(
        matched: &mut Vec<bool>,
        pairs: &mut Vec<(usize, usize)>,
        f: &mut impl FnMut(&[(usize, usize)]),
    ) {
        let first = match matched.iter().position(|&m| !m) {
            Some(p) => p,
            None => {
                f(pairs);
                return;
            }
        };
        matched[first] = true;
        for second in first + 1..matched.len() {
            if matched[second] {
                continue;
            }
            matched[second] = true;
            pairs.push((first, second));
            rec(matched, pairs, f);
            pairs.pop();
            matched[second] = false;
        }
        matched[first] = false;
    }
    rec(&mut matched, &mut pairs, f);
}

/// Enumerates every canonical pair-contraction monomial of the given weight
/// and valence with derivative order at most `max_deriv_order`.
pub fn enumerate_spanning_set(
    weight: u32,
    valence: Valence,
    max_deriv_order: usize,
) -> Result<SpanningSet, EnumError> {
    if weight % 2 != 0 || weight > MAX_WEIGHT {
        return Err(EnumError::UnsupportedWeight { weight, max: MAX_WEIGHT });
    }

    let mut keys: BTreeSet<Monomial> = BTreeSet::new();
    for shape in shapes(weight, max_deriv_order) {
        let arities: Vec<usize> = shape.iter().map(|d| 4 + d).collect();
        let factor_slots: usize = arities.iter().sum();
        let virtuals = if valence == Valence::Sym2 { 2 } else { 0 };
        let total = factor_slots + virtuals;
        if total % 2 != 0 {
            continue;
        }

        // Map a flat slot id to (factor, slot-in-factor); ids past the factor
        // slots are the free-pair slots.
        let mut slot_owner = Vec::with_capacity(factor_slots);
        for (fi, &a) in arities.iter().enumerate() {
            for s in 0..a {
                slot_owner.push((fi, s));
            }
        }

        for_each_matching(total, &mut |pairs| {
            // Labels: one per pair.
            let mut label_of_slot = vec![Label(0); total];
            for (li, &(a, b)) in pairs.iter().enumerate() {
                label_of_slot[a] = Label(li as u8);
                label_of_slot[b] = Label(li as u8);
            }
            let mut factors: Vec<CurvatureFactor> = Vec::with_capacity(shape.len());
            let mut cursor = 0usize;
            for &a in &arities {
                let slots = &label_of_slot[cursor..cursor + a];
                factors.push(CurvatureFactor::new(
                    [slots[0], slots[1], slots[2], slots[3]],
                    slots[4..].to_vec(),
                ));
                cursor += a;
            }
            let sym2 = if virtuals == 2 {
                Some((label_of_slot[factor_slots], label_of_slot[factor_slots + 1]))
            } else {
                None
            };
            let mono = Monomial { factors, sym2 };
            if let Ok(CanonicalForm::Canonical { key, .. }) = canonicalize(&mono) {
                keys.insert(key);
            }
        });

        // The weight-0 scalar case: one empty monomial.
        if shape.is_empty() && valence == Valence::Scalar {
            keys.insert(Monomial::one());
        }
    }

    let elements = keys
        .into_iter()
        .map(|k| InvariantPolynomial::from_monomial(&k, Rational::one()).expect("canonical key"))
        .collect();
    Ok(SpanningSet {
        weight,
        valence,
        elements,
        provenance: Some(EnumParams { max_factors: MAX_FACTORS, max_deriv_order }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn contains(set: &SpanningSet, text: &str) -> bool {
        let target = InvariantPolynomial::parse(text).unwrap();
        set.elements().iter().any(|e| {
            e == &target || e == &target.scale(&crate::rational::rat(-1, 1))
        })
    }

    #[test]
    fn weight_zero_scalar_is_the_constant() {
        let s = enumerate_spanning_set(0, Valence::Scalar, 0).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.elements()[0], InvariantPolynomial::one());
    }

    #[test]
    fn weight_two_scalar_is_exactly_tau() {
        let s = enumerate_spanning_set(2, Valence::Scalar, 0).unwrap();
        assert_eq!(s.len(), 1);
        assert!(contains(&s, "R[a,b,b,a]"));
    }

    #[test]
    fn weight_two_sym2_has_the_two_elements() {
        let s = enumerate_spanning_set(2, Valence::Sym2, 0).unwrap();
        assert_eq!(s.len(), 2);
        assert!(contains(&s, "R[a,b,b,a] s2[c,c]"));
        assert!(contains(&s, "R[a,b,c,a] s2[b,c]"));
    }

    #[test]
    fn weight_zero_sym2_is_the_metric() {
        let s = enumerate_spanning_set(0, Valence::Sym2, 0).unwrap();
        assert_eq!(s.len(), 1);
        assert!(contains(&s, "s2[a,a]"));
    }

    #[test]
    fn weight_four_scalar_contains_the_classical_elements() {
        let s = enumerate_spanning_set(4, Valence::Scalar, 2).unwrap();
        for e in [
            "R[a,b,b,a;c,c]",                  // Laplacian-type
            "R[a,b,b,a] R[c,d,d,c]",           // tau^2
            "R[a,b,c,a] R[d,b,c,d]",           // |rho|^2
            "R[a,b,c,d] R[a,b,c,d]",           // |R|^2
        ] {
            assert!(contains(&s, e), "missing {e} in {:?}", s.element_strings());
        }
        // Curvature-only subset also carries the crossed quadratic class,
        // which is independent at the mono-term level.
        let c = enumerate_spanning_set(4, Valence::Scalar, 0).unwrap();
        assert_eq!(c.len(), 4);
        assert!(contains(&c, "R[a,b,c,d] R[a,c,b,d]"));
    }

    #[test]
    fn unsupported_weights_error() {
        assert!(enumerate_spanning_set(3, Valence::Scalar, 0).is_err());
        assert!(enumerate_spanning_set(8, Valence::Scalar, 0).is_err());
    }

    #[test]
    fn enumeration_is_deterministic() {
        let a = enumerate_spanning_set(4, Valence::Sym2, 0).unwrap();
        let b = enumerate_spanning_set(4, Valence::Sym2, 0).unwrap();
        assert_eq!(a, b);
        assert!(!a.is_empty());
    }

    #[test]
    fn explicit_sets_validate() {
        let tau = InvariantPolynomial::parse("R[a,b,b,a]").unwrap();
        assert!(SpanningSet::from_elements(2, Valence::Scalar, vec![tau.clone()]).is_ok());
        assert!(SpanningSet::from_elements(4, Valence::Scalar, vec![tau]).is_err());
    }
}
