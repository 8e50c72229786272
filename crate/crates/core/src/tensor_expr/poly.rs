use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde_json::json;

use crate::rational::{format_rational, parse_rational, Rational};

use super::canonical::{canonicalize, CanonicalForm};
use super::monomial::{Label, Monomial, TensorError, Valence};
use super::text::parse_polynomial;

/// A finite rational-coefficient linear combination of canonical monomials,
/// closed under addition and scaling within a fixed (valence, weight).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InvariantPolynomial {
    valence: Valence,
    weight: u32,
    terms: BTreeMap<Monomial, Rational>,
}

impl InvariantPolynomial {
    pub fn zero(valence: Valence, weight: u32) -> Self {
        InvariantPolynomial { valence, weight, terms: BTreeMap::new() }
    }

    /// The scalar constant 1 (weight 0).
    pub fn one() -> Self {
        Self::from_monomial(&Monomial::one(), Rational::one()).expect("unit monomial")
    }

    /// Builds a polynomial from one monomial, canonicalizing it. A monomial
    /// forced to zero by its sign symmetries yields the zero polynomial of
    /// the same valence and weight.
    pub fn from_monomial(m: &Monomial, coeff: Rational) -> Result<Self, TensorError> {
        let mut p = Self::zero(m.valence(), m.weight());
        p.accumulate(m, coeff)?;
        Ok(p)
    }

    pub fn parse(text: &str) -> Result<Self, TensorError> {
        parse_polynomial(text)
    }

    /// Adds `coeff * m` into this polynomial (canonicalizes `m` first).
    pub fn accumulate(&mut self, m: &Monomial, coeff: Rational) -> Result<(), TensorError> {
        if m.valence() != self.valence {
            return Err(TensorError::ValenceMismatch(self.valence, m.valence()));
        }
        if m.weight() != self.weight {
            return Err(TensorError::WeightMismatch(self.weight, m.weight()));
        }
        match canonicalize(m)? {
            CanonicalForm::Zero => {}
            CanonicalForm::Canonical { key, sign } => {
                let signed = if sign < 0 { -coeff } else { coeff };
                match self.terms.get_mut(&key) {
                    Some(entry) => {
                        *entry += signed;
                        if entry.is_zero() {
                            self.terms.remove(&key);
                        }
                    }
                    None => {
                        if !signed.is_zero() {
                            self.terms.insert(key, signed);
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn valence(&self) -> Valence {
        self.valence
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Canonical terms in deterministic key order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, key: &Monomial) -> Option<&Rational> {
        self.terms.get(key)
    }

    /// Largest covariant-derivative order appearing in any term.
    pub fn max_deriv_order(&self) -> usize {
        self.terms.keys().map(|m| m.max_deriv_order()).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Result<Self, TensorError> {
        if self.valence != other.valence {
            return Err(TensorError::ValenceMismatch(self.valence, other.valence));
        }
        if self.weight != other.weight {
            return Err(TensorError::WeightMismatch(self.weight, other.weight));
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            let entry = out.terms.entry(m.clone()).or_insert_with(Rational::zero);
            *entry += c;
        }
        out.terms.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, TensorError> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero(self.valence, self.weight);
        }
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), c * r)).collect();
        InvariantPolynomial { valence: self.valence, weight: self.weight, terms }
    }

    /// Product of two scalar-valued polynomials; weights add.
    pub fn mul(&self, other: &Self) -> Result<Self, TensorError> {
        if self.valence != Valence::Scalar || other.valence != Valence::Scalar {
            return Err(TensorError::NonScalarProduct);
        }
        let mut out = Self::zero(Valence::Scalar, self.weight + other.weight);
        for (a, ca) in &self.terms {
            let offset = a.labels_in_order().len() as u8;
            for (b, cb) in &other.terms {
                let shift: BTreeMap<Label, Label> = b
                    .labels_in_order()
                    .iter()
                    .map(|&l| (l, Label(l.0 + offset)))
                    .collect();
                let b_shifted = b.relabel(&shift);
                let mut factors = a.factors.clone();
                factors.extend(b_shifted.factors);
                out.accumulate(&Monomial::scalar(factors), ca * cb)?;
            }
        }
        Ok(out)
    }

    /// JSON form: `{terms: [{monomial, coeff_num, coeff_den}], valence, weight}`.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(m, c)| {
                json!({
                    "monomial": m.to_string(),
                    "coeff_num": c.numer().to_string(),
                    "coeff_den": c.denom().to_string(),
                })
            })
            .collect();
        json!({
            "terms": terms,
            "valence": self.valence.to_string(),
            "weight": self.weight,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, TensorError> {
        let bad = |msg: &str| TensorError::Parse { at: 0, msg: msg.to_string() };
        let valence = match v.get("valence").and_then(|x| x.as_str()) {
            Some("scalar") => Valence::Scalar,
            Some("sym2") => Valence::Sym2,
            _ => return Err(bad("missing or invalid valence")),
        };
        let weight = v
            .get("weight")
            .and_then(|x| x.as_u64())
            .ok_or_else(|| bad("missing weight"))? as u32;
        let mut out = Self::zero(valence, weight);
        for t in v
            .get("terms")
            .and_then(|x| x.as_array())
            .ok_or_else(|| bad("missing terms"))?
        {
            let mono = t
                .get("monomial")
                .and_then(|x| x.as_str())
                .ok_or_else(|| bad("missing monomial"))?;
            let num = t.get("coeff_num").and_then(|x| x.as_str()).ok_or_else(|| bad("missing coeff_num"))?;
            let den = t.get("coeff_den").and_then(|x| x.as_str()).ok_or_else(|| bad("missing coeff_den"))?;
            let coeff = parse_rational(&format!("{num}/{den}")).ok_or_else(|| bad("bad coefficient"))?;
            let m = super::text::parse_monomial(mono)?;
            out.accumulate(&m, coeff)?;
        }
        Ok(out)
    }
}

impl fmt::Display for InvariantPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let neg = c < &Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let is_unit_mono = m.factors.is_empty() && m.sym2.is_none();
            if mag.is_one() && !is_unit_mono {
                write!(f, "{m}")?;
            } else if is_unit_mono {
                write!(f, "{}", format_rational(&mag))?;
            } else {
                write!(f, "{} {m}", format_rational(&mag))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn poly(s: &str) -> InvariantPolynomial {
        InvariantPolynomial::parse(s).unwrap()
    }

    #[test]
    fn tau_minus_tau_is_zero() {
        let tau = poly("R[a,b,b,a]");
        let z = tau.add(&tau.scale(&rat(-1, 1))).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn tau_squared_has_weight_four() {
        let tau = poly("R[a,b,b,a]");
        let tau2 = tau.mul(&tau).unwrap();
        assert_eq!(tau2.weight(), 4);
        assert_eq!(tau2.num_terms(), 1);
        assert_eq!(tau2, poly("R[a,b,b,a] R[c,d,d,c]"));
        let (_, c) = tau2.terms().next().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        assert_eq!(c, rat(1, 1));
    }

    #[test]
    fn scaling_the_quadratic_combination() {
        let combo = poly("R[a,b,b,a] R[c,d,d,c] - 4 R[a,b,c,a] R[d,b,c,d] + R[a,b,c,d] R[a,b,c,d]");
        let doubled = combo.scale(&rat(2, 1));
        let coeffs: Vec<Rational> = doubled.terms().map(|(_, c)| c.clone()).collect();
        let mut sorted = coeffs.clone();
        sorted.sort();
        assert_eq!(sorted, vec![rat(-8, 1), rat(2, 1), rat(2, 1)]);
    }

    #[test]
    fn add_rejects_weight_mismatch() {
        let tau = poly("R[a,b,b,a]");
        let tau2 = tau.mul(&tau).unwrap();
        assert!(matches!(tau.add(&tau2), Err(TensorError::WeightMismatch(2, 4))));
    }

    #[test]
    fn add_rejects_valence_mismatch() {
        let tau = poly("R[a,b,b,a]");
        let metric_tau = poly("R[a,b,b,a] s2[c,c]");
        assert!(matches!(
            tau.add(&metric_tau),
            Err(TensorError::ValenceMismatch(Valence::Scalar, Valence::Sym2))
        ));
    }

    #[test]
    fn mul_rejects_sym2() {
        let tau = poly("R[a,b,b,a]");
        let g = poly("s2[c,c]");
        assert!(matches!(tau.mul(&g), Err(TensorError::NonScalarProduct)));
    }

    #[test]
    fn two_writings_of_norm_r_squared_merge() {
        let a = poly("R[a,b,c,d] R[a,b,c,d]");
        let b = poly("R[c,d,a,b] R[a,b,c,d]");
        assert_eq!(a, b);
        let two = a.add(&b).unwrap();
        assert_eq!(two, a.scale(&rat(2, 1)));
    }

    #[test]
    fn json_round_trip() {
        let combo = poly("2 R[a,b,b,a] s2[c,c] - 4 R[a,b,c,a] s2[b,c]");
        let j = combo.to_json();
        let back = InvariantPolynomial::from_json(&j).unwrap();
        assert_eq!(combo, back);
    }

    #[test]
    fn display_uses_grammar() {
        let e2 = poly("R[a,b,b,a]").scale(&rat(2, 1));
        assert_eq!(e2.to_string(), "2 R[a,b,b,a]");
        assert_eq!(poly("1").to_string(), "1");
        assert_eq!(
            InvariantPolynomial::zero(Valence::Scalar, 4).to_string(),
            "0"
        );
    }
}
