use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TensorError {
    #[error("malformed pairing: label {0} appears {1} times (every label must appear exactly twice)")]
    MalformedPairing(String, usize),
    #[error("valence mismatch: {0:?} vs {1:?}")]
    ValenceMismatch(Valence, Valence),
    #[error("weight mismatch: {0} vs {1}")]
    WeightMismatch(u32, u32),
    #[error("products are only defined for scalar-valued polynomials")]
    NonScalarProduct,
    #[error("parse error at byte {at}: {msg}")]
    Parse { at: usize, msg: String },
    #[error("too many distinct labels for the text grammar (max 26)")]
    TooManyLabels,
}

/// A contraction label. Each label is paired: it occurs on exactly two slots.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Label(pub u8);

impl Label {
    pub fn letter(self) -> char {
        (b'a' + self.0 % 26) as char
    }
}

/// Valence of an invariant: scalar or symmetric 2-form valued.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Valence {
    Scalar,
    Sym2,
}

impl fmt::Display for Valence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valence::Scalar => write!(f, "scalar"),
            Valence::Sym2 => write!(f, "sym2"),
        }
    }
}

/// One curvature factor: four base slots carrying the `R_{ijkl}` symmetries
/// plus an ordered (non-commuting) list of covariant-derivative slots.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CurvatureFactor {
    pub base: [Label; 4],
    pub derivs: Vec<Label>,
}

impl CurvatureFactor {
    pub fn new(base: [Label; 4], derivs: Vec<Label>) -> Self {
        CurvatureFactor { base, derivs }
    }

    /// Weight contribution: 2 for the curvature, plus one per derivative slot.
    pub fn weight(&self) -> u32 {
        2 + self.derivs.len() as u32
    }

    pub fn slots(&self) -> impl Iterator<Item = Label> + '_ {
        self.base.iter().copied().chain(self.derivs.iter().copied())
    }
}

/// A contraction monomial: curvature factors plus an optional symmetric free
/// pair. The pairing is encoded by the labels themselves: every label occurs
/// on exactly two slots (counting the free-pair slots).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial {
    pub factors: Vec<CurvatureFactor>,
    /// The two free slots of a symmetric-2-form valued monomial, unordered.
    pub sym2: Option<(Label, Label)>,
}

impl Monomial {
    pub fn scalar(factors: Vec<CurvatureFactor>) -> Self {
        Monomial { factors, sym2: None }
    }

    pub fn sym2(factors: Vec<CurvatureFactor>, free: (Label, Label)) -> Self {
        Monomial { factors, sym2: Some(free) }
    }

    /// The scalar unit (empty product).
    pub fn one() -> Self {
        Monomial { factors: Vec::new(), sym2: None }
    }

    pub fn valence(&self) -> Valence {
        if self.sym2.is_some() {
            Valence::Sym2
        } else {
            Valence::Scalar
        }
    }

    /// Homogeneity weight: sum of (2 + number of derivative slots) per factor.
    pub fn weight(&self) -> u32 {
        self.factors.iter().map(|f| f.weight()).sum()
    }

    pub fn max_deriv_order(&self) -> usize {
        self.factors.iter().map(|f| f.derivs.len()).max().unwrap_or(0)
    }

    fn label_counts(&self) -> BTreeMap<Label, usize> {
        let mut counts = BTreeMap::new();
        for f in &self.factors {
            for l in f.slots() {
                *counts.entry(l).or_insert(0) += 1;
            }
        }
        if let Some((u, v)) = self.sym2 {
            *counts.entry(u).or_insert(0) += 1;
            *counts.entry(v).or_insert(0) += 1;
        }
        counts
    }

    /// Distinct labels, in order of first appearance (factors first, then the
    /// free pair).
    pub fn labels_in_order(&self) -> Vec<Label> {
        let mut seen = Vec::new();
        let mut push = |l: Label| {
            if !seen.contains(&l) {
                seen.push(l);
            }
        };
        for f in &self.factors {
            for l in f.slots() {
                push(l);
            }
        }
        if let Some((u, v)) = self.sym2 {
            push(u);
            push(v);
        }
        seen
    }

    /// Checks the pairing: every label on exactly two slots.
    pub fn validate(&self) -> Result<(), TensorError> {
        for (label, count) in self.label_counts() {
            if count != 2 {
                return Err(TensorError::MalformedPairing(
                    label.letter().to_string(),
                    count,
                ));
            }
        }
        Ok(())
    }

    /// Multiplicity of the concrete index `k` under an explicit assignment of
    /// contraction labels to indices. Free-pair slots contribute as well.
    pub fn degree_profile(&self, assignment: &BTreeMap<Label, usize>, k: usize) -> usize {
        let mut count = 0;
        let hit = |l: Label| assignment.get(&l).copied() == Some(k);
        for f in &self.factors {
            count += f.slots().filter(|&l| hit(l)).count();
        }
        if let Some((u, v)) = self.sym2 {
            count += usize::from(hit(u)) + usize::from(hit(v));
        }
        count
    }

    /// Relabels through `map`, leaving unmapped labels untouched.
    pub fn relabel(&self, map: &BTreeMap<Label, Label>) -> Monomial {
        let get = |l: Label| map.get(&l).copied().unwrap_or(l);
        Monomial {
            factors: self
                .factors
                .iter()
                .map(|f| CurvatureFactor {
                    base: [get(f.base[0]), get(f.base[1]), get(f.base[2]), get(f.base[3])],
                    derivs: f.derivs.iter().map(|&l| get(l)).collect(),
                })
                .collect(),
            sym2: self.sym2.map(|(u, v)| (get(u), get(v))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor_expr::parse_monomial;

    #[test]
    fn weight_and_valence() {
        let tau = parse_monomial("R[a,b,b,a]").unwrap();
        assert_eq!(tau.weight(), 2);
        assert_eq!(tau.valence(), Valence::Scalar);

        let grad_sq = parse_monomial("R[a,b,c,d;e] R[a,b,c,d;e]").unwrap();
        assert_eq!(grad_sq.weight(), 6);
        assert_eq!(grad_sq.max_deriv_order(), 1);

        let ricci = parse_monomial("R[k,i,j,k] s2[i,j]").unwrap();
        assert_eq!(ricci.valence(), Valence::Sym2);
        assert_eq!(ricci.weight(), 2);
    }

    #[test]
    fn validate_rejects_unpaired_slots() {
        let m = Monomial::scalar(vec![CurvatureFactor::new(
            [Label(0), Label(1), Label(1), Label(2)],
            vec![],
        )]);
        match m.validate() {
            Err(TensorError::MalformedPairing(_, 1)) => {}
            other => panic!("expected unpaired-slot error, got {other:?}"),
        }
    }

    #[test]
    fn validate_rejects_triple_pairing() {
        let m = Monomial::scalar(vec![
            CurvatureFactor::new([Label(0), Label(0), Label(0), Label(1)], vec![]),
            CurvatureFactor::new([Label(1), Label(2), Label(2), Label(3)], vec![Label(3)]),
        ]);
        match m.validate() {
            Err(TensorError::MalformedPairing(_, 3)) => {}
            other => panic!("expected triple-pairing error, got {other:?}"),
        }
    }

    #[test]
    fn degree_profile_counts_assigned_indices() {
        // tau written as R_{1221}: index 1 twice, index 2 twice, index 3 absent.
        let tau = parse_monomial("R[a,b,b,a]").unwrap();
        let mut assign = BTreeMap::new();
        assign.insert(Label(0), 1);
        assign.insert(Label(1), 2);
        assert_eq!(tau.degree_profile(&assign, 1), 2);
        assert_eq!(tau.degree_profile(&assign, 2), 2);
        assert_eq!(tau.degree_profile(&assign, 3), 0);
    }

    #[test]
    fn degree_profile_is_even_under_any_assignment() {
        // Every label occupies two slots, so each concrete index is hit an
        // even number of times no matter how labels collide.
        let sources = [
            "R[a,b,b,a] R[c,d,d,c]",
            "R[a,b,c,a] R[d,b,c,d]",
            "R[a,b,c,d] R[a,b,c,d]",
        ];
        let mut rng = crate::Rng64::new(5);
        for s in sources {
            let m = parse_monomial(s).unwrap();
            let labels = m.labels_in_order();
            for _ in 0..50 {
                let assign: BTreeMap<Label, usize> =
                    labels.iter().map(|&l| (l, 1 + rng.below(3) as usize)).collect();
                for k in 1..=3 {
                    assert_eq!(m.degree_profile(&assign, k) % 2, 0, "{s} index {k}");
                }
            }
        }
    }

    #[test]
    fn degree_profile_includes_free_pair() {
        let ricci = parse_monomial("R[k,i,j,k] s2[i,j]").unwrap();
        // Labels in first-appearance order: k, i, j.
        let labels = ricci.labels_in_order();
        let mut assign = BTreeMap::new();
        assign.insert(labels[0], 3);
        assign.insert(labels[1], 1);
        assign.insert(labels[2], 1);
        assert_eq!(ricci.degree_profile(&assign, 1), 4);
        assert_eq!(ricci.degree_profile(&assign, 3), 2);
    }
}
