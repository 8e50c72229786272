//! Catalog of the pinned dimension-specific curvature identities, addressed
//! by their conventional numeric identifiers. Each entry carries the
//! spanning elements in display order, the golden coefficient vector, and
//! the dimension in which the combination vanishes identically.
//!
//! Printed sources for the longer identities are index-ambiguous; the
//! transcriptions below are the readings that pass the vanishing test in
//! the stated dimension (exact zeros on randomized samples), which is the
//! acceptance rule for resolving them.

use crate::invariant_enum::SpanningSet;
use crate::rational::{parse_rational, Rational};
use crate::tensor_expr::{InvariantPolynomial, Valence};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyKind {
    /// Verified as the exact nullspace of the evaluation matrix.
    Kernel,
    /// Verified by the vanishing test on the pinned combination.
    Vanishing,
}

#[derive(Clone, Debug)]
pub struct KnownIdentity {
    pub id: &'static str,
    pub description: &'static str,
    pub weight: u32,
    pub valence: Valence,
    /// Dimension in which the combination vanishes identically.
    pub vanishing_dim: usize,
    pub kind: VerifyKind,
    element_sources: &'static [&'static str],
    coefficient_sources: &'static [&'static str],
}

impl KnownIdentity {
    pub fn elements(&self) -> Vec<InvariantPolynomial> {
        self.element_sources
            .iter()
            .map(|s| InvariantPolynomial::parse(s).expect("catalog element parses"))
            .collect()
    }

    pub fn coefficients(&self) -> Vec<Rational> {
        self.coefficient_sources
            .iter()
            .map(|s| parse_rational(s).expect("catalog coefficient parses"))
            .collect()
    }

    pub fn spanning_set(&self) -> SpanningSet {
        SpanningSet::from_elements(self.weight, self.valence, self.elements())
            .expect("catalog elements are consistent")
    }

    /// The pinned linear combination.
    pub fn combination(&self) -> InvariantPolynomial {
        let mut acc = InvariantPolynomial::zero(self.valence, self.weight);
        for (e, c) in self.elements().iter().zip(self.coefficients().iter()) {
            acc = acc.add(&e.scale(c)).expect("catalog terms are compatible");
        }
        acc
    }
}

const CATALOG: &[KnownIdentity] = &[
    KnownIdentity {
        id: "1.2.1",
        description: "scalar curvature vanishes on curves",
        weight: 2,
        valence: Valence::Scalar,
        vanishing_dim: 1,
        kind: VerifyKind::Kernel,
        element_sources: &["R[a,b,b,a]"],
        coefficient_sources: &["1"],
    },
    KnownIdentity {
        id: "1.2.2",
        description: "quadratic curvature identity on 3-manifolds",
        weight: 4,
        valence: Valence::Scalar,
        vanishing_dim: 3,
        kind: VerifyKind::Kernel,
        element_sources: &[
            "R[a,b,b,a] R[c,d,d,c]",
            "R[a,b,c,a] R[d,b,c,d]",
            "R[a,b,c,d] R[a,b,c,d]",
        ],
        coefficient_sources: &["1", "-4", "1"],
    },
    KnownIdentity {
        id: "1.2.3",
        description: "cubic curvature identity on 5-manifolds",
        weight: 6,
        valence: Valence::Scalar,
        vanishing_dim: 5,
        kind: VerifyKind::Vanishing,
        element_sources: &[
            "R[a,b,b,a] R[c,d,d,c] R[e,f,f,e]",
            "R[a,b,b,a] R[c,d,e,c] R[f,d,e,f]",
            "R[a,b,b,a] R[c,d,e,f] R[c,d,e,f]",
            "R[a,b,c,a] R[d,e,f,d] R[f,c,b,e]",
            "R[a,b,c,a] R[d,c,e,d] R[f,b,e,f]",
            "R[a,b,c,a] R[b,d,e,f] R[c,d,e,f]",
            "R[a,b,c,d] R[c,d,e,f] R[f,e,a,b]",
            "R[a,b,c,d] R[c,e,a,f] R[f,d,b,e]",
        ],
        coefficient_sources: &["1", "-12", "3", "24", "16", "-24", "2", "-8"],
    },
    KnownIdentity {
        id: "1.4.1",
        description: "Ricci tensor is half the scalar curvature times the metric on surfaces",
        weight: 2,
        valence: Valence::Sym2,
        vanishing_dim: 2,
        kind: VerifyKind::Kernel,
        element_sources: &["R[a,b,b,a] s2[c,c]", "R[a,b,c,a] s2[b,c]"],
        coefficient_sources: &["1", "-2"],
    },
    KnownIdentity {
        id: "1.4.2",
        description: "quadratic symmetric 2-form identity on 4-manifolds",
        weight: 4,
        valence: Valence::Sym2,
        vanishing_dim: 4,
        kind: VerifyKind::Vanishing,
        element_sources: &[
            "R[a,b,b,a] R[c,d,d,c] s2[e,e]",
            "R[a,b,c,a] R[d,b,c,d] s2[e,e]",
            "R[a,b,c,d] R[a,b,c,d] s2[e,e]",
            "R[a,b,c,d] R[a,b,c,e] s2[d,e]",
            "R[a,b,c,a] R[d,b,e,d] s2[c,e]",
            "R[c,a,b,d] R[e,a,b,e] s2[c,d]",
            "R[a,b,b,a] R[e,c,d,e] s2[c,d]",
        ],
        coefficient_sources: &["-1/4", "1", "-1/4", "1", "-2", "-2", "1"],
    },
];

pub fn catalog() -> &'static [KnownIdentity] {
    CATALOG
}

pub fn find_identity(id: &str) -> Option<&'static KnownIdentity> {
    CATALOG.iter().find(|k| k.id == id)
}
