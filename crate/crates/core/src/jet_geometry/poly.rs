//! Truncated multivariate polynomials with exact rational coefficients.
//! Everything is truncated at a fixed total degree; products silently drop
//! higher-order terms, which is exactly the jet semantics.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedPoly {
    dim: usize,
    max_deg: u32,
    /// exponent vector (length `dim`) -> coefficient; no zero coefficients.
    terms: BTreeMap<Vec<u8>, Rational>,
}

impl TruncatedPoly {
    pub fn zero(dim: usize, max_deg: u32) -> Self {
        TruncatedPoly { dim, max_deg, terms: BTreeMap::new() }
    }

    pub fn constant(dim: usize, max_deg: u32, c: Rational) -> Self {
        let mut p = Self::zero(dim, max_deg);
        p.add_term(vec![0; dim], c);
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn max_deg(&self) -> u32 {
        self.max_deg
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest total degree among the terms (None when zero).
    pub fn valuation(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().map(|&d| d as u32).sum()).min()
    }

    pub fn add_term(&mut self, expo: Vec<u8>, c: Rational) {
        debug_assert_eq!(expo.len(), self.dim);
        let deg: u32 = expo.iter().map(|&d| d as u32).sum();
        if deg > self.max_deg || c.is_zero() {
            return;
        }
        match self.terms.get_mut(&expo) {
            Some(entry) => {
                *entry += c;
                if entry.is_zero() {
                    self.terms.remove(&expo);
                }
            }
            None => {
                self.terms.insert(expo, c);
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.clone());
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(self.dim, self.max_deg);
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero(self.dim, self.max_deg);
        }
        let mut out = Self::zero(self.dim, self.max_deg);
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), c * r);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.dim, self.max_deg);
        for (ea, ca) in &self.terms {
            let da: u32 = ea.iter().map(|&d| d as u32).sum();
            for (eb, cb) in &other.terms {
                let db: u32 = eb.iter().map(|&d| d as u32).sum();
                if da + db > self.max_deg {
                    continue;
                }
                let expo: Vec<u8> = ea.iter().zip(eb.iter()).map(|(&a, &b)| a + b).collect();
                out.add_term(expo, ca * cb);
            }
        }
        out
    }

    /// Partial derivative with respect to coordinate `k`.
    pub fn partial(&self, k: usize) -> Self {
        let mut out = Self::zero(self.dim, self.max_deg);
        for (e, c) in &self.terms {
            if e[k] == 0 {
                continue;
            }
            let mut expo = e.clone();
            expo[k] -= 1;
            out.add_term(expo, c * Rational::from_integer(e[k].into()));
        }
        out
    }

    /// Value at the origin (the constant term).
    pub fn eval_zero(&self) -> Rational {
        self.terms.get(&vec![0u8; self.dim]).cloned().unwrap_or_else(Rational::zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn x(dim: usize, deg: u32, k: usize) -> TruncatedPoly {
        let mut p = TruncatedPoly::zero(dim, deg);
        let mut e = vec![0u8; dim];
        e[k] = 1;
        p.add_term(e, rat(1, 1));
        p
    }

    #[test]
    fn product_truncates() {
        let p = x(2, 2, 0); // x truncated at degree 2
        let sq = p.mul(&p);
        assert_eq!(sq.valuation(), Some(2));
        let cube = sq.mul(&p);
        assert!(cube.is_zero());
    }

    #[test]
    fn partial_derivative() {
        // p = 3 x0^2 x1, dp/dx0 = 6 x0 x1, value at 0 of d2p/dx0^2 / ... etc.
        let mut p = TruncatedPoly::zero(2, 4);
        p.add_term(vec![2, 1], rat(3, 1));
        let d0 = p.partial(0);
        let d00 = d0.partial(0);
        let d001 = d00.partial(1);
        assert_eq!(d001.eval_zero(), rat(6, 1));
        assert_eq!(p.partial(1).partial(1).eval_zero(), rat(0, 1));
    }

    #[test]
    fn add_cancels() {
        let p = x(3, 3, 1);
        let q = p.neg();
        let mut s = p.clone();
        s.add_assign(&q);
        assert!(s.is_zero());
    }
}
