//! Exact rational multiples of integer powers of pi. Closed-form sphere
//! volumes and the Gauss-Bonnet constant are monomials in pi, so a single
//! (coefficient, power) pair suffices; sums never arise on these paths.

use std::fmt;

use num_traits::Zero;

use crate::rational::{format_rational, rational_to_f64, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiRational {
    pub coeff: Rational,
    pub pi_pow: i32,
}

impl PiRational {
    pub fn new(coeff: Rational, pi_pow: i32) -> Self {
        let pi_pow = if coeff.is_zero() { 0 } else { pi_pow };
        PiRational { coeff, pi_pow }
    }

    pub fn from_rational(coeff: Rational) -> Self {
        Self::new(coeff, 0)
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::from_integer(1.into()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.coeff * &other.coeff, self.pi_pow + other.pi_pow)
    }

    pub fn mul_rational(&self, r: &Rational) -> Self {
        Self::new(&self.coeff * r, self.pi_pow)
    }

    pub fn div(&self, other: &Self) -> Self {
        assert!(!other.coeff.is_zero(), "division by zero");
        Self::new(&self.coeff / &other.coeff, self.pi_pow - other.pi_pow)
    }

    pub fn recip(&self) -> Self {
        Self::one().div(self)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    /// Some(coeff) when no pi factor remains.
    pub fn as_rational(&self) -> Option<&Rational> {
        (self.pi_pow == 0).then_some(&self.coeff)
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.coeff) * std::f64::consts::PI.powi(self.pi_pow)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "coeff_num": self.coeff.numer().to_string(),
            "coeff_den": self.coeff.denom().to_string(),
            "pi_pow": self.pi_pow,
        })
    }
}

impl fmt::Display for PiRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pi_pow {
            0 => write!(f, "{}", format_rational(&self.coeff)),
            1 => write!(f, "{} * pi", format_rational(&self.coeff)),
            p => write!(f, "{} * pi^{p}", format_rational(&self.coeff)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn arithmetic_and_display() {
        let four_pi = PiRational::new(rat(4, 1), 1);
        let area = four_pi.mul_rational(&rat(4, 1)); // 16 pi
        assert_eq!(area.to_string(), "16 * pi");
        let c2 = PiRational::from_rational(rat(2, 1)).div(&area);
        assert_eq!(c2, PiRational::new(rat(1, 8), -1));
        assert_eq!(c2.to_string(), "1/8 * pi^-1");
        assert!(c2.as_rational().is_none());
        assert_eq!(c2.mul(&four_pi).mul_rational(&rat(2, 1)), PiRational::from_rational(rat(1, 1)));
    }

    #[test]
    fn zero_normalizes_power() {
        let z = PiRational::new(rat(0, 1), 5);
        assert_eq!(z.pi_pow, 0);
        assert!(z.is_zero());
    }
}
