//! Exact rational scalar used throughout the symbolic and linear-algebra
//! paths. Identity verification has to distinguish 0 from 1e-15, so every
//! coefficient, curvature component, and matrix entry is a [`Rational`].

use num_bigint::BigInt;
use num_rational::BigRational;

pub type Rational = BigRational;

/// Shorthand for a rational from small integers.
pub fn rat(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from an integer.
pub fn rat_int(num: i64) -> Rational {
    Rational::from(BigInt::from(num))
}

/// Parses "n" or "n/d" with an optional leading sign.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den == BigInt::from(0) {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Renders as "n" or "n/d" (reduced, denominator positive).
pub fn format_rational(r: &Rational) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Lossy conversion for the quadrature paths.
pub fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        let scale = BigInt::from(1_000_000_000_000_000_000i64);
        let q = (r.numer() * &scale) / r.denom();
        q.to_f64().unwrap_or(f64::NAN) / 1e18
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["3", "-4", "7/2", "-9/4", "0"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
        }
        assert_eq!(parse_rational("6/4").map(|r| format_rational(&r)).unwrap(), "3/2");
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x").is_none());
    }

    #[test]
    fn to_f64_matches_small_values() {
        assert_eq!(rational_to_f64(&rat(1, 8)), 0.125);
        assert_eq!(rational_to_f64(&rat(-3, 2)), -1.5);
    }
}
