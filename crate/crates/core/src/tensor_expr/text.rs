//! Einstein-notation-like text grammar for monomials and polynomials.
//!
//! ```text
//! monomial   := factor (" " factor)* (" " free)? | free | "1"
//! factor     := "R[" idx ("," idx)* (";" idx ("," idx)*)? "]"   (exactly 4 base indices)
//! free       := "s2[" idx "," idx "]"
//! idx        := 'a'..'z'
//! polynomial := ["-"] term (("+" | "-") term)*
//! term       := [coeff] monomial | coeff
//! coeff      := digits ["/" digits]
//! ```
//!
//! Printing emits canonical labels `a, b, c, ...` in order of first
//! occurrence; parse/print round-trips.

use std::fmt;

use num_traits::One;

use crate::rational::{parse_rational, Rational};

use super::monomial::{CurvatureFactor, Label, Monomial, TensorError};
use super::poly::InvariantPolynomial;

impl fmt::Display for CurvatureFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "R[{},{},{},{}",
            self.base[0].letter(),
            self.base[1].letter(),
            self.base[2].letter(),
            self.base[3].letter()
        )?;
        if !self.derivs.is_empty() {
            write!(f, ";")?;
            for (i, d) in self.derivs.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", d.letter())?;
            }
        }
        write!(f, "]")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() && self.sym2.is_none() {
            return write!(f, "1");
        }
        let mut first = true;
        for factor in &self.factors {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{factor}")?;
            first = false;
        }
        if let Some((u, v)) = self.sym2 {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "s2[{},{}]", u.letter(), v.letter())?;
        }
        Ok(())
    }
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor { bytes: s.as_bytes(), pos: 0 }
    }

    fn err(&self, msg: &str) -> TensorError {
        TensorError::Parse { at: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> Result<(), TensorError> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", b as char)))
        }
    }

    fn starts_with(&self, s: &str) -> bool {
        self.bytes[self.pos..].starts_with(s.as_bytes())
    }

    fn label(&mut self) -> Result<Label, TensorError> {
        match self.peek() {
            Some(c @ b'a'..=b'z') => {
                self.pos += 1;
                Ok(Label(c - b'a'))
            }
            _ => Err(self.err("expected an index letter a..z")),
        }
    }

    fn label_list(&mut self) -> Result<Vec<Label>, TensorError> {
        let mut out = vec![self.label()?];
        while self.peek() == Some(b',') {
            self.pos += 1;
            out.push(self.label()?);
        }
        Ok(out)
    }

    fn factor(&mut self) -> Result<CurvatureFactor, TensorError> {
        self.eat(b'R')?;
        self.eat(b'[')?;
        let base = self.label_list()?;
        if base.len() != 4 {
            return Err(self.err(&format!("a curvature factor has exactly 4 base indices, found {}", base.len())));
        }
        let derivs = if self.peek() == Some(b';') {
            self.pos += 1;
            self.label_list()?
        } else {
            Vec::new()
        };
        self.eat(b']')?;
        Ok(CurvatureFactor::new([base[0], base[1], base[2], base[3]], derivs))
    }

    fn sym2(&mut self) -> Result<(Label, Label), TensorError> {
        self.pos += 2; // "s2"
        self.eat(b'[')?;
        let u = self.label()?;
        self.eat(b',')?;
        let v = self.label()?;
        self.eat(b']')?;
        Ok((u, v))
    }

    /// One monomial; stops before '+'/'-' or end of input.
    fn monomial(&mut self) -> Result<Monomial, TensorError> {
        let mut factors = Vec::new();
        let mut sym2 = None;
        if self.peek() == Some(b'1') && factors.is_empty() {
            self.pos += 1;
            self.skip_ws();
            return Ok(Monomial::one());
        }
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'R') => {
                    if sym2.is_some() {
                        return Err(self.err("free pair must come last"));
                    }
                    factors.push(self.factor()?);
                }
                Some(b's') if self.starts_with("s2") => {
                    if sym2.is_some() {
                        return Err(self.err("at most one free pair per monomial"));
                    }
                    sym2 = self.sym2()?.into();
                }
                _ => break,
            }
        }
        if factors.is_empty() && sym2.is_none() {
            return Err(self.err("expected a monomial"));
        }
        Ok(Monomial { factors, sym2 })
    }

    fn coefficient(&mut self) -> Result<Option<Rational>, TensorError> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if self.pos == start {
            return Ok(None);
        }
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let dstart = self.pos;
            while matches!(self.peek(), Some(b'0'..=b'9')) {
                self.pos += 1;
            }
            if self.pos == dstart {
                return Err(self.err("expected denominator digits"));
            }
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        parse_rational(text)
            .map(Some)
            .ok_or_else(|| self.err("invalid coefficient"))
    }
}

/// Parses a single monomial; the pairing must be a perfect matching.
pub fn parse_monomial(s: &str) -> Result<Monomial, TensorError> {
    let mut c = Cursor::new(s);
    c.skip_ws();
    let m = c.monomial()?;
    c.skip_ws();
    if c.pos != c.bytes.len() {
        return Err(c.err("trailing input after monomial"));
    }
    m.validate()?;
    Ok(m)
}

/// Parses a polynomial; terms are canonicalized and merged.
pub fn parse_polynomial(s: &str) -> Result<InvariantPolynomial, TensorError> {
    let mut c = Cursor::new(s);
    c.skip_ws();
    if c.peek().is_none() {
        return Err(c.err("empty polynomial"));
    }
    if c.starts_with("0") && c.bytes.len() == c.pos + 1 {
        return Ok(InvariantPolynomial::zero(super::monomial::Valence::Scalar, 0));
    }

    let mut poly: Option<InvariantPolynomial> = None;
    let mut negative = false;
    if c.peek() == Some(b'-') {
        negative = true;
        c.pos += 1;
    } else if c.peek() == Some(b'+') {
        c.pos += 1;
    }
    loop {
        c.skip_ws();
        let coeff = c.coefficient()?;
        c.skip_ws();
        let at_term_end = matches!(c.peek(), None | Some(b'+') | Some(b'-'));
        let (mono, coeff) = if at_term_end {
            match coeff {
                Some(q) => (Monomial::one(), q),
                None => return Err(c.err("expected a term")),
            }
        } else {
            let m = c.monomial()?;
            m.validate().map_err(|e| match e {
                TensorError::MalformedPairing(l, n) => TensorError::Parse {
                    at: c.pos,
                    msg: format!("malformed pairing: label {l} appears {n} times"),
                },
                other => other,
            })?;
            (m, coeff.unwrap_or_else(Rational::one))
        };
        let signed = if negative { -coeff } else { coeff };
        let term = InvariantPolynomial::from_monomial(&mono, signed)?;
        poly = Some(match poly {
            None => term,
            Some(p) => p.add(&term)?,
        });
        c.skip_ws();
        match c.peek() {
            None => break,
            Some(b'+') => {
                negative = false;
                c.pos += 1;
            }
            Some(b'-') => {
                negative = true;
                c.pos += 1;
            }
            _ => return Err(c.err("expected '+', '-', or end of input")),
        }
    }
    Ok(poly.expect("at least one term"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_round_trip() {
        for s in [
            "R[a,b,b,a]",
            "R[a,b,c,d;e] R[a,b,c,d;e]",
            "R[a,b,c,b] s2[a,c]",
            "s2[a,a]",
            "1",
            "R[a,b,b,a;c,c]",
        ] {
            let m = parse_monomial(s).unwrap();
            assert_eq!(m.to_string(), s, "round-trip of {s}");
        }
    }

    #[test]
    fn spec_grammar_examples_parse() {
        assert!(parse_monomial("R[a,b,b,a]").is_ok());
        assert!(parse_monomial("R[a,b,c,d;e] R[a,b,c,d;e]").is_ok());
        assert!(parse_monomial("R[k,i,j,k] s2[i,j]").is_ok());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_monomial("R[a,b,b]").is_err());
        assert!(parse_monomial("R[a,b,b,a] R[a,c,c,a]").is_err()); // 'a' four times
        assert!(parse_monomial("R[a,b,b,c]").is_err()); // unpaired
        assert!(parse_monomial("Q[a,b,b,a]").is_err());
        assert!(parse_monomial("R[a,b,b,a] extra").is_err());
        assert!(parse_polynomial("").is_err());
        assert!(parse_polynomial("2 *").is_err());
    }

    #[test]
    fn polynomial_round_trip_through_display() {
        let texts = [
            "2 R[a,b,b,a]",
            "R[a,b,b,a] R[c,d,d,c] - 4 R[a,b,c,a] R[d,b,c,d] + R[a,b,c,d] R[a,b,c,d]",
            "2 R[a,b,b,a] s2[c,c] - 4 R[a,b,c,b] s2[a,c]",
            "-1/4 R[a,b,b,a]",
            "3/2",
        ];
        for t in texts {
            let p = parse_polynomial(t).unwrap();
            let printed = p.to_string();
            let again = parse_polynomial(&printed).unwrap();
            assert_eq!(p, again, "display round-trip of {t} via {printed}");
        }
    }

    #[test]
    fn parse_merges_canonically_equal_terms() {
        // R_{abab} = -R_{abba}, so these two cancel.
        let p = parse_polynomial("R[a,b,a,b] + R[a,b,b,a]").unwrap();
        assert!(p.is_zero());
    }
}
