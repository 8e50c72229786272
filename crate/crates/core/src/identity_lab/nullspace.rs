//! Exact nullspace of a rational matrix.
//!
//! Rows are cleared to integers, forward elimination is fraction-free
//! (Bareiss), and the basis is produced by back-substitution per free
//! column, normalized to primitive integer vectors with a positive leading
//! entry. Column order is the caller's element order, so reports are
//! reproducible.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

fn clear_row(row: &[Rational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for r in row {
        lcm = lcm.lcm(r.denom());
    }
    row.iter().map(|r| r.numer() * (&lcm / r.denom())).collect()
}

struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivot_cols: Vec<usize>,
}

/// Fraction-free forward elimination; returns the echelon rows that carry a
/// pivot and the pivot columns in order.
fn eliminate(matrix: &[Vec<Rational>], cols: usize) -> Echelon {
    let mut rows: Vec<Vec<BigInt>> = matrix.iter().map(|r| clear_row(r)).collect();
    rows.retain(|r| r.iter().any(|v| !v.is_zero()));
    let mut pivot_cols = Vec::new();
    let mut prev_pivot = BigInt::one();
    let mut top = 0usize;
    for col in 0..cols {
        let Some(pr) = (top..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(top, pr);
        let pivot = rows[top][col].clone();
        for r in top + 1..rows.len() {
            let factor = rows[r][col].clone();
            for c in col..cols {
                let v = &rows[r][c] * &pivot - &factor * &rows[top][c];
                debug_assert!((&v % &prev_pivot).is_zero(), "fraction-free division must be exact");
                rows[r][c] = &v / &prev_pivot;
            }
        }
        prev_pivot = pivot;
        pivot_cols.push(col);
        top += 1;
        if top == rows.len() {
            break;
        }
    }
    rows.truncate(top);
    Echelon { rows, pivot_cols }
}

/// Rank of the matrix.
pub fn rank(matrix: &[Vec<Rational>], cols: usize) -> usize {
    eliminate(matrix, cols).pivot_cols.len()
}

/// Nullspace basis in reduced form: one vector per free column, primitive
/// integer entries, leading nonzero entry positive.
pub fn nullspace(matrix: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let ech = eliminate(matrix, cols);
    let pivots = &ech.pivot_cols;
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();

    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![Rational::zero(); cols];
        v[f] = Rational::one();
        // Back-substitute pivot rows bottom-up.
        for (ri, &pc) in pivots.iter().enumerate().rev() {
            let row = &ech.rows[ri];
            let mut acc = Rational::zero();
            for c in pc + 1..cols {
                if !row[c].is_zero() && !v[c].is_zero() {
                    acc += Rational::from(row[c].clone()) * &v[c];
                }
            }
            v[pc] = -acc / Rational::from(row[pc].clone());
        }
        basis.push(primitive(v));
    }
    basis
}

/// Scales a rational vector to coprime integers with positive leading entry.
fn primitive(v: Vec<Rational>) -> Vec<Rational> {
    let mut lcm = BigInt::one();
    for r in &v {
        lcm = lcm.lcm(r.denom());
    }
    let mut ints: Vec<BigInt> = v.iter().map(|r| r.numer() * (&lcm / r.denom())).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if !g.is_zero() && !g.is_one() {
        for x in ints.iter_mut() {
            *x = &*x / &g;
        }
    }
    if let Some(first) = ints.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in ints.iter_mut() {
                *x = -&*x;
            }
        }
    }
    ints.into_iter().map(Rational::from).collect()
}
