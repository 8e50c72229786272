//! The classical rank obstruction among scalar products: the determinant of
//! the `(m+1) x (m+1)` matrix of inner products of two families of `m+1`
//! vectors in m-dimensional space is identically zero, while the leading
//! `m x m` minor is generically nonzero.

use num_traits::Zero;

use crate::rational::Rational;
use crate::rng::Rng64;

use super::LabError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramReport {
    pub dim: usize,
    pub seed: u64,
    /// The full `(m+1) x (m+1)` determinant is exactly zero.
    pub determinant_vanishes: bool,
    /// The leading `m x m` minor is nonzero for this seed.
    pub leading_minor_nonzero: bool,
}

fn det(matrix: &mut Vec<Vec<Rational>>) -> Rational {
    let n = matrix.len();
    let mut sign = 1i64;
    let mut result = Rational::from_integer(1.into());
    for col in 0..n {
        let Some(pr) = (col..n).find(|&r| !matrix[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pr != col {
            matrix.swap(pr, col);
            sign = -sign;
        }
        let pivot = matrix[col][col].clone();
        result *= &pivot;
        for r in col + 1..n {
            if matrix[r][col].is_zero() {
                continue;
            }
            let factor = &matrix[r][col] / &pivot;
            for c in col..n {
                let delta = &factor * &matrix[col][c];
                matrix[r][c] -= delta;
            }
        }
    }
    if sign < 0 {
        -result
    } else {
        result
    }
}

/// Draws two random rational families `{v^0..v^m}`, `{w^0..w^m}` in
/// dimension `m` and checks the determinant relation exactly.
pub fn gram_relation_check(m: usize, seed: u64) -> Result<GramReport, LabError> {
    assert!(m >= 1);
    let mut rng = Rng64::new(seed);
    let draw_family = |rng: &mut Rng64| -> Vec<Vec<Rational>> {
        (0..=m)
            .map(|_| (0..m).map(|_| rng.small_rational(9)).collect())
            .collect()
    };
    let v = draw_family(&mut rng);
    let w = draw_family(&mut rng);

    let inner = |a: &[Rational], b: &[Rational]| -> Rational {
        a.iter().zip(b.iter()).map(|(x, y)| x * y).sum()
    };
    let full: Vec<Vec<Rational>> = (0..=m)
        .map(|a| (0..=m).map(|b| inner(&v[a], &w[b])).collect())
        .collect();

    let determinant = det(&mut full.clone());
    let minor: Vec<Vec<Rational>> = (0..m).map(|a| full[a][..m].to_vec()).collect();
    let minor_det = det(&mut minor.clone());

    Ok(GramReport {
        dim: m,
        seed,
        determinant_vanishes: determinant.is_zero(),
        leading_minor_nonzero: !minor_det.is_zero(),
    })
}
