//! Exact coefficient solving: express a direct-sum oracle over a spanning
//! set by solving the evaluation linear system.

use num_traits::Zero;

use crate::invariant_enum::SpanningSet;
use crate::jet_geometry::{CurvatureData, EvalOutput, JetError};
use crate::rational::Rational;
use crate::tensor_expr::Valence;

use super::kernel::EvaluationMatrix;
use super::sample::{generate_samples, SamplePlan};
use super::LabError;

/// Solves `sum_c v_c * evaluate(element_c, sample) = target(sample)` exactly
/// over random samples in dimension `m`. The caller picks a dimension where
/// the set is linearly independent; an inconsistent system signals a
/// convention mismatch or a bug, an underdetermined one demands more data.
pub fn solve_coefficients(
    target: &dyn Fn(&CurvatureData) -> Result<EvalOutput, JetError>,
    set: &SpanningSet,
    m: usize,
    trials: usize,
    seed: u64,
) -> Result<Vec<Rational>, LabError> {
    let required = 3 * set.len().max(1);
    if trials < required {
        return Err(LabError::TooFewTrials { required, got: trials });
    }
    let plan = SamplePlan::auto(m, trials, seed, set.max_deriv_order());
    let samples = generate_samples(&plan);

    let matrix = EvaluationMatrix::build(set, &samples)?;
    let mut rhs: Vec<Rational> = Vec::with_capacity(matrix.rows.len());
    for sample in &samples {
        match target(sample)? {
            EvalOutput::Scalar(v) => {
                debug_assert_eq!(set.valence(), Valence::Scalar);
                rhs.push(v);
            }
            EvalOutput::Sym2(mat) => {
                debug_assert_eq!(set.valence(), Valence::Sym2);
                for u in 0..m {
                    for v in u..m {
                        rhs.push(mat.get(u, v).clone());
                    }
                }
            }
        }
    }
    solve_exact(&matrix.rows, &rhs, matrix.cols)
}

/// Gauss-Jordan over the rationals with consistency checking.
fn solve_exact(rows: &[Vec<Rational>], rhs: &[Rational], cols: usize) -> Result<Vec<Rational>, LabError> {
    assert_eq!(rows.len(), rhs.len());
    let mut aug: Vec<Vec<Rational>> = rows
        .iter()
        .zip(rhs.iter())
        .map(|(r, b)| {
            let mut row = r.clone();
            row.push(b.clone());
            row
        })
        .collect();

    let mut pivot_of_col = vec![usize::MAX; cols];
    let mut top = 0usize;
    for col in 0..cols {
        let Some(pr) = (top..aug.len()).find(|&r| !aug[r][col].is_zero()) else {
            continue;
        };
        aug.swap(top, pr);
        let pivot = aug[top][col].clone();
        for c in col..=cols {
            aug[top][c] = &aug[top][c] / &pivot;
        }
        for r in 0..aug.len() {
            if r != top && !aug[r][col].is_zero() {
                let factor = aug[r][col].clone();
                for c in col..=cols {
                    let delta = &factor * &aug[top][c];
                    aug[r][c] -= delta;
                }
            }
        }
        pivot_of_col[col] = top;
        top += 1;
        if top == aug.len() {
            break;
        }
    }

    // Inconsistency: a zero row with nonzero right-hand side.
    for row in &aug[top.min(aug.len())..] {
        if row[..cols].iter().all(|v| v.is_zero()) && !row[cols].is_zero() {
            return Err(LabError::Inconsistent {
                detail: "oracle is not in the span of the set under the current conventions".into(),
            });
        }
    }
    let rank = pivot_of_col.iter().filter(|&&p| p != usize::MAX).count();
    if rank < cols {
        return Err(LabError::Underdetermined { rank, cols });
    }
    Ok((0..cols).map(|c| aug[pivot_of_col[c]][cols].clone()).collect())
}
