//! Kernel discovery over evaluation matrices.
//!
//! A spanning set evaluated on random samples in dimension `m` yields an
//! exact rational matrix; its nullspace is the space of universal
//! combinations vanishing identically in that dimension (with probability 1
//! over the samples, made effectively deterministic by exact arithmetic and
//! fixed seeds). A split-sample stability gate turns "too few rows" into a
//! loud error instead of a bogus kernel.

use serde_json::json;

use crate::invariant_enum::SpanningSet;
use crate::jet_geometry::{evaluate_scalar_exact, evaluate_sym2_exact, CurvatureData};
use crate::rational::Rational;
use crate::tensor_expr::Valence;

use super::nullspace::nullspace;
use super::sample::{generate_samples, seeds_used, SampleKind, SamplePlan};
use super::LabError;

/// Exact evaluation matrix: one column per spanning-set element, one row per
/// sample (scalar valence) or per sample and free-index pair (sym2 valence).
#[derive(Clone, Debug)]
pub struct EvaluationMatrix {
    pub rows: Vec<Vec<Rational>>,
    pub cols: usize,
}

impl EvaluationMatrix {
    pub fn build(set: &SpanningSet, samples: &[CurvatureData]) -> Result<Self, LabError> {
        let cols = set.len();
        let mut rows = Vec::new();
        for sample in samples {
            match set.valence() {
                Valence::Scalar => {
                    let mut row = Vec::with_capacity(cols);
                    for e in set.elements() {
                        row.push(evaluate_scalar_exact(e, sample)?);
                    }
                    rows.push(row);
                }
                Valence::Sym2 => {
                    let m = sample.dim();
                    let mats: Vec<_> = set
                        .elements()
                        .iter()
                        .map(|e| evaluate_sym2_exact(e, sample))
                        .collect::<Result<_, _>>()?;
                    for u in 0..m {
                        for v in u..m {
                            rows.push(mats.iter().map(|mat| mat.get(u, v).clone()).collect());
                        }
                    }
                }
            }
        }
        Ok(EvaluationMatrix { rows, cols })
    }
}

/// Result of a kernel computation, with the sampling evidence.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelReport {
    pub dim: usize,
    pub weight: u32,
    pub valence: Valence,
    /// Nullspace basis over the spanning set, primitive integer vectors.
    pub basis: Vec<Vec<Rational>>,
    pub elements: Vec<String>,
    pub sample_count: usize,
    pub seeds: Vec<u64>,
}

impl KernelReport {
    pub fn kernel_dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let basis: Vec<Vec<[String; 2]>> = self
            .basis
            .iter()
            .map(|v| {
                v.iter()
                    .map(|r| [r.numer().to_string(), r.denom().to_string()])
                    .collect()
            })
            .collect();
        json!({
            "dim": self.dim,
            "weight": self.weight,
            "valence": self.valence.to_string(),
            "basis": basis,
            "elements": self.elements,
            "sample_count": self.sample_count,
            "seeds": self.seeds,
        })
    }
}

/// Exact nullspace of the evaluation matrix of `set` in dimension `m`.
///
/// `trials` must be at least three times the set size. Samples are
/// algebraic unless the set carries derivative monomials, in which case
/// jets are used.
pub fn kernel_basis(
    set: &SpanningSet,
    m: usize,
    trials: usize,
    seed: u64,
) -> Result<KernelReport, LabError> {
    kernel_basis_bounded(set, m, trials, seed, 9)
}

/// Same computation with an explicit numerator bound for jet coefficients.
pub fn kernel_basis_bounded(
    set: &SpanningSet,
    m: usize,
    trials: usize,
    seed: u64,
    coefficient_bound: i64,
) -> Result<KernelReport, LabError> {
    let required = 3 * set.len().max(1);
    if trials < required {
        return Err(LabError::TooFewTrials { required, got: trials });
    }
    let mut plan = SamplePlan::auto(m, trials, seed, set.max_deriv_order());
    plan.coefficient_bound = coefficient_bound;
    let samples = generate_samples(&plan);
    kernel_from_samples(set, m, &samples, seeds_used(&plan))
}

/// Kernel computation over explicit samples (also the test hook for the
/// stability gate).
pub fn kernel_from_samples(
    set: &SpanningSet,
    m: usize,
    samples: &[CurvatureData],
    seeds: Vec<u64>,
) -> Result<KernelReport, LabError> {
    let matrix = EvaluationMatrix::build(set, samples)?;
    let half_rows = {
        let half_samples = samples.len() / 2;
        let rows_per_sample = if set.valence() == Valence::Scalar {
            1
        } else {
            m * (m + 1) / 2
        };
        half_samples * rows_per_sample
    };
    let full = nullspace(&matrix.rows, matrix.cols);
    let half = nullspace(&matrix.rows[..half_rows], matrix.cols);
    if full != half {
        return Err(LabError::Inconclusive {
            detail: format!(
                "kernel changed between {} and {} samples (dim {} -> {})",
                samples.len() / 2,
                samples.len(),
                half.len(),
                full.len()
            ),
        });
    }
    Ok(KernelReport {
        dim: m,
        weight: set.weight(),
        valence: set.valence(),
        basis: full,
        elements: set.element_strings(),
        sample_count: samples.len(),
        seeds,
    })
}

/// Greedily prunes a spanning set to columns that are linearly independent
/// as evaluation functionals in the reference dimension `m_ref`. Removing
/// dimension-independent redundancy (e.g. multi-term curvature identities)
/// first makes kernels in lower dimensions reflect only dimension-specific
/// collapse.
pub fn independent_subset(
    set: &SpanningSet,
    m_ref: usize,
    trials: usize,
    seed: u64,
) -> Result<SpanningSet, LabError> {
    let required = 3 * set.len().max(1);
    if trials < required {
        return Err(LabError::TooFewTrials { required, got: trials });
    }
    let mut plan = SamplePlan::auto(m_ref, trials, seed, set.max_deriv_order());
    if set.max_deriv_order() == 0 {
        plan.kind = SampleKind::Algebraic;
    }
    let samples = generate_samples(&plan);
    let matrix = EvaluationMatrix::build(set, &samples)?;

    // Incremental rational elimination over column vectors.
    let nrows = matrix.rows.len();
    let mut reduced: Vec<Vec<Rational>> = Vec::new(); // echelonized kept columns
    let mut pivot_rows: Vec<usize> = Vec::new();
    let mut keep = Vec::new();
    for c in 0..matrix.cols {
        let mut col: Vec<Rational> = (0..nrows).map(|r| matrix.rows[r][c].clone()).collect();
        for (b, &pr) in reduced.iter().zip(pivot_rows.iter()) {
            if !num_traits::Zero::is_zero(&col[pr]) {
                let factor = &col[pr] / &b[pr];
                for r in 0..nrows {
                    let delta = &factor * &b[r];
                    col[r] -= delta;
                }
            }
        }
        if let Some(pr) = col.iter().position(|v| !num_traits::Zero::is_zero(v)) {
            pivot_rows.push(pr);
            reduced.push(col);
            keep.push(c);
        }
    }
    Ok(set.subset(&keep))
}
