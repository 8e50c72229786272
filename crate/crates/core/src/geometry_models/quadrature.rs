//! Tensor-product composite Gauss-Legendre quadrature on the periodic
//! 2-cell, with a two-resolution consistency gate that turns silent
//! quadrature error into a loud one.

use super::ModelError;

/// 5-point Gauss-Legendre nodes and weights on [-1, 1].
const GL_NODES: [f64; 5] = [
    -0.906_179_845_938_664,
    -0.538_469_310_105_683,
    0.0,
    0.538_469_310_105_683,
    0.906_179_845_938_664,
];
const GL_WEIGHTS: [f64; 5] = [
    0.236_926_885_056_189,
    0.478_628_670_499_366,
    0.568_888_888_888_889,
    0.478_628_670_499_366,
    0.236_926_885_056_189,
];

#[derive(Clone, Copy, Debug)]
pub struct QuadratureSpec {
    /// Panels per axis at the coarse resolution; the gate compares against
    /// twice as many.
    pub panels: usize,
    /// Relative agreement required between the two resolutions.
    pub tol: f64,
    /// Integrands whose magnitude integral stays below this are identically
    /// zero up to roundoff (e.g. a companion tensor evaluated in its own
    /// critical dimension); the gate accepts them as converged.
    pub abs_floor: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { panels: 24, tol: 1e-8, abs_floor: 1e-12 }
    }
}

/// Composite rule at a fixed resolution; also accumulates the integral of
/// |f| as a scale reference.
fn integrate_once(f: &mut dyn FnMut(f64, f64) -> f64, period: f64, panels: usize) -> (f64, f64) {
    let h = period / panels as f64;
    let mut acc = 0.0;
    let mut acc_abs = 0.0;
    for px in 0..panels {
        let x0 = px as f64 * h;
        for py in 0..panels {
            let y0 = py as f64 * h;
            for (ni, &nx) in GL_NODES.iter().enumerate() {
                let x = x0 + 0.5 * h * (1.0 + nx);
                for (nj, &ny) in GL_NODES.iter().enumerate() {
                    let y = y0 + 0.5 * h * (1.0 + ny);
                    let w = GL_WEIGHTS[ni] * GL_WEIGHTS[nj] * 0.25 * h * h;
                    let v = f(x, y);
                    acc += w * v;
                    acc_abs += w * v.abs();
                }
            }
        }
    }
    (acc, acc_abs)
}

/// Integrates over `[0, period]^2` with the Richardson consistency gate.
/// Returns `(integral, integral_of_abs)` at the fine resolution.
pub fn integrate_2d_gated(
    f: &mut dyn FnMut(f64, f64) -> f64,
    period: f64,
    spec: &QuadratureSpec,
) -> Result<(f64, f64), ModelError> {
    let (coarse, _) = integrate_once(f, period, spec.panels);
    let (fine, fine_abs) = integrate_once(f, period, 2 * spec.panels);
    let scale = fine.abs().max(fine_abs);
    if scale <= spec.abs_floor {
        return Ok((fine, fine_abs));
    }
    let relative = (fine - coarse).abs() / scale;
    if relative > spec.tol {
        return Err(ModelError::QuadratureDiverged { coarse, fine, relative, tol: spec.tol });
    }
    Ok((fine, fine_abs))
}
