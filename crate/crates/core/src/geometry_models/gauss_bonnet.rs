//! The Gauss-Bonnet constant: the exact factor `c_m` with
//! `chi = c_m * integral of E_{m,m}` on closed even-dimensional manifolds,
//! determined by evaluation on a product of round 2-spheres and cross-checked
//! on the round 4-sphere. Everything is a rational multiple of a power of
//! pi; no floats.

use crate::jet_geometry::pfaffian_direct;
use crate::rational::Rational;

use super::model::{model_curvature, ModelGeometry};
use super::{ModelError, PiRational};

const MAX_DIM: usize = 4;

#[derive(Clone, Debug, PartialEq)]
pub struct GbCheck {
    pub model: String,
    pub chi_expected: i64,
    pub chi_computed: PiRational,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GaussBonnetReport {
    pub dim: usize,
    pub constant: PiRational,
    pub checks: Vec<GbCheck>,
}

impl GaussBonnetReport {
    pub fn all_exact(&self) -> bool {
        self.checks.iter().all(|c| c.exact)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "dim": self.dim,
            "constant": self.constant.to_json(),
            "constant_text": self.constant.to_string(),
            "checks": self.checks.iter().map(|c| serde_json::json!({
                "model": c.model,
                "chi_expected": c.chi_expected,
                "chi_computed": c.chi_computed.to_string(),
                "exact": c.exact,
            })).collect::<Vec<_>>(),
        })
    }
}

/// `chi / integral(E)` on the given constant-curvature model; the integrand
/// is constant, so the integral is value times volume.
fn constant_from_model(model: &ModelGeometry, n: u32) -> Result<PiRational, ModelError> {
    let c = model_curvature(model, &[], 0)?;
    let e = pfaffian_direct(&c, n)?;
    let integral = model.volume().mul_rational(&e);
    let chi = Rational::from_integer(model.euler_characteristic().into());
    Ok(PiRational::from_rational(chi).div(&integral))
}

/// The Gauss-Bonnet constant for even `m <= 4`, from the product of round
/// 2-spheres.
pub fn gauss_bonnet_constant(m: usize) -> Result<PiRational, ModelError> {
    gauss_bonnet_constant_from_radius(m, Rational::from_integer(1.into()))
}

/// Same constant from spheres of a chosen radius; the result must not
/// depend on it (scale invariance of the Euler characteristic).
pub fn gauss_bonnet_constant_from_radius(m: usize, radius: Rational) -> Result<PiRational, ModelError> {
    if m % 2 != 0 {
        return Err(ModelError::OddDimension(m));
    }
    if m == 0 || m > MAX_DIM {
        return Err(ModelError::UnsupportedDimension { dim: m, max: MAX_DIM });
    }
    let factors: Vec<ModelGeometry> = (0..m / 2)
        .map(|_| ModelGeometry::sphere(2, radius.clone()))
        .collect();
    let model = if factors.len() == 1 {
        factors.into_iter().next().unwrap()
    } else {
        ModelGeometry::Product(factors)
    };
    constant_from_model(&model, m as u32)
}

/// Computes `c_m` and replays `chi = c_m * integral(E)` on the closed-form
/// models of that dimension.
pub fn gauss_bonnet_report(m: usize) -> Result<GaussBonnetReport, ModelError> {
    let constant = gauss_bonnet_constant(m)?;
    let models: Vec<ModelGeometry> = match m {
        2 => vec![
            ModelGeometry::unit_sphere(2),
            ModelGeometry::sphere(2, Rational::new(3.into(), 2.into())),
        ],
        4 => vec![
            ModelGeometry::Product(vec![
                ModelGeometry::unit_sphere(2),
                ModelGeometry::unit_sphere(2),
            ]),
            ModelGeometry::unit_sphere(4),
        ],
        _ => unreachable!("gated above"),
    };
    let mut checks = Vec::new();
    for model in models {
        let c = model_curvature(&model, &[], 0)?;
        let e = pfaffian_direct(&c, m as u32)?;
        let chi_computed = constant.mul(&model.volume().mul_rational(&e));
        let chi_expected = model.euler_characteristic();
        let exact = chi_computed
            .as_rational()
            .map(|r| r == &Rational::from_integer(chi_expected.into()))
            .unwrap_or(false);
        checks.push(GbCheck { model: model.describe(), chi_expected, chi_computed, exact });
    }
    Ok(GaussBonnetReport { dim: m, constant, checks })
}
