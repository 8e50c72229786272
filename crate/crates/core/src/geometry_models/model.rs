//! Model geometries with closed-form data: round spheres, products, and
//! (perturbed) flat tori.

use num_traits::{One, Zero};

use crate::jet_geometry::{constant_curvature, curvature_from_jet, CurvatureData};
use crate::rational::Rational;

use super::torus::SymTensorField;
use super::{ModelError, PiRational};

#[derive(Clone, Debug)]
pub enum ModelGeometry {
    RoundSphere { dim: usize, radius: Rational },
    Product(Vec<ModelGeometry>),
    FlatTorus { dim: usize, perturbation: Option<SymTensorField> },
}

impl ModelGeometry {
    pub fn sphere(dim: usize, radius: Rational) -> Self {
        assert!(dim >= 1);
        ModelGeometry::RoundSphere { dim, radius }
    }

    pub fn unit_sphere(dim: usize) -> Self {
        Self::sphere(dim, Rational::one())
    }

    pub fn torus(dim: usize) -> Self {
        ModelGeometry::FlatTorus { dim, perturbation: None }
    }

    pub fn dim(&self) -> usize {
        match self {
            ModelGeometry::RoundSphere { dim, .. } => *dim,
            ModelGeometry::Product(factors) => factors.iter().map(|f| f.dim()).sum(),
            ModelGeometry::FlatTorus { dim, .. } => *dim,
        }
    }

    /// Euler characteristic: 2 or 0 for spheres, multiplicative on products,
    /// 0 for tori.
    pub fn euler_characteristic(&self) -> i64 {
        match self {
            ModelGeometry::RoundSphere { dim, .. } => {
                if dim % 2 == 0 {
                    2
                } else {
                    0
                }
            }
            ModelGeometry::Product(factors) => {
                factors.iter().map(|f| f.euler_characteristic()).product()
            }
            ModelGeometry::FlatTorus { .. } => 0,
        }
    }

    /// Closed-form volume as an exact rational multiple of a power of pi.
    pub fn volume(&self) -> PiRational {
        match self {
            ModelGeometry::RoundSphere { dim, radius } => {
                let mut r_pow = Rational::one();
                for _ in 0..*dim {
                    r_pow *= radius;
                }
                unit_sphere_volume(*dim).mul_rational(&r_pow)
            }
            ModelGeometry::Product(factors) => factors
                .iter()
                .fold(PiRational::one(), |acc, f| acc.mul(&f.volume())),
            ModelGeometry::FlatTorus { dim, .. } => {
                // [0, 2pi)^m; the perturbation changes the Riemannian volume,
                // which has no closed form here.
                PiRational::new(Rational::from_integer((1i64 << dim).into()), *dim as i32)
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            ModelGeometry::RoundSphere { dim, radius } => {
                format!("S^{dim}(r={})", crate::rational::format_rational(radius))
            }
            ModelGeometry::Product(factors) => factors
                .iter()
                .map(|f| f.describe())
                .collect::<Vec<_>>()
                .join(" x "),
            ModelGeometry::FlatTorus { dim, perturbation } => match perturbation {
                None => format!("T^{dim}"),
                Some(_) => format!("T^{dim} (perturbed)"),
            },
        }
    }
}

/// Volume of the unit round sphere `S^p` via the classical recurrence
/// `vol(S^p) = 2 pi / (p - 1) * vol(S^{p-2})`.
fn unit_sphere_volume(p: usize) -> PiRational {
    match p {
        0 => PiRational::from_rational(Rational::from_integer(2.into())),
        1 => PiRational::new(Rational::from_integer(2.into()), 1),
        _ => {
            let prev = unit_sphere_volume(p - 2);
            let factor = PiRational::new(
                Rational::new(2.into(), (p as i64 - 1).into()),
                1,
            );
            prev.mul(&factor)
        }
    }
}

/// Pointwise curvature of a model in an orthonormal frame, exact.
///
/// Spheres and products are constant-curvature (block-diagonal) and accept
/// any point; a perturbed torus is handled through the exact jet pipeline
/// and only at the origin of its chart.
pub fn model_curvature(
    model: &ModelGeometry,
    point: &[Rational],
    max_deriv: usize,
) -> Result<CurvatureData, ModelError> {
    match model {
        ModelGeometry::RoundSphere { dim, radius } => {
            let kappa = Rational::one() / (radius * radius);
            let mut c = constant_curvature(*dim, &kappa);
            if max_deriv > 0 {
                c = pad_zero_derivatives(&c, max_deriv);
            }
            Ok(c)
        }
        ModelGeometry::Product(factors) => {
            let dim = model.dim();
            let mut c = CurvatureData::new_zero(dim, max_deriv);
            let mut offset = 0usize;
            for f in factors {
                let fc = model_curvature(f, point, 0)?;
                let fd = f.dim();
                for i in 0..fd {
                    for j in 0..fd {
                        for k in 0..fd {
                            for l in 0..fd {
                                let v = fc.get([i, j, k, l], &[]).clone();
                                c.set([offset + i, offset + j, offset + k, offset + l], &[], v);
                            }
                        }
                    }
                }
                offset += fd;
            }
            Ok(c)
        }
        ModelGeometry::FlatTorus { dim, perturbation } => match perturbation {
            None => Ok(CurvatureData::new_zero(*dim, max_deriv)),
            Some(field) => {
                if point.iter().any(|x| !x.is_zero()) {
                    return Err(ModelError::DomainError(
                        "exact curvature of a perturbed torus is charted at the origin".into(),
                    ));
                }
                let order = (max_deriv as u32 + 2).max(4);
                let jet = field.exact_jet_at_origin(order)?;
                curvature_from_jet(&jet, max_deriv).map_err(ModelError::Jet)
            }
        },
    }
}

fn pad_zero_derivatives(c: &CurvatureData, max_deriv: usize) -> CurvatureData {
    // Constant-curvature models have vanishing covariant derivatives.
    let mut out = CurvatureData::new_zero(c.dim(), max_deriv);
    out.level_mut(0).clone_from_slice(c.level(0));
    out
}
