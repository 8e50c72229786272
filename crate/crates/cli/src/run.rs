//! Resolved run configurations and the command implementations.

use serde::Serialize;
use serde_json::json;

use curvature_core::geometry_models::{
    euler_lagrange_with, gauss_bonnet_report, QuadratureSpec, SymTensorField, VariationOptions,
};
use curvature_core::identity_lab::{
    find_identity, independent_subset, kernel_basis_bounded, vanishing_test_bounded, LabError,
    VerifyKind,
};
use curvature_core::invariant_enum::{enumerate_spanning_set, pfaffian_expand, t2_expand, EnumError};
use curvature_core::rational::format_rational;
use curvature_core::{ModelError, Valence};

use crate::{Command, ValenceArg};

pub enum CliError {
    /// Bad arguments or unsupported parameter combinations: exit 2.
    Usage(String),
    /// Violations, non-convergence, inconclusive rank: exit 1.
    Failure(String),
}

pub struct Outcome {
    pub result: serde_json::Value,
    pub text: String,
    pub verified: bool,
}

#[derive(Serialize, Clone)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum RunConfig {
    #[serde(rename = "expand")]
    Expand { family: String, weight: u32 },
    #[serde(rename = "spanning-set")]
    SpanningSet {
        weight: u32,
        valence: String,
        max_deriv: usize,
        prune_dim: Option<usize>,
        seed: u64,
        trials: Option<usize>,
    },
    #[serde(rename = "verify")]
    Verify { lemma: String, dim: Option<usize>, trials: usize, seed: u64, coefficient_bound: i64 },
    #[serde(rename = "kernel")]
    Kernel {
        weight: u32,
        valence: String,
        dim: usize,
        max_deriv: usize,
        seed: u64,
        trials: Option<usize>,
        coefficient_bound: i64,
        prune: bool,
    },
    #[serde(rename = "gauss-bonnet")]
    GaussBonnet { dim: usize },
    #[serde(rename = "variation")]
    Variation {
        dim: usize,
        weight: u32,
        seed: u64,
        epsilon: f64,
        perturbations: usize,
        panels: usize,
        tolerance: f64,
    },
}

fn valence_name(v: ValenceArg) -> String {
    match v {
        ValenceArg::Scalar => "scalar".into(),
        ValenceArg::Sym2 => "sym2".into(),
    }
}

fn parse_valence(s: &str) -> Valence {
    match s {
        "sym2" => Valence::Sym2,
        _ => Valence::Scalar,
    }
}

impl RunConfig {
    pub fn from_command(cmd: &Command) -> (RunConfig, bool) {
        match cmd {
            Command::Expand { pfaffian, t2, out } => {
                let (family, weight) = match (pfaffian, t2) {
                    (Some(n), None) => ("pfaffian".to_string(), *n),
                    (None, Some(n)) => ("t2".to_string(), *n),
                    _ => ("pfaffian".to_string(), u32::MAX), // rejected in run()
                };
                (RunConfig::Expand { family, weight }, out.json)
            }
            Command::SpanningSet { weight, valence, max_deriv, prune_dim, seed, trials, out } => (
                RunConfig::SpanningSet {
                    weight: *weight,
                    valence: valence_name(*valence),
                    max_deriv: *max_deriv,
                    prune_dim: *prune_dim,
                    seed: *seed,
                    trials: *trials,
                },
                out.json,
            ),
            Command::Verify { lemma, dim, trials, seed, coefficient_bound, out } => (
                RunConfig::Verify {
                    lemma: lemma.clone(),
                    dim: *dim,
                    trials: *trials,
                    seed: *seed,
                    coefficient_bound: *coefficient_bound,
                },
                out.json,
            ),
            Command::Kernel {
                weight,
                valence,
                dim,
                max_deriv,
                seed,
                trials,
                coefficient_bound,
                no_prune,
                out,
            } => (
                RunConfig::Kernel {
                    weight: *weight,
                    valence: valence_name(*valence),
                    dim: *dim,
                    max_deriv: *max_deriv,
                    seed: *seed,
                    trials: *trials,
                    coefficient_bound: *coefficient_bound,
                    prune: !no_prune,
                },
                out.json,
            ),
            Command::GaussBonnet { dim, out } => (RunConfig::GaussBonnet { dim: *dim }, out.json),
            Command::Variation {
                dim,
                weight,
                seed,
                epsilon,
                perturbations,
                panels,
                tolerance,
                out,
            } => (
                RunConfig::Variation {
                    dim: *dim,
                    weight: *weight,
                    seed: *seed,
                    epsilon: *epsilon,
                    perturbations: *perturbations,
                    panels: *panels,
                    tolerance: *tolerance,
                },
                out.json,
            ),
        }
    }
}

fn enum_err(e: EnumError) -> CliError {
    CliError::Usage(e.to_string())
}

fn lab_err(e: LabError) -> CliError {
    match e {
        LabError::TooFewTrials { .. } => CliError::Usage(e.to_string()),
        _ => CliError::Failure(e.to_string()),
    }
}

fn model_err(e: ModelError) -> CliError {
    match e {
        ModelError::OddDimension(_)
        | ModelError::UnsupportedDimension { .. }
        | ModelError::UnsupportedVariation { .. } => CliError::Usage(e.to_string()),
        _ => CliError::Failure(e.to_string()),
    }
}

pub fn run(config: &RunConfig) -> Result<Outcome, CliError> {
    match config {
        RunConfig::Expand { family, weight } => run_expand(family, *weight),
        RunConfig::SpanningSet { weight, valence, max_deriv, prune_dim, seed, trials } => {
            run_spanning_set(*weight, valence, *max_deriv, *prune_dim, *seed, *trials)
        }
        RunConfig::Verify { lemma, dim, trials, seed, coefficient_bound } => {
            run_verify(lemma, *dim, *trials, *seed, *coefficient_bound)
        }
        RunConfig::Kernel {
            weight,
            valence,
            dim,
            max_deriv,
            seed,
            trials,
            coefficient_bound,
            prune,
        } => run_kernel(*weight, valence, *dim, *max_deriv, *seed, *trials, *coefficient_bound, *prune),
        RunConfig::GaussBonnet { dim } => run_gauss_bonnet(*dim),
        RunConfig::Variation { dim, weight, seed, epsilon, perturbations, panels, tolerance } => {
            run_variation(*dim, *weight, *seed, *epsilon, *perturbations, *panels, *tolerance)
        }
    }
}

fn run_expand(family: &str, weight: u32) -> Result<Outcome, CliError> {
    if weight == u32::MAX {
        return Err(CliError::Usage(
            "expand needs exactly one of --pfaffian <N> or --t2 <N>".into(),
        ));
    }
    let poly = match family {
        "t2" => t2_expand(weight).map_err(enum_err)?,
        _ => pfaffian_expand(weight).map_err(enum_err)?,
    };
    let text = format!("{poly}\n");
    let result = json!({
        "family": family,
        "weight": weight,
        "text": poly.to_string(),
        "polynomial": poly.to_json(),
    });
    Ok(Outcome { result, text, verified: true })
}

fn run_spanning_set(
    weight: u32,
    valence: &str,
    max_deriv: usize,
    prune_dim: Option<usize>,
    seed: u64,
    trials: Option<usize>,
) -> Result<Outcome, CliError> {
    let set = enumerate_spanning_set(weight, parse_valence(valence), max_deriv).map_err(enum_err)?;
    let raw_len = set.len();
    let set = match prune_dim {
        Some(m_ref) => {
            let t = trials.unwrap_or(3 * raw_len.max(1));
            independent_subset(&set, m_ref, t, seed).map_err(lab_err)?
        }
        None => set,
    };
    let mut text = format!(
        "spanning set: weight {weight}, valence {valence}, {} elements\n",
        set.len()
    );
    for e in set.element_strings() {
        text.push_str(&format!("  {e}\n"));
    }
    let result = json!({
        "weight": weight,
        "valence": valence,
        "max_deriv": max_deriv,
        "enumerated": raw_len,
        "count": set.len(),
        "elements": set.element_strings(),
    });
    Ok(Outcome { result, text, verified: true })
}

fn format_vector(v: &[curvature_core::Rational]) -> String {
    let parts: Vec<String> = v.iter().map(format_rational).collect();
    format!("({})", parts.join(", "))
}

fn run_verify(
    lemma: &str,
    dim: Option<usize>,
    trials: usize,
    seed: u64,
    coefficient_bound: i64,
) -> Result<Outcome, CliError> {
    let identity = find_identity(lemma).ok_or_else(|| {
        CliError::Usage(format!(
            "unknown identity '{lemma}'; known: {}",
            curvature_core::catalog().iter().map(|k| k.id).collect::<Vec<_>>().join(", ")
        ))
    })?;
    let dim = dim.unwrap_or(identity.vanishing_dim);
    let combo = identity.combination();
    let holds =
        vanishing_test_bounded(&combo, dim, trials, seed, coefficient_bound).map_err(lab_err)?;

    let mut kernel_json = serde_json::Value::Null;
    let mut kernel_confirmed = None;
    if identity.kind == VerifyKind::Kernel && dim == identity.vanishing_dim && holds {
        let set = identity.spanning_set();
        let t = trials.max(3 * set.len());
        let report = kernel_basis_bounded(&set, dim, t, seed, coefficient_bound).map_err(lab_err)?;
        let golden = identity.coefficients();
        let confirmed = report.basis.len() == 1 && report.basis[0] == golden;
        kernel_confirmed = Some(confirmed);
        kernel_json = report.to_json();
    }

    let verified = holds && kernel_confirmed.unwrap_or(true);
    let text = if !holds {
        format!("identity {lemma} does not hold in dim {dim}\n")
    } else {
        match kernel_confirmed {
            Some(true) => format!(
                "kernel vector {} confirmed in dim {dim}\n",
                format_vector(&identity.coefficients())
            ),
            Some(false) => {
                format!("identity {lemma} vanishes in dim {dim} but the kernel differs from the pinned vector\n")
            }
            None => format!(
                "identity {lemma} holds in dim {dim} ({} exact-zero evaluations)\n",
                trials
            ),
        }
    };
    let result = json!({
        "lemma": lemma,
        "description": identity.description,
        "dim": dim,
        "critical_dim": identity.vanishing_dim,
        "trials": trials,
        "holds": holds,
        "kernel_confirmed": kernel_confirmed,
        "kernel": kernel_json,
        "coefficients": identity
            .coefficients()
            .iter()
            .map(|c| [c.numer().to_string(), c.denom().to_string()])
            .collect::<Vec<_>>(),
        "elements": identity.spanning_set().element_strings(),
    });
    Ok(Outcome { result, text, verified })
}

#[allow(clippy::too_many_arguments)]
fn run_kernel(
    weight: u32,
    valence: &str,
    dim: usize,
    max_deriv: usize,
    seed: u64,
    trials: Option<usize>,
    coefficient_bound: i64,
    prune: bool,
) -> Result<Outcome, CliError> {
    let valence_v = parse_valence(valence);
    let set = enumerate_spanning_set(weight, valence_v, max_deriv).map_err(enum_err)?;
    let raw_len = set.len();
    let reference_dim = weight as usize + 2;
    let set = if prune {
        independent_subset(&set, reference_dim, 3 * raw_len.max(1), seed).map_err(lab_err)?
    } else {
        set
    };
    let t = trials.unwrap_or(3 * set.len().max(1) + 6);
    let report = kernel_basis_bounded(&set, dim, t, seed, coefficient_bound).map_err(lab_err)?;

    let mut text = format!(
        "kernel over {} elements (weight {weight}, {valence}) in dim {dim}: dimension {}\n",
        set.len(),
        report.kernel_dimension()
    );
    for v in &report.basis {
        text.push_str(&format!("  {}\n", format_vector(v)));
    }
    if report.basis.is_empty() {
        text.push_str("  (empty)\n");
    }
    let result = json!({
        "enumerated": raw_len,
        "pruned_to": set.len(),
        "reference_dim": if prune { Some(reference_dim) } else { None },
        "report": report.to_json(),
    });
    Ok(Outcome { result, text, verified: true })
}

fn run_gauss_bonnet(dim: usize) -> Result<Outcome, CliError> {
    let report = gauss_bonnet_report(dim).map_err(model_err)?;
    let mut text = format!("c_{dim} = {}\n", report.constant);
    for c in &report.checks {
        text.push_str(&format!(
            "  {}: chi = {} (expected {}) {}\n",
            c.model,
            c.chi_computed,
            c.chi_expected,
            if c.exact { "exact" } else { "MISMATCH" }
        ));
    }
    let verified = report.all_exact();
    Ok(Outcome { result: report.to_json(), text, verified })
}

fn run_variation(
    dim: usize,
    weight: u32,
    seed: u64,
    epsilon: f64,
    perturbations: usize,
    panels: usize,
    tolerance: f64,
) -> Result<Outcome, CliError> {
    if perturbations == 0 {
        return Err(CliError::Usage("need at least one perturbation".into()));
    }
    let opts = VariationOptions {
        epsilon,
        quadrature: QuadratureSpec { panels, tol: tolerance, abs_floor: 1e-12 },
    };
    if !(weight == 2 || weight == 4) || !(dim == weight as usize || dim == weight as usize + 1) {
        return Err(model_err(ModelError::UnsupportedVariation { m: dim, n: weight }));
    }
    let background = SymTensorField::random_background(dim, seed);
    let mut reports = Vec::new();
    for k in 0..perturbations {
        let direction = SymTensorField::random_direction(dim, seed.wrapping_add(1 + k as u64));
        let r = euler_lagrange_with(dim, weight, seed, &background, &direction, &opts)
            .map_err(model_err)?;
        reports.push(r);
    }

    let critical = dim == weight as usize;
    let (verified, summary) = if critical {
        // The total integral is a topological constant: the derivative must
        // vanish relative to the integrand scale.
        let worst = reports
            .iter()
            .map(|r| r.derivative.abs() / r.integrand_scale.max(f64::MIN_POSITIVE))
            .fold(0.0f64, f64::max);
        (worst <= 1e-8, format!("max |derivative| / scale = {worst:.3e}"))
    } else {
        let ds: Vec<f64> = reports.iter().filter_map(|r| r.d_estimate).collect();
        if ds.len() != reports.len() {
            (false, "a pairing degenerated; no constant measured".to_string())
        } else {
            let mean = ds.iter().sum::<f64>() / ds.len() as f64;
            let spread = ds
                .iter()
                .map(|d| (d - mean).abs())
                .fold(0.0f64, f64::max)
                / mean.abs().max(f64::MIN_POSITIVE);
            (
                spread <= 1e-6,
                format!("d = {mean:.9} with relative spread {spread:.3e} over {} perturbations", ds.len()),
            )
        }
    };

    let mut text = format!("variation: dim {dim}, weight {weight}, {perturbations} perturbations\n");
    for (k, r) in reports.iter().enumerate() {
        text.push_str(&format!(
            "  run {k}: derivative = {:.6e}, pairing = {:.6e}, d = {}, scale = {:.3e}\n",
            r.derivative,
            r.pairing,
            r.d_estimate.map_or("n/a".to_string(), |d| format!("{d:.9}")),
            r.integrand_scale,
        ));
    }
    text.push_str(&format!("  {summary}\n"));
    let result = json!({
        "dim": dim,
        "weight": weight,
        "critical": critical,
        "runs": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
        "summary": summary,
        "verified": verified,
    });
    Ok(Outcome { result, text, verified })
}
