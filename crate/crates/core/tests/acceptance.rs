//! Acceptance suite: every criterion runs at its stated tolerance and time
//! budget and prints one pass/fail line. Run with `--nocapture` to see the
//! lines; the test names mirror the criterion numbers.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_traits::Zero;

use curvature_core::identity_lab::{
    find_identity, gram_relation_check, independent_subset, kernel_basis, vanishing_test,
    SampleKind, SamplePlan,
};
use curvature_core::invariant_enum::{enumerate_spanning_set, pfaffian_expand, t2_expand};
use curvature_core::jet_geometry::{
    evaluate_scalar_exact as evaluate_scalar, evaluate_sym2_exact as evaluate_sym2, pfaffian_direct,
    random_algebraic_curvature,
};
use curvature_core::geometry_models::{
    euler_lagrange_check, euler_lagrange_with, gauss_bonnet_report, PiRational, QuadratureSpec,
    SymTensorField, VariationOptions,
};
use curvature_core::rational::{rat, Rational};
use curvature_core::{InvariantPolynomial, Label, Valence};

struct Criterion {
    number: u32,
    what: &'static str,
    budget: Duration,
    started: Instant,
}

impl Criterion {
    fn start(number: u32, what: &'static str, budget_secs: u64) -> Self {
        Criterion { number, what, budget: Duration::from_secs(budget_secs), started: Instant::now() }
    }

    fn finish(self) {
        let elapsed = self.started.elapsed();
        let ok = elapsed <= self.budget;
        println!(
            "[criterion {}] {} - {} ({:.2?} of {:.0?} budget)",
            self.number,
            if ok { "PASS" } else { "FAIL" },
            self.what,
            elapsed,
            self.budget
        );
        assert!(
            ok,
            "criterion {} exceeded its time budget: {:.2?} > {:.0?}",
            self.number, elapsed, self.budget
        );
    }
}

fn catalog_set(id: &str) -> curvature_core::SpanningSet {
    find_identity(id).expect("catalog id").spanning_set()
}

#[test]
fn criterion_1_quadratic_kernel_in_dim_three() {
    let c = Criterion::start(1, "dim-3 quadratic kernel is span{(1, -4, 1)}", 10);
    let set = catalog_set("1.2.2");
    let report = kernel_basis(&set, 3, 102, 0xC0FFEE).expect("conclusive kernel");
    assert!(report.sample_count >= 100);
    assert_eq!(report.basis, vec![vec![rat(1, 1), rat(-4, 1), rat(1, 1)]]);
    c.finish();
}

#[test]
fn criterion_2_cubic_identity_in_dim_five() {
    let c = Criterion::start(2, "8-term cubic identity vanishes in dim 5, fails in dim 6", 60);
    let combo = find_identity("1.2.3").unwrap().combination();
    // Curvature-only polynomial: the vanishing test draws 50 algebraic and
    // 50 jet samples, all evaluated exactly.
    assert!(vanishing_test(&combo, 5, 50, 0xC0FFEE).unwrap());
    assert!(!vanishing_test(&combo, 6, 50, 0xC0FFEE).unwrap());
    c.finish();
}

#[test]
fn criterion_3_surface_kernel() {
    let c = Criterion::start(3, "dim-2 symmetric kernel is span{(1, -2)}", 10);
    let set = catalog_set("1.4.1");
    let report = kernel_basis(&set, 2, 30, 0xC0FFEE).expect("conclusive kernel");
    assert_eq!(report.basis, vec![vec![rat(1, 1), rat(-2, 1)]]);
    c.finish();
}

/// Componentwise proportionality scale `target = lambda * reference`,
/// checked exactly over samples; panics when no single lambda works.
fn sym2_proportionality(
    target: &InvariantPolynomial,
    reference: &InvariantPolynomial,
    dims: &[usize],
    seeds: std::ops::Range<u64>,
) -> Rational {
    let mut lambda: Option<Rational> = None;
    for &m in dims {
        for seed in seeds.clone() {
            let sample = random_algebraic_curvature(m, seed, 3);
            let t = evaluate_sym2(target, &sample).unwrap();
            let r = evaluate_sym2(reference, &sample).unwrap();
            for u in 0..m {
                for v in u..m {
                    let (tv, rv) = (t.get(u, v), r.get(u, v));
                    match (&lambda, rv.is_zero()) {
                        (_, true) => assert!(tv.is_zero(), "support mismatch at ({u},{v})"),
                        (None, false) => lambda = Some(tv / rv),
                        (Some(l), false) => {
                            assert_eq!(tv, &(l * rv), "ratio drifts at dim {m} seed {seed}")
                        }
                    }
                }
            }
        }
    }
    lambda.expect("some nonzero component")
}

#[test]
fn criterion_4_sym2_weight_four_kernel() {
    let c = Criterion::start(
        4,
        "dim-4 sym2 kernel is 1-dimensional and proportional to the weight-4 companion",
        300,
    );
    let raw = enumerate_spanning_set(4, Valence::Sym2, 0).unwrap();
    let set = independent_subset(&raw, 6, 3 * raw.len(), 7).unwrap();
    let report = kernel_basis(&set, 4, 3 * set.len() + 6, 7).expect("conclusive kernel");
    assert_eq!(report.kernel_dimension(), 1, "kernel: {:?}", report.basis);

    // Assemble the kernel combination and compare it as an invariant (via
    // exact evaluations away from the critical dimension) against both the
    // wedge expansion and the pinned identity.
    let mut kernel_poly = InvariantPolynomial::zero(Valence::Sym2, 4);
    for (coeff, element) in report.basis[0].iter().zip(set.elements()) {
        kernel_poly = kernel_poly.add(&element.scale(coeff)).unwrap();
    }
    let companion = t2_expand(4).unwrap();
    let lambda = sym2_proportionality(&companion, &kernel_poly, &[5, 6], 0..4);
    assert!(!lambda.is_zero());

    let pinned = find_identity("1.4.2").unwrap().combination();
    let mu = sym2_proportionality(&pinned, &kernel_poly, &[5, 6], 0..4);
    assert!(!mu.is_zero());
    // Consistency: companion = (lambda/mu) * pinned as invariants.
    let ratio = sym2_proportionality(&companion, &pinned, &[5, 6], 0..2);
    assert_eq!(ratio, lambda / mu);
    c.finish();
}

#[test]
fn criterion_5_pfaffian_oracle_agreement() {
    let c = Criterion::start(5, "expansion equals direct defining sum on 100 samples per (n, m)", 60);
    assert_eq!(
        pfaffian_expand(2).unwrap(),
        InvariantPolynomial::parse("2 R[a,b,b,a]").unwrap()
    );
    for n in [2u32, 4] {
        let expansion = pfaffian_expand(n).unwrap();
        for m in [n as usize, n as usize + 1, n as usize + 2] {
            for seed in 0..100u64 {
                let sample = random_algebraic_curvature(m, 31 * seed + m as u64, 3);
                let via_expansion = evaluate_scalar(&expansion, &sample).unwrap();
                let via_direct = pfaffian_direct(&sample, n).unwrap();
                assert_eq!(via_expansion, via_direct, "n={n} m={m} seed={seed}");
            }
        }
    }
    c.finish();
}

#[test]
fn criterion_6_zero_kernel_regimes() {
    let c = Criterion::start(6, "kernels are empty above the critical dimensions", 60);
    let quadratic = catalog_set("1.2.2");
    for m in [4usize, 5] {
        let report = kernel_basis(&quadratic, m, 30, 0xC0FFEE).unwrap();
        assert!(report.basis.is_empty(), "scalar weight 4, dim {m}: {:?}", report.basis);
    }
    let surface = catalog_set("1.4.1");
    for m in [3usize, 4] {
        let report = kernel_basis(&surface, m, 30, 0xC0FFEE).unwrap();
        assert!(report.basis.is_empty(), "sym2 weight 2, dim {m}: {:?}", report.basis);
    }
    c.finish();
}

#[test]
fn criterion_7_gauss_bonnet() {
    let c = Criterion::start(7, "c_2 = 1/(8 pi) and chi reproduced exactly in dim 4", 10);
    let r2 = gauss_bonnet_report(2).unwrap();
    assert_eq!(r2.constant, PiRational::new(rat(1, 8), -1));
    assert!(r2.all_exact());

    let r4 = gauss_bonnet_report(4).unwrap();
    assert!(r4.all_exact());
    let chis: BTreeMap<String, i64> = r4
        .checks
        .iter()
        .map(|ch| (ch.model.clone(), ch.chi_expected))
        .collect();
    assert_eq!(chis["S^2(r=1) x S^2(r=1)"], 4);
    assert_eq!(chis["S^4(r=1)"], 2);
    c.finish();
}

#[test]
fn criterion_8_euler_lagrange() {
    let c = Criterion::start(8, "variation vanishes at the critical dimension; d constant below it", 600);
    let opts = VariationOptions {
        epsilon: 1e-3,
        quadrature: QuadratureSpec { panels: 16, tol: 1e-8, abs_floor: 1e-12 },
    };

    // Critical case: chi(T^4) = 0, so the total integral is constant in the
    // metric family and the measured derivative must vanish.
    let report = euler_lagrange_check(4, 4, 5, &opts).expect("quadrature converges");
    assert!(
        report.derivative.abs() <= 1e-8 * report.integrand_scale,
        "derivative {:.3e} vs scale {:.3e}",
        report.derivative,
        report.integrand_scale
    );

    // One dimension up at weight 2: the measured constant agrees across
    // three independent perturbations to 1e-6 relative.
    let background = SymTensorField::random_background(3, 11);
    let mut ds = Vec::new();
    for k in 0..3u64 {
        let direction = SymTensorField::random_direction(3, 100 + k);
        let r = euler_lagrange_with(3, 2, 11, &background, &direction, &opts)
            .expect("quadrature converges");
        ds.push(r.d_estimate.expect("pairing nondegenerate"));
    }
    let mean = ds.iter().sum::<f64>() / ds.len() as f64;
    for d in &ds {
        assert!(
            (d - mean).abs() <= 1e-6 * mean.abs(),
            "d estimates inconsistent: {ds:?}"
        );
    }
    c.finish();
}

#[test]
fn criterion_9_structural_properties() {
    let c = Criterion::start(9, "symmetries, homogeneity, degree profiles, Gram relation", 60);

    // Curvature symmetries and the first Bianchi identity on both sample
    // generators.
    for dim in 2..=5 {
        let algebraic = SamplePlan {
            dim,
            trials: 10,
            seed: 21,
            max_deriv: 0,
            kind: SampleKind::Algebraic,
            coefficient_bound: 9,
        };
        for sample in curvature_core::identity_lab::generate_samples(&algebraic) {
            sample.check_invariants().unwrap();
        }
    }
    for dim in 2..=3 {
        let jets = SamplePlan {
            dim,
            trials: 3,
            seed: 22,
            max_deriv: 2,
            kind: SampleKind::Jet,
            coefficient_bound: 9,
        };
        for sample in curvature_core::identity_lab::generate_samples(&jets) {
            sample.check_invariants().unwrap();
        }
    }

    // Homogeneity: rescaling the metric by c^2 scales every weight-n value
    // by c^{-n}, exactly, for every spanning element at n in {2, 4}
    // (including derivative monomials, exercised on jet samples).
    for n in [2u32, 4] {
        let scalar = enumerate_spanning_set(n, Valence::Scalar, 2).unwrap();
        let sym2 = enumerate_spanning_set(n, Valence::Sym2, 0).unwrap();
        let plan = SamplePlan {
            dim: 3,
            trials: 2,
            seed: 23,
            max_deriv: 2,
            kind: SampleKind::Jet,
            coefficient_bound: 9,
        };
        for sample in curvature_core::identity_lab::generate_samples(&plan) {
            for scale in [rat(2, 1), rat(3, 1)] {
                let rescaled = sample.rescale_metric(&scale);
                let mut damping = Rational::from_integer(1.into());
                for _ in 0..n {
                    damping /= &scale;
                }
                for e in scalar.elements() {
                    let before = evaluate_scalar(e, &sample).unwrap();
                    let after = evaluate_scalar(e, &rescaled).unwrap();
                    assert_eq!(after, before * &damping, "scalar homogeneity: {e}");
                }
                for e in sym2.elements() {
                    let before = evaluate_sym2(e, &sample).unwrap();
                    let after = evaluate_sym2(e, &rescaled).unwrap();
                    assert_eq!(after, before.scale(&damping), "sym2 homogeneity: {e}");
                }
            }
        }
    }

    // Kernel monomials carry the critical-dimension degree profile: no
    // derivative slots, and an injective index assignment hits every index
    // exactly twice (free-pair slots included).
    for id in ["1.2.2", "1.2.3", "1.4.1", "1.4.2"] {
        let identity = find_identity(id).unwrap();
        let labels_expected = identity.weight as usize
            + if identity.valence == Valence::Sym2 { 1 } else { 0 };
        for element in identity.elements() {
            for (mono, _) in element.terms() {
                assert_eq!(mono.max_deriv_order(), 0, "{id}: {mono}");
                let labels = mono.labels_in_order();
                assert_eq!(labels.len(), labels_expected, "{id}: {mono}");
                let assignment: BTreeMap<Label, usize> =
                    labels.iter().enumerate().map(|(i, &l)| (l, i + 1)).collect();
                for k in 1..=labels.len() {
                    assert_eq!(mono.degree_profile(&assignment, k), 2, "{id}: {mono}, index {k}");
                }
                assert_eq!(mono.degree_profile(&assignment, labels.len() + 1), 0);
            }
        }
    }

    // The scalar-product rank relation vanishes exactly; the leading minor
    // witnesses genericity.
    for m in [1usize, 2, 3, 5] {
        let mut minor_witness = false;
        for seed in 0..20u64 {
            let report = gram_relation_check(m, seed).unwrap();
            assert!(report.determinant_vanishes, "dim {m} seed {seed}");
            minor_witness |= report.leading_minor_nonzero;
        }
        assert!(minor_witness, "no nonzero leading minor in dim {m}");
    }
    c.finish();
}
