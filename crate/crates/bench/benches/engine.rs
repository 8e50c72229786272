use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

use curvature_core::identity_lab::{find_identity, kernel_basis};
use curvature_core::invariant_enum::{enumerate_spanning_set, pfaffian_expand};
use curvature_core::jet_geometry::{
    curvature_from_jet, evaluate_scalar_exact, pfaffian_direct, random_algebraic_curvature,
    random_metric_jet,
};
use curvature_core::tensor_expr::canonicalize;
use curvature_core::{InvariantPolynomial, Valence};

fn bench_canonicalize(c: &mut Criterion) {
    let quadratic = InvariantPolynomial::parse("R[a,b,c,a] R[d,b,c,d]").unwrap();
    let (two_factor, _) = quadratic.terms().next().unwrap();
    let cubic = InvariantPolynomial::parse("R[a,b,c,d] R[c,e,a,f] R[f,d,b,e]").unwrap();
    let (three_factor, _) = cubic.terms().next().unwrap();
    c.bench_function("canonicalize/two-factor", |b| {
        b.iter(|| canonicalize(std::hint::black_box(two_factor)).unwrap())
    });
    c.bench_function("canonicalize/three-factor", |b| {
        b.iter(|| canonicalize(std::hint::black_box(three_factor)).unwrap())
    });
}

fn bench_expand(c: &mut Criterion) {
    c.bench_function("expand/pfaffian-weight4", |b| {
        b.iter(|| pfaffian_expand(std::hint::black_box(4)).unwrap())
    });
    c.bench_function("expand/pfaffian-weight6", |b| {
        b.iter(|| pfaffian_expand(std::hint::black_box(6)).unwrap())
    });
}

fn bench_evaluate(c: &mut Criterion) {
    let cubic = find_identity("1.2.3").unwrap().combination();
    let sample = random_algebraic_curvature(5, 42, 3);
    c.bench_function("evaluate/cubic-identity-dim5", |b| {
        b.iter(|| evaluate_scalar_exact(&cubic, std::hint::black_box(&sample)).unwrap())
    });
    c.bench_function("direct/pfaffian-weight4-dim6", |b| {
        let sample6 = random_algebraic_curvature(6, 7, 3);
        b.iter(|| pfaffian_direct(std::hint::black_box(&sample6), 4).unwrap())
    });
}

fn bench_jets(c: &mut Criterion) {
    c.bench_function("jet/curvature-dim4-order2", |b| {
        b.iter_batched(
            || random_metric_jet(4, 2, 9, 9),
            |jet| curvature_from_jet(&jet, 0).unwrap(),
            BatchSize::SmallInput,
        )
    });
}

fn bench_kernel(c: &mut Criterion) {
    let mut group = c.benchmark_group("kernel");
    group.sample_size(10);
    let set = find_identity("1.2.2").unwrap().spanning_set();
    group.bench_function("quadratic-dim3", |b| {
        b.iter(|| kernel_basis(std::hint::black_box(&set), 3, 9, 1).unwrap())
    });
    let sym2 = enumerate_spanning_set(2, Valence::Sym2, 0).unwrap();
    group.bench_function("sym2-weight2-dim2", |b| {
        b.iter(|| kernel_basis(std::hint::black_box(&sym2), 2, 6, 1).unwrap())
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_canonicalize,
    bench_expand,
    bench_evaluate,
    bench_jets,
    bench_kernel
);
criterion_main!(benches);
