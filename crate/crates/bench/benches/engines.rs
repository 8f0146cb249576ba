use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use vflab_bench::{brieskorn, cusp_model};
use vflab_core::rational::rat;
use vflab_core::*;

fn weighted_homogeneous(c: &mut Criterion) {
    let mut group = c.benchmark_group("bs_weighted_homogeneous");
    for exps in [vec![2, 3], vec![3, 4], vec![3, 5, 7], vec![4, 5, 6]] {
        let (f, w) = brieskorn(&exps);
        let id = BenchmarkId::from_parameter(format!("{exps:?}"));
        group.bench_with_input(id, &(f, w), |b, (f, w)| {
            b.iter(|| bs_weighted_homogeneous(black_box(f), w).unwrap())
        });
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("find_minimal_b_bounded");
    group.sample_size(10);
    for (text, order, sdeg) in [("x^2 + y^3", 3, 3), ("x^2 + y^2 + z^2", 2, 2), ("x^3", 3, 3)] {
        let f = parse_polynomial_auto(text).unwrap();
        let one = Polynomial::one(f.vars());
        group.bench_function(text, |b| {
            b.iter(|| find_minimal_b_bounded(black_box(&f), &one, order, sdeg).unwrap())
        });
    }
    group.finish();
}

fn groebner(c: &mut Criterion) {
    let mut group = c.benchmark_group("groebner_basis");
    for text in ["x^3 + y^4 + x*y^3", "x^5 + y^5 + x^2*y^2", "x^3 + y^3 + z^3 + x*y*z"] {
        let f = parse_polynomial_auto(text).unwrap();
        let ideal = bs::qhom::jacobian_ideal(&f).unwrap();
        group.bench_function(text, |b| {
            b.iter(|| groebner_basis(black_box(&ideal), &MonomialOrder::GrevLex))
        });
    }
    group.finish();
}

fn weyl_products(c: &mut Criterion) {
    let vars = VarSet::new(["x", "y"]).unwrap();
    let ctx = WeylContext::with_s(&vars).unwrap();
    let p = parse_operator("x^2*dx^2 + s*y*dy + dx*dy^2", &ctx).unwrap();
    let q = parse_operator("y^3*dx + x*y*dy^2 + s^2", &ctx).unwrap();
    c.bench_function("weyl_mul", |b| b.iter(|| black_box(&p).try_mul(&q).unwrap()));
    c.bench_function("weyl_adjoint", |b| b.iter(|| black_box(&p).adjoint()));
}

fn axioms(c: &mut Criterion) {
    let mut group = c.benchmark_group("check_axioms");
    group.sample_size(10);
    let levels: Vec<_> = (0..=12).map(|i| rat(i, 6)).collect();
    let trunc = Truncation::new(2, 8, 64);
    let models = [
        ("snc(1,1)", VModel::snc(vec![1, 1]).unwrap()),
        ("snc(2,3)", VModel::snc(vec![2, 3]).unwrap()),
        ("cusp", cusp_model()),
    ];
    for (name, model) in &models {
        group.bench_function(*name, |b| b.iter(|| check_axioms(black_box(model), &levels, &trunc).unwrap()));
    }
    group.finish();
}

fn multiplier(c: &mut Criterion) {
    let a = MonomialDivisor::new(vec![6, 10, 15]).unwrap();
    let bound = rat(3, 1);
    c.bench_function("jumping_numbers_monomial", |b| {
        b.iter(|| jumping_numbers_monomial(black_box(&a), &bound))
    });
}

criterion_group!(benches, weighted_homogeneous, oracle, groebner, weyl_products, axioms, multiplier);
criterion_main!(benches);
