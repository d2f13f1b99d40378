use std::hint::black_box;

use bqf_bench::{cumulant_fixture, hermitian_fixture, real_fixture};
use bqf_core::cumulants::element_cumulants;
use bqf_core::matrix::{qf_cumulant_hadamard, qf_cumulant_iid, quadratic_form_polynomial};
use bqf_core::measure::{tangent_atoms, tangent_finite_cumulant};
use bqf_core::partitions::enumerate_interval;
use bqf_core::rational::int;
use bqf_core::series::tangent_numbers;
use bqf_core::Family;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn partitions(c: &mut Criterion) {
    c.bench_function("enumerate_interval/16", |b| b.iter(|| enumerate_interval(black_box(16)).unwrap()));
}

fn qf_routes(c: &mut Criterion) {
    let mut group = c.benchmark_group("qf_cumulant");
    let a = hermitian_fixture(5);
    let k = cumulant_fixture(12);
    for r in [2, 4, 6] {
        group.bench_with_input(BenchmarkId::new("tuple_sum", r), &r, |b, &r| {
            b.iter(|| qf_cumulant_iid(&a, &k, r).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("hadamard", r), &r, |b, &r| {
            b.iter(|| qf_cumulant_hadamard(&a, &k, r).unwrap())
        });
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let a = real_fixture(3);
    let p = quadratic_form_polynomial(&a).unwrap();
    let family = Family::iid(3, &cumulant_fixture(6));
    c.bench_function("expansion_oracle/n3_r3", |b| b.iter(|| element_cumulants(&p, &family, 3).unwrap()));
}

fn tangent(c: &mut Criterion) {
    c.bench_function("tangent_numbers/10", |b| b.iter(|| tangent_numbers(black_box(10)).unwrap()));
    c.bench_function("tangent_atoms/100", |b| b.iter(|| tangent_atoms(black_box(100)).unwrap()));
    c.bench_function("tangent_finite_cumulant/n100_r4", |b| {
        b.iter(|| tangent_finite_cumulant(&int(1), &int(1), black_box(100), 4).unwrap())
    });
}

criterion_group!(benches, partitions, qf_routes, oracle, tangent);
criterion_main!(benches);
