use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gralift::lifting::verify_idempotent_ideal_lift;
use gralift::subspace::{enumerate_grassmannian, DEFAULT_ENUMERATION_BUDGET};
use gralift::{Matrix, MatrixRing, PrimeField, RankMetricCode, Side};
use std::hint::black_box;

fn rank(c: &mut Criterion) {
    let mut g = c.benchmark_group("rank");
    for p in [2u64, 5, 31] {
        let f = PrimeField::new(p).unwrap();
        let m = Matrix::from_ints(4, 6, f, &(0..24).map(|i| (i * 7 + 3) % p as i64).collect::<Vec<_>>()).unwrap();
        g.bench_with_input(BenchmarkId::new("4x6", p), &m, |b, m| b.iter(|| black_box(m).rank()));
    }
    g.finish();
}

fn ideals(c: &mut Criterion) {
    let ring = MatrixRing::over_prime(5).unwrap();
    let a = Matrix::from_ints(2, 2, ring.field(), &[0, 0, 0, 1]).unwrap();
    c.bench_function("principal ideal p=5", |b| {
        b.iter(|| ring.principal_ideal(black_box(&a), Side::Left).unwrap())
    });
    let ideal = ring.principal_ideal(&a, Side::Left).unwrap().elements;
    c.bench_function("rank code parameters p=5", |b| {
        b.iter(|| RankMetricCode::from_matrices(black_box(ideal.clone())).unwrap())
    });
    c.bench_function("idempotent scan p=5", |b| b.iter(|| ring.nontrivial_idempotents()));
}

fn lift_sweep(c: &mut Criterion) {
    let mut g = c.benchmark_group("lift sweep");
    g.sample_size(10);
    for p in [2u64, 3, 5] {
        let ring = MatrixRing::over_prime(p).unwrap();
        let gens = ring.nontrivial_idempotents();
        g.bench_with_input(BenchmarkId::from_parameter(p), &gens, |b, gens| {
            b.iter(|| {
                for a in gens {
                    for side in Side::BOTH {
                        assert!(verify_idempotent_ideal_lift(&ring, a, side).unwrap().ok);
                    }
                }
            })
        });
    }
    g.finish();
}

fn grassmannian(c: &mut Criterion) {
    let mut g = c.benchmark_group("grassmannian");
    g.sample_size(10);
    for (n, k, p) in [(4, 2, 2u64), (5, 2, 3), (6, 3, 2)] {
        let f = PrimeField::new(p).unwrap();
        g.bench_function(format!("G_{p}({n},{k})"), |b| {
            b.iter(|| enumerate_grassmannian(n, k, f, DEFAULT_ENUMERATION_BUDGET).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, rank, ideals, lift_sweep, grassmannian);
criterion_main!(benches);
