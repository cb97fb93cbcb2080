use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use jacring_core::lefschetz::slp_check;
use jacring_core::rng::stream;
use jacring_core::{random_smooth_hypersurface, GradedPolynomial, JacobianRing, PrimeField, Rationals, DEFAULT_PRIMES};

fn field() -> PrimeField {
    PrimeField::new(65537).unwrap()
}

fn ring_construction(c: &mut Criterion) {
    let mut g = c.benchmark_group("build");
    for d in [5, 8] {
        g.bench_with_input(BenchmarkId::new("fermat-plane", d), &d, |b, &d| {
            b.iter(|| JacobianRing::fermat(field(), 2, d).unwrap())
        });
        let eq = random_smooth_hypersurface(2, d, &DEFAULT_PRIMES, 1).unwrap().equation;
        let eq = eq.reduce(&field()).unwrap();
        g.bench_with_input(BenchmarkId::new("random-plane", d), &eq, |b, eq| {
            b.iter(|| JacobianRing::from_hypersurface(eq).unwrap())
        });
    }
    g.bench_function("fermat-threefold-6", |b| {
        b.iter(|| JacobianRing::fermat(field(), 4, 6).unwrap())
    });
    g.finish();
}

fn multiplication_rank(c: &mut Criterion) {
    let mut g = c.benchmark_group("rank");
    for d in [5, 7] {
        let ring = JacobianRing::fermat(field(), 2, d).unwrap();
        let xi = GradedPolynomial::random(field(), 2, d, &mut stream(1, &[]));
        g.bench_with_input(BenchmarkId::new("cup-product-fp", d), &(ring, xi), |b, (ring, xi)| {
            b.iter(|| ring.multiplication_matrix(black_box(xi), d - 3).unwrap().rank())
        });
    }
    let ring = JacobianRing::fermat(Rationals, 2, 5).unwrap();
    let xi = GradedPolynomial::random(Rationals, 2, 5, &mut stream(1, &[]));
    g.bench_function("cup-product-q-5", |b| {
        b.iter(|| ring.multiplication_matrix(black_box(&xi), 2).unwrap().rank())
    });
    g.finish();
}

fn lefschetz(c: &mut Criterion) {
    let ring = JacobianRing::monomial_ci(Rationals, &[3, 4, 5]).unwrap();
    let l = GradedPolynomial::sum_of_variables(Rationals, 2);
    c.bench_function("slp-ci-345-q", |b| b.iter(|| slp_check(&ring, &l).unwrap()));
}

criterion_group!(benches, ring_construction, multiplication_rank, lefschetz);
criterion_main!(benches);
