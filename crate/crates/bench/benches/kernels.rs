//! Criterion benchmarks for the hot kernels: sieve construction, the
//! partial-sum sweeps, the quotient-block convolution, and the zeta-side
//! series. Sizes are chosen so the full suite runs in well under a minute
//! while still exercising the asymptotic regime of each kernel.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use std::hint::black_box;

use primelab_core::summatory::{chebyshev_psi, conv_summatory, mertens};
use primelab_core::zeta::{stieltjes_constants, zeta_em, ComplexValue};
use primelab_core::{build_sieve, SieveTables};

fn tables(limit: u64) -> SieveTables {
    build_sieve(limit).expect("benchmark sieve limit is modest")
}

fn bench_build_sieve(c: &mut Criterion) {
    c.bench_function("build_sieve 10^6", |b| {
        b.iter_batched(
            || (),
            |()| build_sieve(black_box(1_000_000)).unwrap(),
            BatchSize::SmallInput,
        );
    });
}

fn bench_chebyshev_psi(c: &mut Criterion) {
    let t = tables(1_000_000);
    c.bench_function("chebyshev_psi 10^6", |b| {
        b.iter(|| chebyshev_psi(black_box(1_000_000), &t).unwrap());
    });
}

fn bench_mertens(c: &mut Criterion) {
    let t = tables(1_000_000);
    c.bench_function("mertens 10^6", |b| {
        b.iter(|| mertens(black_box(1_000_000), &t).unwrap());
    });
}

fn bench_conv_summatory(c: &mut Criterion) {
    let t = tables(1_000_000);
    c.bench_function("conv_summatory 10^6", |b| {
        b.iter(|| conv_summatory(black_box(1_000_000), &t).unwrap());
    });
}

fn bench_zeta_em(c: &mut Criterion) {
    let s = ComplexValue::new(2.0, 14.0);
    c.bench_function("zeta_em 10^4 terms", |b| {
        b.iter(|| zeta_em(black_box(s), black_box(10_000)).unwrap());
    });
}

fn bench_stieltjes(c: &mut Criterion) {
    c.bench_function("stieltjes_constants k<=4, 10^5 terms", |b| {
        b.iter(|| stieltjes_constants(black_box(4), black_box(100_000)).unwrap());
    });
}

criterion_group!(
    kernels,
    bench_build_sieve,
    bench_chebyshev_psi,
    bench_mertens,
    bench_conv_summatory,
    bench_zeta_em,
    bench_stieltjes
);
criterion_main!(kernels);
