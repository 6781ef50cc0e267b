//! Parallel-vs-sequential throughput for the data-parallel workloads.
//!
//! Each group benches the same pure per-item operation driven two ways:
//! `seq` maps over the batch with a plain iterator, `par` fans it out with
//! rayon. The crate's own internal loops follow the `parallel` feature;
//! rebuild with `--no-default-features` to baseline those too.

use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use condsup_core::laws::check_instance;
use condsup_core::random::{self, LawInstance, MarketKind};
use condsup_core::rational::rat_int;
use condsup_core::{Claim, LatticeVector, MarketModel, TransformSystem};

fn law_batch(count: usize) -> Vec<LawInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xBEEF);
    (0..count).map(|_| random::law_instance(&mut rng, 12, 100)).collect()
}

fn bench_law_sheet(c: &mut Criterion) {
    let instances = law_batch(64);
    let mut group = c.benchmark_group("law_sheet");
    group.sample_size(10);
    group.bench_function(BenchmarkId::new("seq", instances.len()), |b| {
        b.iter(|| {
            let failures = instances
                .iter()
                .filter(|inst| check_instance(inst).is_err())
                .count();
            black_box(failures)
        })
    });
    group.bench_function(BenchmarkId::new("par", instances.len()), |b| {
        b.iter(|| {
            let failures = instances
                .par_iter()
                .filter(|inst| check_instance(inst).is_err())
                .count();
            black_box(failures)
        })
    });
    group.finish();
}

fn market_batch(count: usize) -> Vec<(MarketModel, Claim)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xFEED);
    (0..count)
        .map(|_| {
            let market = random::market(&mut rng, 16, 3, MarketKind::Aip);
            let strike = rat_int(2);
            let terminal = market.price(market.horizon());
            let payoff = (terminal
                - &LatticeVector::constant(market.filtration().space().clone(), strike))
            .pos_part();
            let claim = Claim::new(market.filtration(), payoff).expect("payoff is terminal");
            (market, claim)
        })
        .collect()
}

fn bench_superhedge(c: &mut Criterion) {
    let markets = market_batch(64);
    let mut group = c.benchmark_group("superhedge");
    group.sample_size(10);
    group.bench_function(BenchmarkId::new("seq", markets.len()), |b| {
        b.iter(|| {
            let total: usize = markets
                .iter()
                .map(|(m, h)| m.superhedge_price(h, 0).unwrap().price.len())
                .sum();
            black_box(total)
        })
    });
    group.bench_function(BenchmarkId::new("par", markets.len()), |b| {
        b.iter(|| {
            let total: usize = markets
                .par_iter()
                .map(|(m, h)| m.superhedge_price(h, 0).unwrap().price.len())
                .sum();
            black_box(total)
        })
    });
    group.finish();
}

fn bench_cesaro(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(0xABBA);
    let n = 512;
    let space = condsup_core::SampleSpace::uniform(n);
    let systems: Vec<(TransformSystem, LatticeVector)> = (0..16)
        .map(|_| {
            let tau = random::permutation(&mut rng, n);
            let ts = TransformSystem::new(space.clone(), tau).expect("uniform weights");
            let f = random::vector(&mut rng, &space, 50, 10);
            (ts, f)
        })
        .collect();
    let terms = 128;
    let mut group = c.benchmark_group("cesaro_mean");
    group.sample_size(10);
    group.bench_function(BenchmarkId::new("seq", terms), |b| {
        b.iter(|| {
            let total: usize = systems
                .iter()
                .map(|(ts, f)| ts.cesaro_mean(f, terms).unwrap().len())
                .sum();
            black_box(total)
        })
    });
    group.bench_function(BenchmarkId::new("par", terms), |b| {
        b.iter(|| {
            let total: usize = systems
                .par_iter()
                .map(|(ts, f)| ts.cesaro_mean(f, terms).unwrap().len())
                .sum();
            black_box(total)
        })
    });
    group.finish();
}

fn bench_cond_ops_large_space(c: &mut Criterion) {
    // One big system: per-atom parallelism inside a single call follows the
    // crate feature, so this group is the one to compare across
    // `--no-default-features` builds.
    let mut rng = ChaCha8Rng::seed_from_u64(0xD1CE);
    let n = 4096;
    let space: Arc<condsup_core::SampleSpace> = condsup_core::SampleSpace::uniform(n);
    let partition = random::partition(&mut rng, n);
    let sys = condsup_core::ConditionalSystem::new(space.clone(), partition).unwrap();
    let f = random::vector(&mut rng, &space, 100, 100);
    let mut group = c.benchmark_group("cond_ops_4096");
    group.sample_size(10);
    group.bench_function("expectation", |b| {
        b.iter(|| black_box(sys.expectation(&f).unwrap()))
    });
    group.bench_function("delta", |b| b.iter(|| black_box(sys.delta(&f).unwrap())));
    group.finish();
}

criterion_group!(
    benches,
    bench_law_sheet,
    bench_superhedge,
    bench_cesaro,
    bench_cond_ops_large_space
);
criterion_main!(benches);
