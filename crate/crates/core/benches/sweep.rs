//! Sequential vs range-partitioned parallel exhaustive sweeps, plus the
//! raw step throughput of the three state engines.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_bigint::BigUint;
use std::hint::black_box;

use slcg_core::encoding::default_scheme;
use slcg_core::objective::get_benchmark;
use slcg_core::optimizer::{exhaustive_sweep, exhaustive_sweep_parallel, SweepGuard};
use slcg_core::generator::{step_big, step_u128, step_u64};

fn sweep_benches(c: &mut Criterion) {
    let mut group = c.benchmark_group("exhaustive sweep F8 d=2");
    group.sample_size(10);
    for bits in [8u32, 9, 10] {
        let problem = get_benchmark("F8", 2).unwrap();
        let scheme = default_scheme(&problem.bounds, bits, false).unwrap();
        let guard = SweepGuard::default();
        group.bench_with_input(
            BenchmarkId::new("sequential", 2 * bits + 1),
            &bits,
            |b, _| {
                b.iter(|| black_box(exhaustive_sweep(&problem, &scheme, &guard).unwrap()))
            },
        );
        for workers in [2usize, 4, 8] {
            group.bench_with_input(
                BenchmarkId::new(format!("parallel x{workers}"), 2 * bits + 1),
                &bits,
                |b, _| {
                    b.iter(|| {
                        black_box(
                            exhaustive_sweep_parallel(&problem, &scheme, &guard, workers)
                                .unwrap(),
                        )
                    })
                },
            );
        }
    }
    group.finish();
}

fn step_benches(c: &mut Criterion) {
    let mut group = c.benchmark_group("step engines");
    group.bench_function("u64 n=41", |b| {
        let mut state = 123456u64;
        b.iter(|| {
            for _ in 0..1000 {
                state = step_u64(black_box(state), 41);
            }
            state
        })
    });
    group.bench_function("u128 n=121", |b| {
        let mut state = 123456789u128;
        b.iter(|| {
            for _ in 0..1000 {
                state = step_u128(black_box(state), 121);
            }
            state
        })
    });
    group.bench_function("biguint n=121", |b| {
        let mut state = BigUint::from(123456789u64);
        b.iter(|| {
            for _ in 0..1000 {
                state = step_big(black_box(&state), 121);
            }
            state.clone()
        })
    });
    group.bench_function("biguint n=601", |b| {
        let mut state = BigUint::from(123456789u64);
        b.iter(|| {
            for _ in 0..1000 {
                state = step_big(black_box(&state), 601);
            }
            state.clone()
        })
    });
    group.finish();
}

criterion_group!(benches, sweep_benches, step_benches);
criterion_main!(benches);
