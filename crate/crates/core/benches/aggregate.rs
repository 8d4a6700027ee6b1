use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use maqa_core::engine::{oracle_aggregate_with, run_circuit, MaqaSpec};
use maqa_core::exec::ExecutionMode;
use maqa_core::qslp::{qslp_loss_with, DataPoint, QslpSpec, ToyDataset};

const MODES: [(&str, ExecutionMode); 2] = [
    ("sequential", ExecutionMode::Sequential),
    ("parallel", ExecutionMode::Parallel),
];

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle_aggregate");
    group.sample_size(20);
    for d in [6usize, 8, 10] {
        let spec = MaqaSpec::random(d, 3, 1);
        for (name, mode) in MODES {
            group.bench_with_input(BenchmarkId::new(name, d), &spec, |b, spec| {
                b.iter(|| oracle_aggregate_with(black_box(spec), mode).unwrap())
            });
        }
    }
    group.finish();
}

fn circuit(c: &mut Criterion) {
    let mut group = c.benchmark_group("run_circuit");
    group.sample_size(20);
    for d in [6usize, 8, 10] {
        let spec = MaqaSpec::random(d, 3, 1);
        group.bench_with_input(BenchmarkId::from_parameter(d), &spec, |b, spec| {
            b.iter(|| run_circuit(black_box(spec)).unwrap())
        });
    }
    group.finish();
}

fn loss(c: &mut Criterion) {
    let mut group = c.benchmark_group("qslp_loss");
    group.sample_size(20);
    let points = (0..256)
        .map(|i| {
            let a = i as f64 * 0.1;
            DataPoint {
                x: vec![a.cos(), a.sin(), 0.5, -0.25],
                label: (i % 2) as f64,
            }
        })
        .collect();
    let data = ToyDataset::new(points).unwrap();
    let spec = QslpSpec::seeded(4, 2, 3);
    for (name, mode) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| qslp_loss_with(black_box(&data), &spec, mode).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, oracle, circuit, loss);
criterion_main!(benches);
