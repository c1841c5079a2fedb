use airy_gap::fredholm::airy_gap_sweep;
use airy_gap::laguerre::{default_nodes, dlog_gap_rank1};
use airy_gap::par::{map_with, ExecMode};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const MODES: [(&str, ExecMode); 2] = [("sequential", ExecMode::Sequential), ("parallel", ExecMode::Parallel)];

fn gap_sweep(c: &mut Criterion) {
    let grid: Vec<f64> = (0..32).map(|k| -4.0 + 0.25 * k as f64).collect();
    let mut g = c.benchmark_group("airy_gap_sweep");
    g.sample_size(10);
    for (name, mode) in MODES {
        g.bench_with_input(BenchmarkId::new(name, grid.len()), &grid, |b, grid| {
            b.iter(|| airy_gap_sweep(mode, grid, 60).unwrap())
        });
    }
    g.finish();
}

fn laguerre_grid(c: &mut Criterion) {
    let pts: Vec<(usize, f64)> = [30usize, 60]
        .iter()
        .flat_map(|&n| [0.3, 0.5, 0.7, 0.85].map(|a| (n, a)))
        .collect();
    let mut g = c.benchmark_group("laguerre_rank1_grid");
    g.sample_size(10);
    for (name, mode) in MODES {
        g.bench_with_input(BenchmarkId::new(name, pts.len()), &pts, |b, pts| {
            b.iter(|| map_with(mode, pts, |&(n, a)| dlog_gap_rank1(n, a, default_nodes(n)).unwrap()))
        });
    }
    g.finish();
}

criterion_group!(benches, gap_sweep, laguerre_grid);
criterion_main!(benches);
