//! Sequential against rayon-parallel execution on the three data-parallel
//! workloads: oracle enumeration, batch solving and the labeling census.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use zm_splines::grids::{build_dual, build_mesh, labeling_census};
use zm_splines::solver::{enumerate_splines, solve_many, OracleOptions};
use zm_splines::{Execution, LabeledGraph, Modulus, ZmIdeal};

const MODES: [Execution; 2] = [Execution::Sequential, Execution::Parallel];

/// A connected graph on `n` vertices: a random tree plus `extra` chords.
fn random_graph(rng: &mut ChaCha8Rng, modulus: u64, n: usize, extra: usize) -> LabeledGraph {
    let m = Modulus::new(modulus).unwrap();
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut g = LabeledGraph::new(m, &names).unwrap();
    let divisors = m.divisors();
    let label = |rng: &mut ChaCha8Rng| ZmIdeal::from_divisor(*divisors.choose(rng).unwrap(), m).unwrap();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        let l = label(rng);
        g.add_edge_by_index(u, v, l).unwrap();
    }
    for _ in 0..extra {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u != v {
            let l = label(rng);
            g.add_edge_by_index(u, v, l).unwrap();
        }
    }
    g
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    // the 1x1 grid dual with (2)-labels over Z_12: 6 * 6^5 splines
    let dual = build_dual(&build_mesh(1, 1).unwrap(), Modulus::new(12).unwrap()).relabel(|_| 2).unwrap();
    for execution in MODES {
        let opts = OracleOptions { execution, ..Default::default() };
        group.bench_with_input(BenchmarkId::new("grid_1x1_z12", format!("{execution:?}")), &dual, |b, g| {
            b.iter(|| black_box(enumerate_splines(g, &opts).unwrap().len()))
        });
    }
    group.finish();
}

fn batch_solve(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve_many");
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let graphs: Vec<LabeledGraph> = (0..256)
        .map(|_| {
            let modulus = *[60u64, 210, 360, 2310].choose(&mut rng).unwrap();
            random_graph(&mut rng, modulus, 8, 6)
        })
        .collect();
    for execution in MODES {
        group.bench_with_input(BenchmarkId::new("256_graphs", format!("{execution:?}")), &graphs, |b, gs| {
            b.iter(|| black_box(solve_many(gs, execution).len()))
        });
    }
    group.finish();
}

fn census(c: &mut Criterion) {
    let mut group = c.benchmark_group("labeling_census");
    group.sample_size(10);
    let z12 = Modulus::new(12).unwrap();
    let dual = build_dual(&build_mesh(1, 1).unwrap(), z12);
    let divisors = z12.divisors();
    for execution in MODES {
        group.bench_with_input(BenchmarkId::new("grid_1x1_z12", format!("{execution:?}")), &dual, |b, g| {
            b.iter(|| black_box(labeling_census(g, &divisors, 1 << 20, execution).unwrap().rank_one))
        });
    }
    group.finish();
}

criterion_group!(benches, oracle, batch_solve, census);
criterion_main!(benches);
