//! Shared test corpus: every connected simple graph on at most five vertices
//! with at most eight edges (up to isomorphism), each labeled at random over a
//! fixed list of moduli.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use zm_splines::solver::search_size;
use zm_splines::{LabeledGraph, Modulus, ZmIdeal};

pub const MODULI: [u64; 8] = [4, 6, 8, 9, 12, 15, 18, 30];

/// Labelings whose unpruned oracle search exceeds this are redrawn.
pub const SEARCH_BUDGET: u128 = 400_000;

/// Labelings drawn per (shape, modulus) pair.
pub const DRAWS: usize = 2;

pub type Shape = (usize, Vec<(usize, usize)>);

fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(a, b) in edges {
            for (x, y) in [(a, b), (b, a)] {
                if x == v && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    seen.iter().all(|&s| s)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn canonical(edges: &[(usize, usize)], perms: &[Vec<usize>]) -> Vec<(usize, usize)> {
    perms
        .iter()
        .map(|p| {
            let mut e: Vec<(usize, usize)> = edges
                .iter()
                .map(|&(a, b)| (p[a].min(p[b]), p[a].max(p[b])))
                .collect();
            e.sort_unstable();
            e
        })
        .min()
        .expect("at least one permutation")
}

/// Connected simple graphs on `1..=5` vertices with at most 8 edges, one per
/// isomorphism class, in a fixed order.
pub fn shapes() -> Vec<Shape> {
    let mut out = Vec::new();
    for n in 1..=5usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let perms = permutations(n);
        let mut classes = std::collections::BTreeSet::new();
        for mask in 0u32..(1 << pairs.len()) {
            if mask.count_ones() > 8 {
                continue;
            }
            let edges: Vec<(usize, usize)> =
                pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            if connected(n, &edges) {
                classes.insert((edges.len(), canonical(&edges, &perms)));
            }
        }
        out.extend(classes.into_iter().map(|(_, e)| (n, e)));
    }
    out
}

pub fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
}

pub fn build(modulus: u64, n: usize, edges: &[(usize, usize, u64)]) -> LabeledGraph {
    let m = Modulus::new(modulus).unwrap();
    let mut g = LabeledGraph::new(m, &names(n)).unwrap();
    for &(u, v, d) in edges {
        g.add_edge_by_index(u, v, ZmIdeal::from_divisor(d, m).unwrap()).unwrap();
    }
    g
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub graph: LabeledGraph,
}

fn draw_labels(rng: &mut ChaCha8Rng, modulus: u64, n: usize, edges: &[(usize, usize)]) -> LabeledGraph {
    let divisors = Modulus::new(modulus).unwrap().divisors();
    loop {
        let labeled: Vec<(usize, usize, u64)> =
            edges.iter().map(|&(u, v)| (u, v, *divisors.choose(rng).unwrap())).collect();
        let g = build(modulus, n, &labeled);
        if search_size(&g) <= SEARCH_BUDGET {
            return g;
        }
    }
}

/// The labeled corpus; at least 200 instances, identical on every run.
pub fn corpus() -> Vec<Instance> {
    let mut out = Vec::new();
    for (s, (n, edges)) in shapes().iter().enumerate() {
        for &m in &MODULI {
            let mut rng = ChaCha8Rng::seed_from_u64((s as u64) << 16 | m);
            for draw in 0..DRAWS {
                out.push(Instance {
                    name: format!("shape{s}/n{n}/m{m}/draw{draw}"),
                    graph: draw_labels(&mut rng, m, *n, edges),
                });
            }
        }
    }
    out
}

/// Corpus graphs with extra parallel edges and loops, for the rewriting rules.
pub fn multigraph_corpus() -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    corpus()
        .into_iter()
        .filter(|inst| inst.graph.edge_count() > 0)
        .step_by(3)
        .map(|inst| {
            let g = &inst.graph;
            let m = g.modulus();
            let divisors = m.divisors();
            let mut h = g.clone();
            for _ in 0..rng.gen_range(1..=2) {
                let e = *g.edges().choose(&mut rng).unwrap();
                let d = *divisors.choose(&mut rng).unwrap();
                h.add_edge_by_index(e.u, e.v, ZmIdeal::from_divisor(d, m).unwrap()).unwrap();
            }
            if rng.gen_bool(0.3) {
                let v = rng.gen_range(0..g.vertex_count());
                h.add_edge_by_index(v, v, m.unit_ideal()).unwrap();
            }
            Instance { name: format!("{}/multi", inst.name), graph: h }
        })
        .collect()
}
