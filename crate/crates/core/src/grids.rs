//! Triangulated rectangular grids and their dual graphs.
//!
//! Each unit square of an `m x n` grid is cut by its bottom-left to top-right
//! diagonal, and each of the two triangles is split into three at its
//! centroid. Coordinates are stored scaled by 3 so centroids stay integral.
//!
//! Within square `(i, j)` the six small triangles are numbered
//! `t0..t2` for the lower triangle (diagonal side, bottom side, right side)
//! and `t3..t5` for the upper one (diagonal side, top side, left side), each
//! counterclockwise from the diagonal. Dual vertices are named `r{i}c{j}t{k}`
//! with row `i` counted from the bottom.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Result, SplineError};
use crate::graph::LabeledGraph;
use crate::par::Execution;
use crate::rankone::{rank_one_zm, RankOneVerdict};
use crate::ring::{lcm, Modulus, ZmIdeal};

/// Coordinates are multiplied by this so centroids have integer entries.
pub const SCALE: i64 = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeshTriangle {
    pub row: usize,
    pub col: usize,
    pub slot: usize,
    /// Point indices, counterclockwise.
    pub corners: [usize; 3],
}

impl MeshTriangle {
    pub fn name(&self) -> String {
        format!("r{}c{}t{}", self.row, self.col, self.slot)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeshEdge {
    pub ends: [usize; 2],
    /// One triangle for boundary edges, two for interior ones.
    pub triangles: Vec<usize>,
}

impl MeshEdge {
    pub fn is_interior(&self) -> bool {
        self.triangles.len() == 2
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangulatedMesh {
    rows: usize,
    cols: usize,
    points: Vec<(i64, i64)>,
    triangles: Vec<MeshTriangle>,
    edges: Vec<MeshEdge>,
}

impl TriangulatedMesh {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Scaled integer coordinates; divide by [`SCALE`] for the actual point.
    pub fn scaled_points(&self) -> &[(i64, i64)] {
        &self.points
    }

    pub fn point(&self, i: usize) -> (f64, f64) {
        let (x, y) = self.points[i];
        (x as f64 / SCALE as f64, y as f64 / SCALE as f64)
    }

    pub fn triangles(&self) -> &[MeshTriangle] {
        &self.triangles
    }

    pub fn edges(&self) -> &[MeshEdge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.points.len()
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn interior_edge_count(&self) -> usize {
        self.edges.iter().filter(|e| e.is_interior()).count()
    }

    /// `V - E + F`, counting the outer face.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.triangle_count() as i64 + 1
    }

    pub fn centroid(&self, t: usize) -> (f64, f64) {
        let [a, b, c] = self.triangles[t].corners;
        let (sx, sy) = [a, b, c].iter().fold((0, 0), |(sx, sy), &i| (sx + self.points[i].0, sy + self.points[i].1));
        (sx as f64 / (3 * SCALE) as f64, sy as f64 / (3 * SCALE) as f64)
    }
}

pub fn build_mesh(rows: usize, cols: usize) -> Result<TriangulatedMesh> {
    if rows == 0 || cols == 0 {
        return Err(SplineError::InvalidDimensions { rows, cols });
    }
    let mut points = Vec::new();
    let mut point_index: HashMap<(i64, i64), usize> = HashMap::new();
    let mut point = |p: (i64, i64)| {
        *point_index.entry(p).or_insert_with(|| {
            points.push(p);
            points.len() - 1
        })
    };
    let mut triangles = Vec::with_capacity(6 * rows * cols);
    for i in 0..rows {
        for j in 0..cols {
            let (x, y) = (SCALE * j as i64, SCALE * i as i64);
            let bl = point((x, y));
            let br = point((x + SCALE, y));
            let tr = point((x + SCALE, y + SCALE));
            let tl = point((x, y + SCALE));
            let lower = point((x + 2, y + 1));
            let upper = point((x + 1, y + 2));
            // sides listed counterclockwise starting from the diagonal
            let sides = [
                (tr, bl, lower),
                (bl, br, lower),
                (br, tr, lower),
                (bl, tr, upper),
                (tr, tl, upper),
                (tl, bl, upper),
            ];
            for (slot, &(a, b, c)) in sides.iter().enumerate() {
                triangles.push(MeshTriangle { row: i, col: j, slot, corners: [a, b, c] });
            }
        }
    }
    let mut edges: Vec<MeshEdge> = Vec::new();
    let mut edge_index: HashMap<(usize, usize), usize> = HashMap::new();
    for (t, tri) in triangles.iter().enumerate() {
        let [a, b, c] = tri.corners;
        for (u, v) in [(a, b), (b, c), (c, a)] {
            let key = (u.min(v), u.max(v));
            match edge_index.get(&key) {
                Some(&k) => edges[k].triangles.push(t),
                None => {
                    edge_index.insert(key, edges.len());
                    edges.push(MeshEdge { ends: [key.0, key.1], triangles: vec![t] });
                }
            }
        }
    }
    Ok(TriangulatedMesh { rows, cols, points, triangles, edges })
}

/// One vertex per small triangle, one `(1)`-labeled edge per interior mesh
/// edge, in order of first appearance.
pub fn build_dual(mesh: &TriangulatedMesh, modulus: Modulus) -> LabeledGraph {
    let names: Vec<String> = mesh.triangles.iter().map(MeshTriangle::name).collect();
    let mut g = LabeledGraph::new(modulus, &names).expect("distinct triangle names");
    for e in mesh.edges.iter().filter(|e| e.is_interior()) {
        g.add_edge_by_index(e.triangles[0], e.triangles[1], modulus.unit_ideal())
            .expect("triangle indices are vertices");
    }
    g
}

/// Positions for DOT output: the centroid of each small triangle.
pub fn dual_positions(mesh: &TriangulatedMesh) -> Vec<(f64, f64)> {
    (0..mesh.triangle_count()).map(|t| mesh.centroid(t)).collect()
}

/// Lower bound on the number of `(0)`-labeled edges of any rank-one labeling
/// of the `m x n` dual over a modulus with `k` distinct primes.
pub fn zero_edge_lower_bound(m: usize, n: usize, k: usize) -> Result<usize> {
    match k {
        1 => Ok(6 * m * n - 1),
        2 => Ok(3 * m * n + m + n - 2),
        3 => Ok(2 * m + 2 * n - 3),
        _ => Err(SplineError::BadPrimeCount(k)),
    }
}

/// Reads `(rows, cols)` off the `r{i}c{j}t{k}` vertex names.
pub fn grid_dimensions(g: &LabeledGraph) -> Result<(usize, usize)> {
    let mut rows = 0;
    let mut cols = 0;
    let mut seen = vec![];
    for name in g.names() {
        let (i, j, k) = parse_dual_name(name).ok_or_else(|| SplineError::NotAGridDual(format!("vertex `{name}`")))?;
        rows = rows.max(i + 1);
        cols = cols.max(j + 1);
        seen.push((i, j, k));
    }
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != 6 * rows * cols || g.vertex_count() != seen.len() {
        return Err(SplineError::NotAGridDual(format!(
            "{} vertices do not cover a {rows} x {cols} grid",
            g.vertex_count()
        )));
    }
    Ok((rows, cols))
}

fn parse_dual_name(name: &str) -> Option<(usize, usize, usize)> {
    let rest = name.strip_prefix('r')?;
    let (i, rest) = rest.split_once('c')?;
    let (j, k) = rest.split_once('t')?;
    let k: usize = k.parse().ok()?;
    (k < 6).then_some(())?;
    Some((i.parse().ok()?, j.parse().ok()?, k))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub rows: usize,
    pub cols: usize,
    pub modulus: u64,
    pub distinct_primes: usize,
    pub zero_edges: usize,
    pub bound: usize,
    #[serde(skip)]
    pub verdict: RankOneVerdict,
    /// `zero_edges - bound` when rank one.
    pub margin: Option<i64>,
}

impl AuditReport {
    pub fn rank_one(&self) -> bool {
        self.verdict.verdict
    }

    /// The zero-edge inequality; vacuous when the labeling is not rank one.
    pub fn bound_holds(&self) -> bool {
        self.margin.is_none_or(|m| m >= 0)
    }
}

pub fn audit_labeling(dual: &LabeledGraph) -> Result<AuditReport> {
    let (rows, cols) = grid_dimensions(dual)?;
    audit_labeling_for(dual, rows, cols)
}

pub fn audit_labeling_for(dual: &LabeledGraph, rows: usize, cols: usize) -> Result<AuditReport> {
    let modulus = dual.modulus();
    let k = modulus.factorize().distinct_primes();
    if k > 3 {
        return Err(SplineError::TooManyPrimes { modulus: modulus.get(), primes: k });
    }
    let bound = zero_edge_lower_bound(rows, cols, k)?;
    let zero_edges = dual.edges().iter().filter(|e| e.label.is_zero()).count();
    let verdict = rank_one_zm(dual)?;
    let margin = verdict.verdict.then_some(zero_edges as i64 - bound as i64);
    Ok(AuditReport { rows, cols, modulus: modulus.get(), distinct_primes: k, zero_edges, bound, verdict, margin })
}

/// Spanning tree by DFS from `root`, scanning neighbours in edge-id order or
/// its reverse.
fn dfs_tree(g: &LabeledGraph, root: usize, reverse: bool) -> Vec<usize> {
    let mut adjacency = g.adjacency();
    if reverse {
        for list in &mut adjacency {
            list.reverse();
        }
    }
    let mut seen = vec![false; g.vertex_count()];
    let mut tree = Vec::new();
    let mut stack = vec![(root, 0usize)];
    seen[root] = true;
    while let Some(&mut (v, ref mut next)) = stack.last_mut() {
        if let Some(e) = adjacency[v].get(*next) {
            *next += 1;
            let w = e.other(v);
            if !seen[w] {
                seen[w] = true;
                tree.push(e.id);
                stack.push((w, 0));
            }
        } else {
            stack.pop();
        }
    }
    tree.sort_unstable();
    tree
}

/// Labels a connected graph so it has rank one: tree `i` (a DFS variant)
/// gets `(p_i^{e_i})`, shared edges get the intersection, the rest `(1)`.
pub fn construct_rank_one_labeling(dual: &LabeledGraph) -> Result<LabeledGraph> {
    let modulus = dual.modulus();
    let powers = modulus.factorize().prime_powers();
    if powers.len() > 3 {
        return Err(SplineError::TooManyPrimes { modulus: modulus.get(), primes: powers.len() });
    }
    if !dual.is_connected() {
        return Err(SplineError::Disconnected);
    }
    let n = dual.vertex_count();
    let mut generator: HashMap<usize, u64> = dual.edges().iter().map(|e| (e.id, 1)).collect();
    for (i, &q) in powers.iter().enumerate() {
        let root = i * n / powers.len();
        for id in dfs_tree(dual, root, i % 2 == 1) {
            let d = generator.get_mut(&id).expect("edge id");
            *d = lcm(*d, q);
        }
    }
    dual.relabel(|e| generator[&e.id])
}

/// Outcome of labeling every edge in every possible way from a set of ideals.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize)]
pub struct LabelingCensus {
    pub labelings: u64,
    pub rank_one: u64,
    /// Fewest `(0)`-labeled edges over the rank-one labelings.
    pub min_zero_edges: Option<usize>,
    /// `rank_one_by_zero_edges[z]` counts rank-one labelings with `z` zero edges.
    pub rank_one_by_zero_edges: Vec<u64>,
}

impl LabelingCensus {
    fn merge(mut self, other: LabelingCensus) -> LabelingCensus {
        self.labelings += other.labelings;
        self.rank_one += other.rank_one;
        self.min_zero_edges = match (self.min_zero_edges, other.min_zero_edges) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        if self.rank_one_by_zero_edges.len() < other.rank_one_by_zero_edges.len() {
            self.rank_one_by_zero_edges.resize(other.rank_one_by_zero_edges.len(), 0);
        }
        for (z, c) in other.rank_one_by_zero_edges.into_iter().enumerate() {
            self.rank_one_by_zero_edges[z] += c;
        }
        self
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn spans(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    let mut parts = n;
    for (u, v) in edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a] = b;
            parts -= 1;
        }
    }
    parts <= 1
}

/// Tries every assignment of `divisors` (generators of ideals of the graph's
/// modulus) to the edges of `g` and classifies each by the spanning-tree
/// criterion for rank one.
pub fn labeling_census(g: &LabeledGraph, divisors: &[u64], cap: u64, execution: Execution) -> Result<LabelingCensus> {
    let modulus = g.modulus();
    let ideals: Vec<ZmIdeal> = divisors.iter().map(|&d| ZmIdeal::from_divisor(d, modulus)).collect::<Result<_>>()?;
    let base = ideals.len() as u128;
    let total = (0..g.edge_count()).try_fold(1u128, |acc, _| acc.checked_mul(base)).unwrap_or(u128::MAX);
    if total > cap as u128 {
        return Err(SplineError::CapExceeded { needed: total.to_string(), cap });
    }
    let n = g.vertex_count();
    let ends: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.u, e.v)).collect();
    let powers = modulus.factorize().prime_powers();
    let classify = |index: u64| {
        let mut labels = Vec::with_capacity(ends.len());
        let mut rest = index;
        for _ in 0..ends.len() {
            labels.push(ideals[(rest % base as u64) as usize].generator());
            rest /= base as u64;
        }
        let rank_one = powers.iter().all(|&q| {
            spans(n, ends.iter().zip(&labels).filter(|(_, &d)| d % q == 0).map(|(&e, _)| e))
        });
        let zeros = labels.iter().filter(|&&d| d == modulus.get()).count();
        (rank_one, zeros)
    };
    let census = execution.fold_range(
        0..total as u64,
        LabelingCensus::default(),
        |mut acc, index| {
            let (rank_one, zeros) = classify(index);
            acc.labelings += 1;
            if rank_one {
                acc.rank_one += 1;
                acc.min_zero_edges = Some(acc.min_zero_edges.map_or(zeros, |m| m.min(zeros)));
                if acc.rank_one_by_zero_edges.len() <= zeros {
                    acc.rank_one_by_zero_edges.resize(zeros + 1, 0);
                }
                acc.rank_one_by_zero_edges[zeros] += 1;
            }
            acc
        },
        LabelingCensus::merge,
    );
    Ok(census)
}
