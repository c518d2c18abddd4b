//! Exhaustive spline enumeration, the reference every algebraic shortcut is
//! checked against.
//!
//! A depth-first spanning forest fixes the search: each root takes every
//! value of `Z_m`, each tree edge every difference in its ideal, and the
//! remaining edges prune the search as soon as both endpoints are set.

use crate::error::{Result, SplineError};
use crate::graph::LabeledGraph;
use crate::par::Execution;
use crate::ring::{add_mod, sub_mod};

use super::Spline;

pub const DEFAULT_CAP: u64 = 10_000_000;

#[derive(Clone, Copy, Debug)]
pub struct OracleOptions {
    /// Upper bound on the unpruned search size.
    pub cap: u64,
    pub execution: Execution,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { cap: DEFAULT_CAP, execution: Execution::default() }
    }
}

impl OracleOptions {
    pub fn with_cap(cap: u64) -> Self {
        OracleOptions { cap, ..Default::default() }
    }
}

struct Plan {
    m: u64,
    order: Vec<usize>,
    /// For `order[k]`: `(parent, step)` or `None` for a root.
    tree: Vec<Option<(usize, u64)>>,
    /// For `order[k]`: edges to earlier vertices as `(other, divisor)`.
    checks: Vec<Vec<(usize, u64)>>,
}

impl Plan {
    fn new(g: &LabeledGraph) -> Plan {
        let m = g.modulus().get();
        let forest = g.dfs_forest(|_| true);
        let mut position = vec![0; g.vertex_count()];
        for (k, &v) in forest.order.iter().enumerate() {
            position[v] = k;
        }
        let mut checks = vec![Vec::new(); forest.order.len()];
        for e in g.edges() {
            if e.is_loop() {
                continue;
            }
            let (early, late) = if position[e.u] < position[e.v] { (e.u, e.v) } else { (e.v, e.u) };
            checks[position[late]].push((early, e.label.generator()));
        }
        let tree = forest
            .order
            .iter()
            .map(|&v| {
                forest.parent[v].map(|(p, id)| (p, g.edge(id).expect("tree edge").label.generator()))
            })
            .collect();
        Plan { m, order: forest.order, tree, checks }
    }

    fn search_size(&self) -> u128 {
        self.tree.iter().fold(1u128, |acc, t| {
            let choices = match t {
                None => self.m,
                Some((_, d)) => self.m / d,
            };
            acc.saturating_mul(choices as u128)
        })
    }

    fn walk(&self, k: usize, values: &mut [u64], visit: &mut impl FnMut(&[u64])) {
        if k == self.order.len() {
            visit(values);
            return;
        }
        let v = self.order[k];
        let (base, step, count) = match self.tree[k] {
            None => (0, 1, self.m),
            Some((p, d)) => (values[p], d, self.m / d),
        };
        for i in 0..count {
            let x = add_mod(base, i * step, self.m);
            let ok = self.checks[k]
                .iter()
                .all(|&(w, d)| sub_mod(x, values[w], self.m).is_multiple_of(d));
            if ok {
                values[v] = x;
                self.walk(k + 1, values, visit);
            }
        }
    }

    fn sweep_root(&self, root_value: u64, visit: &mut impl FnMut(&[u64])) {
        let mut values = vec![0u64; self.order.len()];
        values[self.order[0]] = root_value;
        self.walk(1, &mut values, visit);
    }
}

/// Unpruned size of the enumeration for `g`: `m` per component times
/// `|α(e)|` per spanning-forest edge.
pub fn search_size(g: &LabeledGraph) -> u128 {
    Plan::new(g).search_size()
}

fn checked_plan(g: &LabeledGraph, cap: u64) -> Result<Plan> {
    let plan = Plan::new(g);
    let needed = plan.search_size();
    if needed > cap as u128 {
        return Err(SplineError::CapExceeded { needed: needed.to_string(), cap });
    }
    Ok(plan)
}

/// Every spline on `g`, sorted lexicographically in vertex order.
pub fn enumerate_splines(g: &LabeledGraph, opts: &OracleOptions) -> Result<Vec<Spline>> {
    let modulus = g.modulus();
    if g.vertex_count() == 0 {
        return Ok(vec![Spline::from_raw(modulus, Vec::new())]);
    }
    let plan = checked_plan(g, opts.cap)?;
    let chunks = opts.execution.map_range(0..plan.m, |r| {
        let mut out = Vec::new();
        plan.sweep_root(r, &mut |vals| out.push(vals.to_vec()));
        out
    });
    let mut all: Vec<Vec<u64>> = chunks.into_iter().flatten().collect();
    all.sort_unstable();
    all.dedup();
    Ok(all.into_iter().map(|v| Spline::from_raw(modulus, v)).collect())
}

/// Number of splines on `g`, without materializing them.
pub fn count_splines(g: &LabeledGraph, opts: &OracleOptions) -> Result<u64> {
    if g.vertex_count() == 0 {
        return Ok(1);
    }
    let plan = checked_plan(g, opts.cap)?;
    Ok(opts.execution.fold_range(
        0..plan.m,
        0u64,
        |acc, r| {
            let mut n = 0u64;
            plan.sweep_root(r, &mut |_| n += 1);
            acc + n
        },
        |a, b| a + b,
    ))
}
