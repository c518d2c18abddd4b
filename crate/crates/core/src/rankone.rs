//! Deciding whether a labeled graph admits only constant splines.
//!
//! Over `Z_m` with `m = p_1^{e_1}...p_k^{e_k}` this holds exactly when, for
//! each `i`, some spanning tree has every label inside `(p_i^{e_i})`. The
//! bridge, tree and vertex-intersection tests are cheaper necessary
//! conditions and run first.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SplineError};
use crate::graph::LabeledGraph;
use crate::par::Execution;
use crate::quotient::{canonical_lift, quotient_graph, QuotientContext};
use crate::ring::ZmIdeal;
use crate::solver::{require_spline, Spline};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FailingCheck {
    Bridge,
    VertexIntersection,
    TreeRule,
    SpanningTree,
}

impl fmt::Display for FailingCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FailingCheck::Bridge => "bridge",
            FailingCheck::VertexIntersection => "vertex-intersection",
            FailingCheck::TreeRule => "tree-rule",
            FailingCheck::SpanningTree => "spanning-tree",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankOneVerdict {
    pub verdict: bool,
    /// One `(p^e, tree edge ids)` per prime-power factor, when rank one.
    pub witness_trees: Option<Vec<(u64, Vec<usize>)>>,
    /// A non-constant spline, when not rank one.
    pub witness_spline: Option<Spline>,
    pub failing_check: Option<FailingCheck>,
}

impl RankOneVerdict {
    fn rank_one(trees: Vec<(u64, Vec<usize>)>) -> Self {
        RankOneVerdict { verdict: true, witness_trees: Some(trees), witness_spline: None, failing_check: None }
    }

    fn not_rank_one(witness: Spline, check: FailingCheck) -> Self {
        RankOneVerdict { verdict: false, witness_trees: None, witness_spline: Some(witness), failing_check: Some(check) }
    }
}

/// For the first bridge (by id) with a nonzero label `(β)`: the spline that
/// is `β` on the far side of the bridge and `0` elsewhere.
pub fn bridge_check(g: &LabeledGraph) -> Option<Spline> {
    let e = g
        .bridges()
        .into_iter()
        .map(|id| *g.edge(id).expect("bridge id"))
        .find(|e| !e.label.is_zero())?;
    let split = g.without_edge(e.id).expect("bridge id");
    let far = split.connected_components().into_iter().find(|c| c.contains(&e.v)).expect("far side");
    let mut values = vec![0u64; g.vertex_count()];
    for v in far {
        values[v] = e.label.generator();
    }
    Some(Spline::from_raw(g.modulus(), values))
}

/// A tree has rank one iff every edge is labeled `(0)`.
pub fn tree_rank_one(g: &LabeledGraph) -> Result<bool> {
    if !g.is_tree() {
        return Err(SplineError::NotATree);
    }
    Ok(g.edges().iter().all(|e| e.label.is_zero()))
}

/// The first vertex whose incident labels do not intersect to `(0)`, with
/// the spline that is the intersection's generator there and `0` elsewhere.
/// Graphs with a single vertex are skipped since that bump is constant.
pub fn vertex_intersection_check(g: &LabeledGraph) -> Option<(usize, Spline)> {
    let n = g.vertex_count();
    if n < 2 {
        return None;
    }
    let modulus = g.modulus();
    let adjacency = g.adjacency();
    for (v, incident) in adjacency.iter().enumerate() {
        let meet = incident
            .iter()
            .filter(|e| !e.is_loop())
            .fold(modulus.unit_ideal(), |acc, e| acc.intersection(e.label).expect("same modulus"));
        if !meet.is_zero() {
            let mut values = vec![0u64; n];
            values[v] = meet.generator();
            return Some((v, Spline::from_raw(modulus, values)));
        }
    }
    None
}

/// Rank one over `Z_{p^k}`: a spanning tree of `(0)`-edges exists. Otherwise
/// dominating edges are deleted, largest label first, until a bridge with a
/// nonzero label appears, and that bridge yields the witness.
pub fn rank_one_prime_power(g: &LabeledGraph) -> Result<RankOneVerdict> {
    let q = g.modulus().get();
    if !g.modulus().factorize().is_prime_power() {
        return Err(SplineError::NotPrimePower(q));
    }
    if !g.is_connected() {
        return Err(SplineError::Disconnected);
    }
    if let Some(tree) = g.spanning_tree_within(g.modulus().zero_ideal())? {
        return Ok(RankOneVerdict::rank_one(vec![(q, tree)]));
    }
    let mut work = g.clone();
    let witness = loop {
        if let Some(w) = bridge_check(&work) {
            break w;
        }
        // every nonzero edge is on a cycle; the largest label dominates
        let e = work
            .edges()
            .iter()
            .filter(|e| !e.label.is_zero())
            .min_by_key(|e| (e.label.generator(), e.id))
            .map(|e| e.id)
            .expect("no (0)-spanning tree, so a nonzero edge remains");
        work = work.without_edge(e)?;
    };
    require_spline(g, witness.values())?;
    Ok(RankOneVerdict::not_rank_one(witness, FailingCheck::SpanningTree))
}

pub fn rank_one_zm(g: &LabeledGraph) -> Result<RankOneVerdict> {
    rank_one_zm_with(g, Execution::default())
}

/// Rank one over `Z_m`. Pre-checks run first; the per-prime spanning-tree
/// tests then decide. On failure the witness comes from the smallest failing
/// prime power `q`: a witness over `Z_q`, lifted by the idempotent of `(q)`.
pub fn rank_one_zm_with(g: &LabeledGraph, execution: Execution) -> Result<RankOneVerdict> {
    if !g.is_connected() {
        return Err(SplineError::Disconnected);
    }
    if g.is_tree() && !tree_rank_one(g)? {
        let w = bridge_check(g).expect("a nonzero tree edge is a bridge");
        return Ok(RankOneVerdict::not_rank_one(w, FailingCheck::TreeRule));
    }
    if let Some(w) = bridge_check(g) {
        return Ok(RankOneVerdict::not_rank_one(w, FailingCheck::Bridge));
    }
    if let Some((_, w)) = vertex_intersection_check(g) {
        return Ok(RankOneVerdict::not_rank_one(w, FailingCheck::VertexIntersection));
    }
    let modulus = g.modulus();
    let powers = modulus.factorize().prime_powers();
    let trees = execution.map(&powers, |&q| {
        g.spanning_tree_within(ZmIdeal::from_divisor(q, modulus)?)
    });
    let mut found = Vec::with_capacity(powers.len());
    for (&q, tree) in powers.iter().zip(trees) {
        match tree? {
            Some(t) => found.push((q, t)),
            None => {
                let ctx = QuotientContext::from_divisor(q, modulus)?;
                let local = rank_one_prime_power(&quotient_graph(g, &ctx)?)?;
                let w = local.witness_spline.expect("failing prime power has a witness");
                let lifted = canonical_lift(g, &w, &ctx)?;
                return Ok(RankOneVerdict::not_rank_one(lifted, FailingCheck::SpanningTree));
            }
        }
    }
    Ok(RankOneVerdict::rank_one(found))
}
