//! Spline-preserving rewrites of labeled graphs.
//!
//! Each rewrite returns a [`ReductionTrace`] carrying the rewritten graph and
//! the map from original vertices to surviving ones, so a spline on the
//! result pulls back to a spline on the input.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Result, SplineError};
use crate::graph::{LabeledEdge, LabeledGraph};
use crate::ring::ZmIdeal;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RewriteStep {
    Contract { edge: usize, kept: String, removed: String },
    MergeParallel { edges: Vec<usize>, kept: usize, label: ZmIdeal },
    DropLoop { edge: usize, label: ZmIdeal },
    DeleteDominating { edge: usize, label: ZmIdeal },
}

impl fmt::Display for RewriteStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RewriteStep::Contract { edge, kept, removed } => {
                write!(f, "contract edge {edge} labeled (0): {removed} -> {kept}")
            }
            RewriteStep::MergeParallel { edges, kept, label } => {
                let ids: Vec<String> = edges.iter().map(|e| e.to_string()).collect();
                write!(f, "merge parallel edges [{}] into edge {kept} labeled {label}", ids.join(", "))
            }
            RewriteStep::DropLoop { edge, label } => write!(f, "drop loop {edge} labeled {label}"),
            RewriteStep::DeleteDominating { edge, label } => {
                write!(f, "delete dominating edge {edge} labeled {label}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace {
    pub graph: LabeledGraph,
    /// `vertex_map[v]` is the vertex of `graph` that original vertex `v` became.
    pub vertex_map: Vec<usize>,
    pub log: Vec<RewriteStep>,
}

impl ReductionTrace {
    pub fn identity(g: &LabeledGraph) -> Self {
        ReductionTrace {
            graph: g.clone(),
            vertex_map: (0..g.vertex_count()).collect(),
            log: Vec::new(),
        }
    }

    /// Follows this trace with a rewrite of its resulting graph.
    pub fn then(mut self, next: ReductionTrace) -> Self {
        for v in &mut self.vertex_map {
            *v = next.vertex_map[*v];
        }
        self.graph = next.graph;
        self.log.extend(next.log);
        self
    }

    /// Pulls values on the reduced graph back to the original vertices.
    pub fn pullback(&self, values: &[u64]) -> Result<Vec<u64>> {
        if values.len() != self.graph.vertex_count() {
            return Err(SplineError::DimensionMismatch {
                expected: self.graph.vertex_count(),
                got: values.len(),
            });
        }
        Ok(self.vertex_map.iter().map(|&v| values[v]).collect())
    }
}

pub fn contract_zero_edge(g: &LabeledGraph, id: usize) -> Result<ReductionTrace> {
    let e = *g.edge(id)?;
    if !e.label.is_zero() {
        return Err(SplineError::NotZeroLabeled(id));
    }
    if e.is_loop() {
        return Err(SplineError::LoopEdge(id));
    }
    let (keep, drop) = if g.name(e.u) <= g.name(e.v) { (e.u, e.v) } else { (e.v, e.u) };
    let mut vertex_map = Vec::with_capacity(g.vertex_count());
    let mut names = Vec::with_capacity(g.vertex_count() - 1);
    for v in 0..g.vertex_count() {
        if v == drop {
            vertex_map.push(usize::MAX);
        } else {
            vertex_map.push(names.len());
            names.push(g.name(v).to_string());
        }
    }
    vertex_map[drop] = vertex_map[keep];
    let edges = g
        .edges()
        .iter()
        .filter(|f| f.id != id)
        .map(|f| LabeledEdge { u: vertex_map[f.u], v: vertex_map[f.v], ..*f });
    let graph = LabeledGraph::from_parts(g.modulus(), names, edges)?;
    Ok(ReductionTrace {
        graph,
        vertex_map,
        log: vec![RewriteStep::Contract {
            edge: id,
            kept: g.name(keep).to_string(),
            removed: g.name(drop).to_string(),
        }],
    })
}

/// Replaces every class of parallel edges by one edge labeled with the
/// intersection of the class, and removes loops.
pub fn merge_parallel_edges(g: &LabeledGraph) -> ReductionTrace {
    let mut classes: BTreeMap<(usize, usize), Vec<LabeledEdge>> = BTreeMap::new();
    let mut first_seen = Vec::new();
    let mut log = Vec::new();
    for e in g.edges() {
        if e.is_loop() {
            log.push(RewriteStep::DropLoop { edge: e.id, label: e.label });
            continue;
        }
        let key = (e.u.min(e.v), e.u.max(e.v));
        let class = classes.entry(key).or_default();
        if class.is_empty() {
            first_seen.push(key);
        }
        class.push(*e);
    }
    let mut edges = Vec::with_capacity(first_seen.len());
    for key in first_seen {
        let class = &classes[&key];
        let label = class
            .iter()
            .skip(1)
            .fold(class[0].label, |acc, e| acc.intersection(e.label).expect("same modulus"));
        let kept = class.iter().map(|e| e.id).min().expect("nonempty class");
        let first = class[0];
        if class.len() > 1 {
            log.push(RewriteStep::MergeParallel {
                edges: class.iter().map(|e| e.id).collect(),
                kept,
                label,
            });
        }
        edges.push(LabeledEdge { id: kept, label, ..first });
    }
    let graph = LabeledGraph::from_parts(g.modulus(), g.names().to_vec(), edges)
        .expect("merged graph is valid");
    ReductionTrace { graph, vertex_map: (0..g.vertex_count()).collect(), log }
}

/// Deletes an edge whose label contains every edge label of the graph.
///
/// Allowed when the label is `(1)`, or when the endpoints stay connected.
pub fn delete_dominating_edge(g: &LabeledGraph, id: usize) -> Result<ReductionTrace> {
    let e = *g.edge(id)?;
    let d = e.label.generator();
    if let Some(f) = g.edges().iter().find(|f| f.label.generator() % d != 0) {
        return Err(SplineError::NotDominating { edge: id, other: f.id });
    }
    if !e.label.is_unit() && g.is_bridge(id)? {
        return Err(SplineError::WouldDisconnect(id));
    }
    Ok(ReductionTrace {
        graph: g.without_edge(id)?,
        vertex_map: (0..g.vertex_count()).collect(),
        log: vec![RewriteStep::DeleteDominating { edge: id, label: e.label }],
    })
}

fn has_loops_or_parallels(g: &LabeledGraph) -> bool {
    let mut seen = std::collections::HashSet::new();
    g.edges()
        .iter()
        .any(|e| e.is_loop() || !seen.insert((e.u.min(e.v), e.u.max(e.v))))
}

/// Contracts (0)-edges, merges parallel classes and drops loops until none
/// of these rewrites applies. Dominating-edge deletion is left to callers.
pub fn simplify(g: &LabeledGraph) -> ReductionTrace {
    let mut trace = ReductionTrace::identity(g);
    loop {
        let zero = trace
            .graph
            .edges()
            .iter()
            .filter(|e| e.label.is_zero() && !e.is_loop())
            .map(|e| e.id)
            .min();
        if let Some(id) = zero {
            let step = contract_zero_edge(&trace.graph, id).expect("zero edge contracts");
            trace = trace.then(step);
        } else if has_loops_or_parallels(&trace.graph) {
            let step = merge_parallel_edges(&trace.graph);
            trace = trace.then(step);
        } else {
            return trace;
        }
    }
}
