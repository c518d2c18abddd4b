//! Direct-sum decomposition of `S(G)` along a generalized bridge.
//!
//! `H` is a subgraph such that every component `G_i` of `G - E(H)` contains
//! exactly one vertex `h_i` of `H`. Then
//! `S(G) = <1> ⊕ S~(H; h_1) ⊕ S~(G_1; h_1) ⊕ ... ⊕ S~(G_n; h_n)`,
//! where `~` extends splines on `H` constantly over each `G_i` and splines on
//! `G_i` by zero.

use num_bigint::BigUint;

use crate::error::{Result, SplineError};
use crate::graph::LabeledGraph;
use crate::ring::{sub_mod, Modulus};

use super::{require_spline, solve, Spline, SplineModule};

/// Vertices and edges of `H`; the first vertex is the basepoint `h_1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutSubgraph {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl CutSubgraph {
    /// `H` spanned by the given edges (vertices = their endpoints, in
    /// increasing order).
    pub fn from_edges(g: &LabeledGraph, edges: &[usize]) -> Result<Self> {
        let mut vertices = Vec::new();
        for &id in edges {
            let e = g.edge(id)?;
            vertices.extend([e.u, e.v]);
        }
        vertices.sort_unstable();
        vertices.dedup();
        Ok(CutSubgraph { vertices, edges: edges.to_vec() })
    }

    /// `H = G`.
    pub fn whole(g: &LabeledGraph) -> Self {
        CutSubgraph {
            vertices: (0..g.vertex_count()).collect(),
            edges: g.edges().iter().map(|e| e.id).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SummandKind {
    Constant,
    /// `S~(H; h_1)`.
    Hub,
    /// `S~(G_i; h_i)` for the hub vertex `h_i`.
    Branch { hub_vertex: usize },
}

#[derive(Clone, Debug)]
pub struct CutDecomposition {
    graph: LabeledGraph,
    hub: CutSubgraph,
    /// `branches[i]` is the vertex set of `G_i`, the component holding `hub.vertices[i]`.
    branches: Vec<Vec<usize>>,
    summands: Vec<(SummandKind, SplineModule)>,
}

impl CutDecomposition {
    pub fn summands(&self) -> &[(SummandKind, SplineModule)] {
        &self.summands
    }

    pub fn branches(&self) -> &[Vec<usize>] {
        &self.branches
    }

    pub fn hub(&self) -> &CutSubgraph {
        &self.hub
    }

    /// Product of the summand sizes; equals `|S(G)|` when the sum is direct.
    pub fn cardinality(&self) -> BigUint {
        self.summands
            .iter()
            .fold(BigUint::from(1u32), |acc, (_, m)| acc * m.cardinality())
    }

    /// Splits a spline on `G` into its summand components, in the order of
    /// [`Self::summands`]. The parts add up to `p`.
    pub fn split(&self, p: &Spline) -> Result<Vec<Spline>> {
        let g = &self.graph;
        let modulus = g.modulus();
        modulus.check(p.modulus())?;
        require_spline(g, p.values())?;
        let m = modulus.get();
        let n = g.vertex_count();
        let h1 = self.hub.vertices[0];
        let r = p.values()[h1];
        let shifted: Vec<u64> = p.values().iter().map(|&x| sub_mod(x, r, m)).collect();
        let mut hub_part = vec![0u64; n];
        for (i, branch) in self.branches.iter().enumerate() {
            let at_hub = shifted[self.hub.vertices[i]];
            for &w in branch {
                hub_part[w] = at_hub;
            }
        }
        let mut parts = vec![Spline::constant(modulus, n, r), Spline::from_raw(modulus, hub_part.clone())];
        for branch in &self.branches {
            let mut q = vec![0u64; n];
            for &w in branch {
                q[w] = sub_mod(shifted[w], hub_part[w], m);
            }
            parts.push(Spline::from_raw(modulus, q));
        }
        Ok(parts)
    }
}

fn extend(modulus: Modulus, n: usize, f: impl Fn(usize) -> u64) -> Spline {
    Spline::from_raw(modulus, (0..n).map(f).collect())
}

pub fn decompose_over_cut(g: &LabeledGraph, hub: &CutSubgraph) -> Result<CutDecomposition> {
    let modulus = g.modulus();
    let n = g.vertex_count();
    let mut in_hub = vec![false; n];
    for &v in &hub.vertices {
        if v >= n {
            return Err(SplineError::UnknownVertex(format!("#{v}")));
        }
        in_hub[v] = true;
    }
    for &id in &hub.edges {
        let e = g.edge(id)?;
        if !in_hub[e.u] || !in_hub[e.v] {
            return Err(SplineError::UnknownVertex(format!("endpoint of edge {id} outside H")));
        }
    }
    if hub.vertices.is_empty() {
        return Err(SplineError::InvalidCut { found: 0 });
    }
    let mut rest = g.clone();
    for &id in &hub.edges {
        rest = rest.without_edge(id)?;
    }
    let comps = rest.connected_components();
    let mut branches = vec![Vec::new(); hub.vertices.len()];
    for comp in comps {
        let hits: Vec<usize> = comp.iter().copied().filter(|&v| in_hub[v]).collect();
        if hits.len() != 1 {
            return Err(SplineError::InvalidCut { found: hits.len() });
        }
        let slot = hub.vertices.iter().position(|&h| h == hits[0]).expect("hub vertex");
        branches[slot] = comp;
    }

    let mut summands = Vec::new();
    summands.push((
        SummandKind::Constant,
        SplineModule::from_parts(
            g.clone(),
            vec![Spline::constant(modulus, n, 1)],
            None,
            BigUint::from(modulus.get()),
        ),
    ));

    let h_graph = g.edge_subgraph(&hub.edges)?.induced_subgraph(&hub.vertices);
    let h_based = solve(&h_graph)?.based_module(0)?;
    let mut owner = vec![0usize; n];
    for (i, branch) in branches.iter().enumerate() {
        for &w in branch {
            owner[w] = i;
        }
    }
    let hub_gens = h_based
        .generators()
        .iter()
        .map(|s| extend(modulus, n, |w| s.values()[owner[w]]))
        .collect();
    summands.push((
        SummandKind::Hub,
        SplineModule::from_parts(g.clone(), hub_gens, Some(hub.vertices[0]), h_based.cardinality().clone()),
    ));

    for (i, branch) in branches.iter().enumerate() {
        let h = hub.vertices[i];
        let sub = rest.induced_subgraph(branch);
        let local = branch.iter().position(|&w| w == h).expect("hub vertex in branch");
        let based = solve(&sub)?.based_module(local)?;
        let mut position = vec![usize::MAX; n];
        for (k, &w) in branch.iter().enumerate() {
            position[w] = k;
        }
        let gens = based
            .generators()
            .iter()
            .map(|s| extend(modulus, n, |w| if position[w] == usize::MAX { 0 } else { s.values()[position[w]] }))
            .collect();
        summands.push((
            SummandKind::Branch { hub_vertex: h },
            SplineModule::from_parts(g.clone(), gens, Some(h), based.cardinality().clone()),
        ));
    }

    Ok(CutDecomposition { graph: g.clone(), hub: hub.clone(), branches, summands })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{enumerate_splines, is_spline, OracleOptions};

    fn graph(modulus: u64, names: &[&str], edges: &[(&str, &str, u64)]) -> LabeledGraph {
        let mut g = LabeledGraph::new(Modulus::new(modulus).unwrap(), names).unwrap();
        for &(u, v, d) in edges {
            g.add_divisor_edge(u, v, d).unwrap();
        }
        g
    }

    #[test]
    fn bridge_gives_four_summands() {
        // triangle a,b,c joined by the bridge c-d to the path d-e
        let g = graph(12, &["a", "b", "c", "d", "e"], &[("a", "b", 4), ("b", "c", 6), ("c", "a", 2), ("c", "d", 3), ("d", "e", 2)]);
        let cut = CutSubgraph::from_edges(&g, &[3]).unwrap();
        let dec = decompose_over_cut(&g, &cut).unwrap();
        assert_eq!(dec.summands().len(), 4);
        // the hub summand is β·1_B with β = 3
        let (kind, hub) = &dec.summands()[1];
        assert_eq!(*kind, SummandKind::Hub);
        let jump = Spline::new(g.modulus(), vec![0, 0, 0, 3, 3]).unwrap();
        assert_eq!(hub.rank(), 1);
        assert!(hub.membership(&jump).unwrap().is_some());
        assert_eq!(hub.cardinality(), &BigUint::from(4u32));
        let all = enumerate_splines(&g, &OracleOptions::default()).unwrap();
        assert_eq!(dec.cardinality(), BigUint::from(all.len()));
        for p in &all {
            let parts = dec.split(p).unwrap();
            let mut sum = Spline::zero(g.modulus(), 5);
            for (part, (_, module)) in parts.iter().zip(dec.summands()) {
                assert!(is_spline(&g, part.values()).unwrap().is_valid());
                assert!(module.membership(part).unwrap().is_some());
                sum = sum.add(part).unwrap();
            }
            assert_eq!(&sum, p);
        }
    }

    #[test]
    fn whole_graph_as_hub() {
        let g = graph(4, &["a", "b", "c"], &[("a", "b", 2), ("b", "c", 2), ("c", "a", 2)]);
        let dec = decompose_over_cut(&g, &CutSubgraph::whole(&g)).unwrap();
        assert_eq!(dec.summands().len(), 5);
        for (kind, module) in &dec.summands()[2..] {
            assert!(matches!(kind, SummandKind::Branch { .. }));
            assert!(module.generators().is_empty());
        }
        assert_eq!(dec.cardinality(), BigUint::from(16u32));
    }

    #[test]
    fn rejects_bad_cut() {
        let g = graph(4, &["a", "b", "c"], &[("a", "b", 2), ("b", "c", 2), ("c", "a", 2)]);
        // H = {ab}: the remaining path a-c-b holds both hub vertices
        let cut = CutSubgraph::from_edges(&g, &[0]).unwrap();
        assert_eq!(decompose_over_cut(&g, &cut).unwrap_err(), SplineError::InvalidCut { found: 2 });
    }
}
