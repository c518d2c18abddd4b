//! Generating sets of based spline modules over `Z_{p^k}`.
//!
//! The ideals of `Z_{p^k}` form a chain, so after contracting (0)-edges some
//! edge label contains every other. That edge is deleted when it is not a
//! bridge; when it is a bridge `ab` labeled `(β)` the graph splits as
//! `S(A; a) ⊕ S(B; b) ⊕ <1> ⊕ <β·1_B>` and both sides recurse.

use crate::graph::LabeledGraph;
use crate::reduce::simplify;
use crate::ring::sub_mod;

/// A generator together with its additive order; the generators produced
/// here always span a direct sum of these cyclic pieces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Cyclic {
    pub values: Vec<u64>,
    pub order: u64,
}

fn rebase(values: &mut [u64], at: usize, q: u64) {
    let shift = values[at];
    for x in values.iter_mut() {
        *x = sub_mod(*x, shift, q);
    }
}

/// Generators of `S(g; basepoint)` for any graph over a prime-power modulus.
pub(crate) fn based_generators(g: &LabeledGraph, basepoint: usize) -> Vec<Cyclic> {
    let q = g.modulus().get();
    let trace = simplify(g);
    let reduced = &trace.graph;
    let base = trace.vertex_map[basepoint];
    let mut out = Vec::new();
    for comp in reduced.connected_components() {
        let sub = reduced.induced_subgraph(&comp);
        let extend = |local: &[u64]| {
            let mut full = vec![0u64; reduced.vertex_count()];
            for (i, &v) in comp.iter().enumerate() {
                full[v] = local[i];
            }
            full
        };
        let local_base = match comp.iter().position(|&v| v == base) {
            Some(i) => i,
            None => {
                // a component away from the basepoint keeps its own constant
                out.push(Cyclic { values: extend(&vec![1; comp.len()]), order: q });
                0
            }
        };
        for c in connected_based(&sub, local_base) {
            out.push(Cyclic { values: extend(&c.values), order: c.order });
        }
    }
    out.into_iter()
        .map(|c| Cyclic {
            values: trace.pullback(&c.values).expect("reduced length"),
            order: c.order,
        })
        .collect()
}

/// `g` connected, without (0)-edges, loops or parallel edges.
fn connected_based(g: &LabeledGraph, basepoint: usize) -> Vec<Cyclic> {
    let q = g.modulus().get();
    let mut work = g.clone();
    loop {
        if work.vertex_count() == 1 || work.edge_count() == 0 {
            return Vec::new();
        }
        // largest ideal = smallest divisor; ties by id
        let e = *work
            .edges()
            .iter()
            .min_by_key(|e| (e.label.generator(), e.id))
            .expect("nonempty");
        if !work.is_bridge(e.id).expect("edge exists") {
            work = work.without_edge(e.id).expect("edge exists");
            continue;
        }
        let split = work.without_edge(e.id).expect("edge exists");
        let comps = split.connected_components();
        let side_a = comps.iter().find(|c| c.contains(&e.u)).expect("a side").clone();
        let side_b = comps.iter().find(|c| c.contains(&e.v)).expect("b side").clone();
        let n = work.vertex_count();
        let mut pieces = Vec::new();
        for (side, root) in [(&side_a, e.u), (&side_b, e.v)] {
            let sub = split.induced_subgraph(side);
            let local_root = side.iter().position(|&v| v == root).expect("root on its side");
            for c in based_generators(&sub, local_root) {
                let mut full = vec![0u64; n];
                for (i, &v) in side.iter().enumerate() {
                    full[v] = c.values[i];
                }
                pieces.push(Cyclic { values: full, order: c.order });
            }
        }
        let beta = e.label.generator();
        let mut jump = vec![0u64; n];
        for &v in &side_b {
            jump[v] = beta;
        }
        pieces.push(Cyclic { values: jump, order: q / beta });
        for c in &mut pieces {
            rebase(&mut c.values, basepoint, q);
        }
        return pieces;
    }
}
