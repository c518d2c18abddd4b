mod common;

use common::{corpus, Instance};
use zm_splines::rankone::{bridge_check, rank_one_zm_with, vertex_intersection_check, RankOneVerdict};
use zm_splines::solver::{count_splines, is_spline, OracleOptions};
use zm_splines::{rank_one_zm, Execution, LabeledGraph, ZmIdeal};

fn only_constants(g: &LabeledGraph) -> bool {
    count_splines(g, &OracleOptions::default()).unwrap() == g.modulus().get()
}

fn assert_certificate(g: &LabeledGraph, r: &RankOneVerdict, name: &str) {
    if r.verdict {
        let trees = r.witness_trees.as_ref().expect("trees");
        assert_eq!(trees.len(), g.modulus().factorize().prime_powers().len(), "{name}");
        for (q, tree) in trees {
            assert_eq!(tree.len(), g.vertex_count() - 1, "{name}");
            let ideal = ZmIdeal::from_divisor(*q, g.modulus()).unwrap();
            for &id in tree {
                assert!(g.edge(id).unwrap().label.leq(ideal).unwrap(), "{name}");
            }
            assert!(g.edge_subgraph(tree).unwrap().is_connected(), "{name}");
        }
        assert!(r.witness_spline.is_none());
    } else {
        let w = r.witness_spline.as_ref().expect("witness");
        assert!(is_spline(g, w.values()).unwrap().is_valid(), "{name}: {w}");
        assert!(!w.is_constant(), "{name}");
        assert!(r.failing_check.is_some());
    }
}

#[test]
fn verdict_matches_oracle() {
    let mut both = [0usize; 2];
    for Instance { name, graph } in corpus() {
        let r = rank_one_zm(&graph).unwrap();
        assert_eq!(r.verdict, only_constants(&graph), "{name}");
        assert_certificate(&graph, &r, &name);
        both[r.verdict as usize] += 1;
    }
    // the corpus exercises both outcomes
    assert!(both[0] > 0 && both[1] > 0, "{both:?}");
}

#[test]
fn prechecks_imply_not_rank_one() {
    for Instance { name, graph } in corpus() {
        let r = rank_one_zm(&graph).unwrap();
        if let Some(w) = bridge_check(&graph) {
            assert!(!r.verdict, "{name}");
            assert!(is_spline(&graph, w.values()).unwrap().is_valid());
        }
        if let Some((_, w)) = vertex_intersection_check(&graph) {
            assert!(!r.verdict, "{name}");
            assert!(is_spline(&graph, w.values()).unwrap().is_valid());
            assert!(!w.is_constant());
        }
    }
}

#[test]
fn shrinking_a_label_never_breaks_rank_one() {
    for Instance { name, graph } in corpus().into_iter().step_by(2) {
        let before = rank_one_zm(&graph).unwrap().verdict;
        if !before {
            continue;
        }
        let m = graph.modulus();
        for e in graph.edges() {
            for smaller in m.ideals().into_iter().filter(|i| i.leq(e.label).unwrap()) {
                let h = graph.with_label(e.id, smaller).unwrap();
                assert!(rank_one_zm(&h).unwrap().verdict, "{name}: edge {} to {smaller}", e.id);
            }
        }
    }
}

#[test]
fn execution_modes_agree() {
    for Instance { name, graph } in corpus().into_iter().step_by(3) {
        assert_eq!(
            rank_one_zm_with(&graph, Execution::Sequential).unwrap(),
            rank_one_zm_with(&graph, Execution::Parallel).unwrap(),
            "{name}"
        );
    }
}
