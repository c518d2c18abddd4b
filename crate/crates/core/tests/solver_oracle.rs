mod common;

use num_bigint::BigUint;

use common::{corpus, shapes, Instance};
use zm_splines::solver::{enumerate_splines, is_spline, solve_many, span_cardinality, OracleOptions};
use zm_splines::{solve, Execution};

#[test]
fn corpus_shape() {
    let shapes = shapes();
    let per_size: Vec<usize> = (1..=5).map(|n| shapes.iter().filter(|(k, _)| *k == n).count()).collect();
    // 5-vertex connected graphs number 21; K5 and K5 minus an edge exceed 8 edges
    assert_eq!(per_size, vec![1, 1, 2, 6, 19]);
    let corpus = corpus();
    assert!(corpus.len() >= 200);
    assert!(corpus.iter().all(|i| i.graph.is_connected()));
}

#[test]
fn solve_matches_oracle() {
    let corpus = corpus();
    let graphs: Vec<_> = corpus.iter().map(|i| i.graph.clone()).collect();
    let modules = solve_many(&graphs, Execution::Parallel);
    for (Instance { name, graph }, module) in corpus.iter().zip(modules) {
        let module = module.unwrap();
        let all = enumerate_splines(graph, &OracleOptions::default()).unwrap();
        assert_eq!(module.cardinality(), &BigUint::from(all.len()), "{name}");
        for g in module.generators() {
            assert!(is_spline(graph, g.values()).unwrap().is_valid(), "{name}: generator {g}");
            assert!(all.binary_search(g).is_ok(), "{name}");
        }
        let solver = module.span_solver().unwrap();
        for p in &all {
            let coefficients = solver.solve(p.values()).unwrap().unwrap_or_else(|| panic!("{name}: {p} not in span"));
            let mut sum = vec![0u64; graph.vertex_count()];
            let m = graph.modulus().get();
            for (c, g) in coefficients.iter().zip(module.generators()) {
                for (s, &x) in sum.iter_mut().zip(g.values()) {
                    *s = (*s + c * x) % m;
                }
            }
            assert_eq!(sum, p.values(), "{name}");
        }
    }
}

#[test]
fn generating_sets_are_minimal() {
    for Instance { name, graph } in corpus() {
        let module = solve(&graph).unwrap();
        let rows = module.generator_rows();
        let full = span_cardinality(graph.modulus(), graph.vertex_count(), &rows).unwrap();
        assert_eq!(&full, module.cardinality(), "{name}");
        for skip in 0..rows.len() {
            let rest: Vec<Vec<u64>> =
                rows.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, r)| r.clone()).collect();
            let smaller = span_cardinality(graph.modulus(), graph.vertex_count(), &rest).unwrap();
            assert!(smaller < full, "{name}: generator {skip} is redundant");
        }
    }
}

#[test]
fn one_generator_iff_only_constants() {
    for Instance { name, graph } in corpus() {
        let module = solve(&graph).unwrap();
        let count = enumerate_splines(&graph, &OracleOptions::default()).unwrap().len() as u64;
        assert_eq!(module.rank() == 1, count == graph.modulus().get(), "{name}");
    }
}

#[test]
fn execution_modes_agree() {
    let corpus = corpus();
    let graphs: Vec<_> = corpus.iter().map(|i| i.graph.clone()).collect();
    let seq = solve_many(&graphs, Execution::Sequential);
    let par = solve_many(&graphs, Execution::Parallel);
    for ((s, p), inst) in seq.into_iter().zip(par).zip(&corpus) {
        let (s, p) = (s.unwrap(), p.unwrap());
        assert_eq!(s.generators(), p.generators(), "{}", inst.name);
        assert_eq!(s.cardinality(), p.cardinality());
    }
    for inst in corpus.iter().step_by(7) {
        let seq = enumerate_splines(&inst.graph, &OracleOptions { execution: Execution::Sequential, ..Default::default() });
        let par = enumerate_splines(&inst.graph, &OracleOptions { execution: Execution::Parallel, ..Default::default() });
        assert_eq!(seq.unwrap(), par.unwrap(), "{}", inst.name);
    }
}

#[test]
fn pointwise_products_are_splines() {
    for Instance { name, graph } in corpus().into_iter().step_by(5) {
        let gens = solve(&graph).unwrap().generators().to_vec();
        for a in &gens {
            for b in &gens {
                let p = a.mul(b).unwrap();
                assert!(is_spline(&graph, p.values()).unwrap().is_valid(), "{name}");
            }
        }
    }
}
