//! Acceptance run: one PASS/FAIL line per criterion. All checks are exact
//! (tolerance 0); the wall-clock budgets below are asserted as well.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;

use common::{build, corpus, Instance};
use zm_splines::grids::{build_dual, build_mesh, labeling_census, zero_edge_lower_bound};
use zm_splines::quotient::{canonical_lift, project_spline, quotient_graph, QuotientContext};
use zm_splines::reduce::simplify;
use zm_splines::ring::gcd;
use zm_splines::solver::{decompose_over_cut, enumerate_splines, is_spline, solve_many, CutSubgraph, OracleOptions};
use zm_splines::{rank_one_zm, solve, Execution, LabeledGraph, Modulus, Spline, ZmIdeal};

type Check = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Check + 'a>);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn oracle(g: &LabeledGraph) -> Vec<Spline> {
    enumerate_splines(g, &OracleOptions::default()).unwrap()
}

fn within(start: Instant, budget: Duration, what: &str) -> Result<(), String> {
    let took = start.elapsed();
    ensure!(took <= budget, "{what} took {took:.1?}, budget {budget:?}");
    Ok(())
}

fn oracle_equivalence(corpus: &[Instance]) -> Check {
    let start = Instant::now();
    ensure!(corpus.len() >= 200, "corpus has {} graphs", corpus.len());
    let graphs: Vec<LabeledGraph> = corpus.iter().map(|i| i.graph.clone()).collect();
    let modules = solve_many(&graphs, Execution::default());
    for (Instance { name, graph }, module) in corpus.iter().zip(modules) {
        let module = module.map_err(|e| format!("{name}: {e}"))?;
        let all = oracle(graph);
        ensure!(module.cardinality() == &BigUint::from(all.len()), "{name}: cardinality differs");
        for g in module.generators() {
            ensure!(all.binary_search(g).is_ok(), "{name}: generator {g} is not a spline");
        }
        let solver = module.span_solver().unwrap();
        for p in &all {
            ensure!(solver.contains(p.values()).unwrap(), "{name}: {p} outside the span");
        }
    }
    within(start, Duration::from_secs(300), "oracle equivalence")?;
    Ok(format!("{} graphs", corpus.len()))
}

fn rank_one_agreement(corpus: &[Instance]) -> Check {
    let mut verdicts = [0usize; 2];
    for Instance { name, graph } in corpus {
        let r = rank_one_zm(graph).map_err(|e| format!("{name}: {e}"))?;
        let constants_only = oracle(graph).len() as u64 == graph.modulus().get();
        ensure!(r.verdict == constants_only, "{name}: verdict {} but oracle says {constants_only}", r.verdict);
        if r.verdict {
            let trees = r.witness_trees.as_ref().ok_or(format!("{name}: no trees"))?;
            for (q, tree) in trees {
                let ideal = ZmIdeal::from_divisor(*q, graph.modulus()).unwrap();
                ensure!(tree.len() + 1 == graph.vertex_count(), "{name}: tree size");
                ensure!(graph.edge_subgraph(tree).unwrap().is_connected(), "{name}: tree not spanning");
                for &id in tree {
                    ensure!(graph.edge(id).unwrap().label.leq(ideal).unwrap(), "{name}: edge {id} outside ({q})");
                }
            }
        } else {
            let w = r.witness_spline.as_ref().ok_or(format!("{name}: no witness"))?;
            ensure!(is_spline(graph, w.values()).unwrap().is_valid(), "{name}: witness {w} invalid");
            ensure!(!w.is_constant(), "{name}: constant witness");
        }
        verdicts[r.verdict as usize] += 1;
    }
    Ok(format!("{} rank one, {} not", verdicts[1], verdicts[0]))
}

fn triangle_z60() -> Check {
    let start = Instant::now();
    // a-b: δβ, b-c: δ, a-c: δβγ with δ=2, β=3, γ=5
    let g = build(60, 3, &[(0, 1, 6), (1, 2, 2), (0, 2, 30)]);
    let module = solve(&g).unwrap();
    ensure!(module.generators().len() == 3, "{} generators", module.generators().len());
    let all = oracle(&g);
    ensure!(all.len() == 1200, "oracle count {}", all.len());
    ensure!(module.cardinality() == &BigUint::from(1200u32), "span cardinality {}", module.cardinality());
    let solver = module.span_solver().unwrap();
    for p in &all {
        ensure!(solver.contains(p.values()).unwrap(), "{p} outside the span");
    }
    for target in [[1, 1, 1], [0, 6, 0], [0, 0, 30]] {
        ensure!(solver.contains(&target).unwrap(), "{target:?} outside the span");
    }
    within(start, Duration::from_secs(1), "triangle")?;
    Ok("3 generators, cardinality 1200".into())
}

fn k4_z15() -> Check {
    let start = Instant::now();
    // bl, br, tr, tl
    let g = build(15, 4, &[(0, 1, 3), (1, 2, 5), (2, 3, 3), (3, 0, 5), (0, 2, 3), (3, 1, 5)]);
    let r = rank_one_zm(&g).unwrap();
    ensure!(r.verdict, "not rank one");
    let trees = r.witness_trees.unwrap();
    ensure!(trees.len() == 2, "{} trees", trees.len());
    for (q, tree) in &trees {
        ensure!(tree.len() == 3 && g.edge_subgraph(tree).unwrap().is_connected(), "({q}) tree {tree:?}");
        ensure!(tree.iter().all(|&id| g.edge(id).unwrap().label.generator().is_multiple_of(*q)), "({q}) tree {tree:?}");
    }
    let count = oracle(&g).len();
    ensure!(count == 15, "oracle count {count}");
    within(start, Duration::from_secs(1), "K4")?;
    Ok("two spanning trees, 15 splines".into())
}

fn square_z15() -> Check {
    // a-c (3), c-d (5), d-b (3), b-a (5)
    let g = build(15, 4, &[(0, 2, 3), (2, 3, 5), (3, 1, 3), (1, 0, 5)]);
    let r = rank_one_zm(&g).unwrap();
    ensure!(!r.verdict, "reported rank one");
    let w = r.witness_spline.unwrap();
    ensure!(is_spline(&g, w.values()).unwrap().is_valid() && !w.is_constant(), "witness {w}");
    let ctx = QuotientContext::from_divisor(3, g.modulus()).unwrap();
    let projected = project_spline(&g, &w, &ctx).unwrap();
    // scale by a unit of Z_3 so that the a-b difference is 2, as in (2,0,2,0)
    let diff = (projected.values()[0] + 3 - projected.values()[1]) % 3;
    ensure!(diff != 0, "projected witness {projected} is constant");
    let normalized = projected.scale(if diff == 2 { 1 } else { 2 });
    let lifted = canonical_lift(&g, &normalized, &ctx).unwrap();
    ensure!(is_spline(&g, lifted.values()).unwrap().is_valid(), "lift {lifted} invalid");
    let expected = Spline::new(g.modulus(), vec![5, 0, 5, 0]).unwrap();
    ensure!(lifted.sub(&expected).unwrap().is_constant(), "lift {lifted} differs from (5,0,5,0) by a non-constant");
    let count = oracle(&g).len();
    ensure!(count == 225, "oracle count {count}");
    Ok(format!("witness {w}, lift {lifted}"))
}

fn quotient_round_trip(corpus: &[Instance]) -> Check {
    let mut lifted_count = 0;
    for Instance { name, graph } in corpus {
        let m = graph.modulus().get();
        // d = 1 quotients by the unit ideal, leaving the zero ring
        for d in (2..=m).filter(|&d| m % d == 0 && gcd(d, m / d) == 1) {
            let ctx = QuotientContext::from_divisor(d, graph.modulus()).unwrap();
            let q = quotient_graph(graph, &ctx).unwrap();
            for s in oracle(&q) {
                let lifted = canonical_lift(graph, &s, &ctx).map_err(|e| format!("{name} mod {d}: {e}"))?;
                ensure!(is_spline(graph, lifted.values()).unwrap().is_valid(), "{name} mod {d}: lift invalid");
                ensure!(project_spline(graph, &lifted, &ctx).unwrap() == s, "{name} mod {d}: {s} not recovered");
                lifted_count += 1;
            }
        }
    }
    Ok(format!("{lifted_count} quotient splines"))
}

fn based_count(g: &LabeledGraph, side: &[usize], root: usize) -> u64 {
    let sub = g.induced_subgraph(side);
    let local = side.iter().position(|&v| v == root).unwrap();
    oracle(&sub).iter().filter(|p| p.values()[local] == 0).count() as u64
}

fn direct_sums(corpus: &[Instance]) -> Check {
    let (mut based, mut bridges, mut cuts) = (0, 0, 0);
    for Instance { name, graph } in corpus {
        let all = oracle(graph);
        let m = graph.modulus().get();
        let module = solve(graph).unwrap();
        for v in 0..graph.vertex_count() {
            let count = all.iter().filter(|p| p.values()[v] == 0).count() as u64;
            ensure!(m * count == all.len() as u64, "{name}: basepoint {v}");
            ensure!(module.based_module(v).unwrap().cardinality() == &BigUint::from(count), "{name}: based module at {v}");
            based += 1;
        }
        for id in graph.bridges() {
            let e = *graph.edge(id).unwrap();
            let rest = graph.without_edge(id).unwrap();
            let comps = rest.connected_components();
            let a = comps.iter().find(|c| c.contains(&e.u)).unwrap();
            let b = comps.iter().find(|c| c.contains(&e.v)).unwrap();
            let product = based_count(&rest, a, e.u) * based_count(&rest, b, e.v) * m * e.label.order();
            ensure!(product == all.len() as u64, "{name}: bridge {id} gives {product}, oracle {}", all.len());
            bridges += 1;
        }
        if !(2..=6).contains(&graph.edge_count()) {
            continue;
        }
        let ids: Vec<usize> = graph.edges().iter().map(|e| e.id).collect();
        for mask in 1u32..(1 << ids.len()) - 1 {
            let chosen: Vec<usize> = ids.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &id)| id).collect();
            let hub = CutSubgraph::from_edges(graph, &chosen).unwrap();
            let Ok(dec) = decompose_over_cut(graph, &hub) else { continue };
            ensure!(dec.cardinality() == BigUint::from(all.len()), "{name}/cut{mask}: cardinality");
            let mut seen = BTreeSet::new();
            for p in &all {
                let parts = dec.split(p).unwrap();
                let mut sum = Spline::zero(graph.modulus(), graph.vertex_count());
                for part in &parts {
                    sum = sum.add(part).unwrap();
                }
                ensure!(&sum == p, "{name}/cut{mask}: {p} resums to {sum}");
                ensure!(seen.insert(parts), "{name}/cut{mask}: split not injective");
            }
            cuts += 1;
        }
    }
    ensure!(cuts >= 20, "only {cuts} cut instances");
    Ok(format!("{based} basepoints, {bridges} bridges, {cuts} cuts"))
}

fn grids() -> Check {
    let start = Instant::now();
    let z12 = Modulus::new(12).unwrap();
    for rows in 1..=4 {
        for cols in 1..=4 {
            let dual = build_dual(&build_mesh(rows, cols).unwrap(), z12);
            let mn = rows * cols;
            ensure!(dual.vertex_count() == 6 * mn, "{rows}x{cols}: {} vertices", dual.vertex_count());
            ensure!(dual.edge_count() == 9 * mn - rows - cols, "{rows}x{cols}: {} edges", dual.edge_count());
        }
    }
    let dual = build_dual(&build_mesh(1, 1).unwrap(), z12);
    let census = labeling_census(&dual, &z12.divisors(), 1 << 20, Execution::default()).unwrap();
    let bound = zero_edge_lower_bound(1, 1, 2).unwrap();
    ensure!(census.labelings == 6u64.pow(7), "{} labelings", census.labelings);
    ensure!(bound == 3, "bound {bound}");
    let min = census.min_zero_edges.ok_or("no rank-one labeling")?;
    ensure!(min >= bound, "a rank-one labeling has {min} zero edges");
    within(start, Duration::from_secs(120), "grid audit")?;
    Ok(format!("{} labelings, {} rank one, fewest zero edges {min}", census.labelings, census.rank_one))
}

fn reduction(corpus: &[Instance]) -> Check {
    for Instance { name, graph } in corpus {
        let trace = simplify(graph);
        let reduced = oracle(&trace.graph);
        let original = oracle(graph);
        ensure!(reduced.len() == original.len(), "{name}: {} vs {}", reduced.len(), original.len());
        let mut images = BTreeSet::new();
        for p in &reduced {
            let back = trace.pullback(p.values()).unwrap();
            ensure!(is_spline(graph, &back).unwrap().is_valid(), "{name}: pullback of {p} invalid");
            images.insert(back);
        }
        ensure!(images.len() == original.len(), "{name}: pullback not injective");
    }
    Ok(format!("{} traces", corpus.len()))
}

fn main() -> ExitCode {
    let corpus = corpus();
    let criteria: Vec<Criterion> = vec![
        ("oracle equivalence", Box::new(|| oracle_equivalence(&corpus))),
        ("rank-one agreement", Box::new(|| rank_one_agreement(&corpus))),
        ("triangle over Z_60", Box::new(triangle_z60)),
        ("K4 over Z_15", Box::new(k4_z15)),
        ("4-cycle witness over Z_15", Box::new(square_z15)),
        ("quotient round trip", Box::new(|| quotient_round_trip(&corpus))),
        ("direct-sum laws", Box::new(|| direct_sums(&corpus))),
        ("grid counts and zero-edge audit", Box::new(grids)),
        ("reduction soundness", Box::new(|| reduction(&corpus))),
    ];
    let mut failed = 0;
    for (i, (label, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {} {label} [tolerance: exact] ({detail}; {took:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {label} [tolerance: exact] ({why}; {took:.2?})", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
