//! Spline modules `S(G, α)` over `Z_m`.
//!
//! [`solve`] splits `m` into prime powers, computes a generating set over
//! each `Z_{p^e}` with the nested-ideal reduction, lifts those generators
//! back to `Z_m` with the CRT idempotents and pairs them up index-wise.
//! [`enumerate_splines`] is the brute-force reference.

mod cut;
mod oracle;
mod span;
mod uniserial;

use std::fmt;

use num_bigint::BigUint;

use crate::error::{Result, SplineError};
use crate::graph::LabeledGraph;
use crate::par::Execution;
use crate::ring::{add_mod, factorize, mul_mod, sub_mod, Modulus, ZmElement, ZmIdeal};

pub use cut::{decompose_over_cut, CutDecomposition, CutSubgraph, SummandKind};
pub use oracle::{count_splines, enumerate_splines, search_size, OracleOptions, DEFAULT_CAP};
pub use span::{span_cardinality, SpanSolver};

/// A vertex labeling with values in `Z_m`, in the vertex order of its graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Spline {
    modulus: Modulus,
    values: Vec<u64>,
}

impl Spline {
    pub fn new(modulus: Modulus, values: Vec<u64>) -> Result<Self> {
        if let Some(&value) = values.iter().find(|&&x| x >= modulus.get()) {
            return Err(SplineError::ValueOutOfRange { value, modulus: modulus.get() });
        }
        Ok(Spline { modulus, values })
    }

    pub(crate) fn from_raw(modulus: Modulus, values: Vec<u64>) -> Self {
        Spline { modulus, values }
    }

    pub fn constant(modulus: Modulus, len: usize, c: u64) -> Self {
        Spline { modulus, values: vec![c % modulus.get(); len] }
    }

    pub fn zero(modulus: Modulus, len: usize) -> Self {
        Spline::constant(modulus, len, 0)
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<u64> {
        self.values
    }

    pub fn value(&self, v: usize) -> ZmElement {
        self.modulus.element(self.values[v])
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.values.windows(2).all(|w| w[0] == w[1])
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&x| x == 0)
    }

    fn zip_with(&self, other: &Spline, f: impl Fn(u64, u64, u64) -> u64) -> Result<Spline> {
        self.modulus.check(other.modulus)?;
        if self.len() != other.len() {
            return Err(SplineError::DimensionMismatch { expected: self.len(), got: other.len() });
        }
        let m = self.modulus.get();
        Ok(Spline {
            modulus: self.modulus,
            values: self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b, m)).collect(),
        })
    }

    pub fn add(&self, other: &Spline) -> Result<Spline> {
        self.zip_with(other, add_mod)
    }

    pub fn sub(&self, other: &Spline) -> Result<Spline> {
        self.zip_with(other, sub_mod)
    }

    /// Pointwise product; splines form a ring under it.
    pub fn mul(&self, other: &Spline) -> Result<Spline> {
        self.zip_with(other, mul_mod)
    }

    pub fn scale(&self, c: u64) -> Spline {
        let m = self.modulus.get();
        Spline {
            modulus: self.modulus,
            values: self.values.iter().map(|&x| mul_mod(x, c % m, m)).collect(),
        }
    }

    /// `p - p(v)·1`.
    pub fn based_at(&self, v: usize) -> Spline {
        let m = self.modulus.get();
        let shift = self.values[v];
        Spline {
            modulus: self.modulus,
            values: self.values.iter().map(|&x| sub_mod(x, shift, m)).collect(),
        }
    }
}

impl fmt::Display for Spline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplineCheck {
    Valid,
    /// Id of the first edge (in edge order) whose condition fails.
    Violated { edge: usize },
}

impl SplineCheck {
    pub fn is_valid(self) -> bool {
        self == SplineCheck::Valid
    }
}

/// Checks every edge condition `p(u) - p(v) ∈ α(uv)`.
pub fn is_spline(g: &LabeledGraph, values: &[u64]) -> Result<SplineCheck> {
    let m = g.modulus().get();
    if values.len() != g.vertex_count() {
        if values.len() < g.vertex_count() {
            return Err(SplineError::MissingValue(g.name(values.len()).to_string()));
        }
        return Err(SplineError::DimensionMismatch { expected: g.vertex_count(), got: values.len() });
    }
    if let Some(&value) = values.iter().find(|&&x| x >= m) {
        return Err(SplineError::ValueOutOfRange { value, modulus: m });
    }
    for e in g.edges() {
        if !e.label.contains_value(sub_mod(values[e.u], values[e.v], m)) {
            return Ok(SplineCheck::Violated { edge: e.id });
        }
    }
    Ok(SplineCheck::Valid)
}

pub(crate) fn require_spline(g: &LabeledGraph, values: &[u64]) -> Result<()> {
    match is_spline(g, values)? {
        SplineCheck::Valid => Ok(()),
        SplineCheck::Violated { edge } => {
            let e = g.edge(edge)?;
            Err(SplineError::NotASpline {
                edge,
                u: g.name(e.u).to_string(),
                v: g.name(e.v).to_string(),
            })
        }
    }
}

/// A finite generating set of `S(G, α)` (or of `S(G, α; v)` when based),
/// together with the exact number of splines it spans.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplineModule {
    graph: LabeledGraph,
    generators: Vec<Spline>,
    basepoint: Option<usize>,
    cardinality: BigUint,
}

impl SplineModule {
    pub(crate) fn from_parts(
        graph: LabeledGraph,
        generators: Vec<Spline>,
        basepoint: Option<usize>,
        cardinality: BigUint,
    ) -> Self {
        SplineModule { graph, generators, basepoint, cardinality }
    }

    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    pub fn generators(&self) -> &[Spline] {
        &self.generators
    }

    pub fn basepoint(&self) -> Option<usize> {
        self.basepoint
    }

    pub fn modulus(&self) -> Modulus {
        self.graph.modulus()
    }

    pub fn cardinality(&self) -> &BigUint {
        &self.cardinality
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_rows(&self) -> Vec<Vec<u64>> {
        self.generators.iter().map(|g| g.values.clone()).collect()
    }

    pub fn span_solver(&self) -> Result<SpanSolver> {
        SpanSolver::new(self.modulus(), self.graph.vertex_count(), &self.generator_rows())
    }

    /// Whether `p` lies in the span, with one coefficient vector if so.
    pub fn membership(&self, p: &Spline) -> Result<Option<Vec<u64>>> {
        self.modulus().check(p.modulus)?;
        self.span_solver()?.solve(&p.values)
    }

    /// The submodule of splines vanishing at `v`: each generator `g` becomes
    /// `g - g(v)·1`. Requires an unbased module containing the constants.
    pub fn based_module(&self, v: usize) -> Result<SplineModule> {
        if self.basepoint.is_some() {
            return Err(SplineError::AlreadyBased);
        }
        if v >= self.graph.vertex_count() {
            return Err(SplineError::UnknownVertex(format!("#{v}")));
        }
        let generators = self
            .generators
            .iter()
            .map(|g| g.based_at(v))
            .filter(|g| !g.is_zero())
            .collect();
        Ok(SplineModule {
            graph: self.graph.clone(),
            generators,
            basepoint: Some(v),
            cardinality: &self.cardinality / BigUint::from(self.modulus().get()),
        })
    }

    pub fn based_module_named(&self, name: &str) -> Result<SplineModule> {
        self.based_module(self.graph.vertex(name)?)
    }
}

/// Generating set of `S(g; basepoint)` over a prime-power modulus.
pub fn basis_prime_power(g: &LabeledGraph, basepoint: usize) -> Result<SplineModule> {
    let q = g.modulus();
    if !factorize(q).is_prime_power() {
        return Err(SplineError::NotPrimePower(q.get()));
    }
    if basepoint >= g.vertex_count() {
        return Err(SplineError::UnknownVertex(format!("#{basepoint}")));
    }
    let gens = uniserial::based_generators(g, basepoint);
    let cardinality = gens.iter().fold(BigUint::from(1u32), |acc, c| acc * c.order);
    let generators = gens.into_iter().map(|c| Spline::from_raw(q, c.values)).collect();
    Ok(SplineModule { graph: g.clone(), generators, basepoint: Some(basepoint), cardinality })
}

/// The labeled graph over `Z_q` obtained by reducing labels, for `q | m`.
pub(crate) fn reduce_labels(g: &LabeledGraph, q: Modulus) -> Result<LabeledGraph> {
    g.map_labels(q, |l| ZmIdeal::canonical(l.generator(), q))
}

/// Per prime power `q`: `q`, the lifted based generators and `|S|` over `Z_q`.
type PrimePart = (u64, Vec<Vec<u64>>, BigUint);

pub fn solve(g: &LabeledGraph) -> Result<SplineModule> {
    solve_with(g, Execution::default())
}

/// Minimal generating set of `S(G, α)`: the constant spline followed by
/// `max_i r_i` CRT-assembled generators, where `r_i` is the based rank over
/// the i-th prime-power factor of `m`.
pub fn solve_with(g: &LabeledGraph, execution: Execution) -> Result<SplineModule> {
    let modulus = g.modulus();
    let m = modulus.get();
    let n = g.vertex_count();
    if n == 0 {
        return Ok(SplineModule {
            graph: g.clone(),
            generators: Vec::new(),
            basepoint: None,
            cardinality: BigUint::from(1u32),
        });
    }
    let prime_powers = factorize(modulus).prime_powers();
    let per_prime: Vec<Result<PrimePart>> = execution.map(&prime_powers, |&q| {
        let qm = Modulus::new(q)?;
        let reduced = reduce_labels(g, qm)?;
        let based = basis_prime_power(&reduced, 0)?;
        let j0 = ZmIdeal::from_divisor(q, modulus)?.lift_idempotent()?.value();
        let lifted = based
            .generators
            .iter()
            .map(|s| s.values.iter().map(|&x| mul_mod(x, j0, m)).collect())
            .collect();
        Ok((q, lifted, based.cardinality * q))
    });
    let mut rows: Vec<Vec<u64>> = Vec::new();
    let mut cardinality = BigUint::from(1u32);
    for part in per_prime {
        let (_, lifted, card) = part?;
        cardinality *= card;
        for (i, row) in lifted.into_iter().enumerate() {
            if i == rows.len() {
                rows.push(vec![0; n]);
            }
            for (acc, x) in rows[i].iter_mut().zip(row) {
                *acc = add_mod(*acc, x, m);
            }
        }
    }
    let mut generators = vec![Spline::constant(modulus, n, 1)];
    generators.extend(rows.into_iter().map(|r| Spline::from_raw(modulus, r)));
    Ok(SplineModule { graph: g.clone(), generators, basepoint: None, cardinality })
}

/// Solves many graphs, in parallel across graphs when requested.
pub fn solve_many(graphs: &[LabeledGraph], execution: Execution) -> Vec<Result<SplineModule>> {
    execution.map(graphs, |g| solve_with(g, Execution::Sequential))
}
