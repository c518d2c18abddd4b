//! Passing splines between `Z_m` and a quotient `Z_m / (d) ≅ Z_d`.
//!
//! Reduction mod `d` always sends splines to splines. Going back up needs a
//! complementary ideal `J = (m/d)` with `(d) ∩ J = (0)`; multiplying any
//! representative by an element of `J` gives a spline on the original graph,
//! and the idempotent `j0 ∈ J` with `j0 ≡ 1 (mod d)` gives an actual lift.

use crate::error::{Result, SplineError};
use crate::graph::LabeledGraph;
use crate::ring::{gcd, mul_mod, Modulus, ZmElement, ZmIdeal};
use crate::solver::{reduce_labels, require_spline, Spline};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuotientContext {
    source: Modulus,
    ideal: ZmIdeal,
    target: Modulus,
    complement: Option<ZmIdeal>,
    idempotent: Option<ZmElement>,
}

impl QuotientContext {
    pub fn new(ideal: ZmIdeal) -> Result<Self> {
        let source = ideal.modulus();
        if ideal.is_unit() {
            return Err(SplineError::UnitQuotient);
        }
        let m = source.get();
        let d = ideal.generator();
        let target = Modulus::new(d)?;
        let cofactor = m / d;
        let (complement, idempotent) = if gcd(d, cofactor) == 1 {
            (Some(ZmIdeal::canonical(cofactor, source)), Some(ideal.lift_idempotent()?))
        } else {
            (None, None)
        };
        Ok(QuotientContext { source, ideal, target, complement, idempotent })
    }

    pub fn from_divisor(d: u64, source: Modulus) -> Result<Self> {
        QuotientContext::new(ZmIdeal::from_divisor(d, source)?)
    }

    pub fn source(&self) -> Modulus {
        self.source
    }

    pub fn ideal(&self) -> ZmIdeal {
        self.ideal
    }

    pub fn target(&self) -> Modulus {
        self.target
    }

    /// `J = (m/d)` when `gcd(d, m/d) = 1`.
    pub fn complement(&self) -> Option<ZmIdeal> {
        self.complement
    }

    pub fn idempotent(&self) -> Option<ZmElement> {
        self.idempotent
    }

    fn no_complement(&self) -> SplineError {
        let d = self.ideal.generator();
        SplineError::NoComplement { generator: d, modulus: self.source.get(), cofactor: self.source.get() / d }
    }
}

/// Each label `(a)` becomes `(gcd(a, d))` over `Z_d`.
pub fn quotient_graph(g: &LabeledGraph, ctx: &QuotientContext) -> Result<LabeledGraph> {
    g.modulus().check(ctx.source)?;
    reduce_labels(g, ctx.target)
}

pub fn project_spline(g: &LabeledGraph, p: &Spline, ctx: &QuotientContext) -> Result<Spline> {
    g.modulus().check(ctx.source)?;
    p.modulus().check(ctx.source)?;
    require_spline(g, p.values())?;
    let d = ctx.target.get();
    Spline::new(ctx.target, p.values().iter().map(|&x| x % d).collect())
}

/// `u ↦ x_u · j`, with `x_u` the canonical representative of `q(u)`.
pub fn scaled_lift(g: &LabeledGraph, q: &Spline, j: u64, ctx: &QuotientContext) -> Result<Spline> {
    let representatives = q.values().to_vec();
    scaled_lift_from(g, q, &representatives, j, ctx)
}

/// Like [`scaled_lift`] but with caller-chosen representatives in `Z_m`
/// (each must reduce to `q(u)` mod `d`).
pub fn scaled_lift_from(
    g: &LabeledGraph,
    q: &Spline,
    representatives: &[u64],
    j: u64,
    ctx: &QuotientContext,
) -> Result<Spline> {
    g.modulus().check(ctx.source)?;
    q.modulus().check(ctx.target)?;
    let complement = ctx.complement.ok_or_else(|| ctx.no_complement())?;
    let m = ctx.source.get();
    let d = ctx.target.get();
    if !complement.contains_value(j) {
        return Err(SplineError::NotInIdeal { element: j % m, generator: complement.generator(), modulus: m });
    }
    let quotient = quotient_graph(g, ctx)?;
    require_spline(&quotient, q.values())?;
    if representatives.len() != q.len() {
        return Err(SplineError::DimensionMismatch { expected: q.len(), got: representatives.len() });
    }
    let mut values = Vec::with_capacity(q.len());
    for (&x, &r) in representatives.iter().zip(q.values()) {
        if x % d != r {
            return Err(SplineError::ValueOutOfRange { value: x, modulus: d });
        }
        values.push(mul_mod(x % m, j % m, m));
    }
    Spline::new(ctx.source, values)
}

/// The lift `q_{j0}`; projecting it back gives `q`.
pub fn canonical_lift(g: &LabeledGraph, q: &Spline, ctx: &QuotientContext) -> Result<Spline> {
    let j0 = ctx.idempotent.ok_or_else(|| ctx.no_complement())?;
    scaled_lift(g, q, j0.value(), ctx)
}
