//! Span membership and span size for vectors over `Z_m`.
//!
//! The generator matrix is split by the Chinese remainder theorem into
//! matrices over each `Z_{p^e}`, where a Smith normal form with recorded
//! row/column transforms decides `A x = b`.

use num_bigint::BigUint;

use crate::error::{Result, SplineError};
use crate::ring::{add_mod, crt, factorize, mod_inverse, mul_mod, sub_mod, Modulus};

/// Smith normal form `U A V = D` over `Z_{p^e}`.
#[derive(Clone, Debug)]
struct PrimePart {
    q: u64,
    p: u64,
    e: u32,
    u: Vec<Vec<u64>>,
    v: Vec<Vec<u64>>,
    /// `(valuation, unit inverse)` of each nonzero diagonal entry.
    pivots: Vec<(u32, u64)>,
}

fn valuation(x: u64, p: u64, e: u32) -> u32 {
    if x == 0 {
        return e;
    }
    let (mut x, mut k) = (x, 0);
    while x % p == 0 {
        x /= p;
        k += 1;
    }
    k
}

impl PrimePart {
    /// `columns[j]` is the j-th generator, already reduced mod `q`.
    fn new(q: u64, p: u64, e: u32, rows: usize, columns: &[Vec<u64>]) -> Self {
        let cols = columns.len();
        let mut a: Vec<Vec<u64>> =
            (0..rows).map(|i| columns.iter().map(|c| c[i] % q).collect()).collect();
        let mut u: Vec<Vec<u64>> = (0..rows)
            .map(|i| (0..rows).map(|j| u64::from(i == j)).collect())
            .collect();
        let mut v: Vec<Vec<u64>> = (0..cols)
            .map(|i| (0..cols).map(|j| u64::from(i == j)).collect())
            .collect();
        let mut pivots = Vec::new();
        for t in 0..rows.min(cols) {
            let mut best: Option<(u32, usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(t) {
                for (j, &x) in row.iter().enumerate().skip(t) {
                    if x != 0 {
                        let k = valuation(x, p, e);
                        if best.is_none_or(|(b, _, _)| k < b) {
                            best = Some((k, i, j));
                        }
                    }
                }
            }
            let Some((k, i, j)) = best else { break };
            a.swap(t, i);
            u.swap(t, i);
            for row in a.iter_mut() {
                row.swap(t, j);
            }
            for row in v.iter_mut() {
                row.swap(t, j);
            }
            let pk = p.pow(k);
            let unit = a[t][t] / pk;
            let inv = mod_inverse(unit % q, q).expect("pivot cofactor is a unit");
            for i in t + 1..rows {
                if a[i][t] == 0 {
                    continue;
                }
                let f = mul_mod(a[i][t] / pk, inv, q);
                eliminate_row(&mut a, t, i, f, q);
                eliminate_row(&mut u, t, i, f, q);
            }
            for j in t + 1..cols {
                if a[t][j] == 0 {
                    continue;
                }
                let g = mul_mod(a[t][j] / pk, inv, q);
                for row in a.iter_mut() {
                    row[j] = sub_mod(row[j], mul_mod(g, row[t], q), q);
                }
                for row in v.iter_mut() {
                    row[j] = sub_mod(row[j], mul_mod(g, row[t], q), q);
                }
            }
            pivots.push((k, inv));
        }
        PrimePart { q, p, e, u, v, pivots }
    }

    fn span_exponent(&self) -> u32 {
        self.pivots.iter().map(|&(k, _)| self.e - k).sum()
    }

    fn solve(&self, b: &[u64]) -> Option<Vec<u64>> {
        let q = self.q;
        let c: Vec<u64> = self
            .u
            .iter()
            .map(|row| row.iter().zip(b).fold(0, |acc, (&x, &y)| add_mod(acc, mul_mod(x, y % q, q), q)))
            .collect();
        let mut y = vec![0u64; self.v.len()];
        for (t, &ct) in c.iter().enumerate() {
            match self.pivots.get(t) {
                Some(&(k, inv)) => {
                    if valuation(ct, self.p, self.e) < k {
                        return None;
                    }
                    y[t] = mul_mod(ct / self.p.pow(k), inv, q);
                }
                None if ct != 0 => return None,
                None => {}
            }
        }
        Some(
            self.v
                .iter()
                .map(|row| row.iter().zip(&y).fold(0, |acc, (&x, &yy)| add_mod(acc, mul_mod(x, yy, q), q)))
                .collect(),
        )
    }
}

/// `rows[dst] -= f * rows[src]` over `Z_q`, for `src < dst`.
fn eliminate_row(rows: &mut [Vec<u64>], src: usize, dst: usize, f: u64, q: u64) {
    let (head, tail) = rows.split_at_mut(dst);
    for (x, &y) in tail[0].iter_mut().zip(&head[src]) {
        *x = sub_mod(*x, mul_mod(f, y, q), q);
    }
}

/// Precomputed elimination for repeated membership queries against one
/// generating set.
#[derive(Clone, Debug)]
pub struct SpanSolver {
    modulus: Modulus,
    dimension: usize,
    generators: usize,
    parts: Vec<PrimePart>,
}

impl SpanSolver {
    pub fn new(modulus: Modulus, dimension: usize, generators: &[Vec<u64>]) -> Result<Self> {
        for g in generators {
            if g.len() != dimension {
                return Err(SplineError::DimensionMismatch { expected: dimension, got: g.len() });
            }
        }
        let parts = factorize(modulus)
            .factors()
            .iter()
            .map(|&(p, e)| PrimePart::new(p.pow(e), p, e, dimension, generators))
            .collect();
        Ok(SpanSolver { modulus, dimension, generators: generators.len(), parts })
    }

    /// Number of elements in the span.
    pub fn cardinality(&self) -> BigUint {
        self.parts.iter().fold(BigUint::from(1u32), |acc, part| {
            acc * BigUint::from(part.p).pow(part.span_exponent())
        })
    }

    /// Coefficients `x` with `sum x_j g_j = target`, if the target is in the span.
    pub fn solve(&self, target: &[u64]) -> Result<Option<Vec<u64>>> {
        if target.len() != self.dimension {
            return Err(SplineError::DimensionMismatch { expected: self.dimension, got: target.len() });
        }
        let mut per_prime = Vec::with_capacity(self.parts.len());
        for part in &self.parts {
            match part.solve(target) {
                Some(x) => per_prime.push(x),
                None => return Ok(None),
            }
        }
        let coeffs = (0..self.generators)
            .map(|j| {
                let residues: Vec<(u64, u64)> =
                    self.parts.iter().zip(&per_prime).map(|(part, x)| (x[j], part.q)).collect();
                crt(&residues) % self.modulus.get()
            })
            .collect();
        Ok(Some(coeffs))
    }

    pub fn contains(&self, target: &[u64]) -> Result<bool> {
        Ok(self.solve(target)?.is_some())
    }
}

/// Size of the `Z_m`-span of `generators` in `Z_m^dimension`.
pub fn span_cardinality(modulus: Modulus, dimension: usize, generators: &[Vec<u64>]) -> Result<BigUint> {
    Ok(SpanSolver::new(modulus, dimension, generators)?.cardinality())
}
