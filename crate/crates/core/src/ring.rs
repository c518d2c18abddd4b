//! Arithmetic in `Z/mZ` and its ideal lattice.
//!
//! Every ideal of `Z_m` is principal with a unique generator dividing `m`, so
//! ideals are stored as that divisor. The zero ideal is the divisor `m` itself,
//! which keeps intersection (`lcm`) and sum (`gcd`) uniform.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SplineError};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

pub(crate) fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    add_mod(a % m, m - b % m, m)
}

/// Inverse of `a` modulo `m`, if `a` is a unit.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return if m == 1 { Some(0) } else { None };
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// The modulus `m >= 2` of the coefficient ring `Z_m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Modulus(u64);

impl Modulus {
    pub fn new(m: u64) -> Result<Self> {
        if m < 2 {
            return Err(SplineError::ModulusTooSmall(m));
        }
        Ok(Modulus(m))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    pub fn factorize(self) -> PrimePowerFactorization {
        factorize(self)
    }

    /// All divisors of `m` in increasing order.
    pub fn divisors(self) -> Vec<u64> {
        let m = self.0;
        let mut small = Vec::new();
        let mut large = Vec::new();
        let mut d = 1;
        while d * d <= m {
            if m.is_multiple_of(d) {
                small.push(d);
                if d != m / d {
                    large.push(m / d);
                }
            }
            d += 1;
        }
        small.extend(large.into_iter().rev());
        small
    }

    /// All ideals of `Z_m`, from `(1)` down to `(0)`.
    pub fn ideals(self) -> Vec<ZmIdeal> {
        self.divisors()
            .into_iter()
            .map(|d| ZmIdeal { generator: d, modulus: self })
            .collect()
    }

    pub fn element(self, x: u64) -> ZmElement {
        ZmElement { value: x % self.0, modulus: self }
    }

    pub fn zero_ideal(self) -> ZmIdeal {
        ZmIdeal { generator: self.0, modulus: self }
    }

    pub fn unit_ideal(self) -> ZmIdeal {
        ZmIdeal { generator: 1, modulus: self }
    }

    pub(crate) fn check(self, other: Modulus) -> Result<()> {
        if self != other {
            return Err(SplineError::ModulusMismatch { left: self.0, right: other.0 });
        }
        Ok(())
    }
}

impl TryFrom<u64> for Modulus {
    type Error = SplineError;

    fn try_from(m: u64) -> Result<Self> {
        Modulus::new(m)
    }
}

impl From<Modulus> for u64 {
    fn from(m: Modulus) -> u64 {
        m.0
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z_{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ZmElement {
    value: u64,
    modulus: Modulus,
}

// checked arithmetic: operands must share a modulus
#[allow(clippy::should_implement_trait)]
impl ZmElement {
    pub fn new(value: u64, modulus: Modulus) -> Result<Self> {
        if value >= modulus.get() {
            return Err(SplineError::ValueOutOfRange { value, modulus: modulus.get() });
        }
        Ok(ZmElement { value, modulus })
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> Modulus {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn add(self, rhs: ZmElement) -> Result<ZmElement> {
        self.modulus.check(rhs.modulus)?;
        Ok(self.modulus.element(add_mod(self.value, rhs.value, self.modulus.0)))
    }

    pub fn sub(self, rhs: ZmElement) -> Result<ZmElement> {
        self.modulus.check(rhs.modulus)?;
        Ok(self.modulus.element(sub_mod(self.value, rhs.value, self.modulus.0)))
    }

    pub fn mul(self, rhs: ZmElement) -> Result<ZmElement> {
        self.modulus.check(rhs.modulus)?;
        Ok(self.modulus.element(mul_mod(self.value, rhs.value, self.modulus.0)))
    }
}

impl fmt::Display for ZmElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// An ideal `(d)` of `Z_m`, stored by its canonical generator `d | m`.
///
/// `d == m` is the zero ideal and `d == 1` the whole ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ZmIdeal {
    generator: u64,
    modulus: Modulus,
}

impl ZmIdeal {
    /// The ideal generated by `x`, i.e. `(gcd(x, m))`.
    pub fn canonical(x: u64, modulus: Modulus) -> ZmIdeal {
        let m = modulus.get();
        let g = gcd(x % m, m);
        ZmIdeal { generator: if g == 0 { m } else { g }, modulus }
    }

    /// Builds `(d)` from an exact divisor generator, accepting 0 for the zero ideal.
    pub fn from_divisor(d: u64, modulus: Modulus) -> Result<ZmIdeal> {
        let m = modulus.get();
        let d = if d == 0 { m } else { d };
        if !m.is_multiple_of(d) {
            return Err(SplineError::BadLabel { label: d, modulus: m });
        }
        Ok(ZmIdeal { generator: d, modulus })
    }

    pub fn generator(self) -> u64 {
        self.generator
    }

    pub fn modulus(self) -> Modulus {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.generator == self.modulus.get()
    }

    pub fn is_unit(self) -> bool {
        self.generator == 1
    }

    /// Number of elements of the ideal, `m / d`.
    pub fn order(self) -> u64 {
        self.modulus.get() / self.generator
    }

    pub fn contains(self, x: ZmElement) -> Result<bool> {
        self.modulus.check(x.modulus)?;
        Ok(self.contains_value(x.value))
    }

    #[inline]
    pub fn contains_value(self, x: u64) -> bool {
        (x % self.modulus.get()).is_multiple_of(self.generator)
    }

    pub fn intersection(self, other: ZmIdeal) -> Result<ZmIdeal> {
        self.modulus.check(other.modulus)?;
        Ok(ZmIdeal { generator: lcm(self.generator, other.generator), modulus: self.modulus })
    }

    pub fn sum(self, other: ZmIdeal) -> Result<ZmIdeal> {
        self.modulus.check(other.modulus)?;
        Ok(ZmIdeal { generator: gcd(self.generator, other.generator), modulus: self.modulus })
    }

    /// `self ⊆ other`.
    pub fn leq(self, other: ZmIdeal) -> Result<bool> {
        self.modulus.check(other.modulus)?;
        Ok(self.generator.is_multiple_of(other.generator))
    }

    /// The idempotent `j0` of the complementary ideal `J = (m/d)`: `j0 ≡ 1 (mod d)`
    /// and `j0 ≡ 0 (mod m/d)`. Requires `gcd(d, m/d) = 1`.
    pub fn lift_idempotent(self) -> Result<ZmElement> {
        let m = self.modulus.get();
        if self.is_zero() {
            return Ok(self.modulus.element(1));
        }
        let d = self.generator;
        let cofactor = m / d;
        if gcd(d, cofactor) != 1 {
            return Err(SplineError::NoComplement { generator: d, modulus: m, cofactor });
        }
        // d == 1 gives inverse 0 mod 1, hence j0 = 0: the quotient is trivial.
        let inv = mod_inverse(cofactor % d, d).unwrap_or(0);
        Ok(self.modulus.element(mul_mod(cofactor, inv, m)))
    }
}

impl fmt::Display for ZmIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "(0)")
        } else {
            write!(f, "({})", self.generator)
        }
    }
}

/// `m = p_1^{e_1} ... p_k^{e_k}` with strictly increasing primes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimePowerFactorization {
    factors: Vec<(u64, u32)>,
}

impl PrimePowerFactorization {
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// The prime powers `p_i^{e_i}`.
    pub fn prime_powers(&self) -> Vec<u64> {
        self.factors.iter().map(|&(p, e)| p.pow(e)).collect()
    }

    pub fn distinct_primes(&self) -> usize {
        self.factors.len()
    }

    pub fn is_prime_power(&self) -> bool {
        self.factors.len() == 1
    }

    pub fn product(&self) -> u64 {
        self.prime_powers().into_iter().product()
    }
}

pub fn factorize(modulus: Modulus) -> PrimePowerFactorization {
    let mut m = modulus.get();
    let mut factors = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= m {
        if m.is_multiple_of(p) {
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        factors.push((m, 1));
    }
    PrimePowerFactorization { factors }
}

/// If `q` is a prime power `p^e`, returns `(p, e)`.
pub fn prime_power_parts(q: u64) -> Option<(u64, u32)> {
    let f = factorize(Modulus::new(q).ok()?);
    f.is_prime_power().then(|| f.factors[0])
}

/// Chinese remaindering: the unique `x mod prod(moduli)` with `x ≡ r_i (mod n_i)`.
/// Moduli must be pairwise coprime.
pub fn crt(residues: &[(u64, u64)]) -> u64 {
    let total: u64 = residues.iter().map(|&(_, n)| n).product();
    let mut x = 0u64;
    for &(r, n) in residues {
        let rest = total / n;
        let inv = mod_inverse(rest % n, n).unwrap_or(0);
        x = add_mod(x, mul_mod(mul_mod(r % n, inv, total), rest, total), total);
    }
    x
}
