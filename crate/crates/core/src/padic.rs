//! Exact and truncated p-adic arithmetic over the integers.
//!
//! [`Valuation`] is the exact order of an integer, with `Infinite` reserved
//! for zero. [`TruncatedValuation`] is what survives a computation modulo
//! `p^E`: either an exact order below `E`, or only the knowledge that the
//! order is at least `E`. The two are kept as distinct types so a truncated
//! result cannot be mistaken for an exact one.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A prime number, validated once at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    pub fn is_two(self) -> bool {
        self.0 == 2
    }

    pub fn pow(self, e: u32) -> BigUint {
        BigUint::from(self.0).pow(e)
    }

    /// `p^e` as a machine integer, or `None` on overflow.
    pub fn checked_pow(self, e: u32) -> Option<u64> {
        self.0.checked_pow(e)
    }
}

impl TryFrom<u64> for Prime {
    type Error = Error;

    fn try_from(p: u64) -> Result<Self> {
        Prime::new(p)
    }
}

impl From<Prime> for u64 {
    fn from(p: Prime) -> u64 {
        p.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Trial division; adequate for the small primes this crate works with.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d <= n / d {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Three-valued truth for comparisons involving truncated orders.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tri {
    True,
    False,
    Undetermined,
}

impl Tri {
    pub fn is_true(self) -> bool {
        self == Tri::True
    }

    pub fn is_false(self) -> bool {
        self == Tri::False
    }
}

impl From<bool> for Tri {
    fn from(b: bool) -> Self {
        if b {
            Tri::True
        } else {
            Tri::False
        }
    }
}

impl fmt::Display for Tri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tri::True => "true",
            Tri::False => "false",
            Tri::Undetermined => "undetermined",
        })
    }
}

/// Exact p-adic order of an integer. `Infinite` arises exactly from zero.
///
/// Variant order makes every finite value compare below `Infinite`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Valuation {
    Finite(u64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<u64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Valuation::Infinite
    }

    /// `self >= bound`; infinite order dominates everything.
    pub fn at_least(self, bound: i64) -> bool {
        match self {
            Valuation::Finite(v) => v as i64 >= bound,
            Valuation::Infinite => true,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

/// A p-adic order observed through arithmetic modulo `p^E`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TruncatedValuation {
    /// The residue was nonzero; its order is exact and below the precision.
    Exact(u64),
    /// The residue was zero modulo `p^E`; the true order is `>= E`, possibly infinite.
    AtLeast(u64),
}

impl TruncatedValuation {
    pub fn exact(self) -> Option<u64> {
        match self {
            TruncatedValuation::Exact(v) => Some(v),
            TruncatedValuation::AtLeast(_) => None,
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, TruncatedValuation::Exact(_))
    }

    /// Whether the order is `>= bound`.
    pub fn ge(self, bound: i64) -> Tri {
        match self {
            TruncatedValuation::Exact(v) => Tri::from(v as i64 >= bound),
            TruncatedValuation::AtLeast(e) if e as i64 >= bound => Tri::True,
            TruncatedValuation::AtLeast(_) => Tri::Undetermined,
        }
    }

    /// Whether the order equals `value`.
    pub fn eq_value(self, value: u64) -> Tri {
        match self {
            TruncatedValuation::Exact(v) => Tri::from(v == value),
            TruncatedValuation::AtLeast(e) if value < e => Tri::False,
            TruncatedValuation::AtLeast(_) => Tri::Undetermined,
        }
    }

    /// Whether the order is `< bound`.
    pub fn lt(self, bound: i64) -> Tri {
        match self.ge(bound) {
            Tri::True => Tri::False,
            Tri::False => Tri::True,
            Tri::Undetermined => Tri::Undetermined,
        }
    }

    /// Sound minimum: the result is a valid description of `min` of the
    /// two underlying orders.
    pub fn min(self, other: Self) -> Self {
        use TruncatedValuation::*;
        match (self, other) {
            (Exact(a), Exact(b)) => Exact(a.min(b)),
            (Exact(a), AtLeast(e)) | (AtLeast(e), Exact(a)) => {
                if a < e {
                    Exact(a)
                } else {
                    AtLeast(e)
                }
            }
            (AtLeast(a), AtLeast(b)) => AtLeast(a.min(b)),
        }
    }
}

impl fmt::Display for TruncatedValuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TruncatedValuation::Exact(v) => write!(f, "{v}"),
            TruncatedValuation::AtLeast(e) => write!(f, ">={e}"),
        }
    }
}

/// Order of a machine integer.
pub fn ord_u64(p: Prime, x: u64) -> Valuation {
    if x == 0 {
        return Valuation::Infinite;
    }
    if p.is_two() {
        return Valuation::Finite(x.trailing_zeros() as u64);
    }
    let p = p.get();
    let mut x = x;
    let mut v = 0;
    while x.is_multiple_of(p) {
        x /= p;
        v += 1;
    }
    Valuation::Finite(v)
}

/// Largest power of `p` that fits a `u64`, with its exponent.
fn word_power(p: Prime) -> (u64, u64) {
    let mut q = p.get();
    let mut t = 1;
    while let Some(next) = q.checked_mul(p.get()) {
        q = next;
        t += 1;
    }
    (q, t)
}

pub fn ord_biguint(p: Prime, x: &BigUint) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinite;
    }
    if p.is_two() {
        return Valuation::Finite(x.trailing_zeros().unwrap_or(0));
    }
    let (chunk, t) = word_power(p);
    let mut v = 0;
    let mut x = x.clone();
    loop {
        let r = (&x % chunk).to_u64().expect("remainder below u64 modulus");
        if r != 0 {
            // x ≡ r (mod p^t) and ord_p(r) < t, so they share their order.
            return Valuation::Finite(v + ord_u64(p, r).finite().unwrap_or(0));
        }
        x /= chunk;
        v += t;
    }
}

/// `ord_p(x)` for an arbitrary integer; the sign is ignored.
pub fn ord_int(p: Prime, x: &BigInt) -> Valuation {
    ord_biguint(p, x.magnitude())
}

/// Legendre's formula `Σ_{i≥1} ⌊m/p^i⌋`.
pub fn ord_factorial(p: Prime, m: u64) -> u64 {
    let p = p.get();
    let mut total = 0;
    let mut q = m / p;
    while q > 0 {
        total += q;
        q /= p;
    }
    total
}

/// `{a}_m`, the least nonnegative residue of `a` modulo `m`.
pub fn least_residue(a: i64, m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    let m = m as i128;
    Ok((a as i128).rem_euclid(m) as u64)
}

/// Number of carries when adding `a` and `b` in base `p`.
pub fn carries(p: Prime, a: u64, b: u64) -> u32 {
    let p = p.get();
    let (mut a, mut b) = (a, b);
    let mut carry = 0u64;
    let mut count = 0;
    while a > 0 || b > 0 || carry > 0 {
        let digit_sum = a % p + b % p + carry;
        carry = u64::from(digit_sum >= p);
        count += carry as u32;
        a /= p;
        b /= p;
    }
    count
}

/// `φ(p^α) = (p-1)p^{α-1}` for `α ≥ 1`.
pub fn euler_phi_prime_power(p: Prime, alpha: u32) -> Result<u64> {
    if alpha == 0 {
        return Err(Error::InvalidArgument(
            "euler_phi_prime_power needs alpha >= 1".into(),
        ));
    }
    p.checked_pow(alpha - 1)
        .and_then(|q| q.checked_mul(p.get() - 1))
        .ok_or_else(|| Error::Capacity(format!("phi({p}^{alpha}) overflows u64")))
}

/// An element of `Z/p^E`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModPE {
    residue: BigUint,
    p: Prime,
    precision: u32,
}

impl ModPE {
    pub fn new(value: &BigInt, p: Prime, precision: u32) -> Result<Self> {
        check_precision(precision)?;
        let modulus = BigInt::from(p.pow(precision));
        let r = value.mod_floor(&modulus);
        Ok(ModPE {
            residue: r.to_biguint().expect("mod_floor is nonnegative"),
            p,
            precision,
        })
    }

    pub fn from_residue(residue: BigUint, p: Prime, precision: u32) -> Result<Self> {
        check_precision(precision)?;
        let modulus = p.pow(precision);
        Ok(ModPE {
            residue: residue % modulus,
            p,
            precision,
        })
    }

    pub fn zero(p: Prime, precision: u32) -> Result<Self> {
        Self::from_residue(BigUint::zero(), p, precision)
    }

    pub fn one(p: Prime, precision: u32) -> Result<Self> {
        Self::from_residue(BigUint::one(), p, precision)
    }

    pub fn residue(&self) -> &BigUint {
        &self.residue
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn modulus(&self) -> BigUint {
        self.p.pow(self.precision)
    }

    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.p == other.p && self.precision == other.precision {
            Ok(())
        } else {
            Err(Error::ModulusMismatch {
                left_p: self.p.get(),
                left_e: self.precision,
                right_p: other.p.get(),
                right_e: other.precision,
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let sum = &self.residue + &other.residue;
        Ok(self.with_residue(sum % self.modulus()))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let m = self.modulus();
        let diff = (&self.residue + &m - &other.residue) % m;
        Ok(self.with_residue(diff))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let prod = &self.residue * &other.residue;
        Ok(self.with_residue(prod % self.modulus()))
    }

    pub fn neg(&self) -> Self {
        if self.residue.is_zero() {
            return self.clone();
        }
        self.with_residue(self.modulus() - &self.residue)
    }

    /// Multiply by an integer scalar.
    pub fn scale(&self, c: &BigInt) -> Self {
        let m = BigInt::from(self.modulus());
        let r = (BigInt::from(self.residue.clone()) * c).mod_floor(&m);
        self.with_residue(r.to_biguint().expect("mod_floor is nonnegative"))
    }

    /// Representative in `(-p^E/2, p^E/2]`, convenient for display of small negatives.
    pub fn centered(&self) -> BigInt {
        let m = self.modulus();
        let r = BigInt::from(self.residue.clone());
        if self.residue.clone() * 2u32 > m {
            r - BigInt::from(m)
        } else {
            r
        }
    }

    fn with_residue(&self, residue: BigUint) -> Self {
        ModPE {
            residue,
            p: self.p,
            precision: self.precision,
        }
    }
}

impl fmt::Display for ModPE {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}^{}", self.residue, self.p, self.precision)
    }
}

fn check_precision(precision: u32) -> Result<()> {
    if precision == 0 {
        Err(Error::InvalidArgument("precision E must be >= 1".into()))
    } else {
        Ok(())
    }
}

/// Order of a residue, truncated at the precision of its ring.
pub fn trunc_val(x: &ModPE) -> TruncatedValuation {
    match ord_biguint(x.p, &x.residue) {
        Valuation::Finite(v) => TruncatedValuation::Exact(v),
        Valuation::Infinite => TruncatedValuation::AtLeast(x.precision as u64),
    }
}

/// The prime `p`, a residue-class exponent `α`, and a working precision `E`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimePowerCtx {
    pub p: Prime,
    pub alpha: u32,
    pub precision: u32,
}

impl PrimePowerCtx {
    pub fn new(p: u64, alpha: u32, precision: u32) -> Result<Self> {
        check_precision(precision)?;
        Ok(PrimePowerCtx {
            p: Prime::new(p)?,
            alpha,
            precision,
        })
    }

    /// `p^α` as a machine integer.
    pub fn class_modulus(&self) -> Result<u64> {
        self.p
            .checked_pow(self.alpha)
            .ok_or_else(|| Error::Capacity(format!("{}^{} overflows u64", self.p, self.alpha)))
    }

    pub fn reduce(&self, value: &BigInt) -> ModPE {
        ModPE::new(value, self.p, self.precision).expect("precision validated at construction")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn ord_int_examples() {
        assert_eq!(ord_int(p(3), &BigInt::from(54)), Valuation::Finite(3));
        assert_eq!(ord_int(p(5), &BigInt::from(0)), Valuation::Infinite);
        assert_eq!(ord_int(p(2), &BigInt::from(12)), Valuation::Finite(2));
        assert_eq!(ord_int(p(3), &BigInt::from(-54)), Valuation::Finite(3));
        assert_eq!(ord_int(p(7), &BigInt::from(1)), Valuation::Finite(0));
    }

    #[test]
    fn ord_int_large_powers() {
        for &q in &[2u64, 3, 5, 7] {
            let x = BigInt::from(q).pow(200) * 11u32;
            assert_eq!(ord_int(p(q), &x), Valuation::Finite(200));
        }
    }

    #[test]
    fn non_prime_rejected() {
        assert_eq!(Prime::new(9), Err(Error::NotPrime(9)));
        assert_eq!(Prime::new(1), Err(Error::NotPrime(1)));
        assert_eq!(Prime::new(0), Err(Error::NotPrime(0)));
        assert!(Prime::new(97).is_ok());
    }

    #[test]
    fn ord_factorial_examples() {
        // 9! = 362880 = 2^7 · 3^4 · 5 · 7
        assert_eq!(ord_factorial(p(3), 9), 4);
        assert_eq!(
            ord_factorial(p(3), 9),
            ord_int(p(3), &BigInt::from(362880)).finite().unwrap()
        );
        assert_eq!(ord_factorial(p(5), 0), 0);
        assert_eq!(ord_factorial(p(3), 6), 2);
    }

    #[test]
    fn least_residue_examples() {
        assert_eq!(least_residue(-1, 9).unwrap(), 8);
        assert_eq!(least_residue(10, 9).unwrap(), 1);
        assert_eq!(least_residue(0, 7).unwrap(), 0);
        assert!(matches!(
            least_residue(3, 0),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn carries_examples() {
        assert_eq!(carries(p(3), 1, 8), 2);
        assert_eq!(carries(p(7), 0, 12345), 0);
        assert_eq!(carries(p(2), 1, 1), 1);
    }

    #[test]
    fn phi_examples() {
        assert_eq!(euler_phi_prime_power(p(3), 2).unwrap(), 6);
        assert_eq!(euler_phi_prime_power(p(2), 1).unwrap(), 1);
        assert_eq!(euler_phi_prime_power(p(5), 3).unwrap(), 100);
        assert!(euler_phi_prime_power(p(5), 0).is_err());
    }

    #[test]
    fn trunc_val_examples() {
        let z = ModPE::zero(p(3), 5).unwrap();
        assert_eq!(trunc_val(&z), TruncatedValuation::AtLeast(5));
        let x = ModPE::new(&BigInt::from(18), p(3), 5).unwrap();
        assert_eq!(trunc_val(&x), TruncatedValuation::Exact(2));
        let one = ModPE::one(p(11), 3).unwrap();
        assert_eq!(trunc_val(&one), TruncatedValuation::Exact(0));
    }

    #[test]
    fn modpe_mixed_rings_rejected() {
        let a = ModPE::one(p(3), 5).unwrap();
        let b = ModPE::one(p(3), 6).unwrap();
        let c = ModPE::one(p(5), 5).unwrap();
        assert!(matches!(a.try_add(&b), Err(Error::ModulusMismatch { .. })));
        assert!(a.try_mul(&c).is_err());
        assert!(ModPE::zero(p(3), 0).is_err());
    }

    #[test]
    fn modpe_ring_ops() {
        let a = ModPE::new(&BigInt::from(-1), p(3), 2).unwrap();
        assert_eq!(a.residue(), &BigUint::from(8u32));
        let b = ModPE::new(&BigInt::from(5), p(3), 2).unwrap();
        assert_eq!(a.try_add(&b).unwrap().residue(), &BigUint::from(4u32));
        assert_eq!(a.try_sub(&b).unwrap().residue(), &BigUint::from(3u32));
        assert_eq!(a.try_mul(&b).unwrap().residue(), &BigUint::from(4u32));
        assert_eq!(b.neg().residue(), &BigUint::from(4u32));
        assert_eq!(a.centered(), BigInt::from(-1));
        assert_eq!(b.scale(&BigInt::from(-2)).residue(), &BigUint::from(8u32));
    }

    #[test]
    fn truncated_comparisons_are_three_valued() {
        use TruncatedValuation::*;
        assert_eq!(Exact(3).ge(3), Tri::True);
        assert_eq!(Exact(3).ge(4), Tri::False);
        assert_eq!(AtLeast(5).ge(5), Tri::True);
        assert_eq!(AtLeast(5).ge(6), Tri::Undetermined);
        assert_eq!(AtLeast(5).eq_value(4), Tri::False);
        assert_eq!(AtLeast(5).eq_value(5), Tri::Undetermined);
        assert_eq!(Exact(2).min(AtLeast(5)), Exact(2));
        assert_eq!(AtLeast(4).min(AtLeast(7)), AtLeast(4));
    }

    #[test]
    fn valuation_ordering() {
        assert!(Valuation::Finite(1_000) < Valuation::Infinite);
        assert!(Valuation::Finite(2) < Valuation::Finite(3));
        assert!(Valuation::Infinite.at_least(i64::MAX));
    }

    #[test]
    fn ctx_validates() {
        assert!(PrimePowerCtx::new(4, 1, 3).is_err());
        assert!(PrimePowerCtx::new(3, 1, 0).is_err());
        let ctx = PrimePowerCtx::new(3, 2, 5).unwrap();
        assert_eq!(ctx.class_modulus().unwrap(), 9);
        assert_eq!(
            trunc_val(&ctx.reduce(&BigInt::from(243))),
            TruncatedValuation::AtLeast(5)
        );
    }
}
