//! Huge structured exponents `c·p^L + d` and modular exponentiation with them.
//!
//! An exponent such as `2·3^40 + 28` is never expanded: reductions modulo
//! the Carmichael value `λ(p^E)` go through `modpow` on the base.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::padic::{ord_u64, ModPE, Prime};
use crate::zmod::{with_ring, ResidueRing};

/// Largest `L` a tower may have and still be expanded to a plain integer.
pub const MAX_EXPANDABLE_L: u64 = 64;

/// A nonnegative exponent, either plain or of the form `c·base^L + d`.
#[derive(Debug, Clone)]
pub enum StructuredExponent {
    Plain(BigUint),
    Tower {
        c: BigUint,
        base: Prime,
        l: u64,
        d: BigUint,
    },
}

impl StructuredExponent {
    pub fn plain(k: u64) -> Self {
        StructuredExponent::Plain(BigUint::from(k))
    }

    pub fn tower(c: impl Into<BigUint>, base: Prime, l: u64, d: impl Into<BigUint>) -> Self {
        StructuredExponent::Tower {
            c: c.into(),
            base,
            l,
            d: d.into(),
        }
    }

    /// The denoted value. Towers expand only when `L <= 64`.
    pub fn to_plain(&self) -> Result<BigUint> {
        match self {
            StructuredExponent::Plain(k) => Ok(k.clone()),
            StructuredExponent::Tower { c, base, l, d } => {
                if c.is_zero() {
                    return Ok(d.clone());
                }
                if *l > MAX_EXPANDABLE_L {
                    return Err(Error::Capacity(format!(
                        "tower exponent with L = {l} > {MAX_EXPANDABLE_L} cannot be expanded"
                    )));
                }
                Ok(c * base.pow(*l as u32) + d)
            }
        }
    }

    /// Same exponent in plain form; see [`Self::to_plain`].
    pub fn into_plain(self) -> Result<Self> {
        self.to_plain().map(StructuredExponent::Plain)
    }

    /// The denoted value if it fits in a `u64`.
    pub fn value_u64(&self) -> Option<u64> {
        match self {
            StructuredExponent::Plain(k) => k.to_u64(),
            StructuredExponent::Tower { c, base, l, d } => {
                let d = d.to_u64()?;
                if c.is_zero() {
                    return Some(d);
                }
                let l = u32::try_from(*l).ok()?;
                let top = base.checked_pow(l)?.checked_mul(c.to_u64()?)?;
                top.checked_add(d)
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.value_u64() == Some(0)
    }

    /// Whether the denoted value is `>= bound`.
    pub fn is_at_least(&self, bound: u64) -> bool {
        self.value_u64().is_none_or(|v| v >= bound)
    }

    /// Denoted value modulo `m`.
    pub fn exponent_mod(&self, m: &BigUint) -> Result<BigUint> {
        if m.is_zero() {
            return Err(Error::InvalidArgument("modulus must be positive".into()));
        }
        Ok(match self {
            StructuredExponent::Plain(k) => k % m,
            StructuredExponent::Tower { c, base, l, d } => {
                let top = BigUint::from(base.get()).modpow(&BigUint::from(*l), m);
                ((c % m) * top + d) % m
            }
        })
    }

    /// Moves factors of the base from `c` into `L`; used for equality of
    /// towers too large to expand.
    fn normalized_tower(&self) -> Option<(BigUint, Prime, u64, BigUint)> {
        match self {
            StructuredExponent::Tower { c, base, l, d } if !c.is_zero() => {
                let b = BigUint::from(base.get());
                let mut c = c.clone();
                let mut l = *l;
                while (&c % &b).is_zero() {
                    c /= &b;
                    l += 1;
                }
                Some((c, *base, l, d.clone()))
            }
            _ => None,
        }
    }
}

impl PartialEq for StructuredExponent {
    fn eq(&self, other: &Self) -> bool {
        match (self.to_plain(), other.to_plain()) {
            (Ok(a), Ok(b)) => a == b,
            // At least one side is far larger than anything expandable.
            _ => match (self.normalized_tower(), other.normalized_tower()) {
                (Some(a), Some(b)) => a == b,
                _ => false,
            },
        }
    }
}

impl Eq for StructuredExponent {}

impl From<u64> for StructuredExponent {
    fn from(k: u64) -> Self {
        StructuredExponent::plain(k)
    }
}

impl From<BigUint> for StructuredExponent {
    fn from(k: BigUint) -> Self {
        StructuredExponent::Plain(k)
    }
}

impl fmt::Display for StructuredExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructuredExponent::Plain(k) => write!(f, "{k}"),
            StructuredExponent::Tower { c, base, l, d } => write!(f, "{c}*{base}^{l}+{d}"),
        }
    }
}

fn parse_uint(input: &str, token: &str, what: &str) -> Result<BigUint> {
    if token.is_empty() || !token.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::parse(
            input,
            token,
            format!("expected a decimal {what}"),
        ));
    }
    BigUint::from_str(token).map_err(|_| Error::parse(input, token, format!("bad {what}")))
}

/// Grammar: a decimal literal, or `[<c>*]<p>^<L>[+<d>]`, whitespace-free.
impl FromStr for StructuredExponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::parse(s, "", "empty exponent"));
        }
        if let Some(ws) = s
            .split(|c: char| !c.is_whitespace())
            .find(|t| !t.is_empty())
        {
            return Err(Error::parse(s, ws, "whitespace is not allowed"));
        }
        let Some((head, tail)) = s.split_once('^') else {
            return parse_uint(s, s, "integer").map(StructuredExponent::Plain);
        };
        let (c, base) = match head.split_once('*') {
            Some((c, b)) => (parse_uint(s, c, "coefficient")?, b),
            None => (BigUint::one(), head),
        };
        let base_val = parse_uint(s, base, "base")?
            .to_u64()
            .ok_or_else(|| Error::parse(s, base, "base too large"))?;
        let base = Prime::new(base_val).map_err(|_| Error::parse(s, base, "base must be prime"))?;
        let (l, d) = match tail.split_once('+') {
            Some((l, d)) => (l, parse_uint(s, d, "offset")?),
            None => (tail, BigUint::zero()),
        };
        let l = parse_uint(s, l, "exponent L")?
            .to_u64()
            .ok_or_else(|| Error::parse(s, l, "L too large"))?;
        Ok(StructuredExponent::Tower { c, base, l, d })
    }
}

/// Exponent of the unit group of `Z/p^E`.
pub fn carmichael_lambda(p: Prime, precision: u32) -> BigUint {
    match (p.get(), precision) {
        (_, 0) => BigUint::one(),
        (2, 1) => BigUint::one(),
        (2, 2) => BigUint::from(2u32),
        (2, e) => BigUint::one() << (e - 2),
        (q, e) => BigUint::from(q - 1) * p.pow(e - 1),
    }
}

/// Precomputed data for raising many bases to one exponent modulo `p^E`.
pub(crate) struct PowerPlan {
    p: Prime,
    precision: u32,
    /// `k mod λ(p^E)`, valid for bases prime to `p`.
    reduced: BigUint,
    /// The exact exponent when it is smaller than `E`.
    small: Option<u64>,
}

impl PowerPlan {
    pub(crate) fn new(k: &StructuredExponent, p: Prime, precision: u32) -> Result<Self> {
        let lambda = carmichael_lambda(p, precision);
        let reduced = k.exponent_mod(&lambda)?;
        let small = k.value_u64().filter(|&v| v < precision as u64);
        Ok(PowerPlan {
            p,
            precision,
            reduced,
            small,
        })
    }

    pub(crate) fn exponent_is_zero(&self) -> bool {
        self.small == Some(0)
    }

    /// `j^k` in `ring`, which must be `Z/p^E`. `0^0` evaluates to 1.
    pub(crate) fn pow_in<R: ResidueRing>(&self, ring: &R, j: u64) -> R::Elem {
        if !j.is_multiple_of(self.p.get()) {
            return ring.pow(&ring.lift(j), &self.reduced);
        }
        if j == 0 {
            return if self.exponent_is_zero() {
                ring.one()
            } else {
                ring.zero()
            };
        }
        let v = ord_u64(self.p, j).finite().expect("j is nonzero");
        match self.small {
            // v·k < E is only possible for k < E.
            Some(k) if v * k < self.precision as u64 => ring.pow(&ring.lift(j), &BigUint::from(k)),
            _ => ring.zero(),
        }
    }
}

/// `j^k mod p^E`, reducing `k` modulo the Carmichael value for units.
pub fn pow_mod(j: u64, k: &StructuredExponent, p: Prime, precision: u32) -> Result<ModPE> {
    if precision == 0 {
        return Err(Error::InvalidArgument("precision E must be >= 1".into()));
    }
    if j == 0 && k.is_zero() {
        return Err(Error::InvalidArgument("0^0 is undefined".into()));
    }
    let plan = PowerPlan::new(k, p, precision)?;
    let modulus = p.pow(precision);
    let residue = with_ring!(&modulus, r => r.to_big(&plan.pow_in(&r, j)));
    ModPE::from_residue(residue, p, precision)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn exponent_mod_examples() {
        let k = StructuredExponent::tower(2u32, p(3), 40, 28u32);
        assert_eq!(
            k.exponent_mod(&BigUint::from(6u32)).unwrap(),
            BigUint::from(4u32)
        );
        // the same structure at a small L, checked against expansion
        let small = StructuredExponent::tower(2u32, p(3), 4, 28u32);
        assert_eq!(small.to_plain().unwrap(), BigUint::from(190u32));
        assert_eq!(
            small.exponent_mod(&BigUint::from(6u32)).unwrap(),
            BigUint::from(190u32 % 6)
        );
        let plain = StructuredExponent::plain(1_000_001);
        assert_eq!(
            plain.exponent_mod(&BigUint::from(97u32)).unwrap(),
            BigUint::from(1_000_001u32 % 97)
        );
        let one = StructuredExponent::tower(1u32, p(2), 0, 0u32);
        assert_eq!(
            one.exponent_mod(&BigUint::from(5u32)).unwrap(),
            BigUint::one()
        );
        assert!(plain.exponent_mod(&BigUint::zero()).is_err());
    }

    #[test]
    fn pow_mod_examples() {
        let r = pow_mod(2, &StructuredExponent::plain(27), p(3), 2).unwrap();
        assert_eq!(r.residue(), &BigUint::from(8u32));
        assert_eq!(
            BigUint::from(2u32).modpow(&BigUint::from(27u32), &BigUint::from(9u32)),
            BigUint::from(8u32)
        );

        let huge = StructuredExponent::tower(2u32, p(3), 40, 28u32);
        let r = pow_mod(1, &huge, p(7), 9).unwrap();
        assert_eq!(r.residue(), &BigUint::one());
        let r = pow_mod(3, &huge, p(3), 5).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn zero_to_the_zero_rejected() {
        assert!(pow_mod(0, &StructuredExponent::plain(0), p(3), 4).is_err());
        assert!(pow_mod(0, &StructuredExponent::plain(1), p(3), 4)
            .unwrap()
            .is_zero());
        assert_eq!(
            pow_mod(5, &StructuredExponent::plain(0), p(3), 4)
                .unwrap()
                .residue(),
            &BigUint::one()
        );
    }

    #[test]
    fn non_unit_small_exponent_computed_directly() {
        // 6^2 = 36 = 4·3^2, nonzero modulo 3^3
        let r = pow_mod(6, &StructuredExponent::plain(2), p(3), 3).unwrap();
        assert_eq!(r.residue(), &BigUint::from(9u32));
        // 6^3 has 3-adic order 3
        assert!(pow_mod(6, &StructuredExponent::plain(3), p(3), 3)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn carmichael_values() {
        assert_eq!(carmichael_lambda(p(2), 1), BigUint::from(1u32));
        assert_eq!(carmichael_lambda(p(2), 2), BigUint::from(2u32));
        assert_eq!(carmichael_lambda(p(2), 5), BigUint::from(8u32));
        assert_eq!(carmichael_lambda(p(3), 4), BigUint::from(54u32));
        assert_eq!(carmichael_lambda(p(5), 1), BigUint::from(4u32));
    }

    #[test]
    fn equality_by_value() {
        assert_eq!(
            StructuredExponent::tower(2u32, p(3), 0, 1u32),
            StructuredExponent::plain(3)
        );
        assert_eq!(
            StructuredExponent::tower(9u32, p(3), 100, 5u32),
            StructuredExponent::tower(1u32, p(3), 102, 5u32)
        );
        assert_ne!(
            StructuredExponent::tower(2u32, p(3), 100, 5u32),
            StructuredExponent::plain(5)
        );
    }

    #[test]
    fn expansion_limits() {
        let t = StructuredExponent::tower(1u32, p(2), 64, 0u32);
        assert_eq!(t.to_plain().unwrap(), BigUint::one() << 64);
        assert_eq!(t.value_u64(), None);
        assert!(StructuredExponent::tower(1u32, p(2), 65, 0u32)
            .to_plain()
            .is_err());
        assert!(StructuredExponent::tower(0u32, p(2), 1000, 7u32)
            .to_plain()
            .is_ok());
        assert!(StructuredExponent::tower(1u32, p(2), 1000, 7u32).is_at_least(u64::MAX));
    }

    #[test]
    fn parse_grammar() {
        let k: StructuredExponent = "2*3^40+28".parse().unwrap();
        assert_eq!(k, StructuredExponent::tower(2u32, p(3), 40, 28u32));
        assert_eq!(k.to_string(), "2*3^40+28");
        let k: StructuredExponent = "12345".parse().unwrap();
        assert_eq!(k, StructuredExponent::plain(12345));
        let k: StructuredExponent = "3^4".parse().unwrap();
        assert_eq!(k.value_u64(), Some(81));
    }

    #[test]
    fn parse_errors_name_the_token() {
        let err = "2*4^40+28".parse::<StructuredExponent>().unwrap_err();
        assert!(matches!(err, Error::Parse { ref token, .. } if token == "4"));
        let err = "2*3^x+28".parse::<StructuredExponent>().unwrap_err();
        assert!(matches!(err, Error::Parse { ref token, .. } if token == "x"));
        let err = "2*3^4+-1".parse::<StructuredExponent>().unwrap_err();
        assert!(matches!(err, Error::Parse { ref token, .. } if token == "-1"));
        assert!("2 * 3^4".parse::<StructuredExponent>().is_err());
        assert!("".parse::<StructuredExponent>().is_err());
    }
}
