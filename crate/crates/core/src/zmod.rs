//! Residue rings `Z/M` used by the hot loops. Moduli below `2^64` run on
//! machine words; anything larger falls back to `BigUint`.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

pub(crate) trait ResidueRing: Sync {
    type Elem: Clone + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn lift(&self, x: u64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn pow(&self, base: &Self::Elem, exp: &BigUint) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn to_big(&self, a: &Self::Elem) -> BigUint;
}

pub(crate) struct WordRing {
    m: u64,
}

impl ResidueRing for WordRing {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.m
    }

    fn lift(&self, x: u64) -> u64 {
        x % self.m
    }

    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.m as u128) as u64
    }

    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.m - (b - a)
        }
    }

    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.m as u128) as u64
    }

    fn pow(&self, base: &u64, exp: &BigUint) -> u64 {
        let mut result = self.one();
        let mut b = *base % self.m;
        match exp.to_u64() {
            Some(mut e) => {
                while e > 0 {
                    if e & 1 == 1 {
                        result = self.mul(&result, &b);
                    }
                    b = self.mul(&b, &b);
                    e >>= 1;
                }
            }
            None => {
                for i in 0..exp.bits() {
                    if exp.bit(i) {
                        result = self.mul(&result, &b);
                    }
                    b = self.mul(&b, &b);
                }
            }
        }
        result
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn to_big(&self, a: &u64) -> BigUint {
        BigUint::from(*a)
    }
}

pub(crate) struct BigRing {
    m: BigUint,
}

impl ResidueRing for BigRing {
    type Elem = BigUint;

    fn zero(&self) -> BigUint {
        BigUint::zero()
    }

    fn one(&self) -> BigUint {
        BigUint::one() % &self.m
    }

    fn lift(&self, x: u64) -> BigUint {
        BigUint::from(x) % &self.m
    }

    fn add(&self, a: &BigUint, b: &BigUint) -> BigUint {
        let s = a + b;
        if s >= self.m {
            s - &self.m
        } else {
            s
        }
    }

    fn sub(&self, a: &BigUint, b: &BigUint) -> BigUint {
        if a >= b {
            a - b
        } else {
            &self.m - (b - a)
        }
    }

    fn mul(&self, a: &BigUint, b: &BigUint) -> BigUint {
        (a * b) % &self.m
    }

    fn pow(&self, base: &BigUint, exp: &BigUint) -> BigUint {
        base.modpow(exp, &self.m)
    }

    fn is_zero(&self, a: &BigUint) -> bool {
        a.is_zero()
    }

    fn to_big(&self, a: &BigUint) -> BigUint {
        a.clone()
    }
}

pub(crate) enum AnyRing {
    Word(WordRing),
    Big(BigRing),
}

pub(crate) fn select(modulus: &BigUint) -> AnyRing {
    match modulus.to_u64() {
        Some(m) => AnyRing::Word(WordRing { m }),
        None => AnyRing::Big(BigRing { m: modulus.clone() }),
    }
}

/// Run `$body` with `$r` bound to the ring `Z/$modulus`, choosing the
/// word-sized implementation when the modulus allows it.
macro_rules! with_ring {
    ($modulus:expr, $r:ident => $body:expr) => {
        match $crate::zmod::select($modulus) {
            $crate::zmod::AnyRing::Word($r) => $body,
            $crate::zmod::AnyRing::Big($r) => $body,
        }
    };
}
pub(crate) use with_ring;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_and_big_agree() {
        let m = BigUint::from(3u64.pow(20));
        let word = WordRing { m: 3u64.pow(20) };
        let big = BigRing { m: m.clone() };
        let exp = BigUint::from(123_456_789u64);
        for base in [0u64, 1, 2, 5, 3_486_784_400] {
            let w = word.pow(&word.lift(base), &exp);
            let b = big.pow(&big.lift(base), &exp);
            assert_eq!(BigUint::from(w), b);
        }
        assert_eq!(word.sub(&1, &2), 3u64.pow(20) - 1);
        assert_eq!(
            big.sub(&BigUint::from(1u32), &BigUint::from(2u32)),
            m - 1u32
        );
    }

    #[test]
    fn word_pow_with_wide_exponent() {
        let ring = WordRing { m: 1_000_003 };
        let exp = BigUint::from(1u8) << 80;
        let expected = BigUint::from(7u32).modpow(&exp, &BigUint::from(1_000_003u32));
        assert_eq!(BigUint::from(ring.pow(&7, &exp)), expected);
    }

    #[test]
    fn modulus_one_is_the_zero_ring() {
        let ring = WordRing { m: 1 };
        assert_eq!(ring.one(), 0);
        assert!(ring.is_zero(&ring.pow(&5, &BigUint::from(0u32))));
    }
}
