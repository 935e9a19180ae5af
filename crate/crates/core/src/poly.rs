//! Integer polynomials in one variable.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficients indexed by degree; trailing zeros are always stripped, so
/// the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    /// `x^l`.
    pub fn monomial(l: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); l + 1];
        coeffs[l] = BigInt::one();
        IntPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        self.eval(&BigInt::from(x))
    }

    /// `f(x + 1)`.
    pub fn shift_by_one(&self) -> Self {
        // Taylor shift by repeated synthetic division with root -1.
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let next = c[j + 1].clone();
                c[j] += next;
            }
        }
        Self::new(c)
    }

    /// `Δf(x) = f(x+1) - f(x)`.
    pub fn delta(&self) -> Self {
        self.shift_by_one() - self.clone()
    }

    pub fn scale(&self, a: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * a).collect())
    }
}

/// `Δf`, degree dropping by one for nonconstant `f`.
pub fn poly_delta(f: &IntPolynomial) -> IntPolynomial {
    f.delta()
}

/// `x(x-1)⋯(x-l+1) = l!·binom(x, l)`.
pub fn binom_poly(l: usize) -> IntPolynomial {
    let mut acc = IntPolynomial::constant(1);
    for i in 0..l {
        let factor = IntPolynomial::from_i64s(&[-(i as i64), 1]);
        acc = &acc * &factor;
    }
    acc
}

impl Add for IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: Self) -> Self {
        let (mut long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self.coeffs, rhs.coeffs)
        } else {
            (rhs.coeffs, self.coeffs)
        };
        for (a, b) in long.iter_mut().zip(short) {
            *a += b;
        }
        Self::new(long)
    }
}

impl Neg for IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> Self {
        IntPolynomial {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: Self) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if !first || c.is_negative() {
                f.write_str(sign)?;
            }
            let mag = c.abs();
            match deg {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    f.write_str("x")?;
                    if deg > 1 {
                        write!(f, "^{deg}")?;
                    }
                }
            }
            first = false;
        }
        Ok(())
    }
}

/// Grammar: signed terms `c`, `x`, `x^e`, `c*x`, `c*x^e`, e.g. `3*x^2-1`.
impl FromStr for IntPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::parse(s, "", "empty polynomial"));
        }
        let bytes = s.as_bytes();
        let mut terms = Vec::new();
        let mut start = 0;
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' {
                terms.push(&s[start..i]);
                start = i;
            }
        }
        terms.push(&s[start..]);

        let mut coeffs: Vec<BigInt> = Vec::new();
        for raw in terms {
            let (negative, body) = match raw.as_bytes().first() {
                Some(b'-') => (true, &raw[1..]),
                Some(b'+') => (false, &raw[1..]),
                _ => (false, raw),
            };
            if body.is_empty() {
                return Err(Error::parse(s, raw, "dangling sign"));
            }
            let (coef, power) = match body.find('x') {
                None => (body, None),
                Some(pos) => {
                    let coef = match &body[..pos] {
                        "" => "1",
                        c => c
                            .strip_suffix('*')
                            .ok_or_else(|| Error::parse(s, raw, "expected '*' before x"))?,
                    };
                    let power = match &body[pos + 1..] {
                        "" => "1",
                        rest => rest
                            .strip_prefix('^')
                            .ok_or_else(|| Error::parse(s, rest, "expected '^' after x"))?,
                    };
                    (coef, Some(power))
                }
            };
            if coef.is_empty() || !coef.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::parse(s, coef, "expected a decimal coefficient"));
            }
            let mut c =
                BigInt::from_str(coef).map_err(|_| Error::parse(s, coef, "bad coefficient"))?;
            if negative {
                c = -c;
            }
            let deg = match power {
                None => 0,
                Some(e) => e
                    .parse::<usize>()
                    .map_err(|_| Error::parse(s, e, "expected a decimal exponent"))?,
            };
            if deg >= coeffs.len() {
                coeffs.resize(deg + 1, BigInt::zero());
            }
            coeffs[deg] += c;
        }
        Ok(IntPolynomial::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn normalization() {
        assert_eq!(IntPolynomial::from_i64s(&[1, 2, 0, 0]).coeffs().len(), 2);
        assert!(IntPolynomial::from_i64s(&[0, 0]).is_zero());
        assert_eq!(IntPolynomial::zero().degree(), None);
    }

    #[test]
    fn delta_examples() {
        assert_eq!(poly_delta(&poly("x^2")), poly("2*x+1"));
        assert!(poly_delta(&IntPolynomial::constant(7)).is_zero());
        // Δ x^l = Σ_{i<l} C(l,i) x^i
        let d = poly_delta(&IntPolynomial::monomial(5));
        assert_eq!(d, IntPolynomial::from_i64s(&[1, 5, 10, 10, 5]));
    }

    #[test]
    fn delta_matches_pointwise_difference() {
        let f = poly("3*x^4-7*x^3+x-9");
        let d = f.delta();
        for x in -20..20 {
            assert_eq!(d.eval_i64(x), f.eval_i64(x + 1) - f.eval_i64(x));
        }
        assert_eq!(d.degree(), Some(3));
    }

    #[test]
    fn binom_poly_examples() {
        assert_eq!(binom_poly(0), IntPolynomial::constant(1));
        assert_eq!(binom_poly(2), poly("x^2-x"));
        assert_eq!(binom_poly(2).eval_i64(-1), BigInt::from(2));
        // 4!·C(10, 4) = 5040
        assert_eq!(binom_poly(4).eval_i64(10), BigInt::from(5040));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(poly("x^25"), IntPolynomial::monomial(25));
        assert_eq!(poly("3*x^2-1"), IntPolynomial::from_i64s(&[-1, 0, 3]));
        assert_eq!(poly("1"), IntPolynomial::constant(1));
        assert_eq!(poly("-x+x"), IntPolynomial::zero());
        assert_eq!(poly("3*x^2-1").to_string(), "3*x^2-1");
        assert_eq!(poly("-x^3+2*x").to_string(), "-x^3+2*x");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn parse_errors() {
        assert!("".parse::<IntPolynomial>().is_err());
        assert!("3x".parse::<IntPolynomial>().is_err());
        assert!("x^".parse::<IntPolynomial>().is_err());
        assert!("x+".parse::<IntPolynomial>().is_err());
        assert!("y^2".parse::<IntPolynomial>().is_err());
    }
}
