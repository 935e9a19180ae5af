//! Alternating binomial sums restricted to a residue class, and the two
//! exact identities that relate them to finite differences.
//!
//! The central quantity is
//!
//! ```text
//! Σ_{0≤k≤n, k≡r (mod m)} C(n,k) (-1)^k f((k-r)/m)
//! ```
//!
//! where `(k-r)/m` is always an exact, possibly negative, integer. The
//! summation walks `k = {r}_m, {r}_m + m, …` rather than filtering `0..=n`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::poly::IntPolynomial;

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binom_exact(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Row `n` of Pascal's triangle.
pub fn binomial_row(n: u64) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut c = BigInt::one();
    row.push(c.clone());
    for i in 0..n {
        c = c * (n - i) / (i + 1);
        row.push(c.clone());
    }
    row
}

/// Pascal rows `0..=n_max`, built once and shared by sweeps.
#[derive(Debug, Clone)]
pub struct BinomialTable {
    rows: Vec<Vec<BigInt>>,
}

impl BinomialTable {
    pub fn new(n_max: u64) -> Self {
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n_max as usize + 1);
        rows.push(vec![BigInt::one()]);
        for n in 1..=n_max as usize {
            let prev = &rows[n - 1];
            let mut row = Vec::with_capacity(n + 1);
            row.push(BigInt::one());
            for k in 1..n {
                row.push(&prev[k - 1] + &prev[k]);
            }
            row.push(BigInt::one());
            rows.push(row);
        }
        BinomialTable { rows }
    }

    pub fn n_max(&self) -> u64 {
        self.rows.len() as u64 - 1
    }

    /// Row `n`, or `None` beyond the table.
    pub fn row(&self, n: u64) -> Option<&[BigInt]> {
        self.rows.get(n as usize).map(Vec::as_slice)
    }
}

/// Parameters of `Σ_{k≡r (mod m)} C(n,k)(-1)^k f((k-r)/m)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueClassSumSpec {
    pub n: u64,
    pub r: i64,
    pub modulus: u64,
    pub f: IntPolynomial,
}

impl ResidueClassSumSpec {
    pub fn new(n: u64, r: i64, modulus: u64, f: IntPolynomial) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        ResidueClassSumSpec { n, r, modulus, f }
    }
}

/// `(k, (k-r)/m)` for every `k ∈ [0, n]` with `k ≡ r (mod m)`.
fn class_members(n: u64, r: i64, m: u64) -> impl Iterator<Item = (u64, i64)> {
    assert!(m >= 1, "modulus must be positive");
    let start = r.rem_euclid(m as i64) as u64;
    (start..=n)
        .step_by(m as usize)
        .map(move |k| (k, (k as i64 - r) / m as i64))
}

fn signed(c: &BigInt, k: u64) -> BigInt {
    if k.is_multiple_of(2) {
        c.clone()
    } else {
        -c
    }
}

/// The residue-class alternating sum, exactly.
pub fn alt_sum(spec: &ResidueClassSumSpec) -> BigInt {
    let row = binomial_row(spec.n);
    alt_sum_row(&row, spec.n, spec.r, spec.modulus, &spec.f)
}

/// [`alt_sum`] with a caller-supplied binomial row for `n`.
pub fn alt_sum_row(row: &[BigInt], n: u64, r: i64, m: u64, f: &IntPolynomial) -> BigInt {
    debug_assert_eq!(row.len() as u64, n + 1);
    class_members(n, r, m)
        .map(|(k, x)| signed(&row[k as usize], k) * f.eval_i64(x))
        .sum()
}

/// Sums for the monomials `x^0, …, x^l_max` at once.
pub fn alt_sum_powers(row: &[BigInt], n: u64, r: i64, m: u64, l_max: usize) -> Vec<BigInt> {
    let mut sums = vec![BigInt::zero(); l_max + 1];
    for (k, x) in class_members(n, r, m) {
        let x = BigInt::from(x);
        let mut term = signed(&row[k as usize], k);
        for (l, slot) in sums.iter_mut().enumerate() {
            *slot += &term;
            if l < l_max {
                term *= &x;
            }
        }
    }
    sums
}

/// Sums for the falling factorials `x(x-1)⋯(x-l+1)`, `l = 0..=l_max`.
pub fn alt_sum_falling(row: &[BigInt], n: u64, r: i64, m: u64, l_max: usize) -> Vec<BigInt> {
    let mut sums = vec![BigInt::zero(); l_max + 1];
    for (k, x) in class_members(n, r, m) {
        let mut term = signed(&row[k as usize], k);
        for (l, slot) in sums.iter_mut().enumerate() {
            *slot += &term;
            if l < l_max {
                term *= x - l as i64;
            }
        }
    }
    sums
}

/// `Σ_{k=0}^n C(n,k)(-1)^k f(⌊(k-r)/m⌋)`, floor toward −∞.
pub fn alt_floor_sum(n: u64, r: i64, m: u64, f: &IntPolynomial) -> BigInt {
    assert!(m >= 1, "modulus must be positive");
    let row = binomial_row(n);
    (0..=n)
        .map(|k| {
            let x = Integer::div_floor(&(k as i64 - r), &(m as i64));
            signed(&row[k as usize], k) * f.eval_i64(x)
        })
        .sum()
}

/// Both sides of the floor-sum/finite-difference identity with `r̄ = r - 1 + m`:
///
/// `Σ_{k=0}^n C(n,k)(-1)^k f(⌊(k-r)/m⌋) = Σ_{k≡r̄} C(n-1,k)(-1)^{k-1} Δf((k-r̄)/m)`.
pub fn sun_identity_sides(n: u64, m: u64, r: i64, f: &IntPolynomial) -> (BigInt, BigInt) {
    assert!(n >= 1 && m >= 1, "n and m must be positive");
    let lhs = alt_floor_sum(n, r, m, f);
    let r_bar = r - 1 + m as i64;
    let rhs = -alt_sum_row(&binomial_row(n - 1), n - 1, r_bar, m, &f.delta());
    (lhs, rhs)
}

pub fn check_sun_identity(n: u64, m: u64, r: i64, f: &IntPolynomial) -> bool {
    let (lhs, rhs) = sun_identity_sides(n, m, r, f);
    lhs == rhs
}

/// Both sides of the decomposition
///
/// ```text
/// Σ_{k≡r} C(n,k)(-1)^k f((k-r)/m) − f(⌊(n-r)/m⌋)·Σ_{k≡r} C(n,k)(-1)^k
///   = −Σ_{j<n} C(n,j)·[Σ_{i≡r} C(j,i)(-1)^i]·[Σ_{k≡r_j} C(n-j-1,k)(-1)^k Δf((k-r_j)/m)]
/// ```
///
/// with `r_j = r - j + m - 1`.
pub fn lemma33_sides(n: u64, m: u64, r: i64, f: &IntPolynomial) -> (BigInt, BigInt) {
    assert!(n >= 1 && m >= 1, "n and m must be positive");
    let table = BinomialTable::new(n);
    let row_n = table.row(n).expect("row n is in the table");
    let one = IntPolynomial::constant(1);
    let top = Integer::div_floor(&(n as i64 - r), &(m as i64));
    let lhs = alt_sum_row(row_n, n, r, m, f) - f.eval_i64(top) * alt_sum_row(row_n, n, r, m, &one);

    let df = f.delta();
    let mut rhs = BigInt::zero();
    for j in 0..n {
        let inner_j = alt_sum_row(table.row(j).unwrap(), j, r, m, &one);
        if inner_j.is_zero() {
            continue;
        }
        let r_j = r - j as i64 + m as i64 - 1;
        let rest = n - j - 1;
        let inner_k = alt_sum_row(table.row(rest).unwrap(), rest, r_j, m, &df);
        rhs -= &row_n[j as usize] * inner_j * inner_k;
    }
    (lhs, rhs)
}

pub fn check_lemma_3_3(n: u64, m: u64, r: i64, f: &IntPolynomial) -> bool {
    let (lhs, rhs) = lemma33_sides(n, m, r, f);
    lhs == rhs
}
