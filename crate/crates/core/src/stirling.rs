//! Stirling numbers of the second kind and the valuation `e_p(n, k)`.
//!
//! `m!·S(k, m)` is evaluated as `Σ_{j=0}^m C(m,j)(-1)^{m-j} j^k` modulo `p^E`,
//! so `k` may be a tower like `2·3^40 + 28`. `e_p(n, k)` is the minimum of
//! the truncated orders of these values over `m >= n`.
//!
//! A minimum over infinitely many `m` can only be reported with confidence
//! when the scan is closed off by a lower bound for all remaining terms.
//! Two such bounds are available:
//!
//! * finite `k`: `S(k, m) = 0` for `m > k`;
//! * `k = h(p-1)p^L + d`: for `m > d`,
//!   `ord_p(m!·S(k,m)) >= min(L + 1, d + ord_p(⌊m/p⌋!))`, which grows with `m`.
//!
//! Anything else is a heuristic window and is reported as uncertified.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponent::{carmichael_lambda, PowerPlan, StructuredExponent};
use crate::padic::{
    ord_factorial, ord_int, ord_u64, trunc_val, ModPE, Prime, TruncatedValuation, Valuation,
};
use crate::zmod::{with_ring, ResidueRing};

/// Largest `k` accepted by [`stirling_exact`].
pub const EXACT_STIRLING_MAX_K: u64 = 10_000;
/// Default number of `m` values scanned past `n`.
pub const DEFAULT_WINDOW: u64 = 60;
/// Size of one window extension.
pub const WINDOW_STEP: u64 = 30;
/// A heuristic scan is extended while the minimum moved within this many `m`.
pub const STABILITY_RUN: u64 = 25;
/// Maximum number of window extensions.
pub const MAX_EXTENSIONS: u64 = 10;
/// Precision doublings attempted before giving up.
pub const MAX_PRECISION_RETRIES: u32 = 4;

/// `S(k, m)` from the triangle recurrence `S(k,m) = m·S(k-1,m) + S(k-1,m-1)`.
pub fn stirling_exact(k: u64, m: u64) -> Result<BigUint> {
    if k > EXACT_STIRLING_MAX_K {
        return Err(Error::Capacity(format!(
            "exact Stirling numbers are limited to k <= {EXACT_STIRLING_MAX_K}; use mstirling_mod for k = {k}"
        )));
    }
    if m > k {
        return Ok(BigUint::zero());
    }
    if m == 0 {
        return Ok(if k == 0 {
            BigUint::one()
        } else {
            BigUint::zero()
        });
    }
    let m = m as usize;
    let mut row = vec![BigUint::zero(); m + 1];
    row[0] = BigUint::one();
    for i in 1..=k as usize {
        let top = i.min(m);
        for j in (1..=top).rev() {
            let carried = std::mem::take(&mut row[j]) * j as u64;
            row[j] = carried + &row[j - 1];
        }
        row[0] = BigUint::zero();
    }
    Ok(std::mem::take(&mut row[m]))
}

/// `C(m, j) mod p^E` for `j = 0..=m`, by the multiplicative formula with the
/// p-part of each factor tracked separately.
fn binomial_residues<R: ResidueRing>(ring: &R, p: Prime, precision: u32, m: u64) -> Vec<R::Elem> {
    let lambda = carmichael_lambda(p, precision);
    let inv_exp = lambda - 1u32;
    let p_powers: Vec<R::Elem> = {
        let mut v = Vec::with_capacity(precision as usize);
        let mut acc = ring.one();
        let pe = ring.lift(p.get());
        for _ in 0..precision {
            v.push(acc.clone());
            acc = ring.mul(&acc, &pe);
        }
        v
    };
    let split = |x: u64| -> (u64, u64) {
        let v = ord_u64(p, x).finite().expect("nonzero factor");
        (v, x / p.get().pow(v as u32))
    };

    let mut out = Vec::with_capacity(m as usize + 1);
    out.push(ring.one());
    let mut unit = ring.one();
    let mut val: i64 = 0;
    for i in 0..m {
        let (a, num) = split(m - i);
        let (b, den) = split(i + 1);
        unit = ring.mul(&unit, &ring.lift(num));
        unit = ring.mul(&unit, &ring.pow(&ring.lift(den), &inv_exp));
        val += a as i64 - b as i64;
        debug_assert!(val >= 0);
        out.push(if (val as u64) < precision as u64 {
            ring.mul(&unit, &p_powers[val as usize])
        } else {
            ring.zero()
        });
    }
    out
}

/// `Σ_j C(m,j)(-1)^{m-j} j^k` given the binomial row and the powers.
fn surjection_sum<R: ResidueRing>(
    ring: &R,
    m: u64,
    binoms: &[R::Elem],
    powers: &[R::Elem],
) -> R::Elem {
    let mut plus = ring.zero();
    let mut minus = ring.zero();
    for j in 0..=m as usize {
        let term = ring.mul(&binoms[j], &powers[j]);
        if (m as usize - j).is_multiple_of(2) {
            plus = ring.add(&plus, &term);
        } else {
            minus = ring.add(&minus, &term);
        }
    }
    ring.sub(&plus, &minus)
}

/// `m!·S(k, m) mod p^E`.
pub fn mstirling_mod(k: &StructuredExponent, m: u64, p: Prime, precision: u32) -> Result<ModPE> {
    if precision == 0 {
        return Err(Error::InvalidArgument("precision E must be >= 1".into()));
    }
    let plan = PowerPlan::new(k, p, precision)?;
    let modulus = p.pow(precision);
    let residue = with_ring!(&modulus, r => {
        let binoms = binomial_residues(&r, p, precision, m);
        let powers: Vec<_> = (0..=m).map(|j| plan.pow_in(&r, j)).collect();
        r.to_big(&surjection_sum(&r, m, &binoms, &powers))
    });
    ModPE::from_residue(residue, p, precision)
}

/// `m!·S(k, m) mod p^E` for every `m` in `0..=m_max`, sharing the powers `j^k`.
pub fn mstirling_mod_row(
    k: &StructuredExponent,
    m_max: u64,
    p: Prime,
    precision: u32,
) -> Result<Vec<ModPE>> {
    if precision == 0 {
        return Err(Error::InvalidArgument("precision E must be >= 1".into()));
    }
    let plan = PowerPlan::new(k, p, precision)?;
    let modulus = p.pow(precision);
    let residues: Vec<BigUint> = with_ring!(&modulus, r => {
        let mut scan = SurjectionScan::new(&r, &plan, p, precision, 0);
        (0..=m_max)
            .map(|_| r.to_big(&scan.next_value()))
            .collect()
    });
    residues
        .into_iter()
        .map(|x| ModPE::from_residue(x, p, precision))
        .collect()
}

/// Walks `m = start, start+1, …`, keeping the Pascal row modulo `p^E`.
struct SurjectionScan<'a, R: ResidueRing> {
    ring: &'a R,
    plan: &'a PowerPlan,
    binoms: Vec<R::Elem>,
    powers: Vec<R::Elem>,
    m: u64,
}

impl<'a, R: ResidueRing> SurjectionScan<'a, R> {
    fn new(ring: &'a R, plan: &'a PowerPlan, p: Prime, precision: u32, start: u64) -> Self {
        let binoms = binomial_residues(ring, p, precision, start);
        let powers = (0..=start).map(|j| plan.pow_in(ring, j)).collect();
        SurjectionScan {
            ring,
            plan,
            binoms,
            powers,
            m: start,
        }
    }

    /// Value at the current `m`, then advance.
    fn next_value(&mut self) -> R::Elem {
        let value = surjection_sum(self.ring, self.m, &self.binoms, &self.powers);
        self.m += 1;
        let mut next = Vec::with_capacity(self.binoms.len() + 1);
        next.push(self.ring.one());
        for w in self.binoms.windows(2) {
            next.push(self.ring.add(&w[0], &w[1]));
        }
        next.push(self.ring.one());
        self.binoms = next;
        self.powers.push(self.plan.pow_in(self.ring, self.m));
        value
    }
}

/// How far a reported `e_p` value can be trusted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certificate {
    /// `k` is finite and every `m <= k` was scanned.
    ExactFiniteK,
    /// `k = h(p-1)p^L + d` and the tail bound exceeds the minimum found.
    StableFamily,
    /// Only a window of `m` was scanned.
    HeuristicWindow,
}

impl std::fmt::Display for Certificate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Certificate::ExactFiniteK => "exact-finite-k",
            Certificate::StableFamily => "stable-family",
            Certificate::HeuristicWindow => "heuristic-window",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Precision {
    Auto,
    Fixed(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EpOptions {
    pub window: u64,
    pub precision: Precision,
    pub max_retries: u32,
}

impl Default for EpOptions {
    fn default() -> Self {
        EpOptions {
            window: DEFAULT_WINDOW,
            precision: Precision::Auto,
            max_retries: MAX_PRECISION_RETRIES,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpResult {
    pub value: TruncatedValuation,
    /// Inclusive range of `m` scanned.
    pub m_scanned: (u64, u64),
    /// Smallest `m` attaining the minimum, when the minimum is exact.
    pub argmin: Option<u64>,
    pub certified: bool,
    pub certificate: Certificate,
    /// Precision `E` of the final scan.
    pub precision: u32,
}

/// `⌊(n-1)(1 + 1/(p-1) + 1/(p-1)^2)⌋`, an upper bound for certified `e_p(n, ·)`
/// at odd primes.
pub fn dsu_cap(p: Prime, n: u64) -> u64 {
    let q = p.get() - 1;
    (n.saturating_sub(1)) * (q * q + q + 1) / (q * q)
}

/// Default working precision for `e_p` at `(p, n)`: the cap plus a margin of 8.
pub fn default_precision(p: Prime, n: u64) -> u32 {
    u32::try_from(dsu_cap(p, n) + 8).unwrap_or(u32::MAX)
}

/// `(L, d)` when `k = h(p-1)p^L + d` with `h >= 1`.
fn tail_family(k: &StructuredExponent, p: Prime) -> Option<(u64, u64)> {
    match k {
        StructuredExponent::Tower { c, base, l, d } if *base == p && !c.is_zero() => {
            let divisible = (c % (p.get() - 1)).is_zero();
            divisible.then(|| d.to_u64().map(|d| (*l, d))).flatten()
        }
        _ => None,
    }
}

/// Lower bound for `ord_p(m!·S(h(p-1)p^L + d, m))`, valid for `m > d`.
fn family_tail_bound(p: Prime, l: u64, d: u64, m: u64) -> u64 {
    (l + 1).min(d + ord_factorial(p, m / p.get()))
}

enum ScanMode {
    Finite { k: u64 },
    Family { l: u64, d: u64 },
    Window,
}

struct ScanOutcome {
    value: TruncatedValuation,
    argmin: Option<u64>,
    m_to: u64,
    certified: bool,
}

fn scan_once(
    n: u64,
    k: &StructuredExponent,
    p: Prime,
    precision: u32,
    window: u64,
    mode: &ScanMode,
) -> Result<ScanOutcome> {
    let plan = PowerPlan::new(k, p, precision)?;
    let modulus = p.pow(precision);
    Ok(with_ring!(&modulus, ring => {
        let mut scan = SurjectionScan::new(&ring, &plan, p, precision, n);
        let mut best: Option<TruncatedValuation> = None;
        let mut argmin = None;
        let mut last_change = n;
        let mut end = match mode {
            ScanMode::Finite { k } => *k,
            _ => n + window,
        };
        let mut extensions = 0;
        let mut m = n;
        loop {
            let t = trunc_val_in(&ring, p, precision, &scan.next_value());
            let improved = match (best, t) {
                (None, _) => true,
                (Some(TruncatedValuation::Exact(b)), TruncatedValuation::Exact(v)) => v < b,
                (Some(TruncatedValuation::AtLeast(_)), TruncatedValuation::Exact(_)) => true,
                _ => false,
            };
            if improved {
                best = Some(t);
                argmin = t.exact().map(|_| m);
                last_change = m;
            }
            if let ScanMode::Family { l, d } = mode {
                if let Some(TruncatedValuation::Exact(v)) = best {
                    // every later m is past d and bounded below by the tail
                    if m >= *d && family_tail_bound(p, *l, *d, m + 1) > v {
                        break ScanOutcome { value: TruncatedValuation::Exact(v), argmin, m_to: m, certified: true };
                    }
                }
            }
            if m >= end {
                let can_extend = !matches!(mode, ScanMode::Finite { .. })
                    && extensions < MAX_EXTENSIONS
                    && (m - last_change < STABILITY_RUN || matches!(mode, ScanMode::Family { .. }));
                if can_extend {
                    end += WINDOW_STEP;
                    extensions += 1;
                } else {
                    break ScanOutcome {
                        value: best.expect("at least one m scanned"),
                        argmin,
                        m_to: m,
                        certified: matches!(mode, ScanMode::Finite { .. }),
                    };
                }
            }
            m += 1;
        }
    }))
}

fn trunc_val_in<R: ResidueRing>(
    ring: &R,
    p: Prime,
    precision: u32,
    x: &R::Elem,
) -> TruncatedValuation {
    if ring.is_zero(x) {
        return TruncatedValuation::AtLeast(precision as u64);
    }
    let residue = ring.to_big(x);
    match crate::padic::ord_biguint(p, &residue) {
        Valuation::Finite(v) => TruncatedValuation::Exact(v),
        Valuation::Infinite => TruncatedValuation::AtLeast(precision as u64),
    }
}

/// `e_p(n, k) = min_{m>=n} ord_p(m!·S(k, m))`, with certification status.
///
/// Precision starts at the configured value (or [`default_precision`]) and
/// doubles while the minimum is only known as `>= E`.
pub fn e_p(p: Prime, n: u64, k: &StructuredExponent, opts: &EpOptions) -> Result<EpResult> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    if opts.window == 0 {
        return Err(Error::InvalidArgument("window must be >= 1".into()));
    }
    if !k.is_at_least(n) {
        return Err(Error::InvalidArgument(format!(
            "e_p needs k >= n, got k = {k} < n = {n}"
        )));
    }
    let mode = match (k.value_u64(), tail_family(k, p)) {
        (Some(kv), _) if kv <= n + opts.window => ScanMode::Finite { k: kv },
        (_, Some((l, d))) => ScanMode::Family { l, d },
        _ => ScanMode::Window,
    };
    let mut precision = match opts.precision {
        Precision::Auto => default_precision(p, n),
        Precision::Fixed(e) if e >= 1 => e,
        Precision::Fixed(_) => {
            return Err(Error::InvalidArgument("precision E must be >= 1".into()))
        }
    };
    let mut retries = 0;
    loop {
        let out = scan_once(n, k, p, precision, opts.window, &mode)?;
        if out.value.is_exact() || matches!(mode, ScanMode::Finite { .. }) && out.value.is_exact() {
            let certificate = match mode {
                ScanMode::Finite { .. } => Certificate::ExactFiniteK,
                ScanMode::Family { .. } if out.certified => Certificate::StableFamily,
                _ => Certificate::HeuristicWindow,
            };
            return Ok(EpResult {
                value: out.value,
                m_scanned: (n, out.m_to),
                argmin: out.argmin,
                certified: out.certified,
                certificate,
                precision,
            });
        }
        if retries >= opts.max_retries {
            return Err(Error::Undetermined {
                partial: out.value,
                precision,
                m_from: n,
                m_to: out.m_to,
            });
        }
        retries += 1;
        precision = precision.saturating_mul(2);
    }
}

/// Stabilization data for the family `k = (p-1)p^L + n - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableParams {
    pub p: Prime,
    pub n: u64,
    /// `n - 1 + ⌊n/(p(p-1))⌋`.
    pub big_n: u64,
    /// Order of the first nonzero `S_m`.
    pub n0: u64,
    /// Minimum order of `S_m` over the scanned `m`.
    pub l0: u64,
    /// Smallest `m` attaining `l0`.
    pub m0: u64,
    pub m_scanned: (u64, u64),
    /// True when the tail bound proves no later `S_m` goes below `l0`.
    pub certified: bool,
}

impl StableParams {
    /// `max(N, N0)`, the smallest `L` covered by the stabilization result.
    pub fn l_min(&self) -> u64 {
        self.big_n.max(self.n0)
    }
}

/// `S_m = Σ_{j ≢ 0 (mod p)} C(m,j)(-1)^j j^{n-1}`, exactly.
pub fn stable_sum(p: Prime, n: u64, m: u64) -> BigInt {
    let row = crate::polysum::binomial_row(m);
    (1..=m)
        .filter(|j| j % p.get() != 0)
        .map(|j| {
            let t = &row[j as usize] * BigInt::from(j).pow((n - 1) as u32);
            if j % 2 == 0 {
                t
            } else {
                -t
            }
        })
        .sum()
}

/// `N`, `N0`, `L0` and the witness `m0` for `(p, n)`.
///
/// The exact sums `S_m` are computed for `m ∈ [n, n + m_window]`, then
/// further in steps until `n - 1 + ord_p(⌊m/p⌋!)`, a lower bound for every
/// later `ord_p(S_m)`, exceeds the running minimum.
pub fn stable_params(p: Prime, n: u64, m_window: u64) -> Result<StableParams> {
    if n < 2 {
        return Err(Error::InvalidArgument("stable_params needs n >= 2".into()));
    }
    let big_n = n - 1 + n / (p.get() * (p.get() - 1));
    let exponent = u32::try_from(n - 1).map_err(|_| Error::Capacity("n too large".into()))?;

    let mut row: Vec<BigInt> = crate::polysum::binomial_row(n);
    let mut powers: Vec<BigInt> = (0..=n).map(|j| BigInt::from(j).pow(exponent)).collect();
    let mut n0 = None;
    let mut best: Option<(u64, u64)> = None;
    let mut end = n + m_window;
    let mut extensions = 0;
    let mut m = n;
    loop {
        let s_m: BigInt = (1..=m as usize)
            .filter(|&j| !(j as u64).is_multiple_of(p.get()))
            .map(|j| {
                let t = &row[j] * &powers[j];
                if j % 2 == 0 {
                    t
                } else {
                    -t
                }
            })
            .sum();
        if let Valuation::Finite(v) = ord_int(p, &s_m) {
            n0.get_or_insert(v);
            if best.is_none_or(|(b, _)| v < b) {
                best = Some((v, m));
            }
        }
        let certified = best.is_some_and(|(b, _)| n - 1 + ord_factorial(p, (m + 1) / p.get()) > b);
        if m >= end {
            if certified || extensions >= MAX_EXTENSIONS {
                let (l0, m0) = best.ok_or_else(|| {
                    Error::Diagnostic(format!(
                        "every S_m vanished for p = {p}, n = {n}, m in [{n}, {m}]"
                    ))
                })?;
                return Ok(StableParams {
                    p,
                    n,
                    big_n,
                    n0: n0.expect("set with best"),
                    l0,
                    m0,
                    m_scanned: (n, m),
                    certified,
                });
            }
            end += WINDOW_STEP;
            extensions += 1;
        }
        // Pascal step to row m + 1
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(BigInt::one());
        for w in row.windows(2) {
            next.push(&w[0] + &w[1]);
        }
        next.push(BigInt::one());
        row = next;
        m += 1;
        powers.push(BigInt::from(m).pow(exponent));
    }
}

/// `e_p(n, (p-1)p^L + n - 1)` at `L = max(N, N0)`, cross-checked against `L0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableValue {
    pub l_used: u64,
    pub value: u64,
    pub params: StableParams,
    pub result: EpResult,
}

pub fn e_p_stable(p: Prime, n: u64) -> Result<StableValue> {
    let params = stable_params(p, n, DEFAULT_WINDOW)?;
    let l_used = params.l_min();
    let k = StructuredExponent::tower(p.get() - 1, p, l_used, n - 1);
    let result = e_p(p, n, &k, &EpOptions::default())?;
    if !result.certified {
        return Err(Error::Inconsistent(format!(
            "stable-family scan for p = {p}, n = {n} did not certify (m in [{}, {}])",
            result.m_scanned.0, result.m_scanned.1
        )));
    }
    match result.value {
        TruncatedValuation::Exact(v) if v == params.l0 => Ok(StableValue {
            l_used,
            value: v,
            params,
            result,
        }),
        other => Err(Error::Inconsistent(format!(
            "e_{p}({n}, {k}) = {other} but L0 = {}",
            params.l0
        ))),
    }
}

/// `trunc_val(mstirling_mod(...))`, the per-`m` term of `e_p`.
pub fn mstirling_order(
    k: &StructuredExponent,
    m: u64,
    p: Prime,
    precision: u32,
) -> Result<TruncatedValuation> {
    mstirling_mod(k, m, p, precision).map(|x| trunc_val(&x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn stirling_exact_examples() {
        assert_eq!(stirling_exact(4, 2).unwrap(), BigUint::from(7u32));
        assert_eq!(stirling_exact(0, 0).unwrap(), BigUint::one());
        assert_eq!(stirling_exact(5, 0).unwrap(), BigUint::zero());
        assert_eq!(stirling_exact(9, 9).unwrap(), BigUint::one());
        for n in 1..12 {
            for m in n..n + 4 {
                assert!(stirling_exact(n - 1, m).unwrap().is_zero());
            }
        }
        assert_eq!(stirling_exact(10, 3).unwrap(), BigUint::from(9330u32));
        assert!(matches!(
            stirling_exact(EXACT_STIRLING_MAX_K + 1, 2),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn four_element_set_has_seven_two_block_partitions() {
        // Enumerate: each non-constant map {0,1,2,3} -> {0,1} with 0 ↦ 0
        let count = (0u32..16)
            .filter(|mask| mask & 1 == 0 && *mask != 0)
            .count();
        assert_eq!(count, 7);
        assert_eq!(stirling_exact(4, 2).unwrap(), BigUint::from(count));
    }

    #[test]
    fn mstirling_examples() {
        let r = mstirling_mod(&StructuredExponent::plain(4), 2, p(3), 5).unwrap();
        assert_eq!(r.residue(), &BigUint::from(14u32));
        let r = mstirling_mod(&StructuredExponent::plain(3), 5, p(7), 4).unwrap();
        assert!(r.is_zero());
        let r = mstirling_mod(&StructuredExponent::plain(0), 0, p(2), 3).unwrap();
        assert_eq!(r.residue(), &BigUint::one());
    }

    #[test]
    fn mstirling_tower_matches_expansion() {
        let k = StructuredExponent::tower(2u32, p(3), 6, 28u32);
        let plain = k.clone().into_plain().unwrap();
        let kv = plain.to_plain().unwrap().to_u64().unwrap();
        let exact = stirling_exact(kv, 30).unwrap() * (1..=30u64).product::<BigUint>();
        let modulus = p(3).pow(12);
        let via_tower = mstirling_mod(&k, 30, p(3), 12).unwrap();
        assert_eq!(via_tower.residue(), &(exact % modulus));
        assert_eq!(via_tower, mstirling_mod(&plain, 30, p(3), 12).unwrap());
    }

    #[test]
    fn row_matches_single_queries() {
        let k = StructuredExponent::tower(4u32, p(5), 3, 7u32);
        let row = mstirling_mod_row(&k, 25, p(5), 9).unwrap();
        for (m, x) in row.iter().enumerate() {
            assert_eq!(x, &mstirling_mod(&k, m as u64, p(5), 9).unwrap(), "m = {m}");
        }
    }

    #[test]
    fn binomial_residues_match_exact() {
        let modulus = p(2).pow(10);
        with_ring!(&modulus, r => {
            let got = binomial_residues(&r, p(2), 10, 64);
            let exact = crate::polysum::binomial_row(64);
            for (g, e) in got.iter().zip(&exact) {
                assert_eq!(r.to_big(g), e.to_biguint().unwrap() % &modulus);
            }
        });
    }

    #[test]
    fn e_p_of_k_equal_n_is_ord_factorial() {
        for &q in &[2u64, 3, 5, 7] {
            for n in 1..30 {
                let res = e_p(
                    p(q),
                    n,
                    &StructuredExponent::plain(n),
                    &EpOptions::default(),
                )
                .unwrap();
                assert_eq!(res.value, TruncatedValuation::Exact(ord_factorial(p(q), n)));
                assert!(res.certified);
                assert_eq!(res.certificate, Certificate::ExactFiniteK);
            }
        }
    }

    #[test]
    fn e_p_rejects_k_below_n() {
        assert!(matches!(
            e_p(
                p(3),
                10,
                &StructuredExponent::plain(9),
                &EpOptions::default()
            ),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn stable_params_examples() {
        let sp = stable_params(p(3), 29, DEFAULT_WINDOW).unwrap();
        assert_eq!(sp.big_n, 32);
        assert_eq!(sp.l0, 32);
        assert!(sp.certified);
        assert!(sp.n0 >= sp.l0);
        // S_4 = -(4·1 + 4·27) = -112 = -2^4·7
        assert_eq!(stable_sum(p(2), 4, 4), BigInt::from(-112));
        let sp = stable_params(p(2), 4, DEFAULT_WINDOW).unwrap();
        assert_eq!((sp.l0, sp.m0, sp.n0), (4, 4, 4));
        assert!(stable_params(p(3), 1, 10).is_err());
    }

    #[test]
    fn e_p_stable_examples() {
        assert_eq!(e_p_stable(p(3), 21).unwrap().value, 22);
        assert_eq!(e_p_stable(p(3), 41).unwrap().value, 45);
        assert_eq!(e_p_stable(p(3), 19).unwrap().value, 20);
    }

    #[test]
    fn e_p_on_the_table_rows() {
        for (n, expected) in [(21u64, 22u64), (29, 32)] {
            let sp = stable_params(p(3), n, DEFAULT_WINDOW).unwrap();
            let k = StructuredExponent::tower(2u32, p(3), sp.l_min(), n - 1);
            let res = e_p(p(3), n, &k, &EpOptions::default()).unwrap();
            assert_eq!(res.value, TruncatedValuation::Exact(expected));
            assert!(res.certified);
            assert_eq!(res.certificate, Certificate::StableFamily);
        }
    }

    #[test]
    fn heuristic_window_is_not_certified() {
        let k = StructuredExponent::plain(10_000_000_019);
        let res = e_p(
            p(3),
            5,
            &k,
            &EpOptions {
                window: 10,
                ..EpOptions::default()
            },
        )
        .unwrap();
        assert!(!res.certified);
        assert_eq!(res.certificate, Certificate::HeuristicWindow);
        assert!(res.m_scanned.1 >= 15);
    }

    #[test]
    fn fixed_low_precision_is_raised() {
        let k = StructuredExponent::plain(12);
        // e_3(9, 12) needs more than one digit of precision
        let res = e_p(
            p(3),
            9,
            &k,
            &EpOptions {
                precision: Precision::Fixed(1),
                ..EpOptions::default()
            },
        )
        .unwrap();
        let reference = e_p(p(3), 9, &k, &EpOptions::default()).unwrap();
        assert_eq!(res.value, reference.value);
        assert!(res.precision > 1);
    }

    #[test]
    fn dsu_cap_values() {
        // (n-1)(1 + 1/2 + 1/4) at p = 3
        assert_eq!(dsu_cap(p(3), 29), 49);
        assert_eq!(dsu_cap(p(2), 5), 12);
        assert_eq!(default_precision(p(3), 41), 78);
    }
}
