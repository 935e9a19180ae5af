//! Homotopy-exponent lower bounds for `SU(n)` and the table emitters.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exponent::StructuredExponent;
use crate::padic::{carries, ord_factorial, ord_int, Prime, TruncatedValuation, Valuation};
use crate::polysum::{alt_sum_powers, binomial_row};
use crate::stirling::{e_p, e_p_stable, Certificate, EpOptions, EpResult};

/// Reference stable values `e_3(n, 2·3^L + n - 1)`, rows `n = 19..=41`.
pub const GOLDEN_TABLE1_STABLE: [u64; 23] = [
    20, 21, 22, 25, 26, 28, 28, 30, 31, 32, 32, 33, 34, 35, 37, 37, 39, 41, 41, 42, 43, 44, 45,
];
/// Reference bound column `n - 1 + ord_3(⌊n/3⌋!)`, rows `n = 19..=41`.
pub const GOLDEN_TABLE1_BOUND: [u64; 23] = [
    20, 21, 22, 23, 24, 25, 26, 27, 30, 31, 32, 33, 34, 35, 36, 37, 38, 40, 41, 42, 43, 44, 45,
];
pub const GOLDEN_TABLE1_FIRST_N: u64 = 19;

/// `τ_3({r}_9, {n-r}_9)`, indexed `[{n}_9][{r}_9]`.
pub const GOLDEN_TABLE2: [[u32; 9]; 9] = [
    [0, 2, 2, 1, 2, 2, 1, 2, 2],
    [0, 0, 2, 1, 1, 2, 1, 1, 2],
    [0, 0, 0, 1, 1, 1, 1, 1, 1],
    [0, 1, 1, 0, 2, 2, 1, 2, 2],
    [0, 0, 1, 0, 0, 2, 1, 1, 2],
    [0, 0, 0, 0, 0, 0, 1, 1, 1],
    [0, 1, 1, 0, 1, 1, 0, 2, 2],
    [0, 0, 1, 0, 0, 1, 0, 0, 2],
    [0, 0, 0, 0, 0, 0, 0, 0, 0],
];

/// `δ(l)` for `p = 2, α = 2, n = 100`, baseline 22, `l = 25..=45`.
pub const GOLDEN_DELTA: [i64; 21] = [
    0, 0, 0, 0, 2, 3, 2, 4, 1, 1, 1, 1, 2, 2, 4, 1, 0, 0, 0, 0, 3,
];
pub const GOLDEN_DELTA_FIRST_L: u64 = 25;

fn need_n(n: u64) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n must be >= 2, got {n}")));
    }
    Ok(())
}

/// `n - 1 + ord_p(⌊n/p⌋!)`.
pub fn lower_bound(p: Prime, n: u64) -> Result<u64> {
    need_n(n)?;
    Ok(n - 1 + ord_factorial(p, n / p.get()))
}

/// `n - 1 + ⌊(n+2p-3)/p²⌋ + ⌊(n+p²-p-1)/p³⌋`, the earlier bound for odd `p`.
pub fn old_bound(p: Prime, n: u64) -> Result<u64> {
    need_n(n)?;
    if p.is_two() {
        return Err(Error::InvalidArgument(
            "the earlier bound is only stated for odd p".into(),
        ));
    }
    let q = p.get();
    Ok(n - 1 + (n + 2 * q - 3) / (q * q) + (n + q * q - q - 1) / (q * q * q))
}

/// `n - 1 + Σ_{i>=2} ⌊n/p^i⌋`.
pub fn restated_bound(p: Prime, n: u64) -> Result<u64> {
    need_n(n)?;
    let mut total = n - 1;
    let mut pk = p.get().checked_mul(p.get());
    while let Some(q) = pk.filter(|&q| q <= n) {
        total += n / q;
        pk = q.checked_mul(p.get());
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub p: Prime,
    pub n: u64,
    pub new_bound: u64,
    pub old_bound: Option<u64>,
    pub restated: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

pub fn bound_report(p: Prime, n: u64) -> Result<BoundReport> {
    let new_bound = lower_bound(p, n)?;
    let restated = restated_bound(p, n)?;
    if new_bound != restated {
        return Err(Error::Inconsistent(format!(
            "bound {new_bound} != restated {restated} at p = {p}, n = {n}"
        )));
    }
    let note = (p.is_two() && n == 2).then(|| {
        "pi_6(SU(2)) = Z/12 has an element of order 4, so exp_2(SU(2)) >= 2 exceeds this bound"
            .to_string()
    });
    Ok(BoundReport {
        p,
        n,
        new_bound,
        old_bound: if p.is_two() {
            None
        } else {
            Some(old_bound(p, n)?)
        },
        restated,
        note,
    })
}

/// Exponent lower bound implied by one `(n, k)`: `e_p(n, k)`, less one when
/// `p = 2` and `n` is even.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RednValue {
    pub value: u64,
    pub e_p: EpResult,
}

pub fn redn_value(p: Prime, n: u64, k: &StructuredExponent, opts: &EpOptions) -> Result<RednValue> {
    let res = e_p(p, n, k, opts)?;
    let v = match (res.certified, res.value) {
        (true, TruncatedValuation::Exact(v)) => v,
        (_, partial) => {
            return Err(Error::Undetermined {
                partial,
                precision: res.precision,
                m_from: res.m_scanned.0,
                m_to: res.m_scanned.1,
            })
        }
    };
    let value = if p.is_two() && n.is_multiple_of(2) {
        v.saturating_sub(1)
    } else {
        v
    };
    Ok(RednValue { value, e_p: res })
}

/// Observed maximum of `e_3(n, k)`; a bounded search, not the global maximum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaxObserved {
    pub value: u64,
    /// Finite `k` searched: `n..=k_max`, plus the stable-family `k`.
    pub k_max: u64,
    pub label: &'static str,
}

pub const MAX_OBSERVED_LABEL: &str = "observed, not proven maximal";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table1Row {
    pub n: u64,
    pub stable: u64,
    pub bound: u64,
    /// `L` used for the stable-family exponent.
    pub l_used: u64,
    pub certificate: Certificate,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_observed: Option<MaxObserved>,
}

fn table1_row(n: u64, k_budget: Option<u64>) -> Result<Table1Row> {
    let three = Prime::new(3).expect("3 is prime");
    let sv = e_p_stable(three, n)?;
    let max_observed = match k_budget {
        None => None,
        Some(budget) => {
            let opts = EpOptions {
                window: budget.max(1),
                ..EpOptions::default()
            };
            let mut best = sv.value;
            for k in n..=n + budget {
                let res = e_p(three, n, &StructuredExponent::plain(k), &opts)?;
                if let (true, TruncatedValuation::Exact(v)) = (res.certified, res.value) {
                    best = best.max(v);
                }
            }
            Some(MaxObserved {
                value: best,
                k_max: n + budget,
                label: MAX_OBSERVED_LABEL,
            })
        }
    };
    Ok(Table1Row {
        n,
        stable: sv.value,
        bound: lower_bound(three, n)?,
        l_used: sv.l_used,
        certificate: sv.result.certificate,
        max_observed,
    })
}

/// Rows `n_from..=n_to` of the `p = 3` comparison table. With `k_budget`,
/// each row also gets the maximum of certified `e_3(n, k)` over
/// `k ∈ [n, n + k_budget]` and the stable-family `k`.
pub fn emit_table1(n_from: u64, n_to: u64, k_budget: Option<u64>) -> Result<Vec<Table1Row>> {
    if n_from < 2 || n_from > n_to {
        return Err(Error::InvalidArgument(format!(
            "need 2 <= from <= to, got {n_from}..{n_to}"
        )));
    }
    (n_from..=n_to)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&n| table1_row(n, k_budget))
        .collect()
}

/// `τ_3({r}_9, {n-r}_9)` indexed `[{n}_9][{r}_9]`.
pub fn emit_table2() -> [[u32; 9]; 9] {
    let three = Prime::new(3).expect("3 is prime");
    let mut t = [[0u32; 9]; 9];
    for (n, row) in t.iter_mut().enumerate() {
        for (r, cell) in row.iter_mut().enumerate() {
            let b = (n as u64 + 9 - r as u64) % 9;
            *cell = carries(three, r as u64, b);
        }
    }
    t
}

/// `δ(l)`; `Infinite` when the sum vanishes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Delta {
    Finite(i64),
    Infinite,
}

impl std::fmt::Display for Delta {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Delta::Finite(v) => write!(f, "{v}"),
            Delta::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Delta {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Delta::Finite(v) => s.serialize_i64(*v),
            Delta::Infinite => s.serialize_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeltaParams {
    pub p: Prime,
    pub alpha: u32,
    pub n: u64,
    pub baseline: i64,
    pub l_from: u64,
    pub l_to: u64,
}

impl Default for DeltaParams {
    fn default() -> Self {
        DeltaParams {
            p: Prime::new(2).expect("2 is prime"),
            alpha: 2,
            n: 100,
            baseline: 22,
            l_from: GOLDEN_DELTA_FIRST_L,
            l_to: GOLDEN_DELTA_FIRST_L + GOLDEN_DELTA.len() as u64 - 1,
        }
    }
}

/// `δ(l) = ord_p(Σ_{k≡0 (mod p^α)} C(n,k)(-1)^k (k/p^α)^l) - baseline`.
pub fn emit_delta(params: &DeltaParams) -> Result<Vec<(u64, Delta)>> {
    let DeltaParams {
        p,
        alpha,
        n,
        baseline,
        l_from,
        l_to,
    } = *params;
    if l_from > l_to {
        return Err(Error::InvalidArgument(format!(
            "need l_from <= l_to, got {l_from}..{l_to}"
        )));
    }
    let m = p
        .checked_pow(alpha)
        .ok_or_else(|| Error::Capacity("p^alpha overflows".into()))?;
    let sums = alt_sum_powers(&binomial_row(n), n, 0, m, l_to as usize);
    Ok((l_from..=l_to)
        .map(|l| {
            let d = match ord_int(p, &sums[l as usize]) {
                Valuation::Finite(v) => Delta::Finite(v as i64 - baseline),
                Valuation::Infinite => Delta::Infinite,
            };
            (l, d)
        })
        .collect())
}

/// One sampled point of the `n = 29` shift pattern.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpotCheck {
    pub k: String,
    pub predicted: u64,
    pub observed: TruncatedValuation,
    pub certified: bool,
    pub matches: bool,
}

/// `28 + 8·3^20`, the centre of the sampled `k`.
pub fn n29_center() -> BigUint {
    BigUint::from(28u32) + BigUint::from(8u32) * BigUint::from(3u32).pow(20)
}

/// Predicted `e_3(29, k) = min(ord_3(k - 28 - 8·3^20) + 12, 34)`.
pub fn n29_prediction(k: &BigUint) -> u64 {
    let three = Prime::new(3).expect("3 is prime");
    let diff = BigInt::from(k.clone()) - BigInt::from(n29_center());
    match ord_int(three, &diff) {
        Valuation::Finite(v) => (v + 12).min(34),
        Valuation::Infinite => 34,
    }
}

/// `samples` values of `k ≡ 10 (mod 18)` within `3^10` of the centre, compared
/// with the prediction. Informational: these `k` have no certificate.
pub fn n29_spot_check(samples: usize, seed: u64) -> Result<Vec<SpotCheck>> {
    let three = Prime::new(3).expect("3 is prime");
    let center = n29_center();
    debug_assert_eq!(&center % 18u32, BigUint::from(10u32));
    let radius = 3i64.pow(10) / 18;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ts: Vec<i64> = (0..samples)
        .map(|_| rng.gen_range(-radius..=radius))
        .collect();
    ts.par_iter()
        .map(|&t| {
            let k = (BigInt::from(center.clone()) + 18 * t)
                .to_biguint()
                .expect("k is positive");
            let kexp = StructuredExponent::Plain(k.clone());
            let res = e_p(three, 29, &kexp, &EpOptions::default())?;
            let predicted = n29_prediction(&k);
            Ok(SpotCheck {
                k: k.to_string(),
                predicted,
                observed: res.value,
                certified: res.certified,
                matches: res.value == TruncatedValuation::Exact(predicted),
            })
        })
        .collect()
}

/// A cell where an emitted table differs from the embedded reference data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoldenMismatch {
    pub row: String,
    pub column: String,
    pub expected: String,
    pub got: String,
}

impl std::fmt::Display for GoldenMismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} {}: expected {}, got {}",
            self.row, self.column, self.expected, self.got
        )
    }
}

fn mismatch(
    row: String,
    column: &str,
    expected: impl ToString,
    got: impl ToString,
) -> GoldenMismatch {
    GoldenMismatch {
        row,
        column: column.into(),
        expected: expected.to_string(),
        got: got.to_string(),
    }
}

/// Compare the stable and bound columns of rows inside the reference range.
pub fn golden_table1(rows: &[Table1Row]) -> Vec<GoldenMismatch> {
    let mut out = Vec::new();
    for row in rows {
        let Some(i) = row.n.checked_sub(GOLDEN_TABLE1_FIRST_N).map(|i| i as usize) else {
            continue;
        };
        if i >= GOLDEN_TABLE1_STABLE.len() {
            continue;
        }
        if row.stable != GOLDEN_TABLE1_STABLE[i] {
            out.push(mismatch(
                format!("n={}", row.n),
                "stable",
                GOLDEN_TABLE1_STABLE[i],
                row.stable,
            ));
        }
        if row.bound != GOLDEN_TABLE1_BOUND[i] {
            out.push(mismatch(
                format!("n={}", row.n),
                "bound",
                GOLDEN_TABLE1_BOUND[i],
                row.bound,
            ));
        }
    }
    out
}

pub fn golden_table2(t: &[[u32; 9]; 9]) -> Vec<GoldenMismatch> {
    let mut out = Vec::new();
    for n in 0..9 {
        for r in 0..9 {
            if t[n][r] != GOLDEN_TABLE2[n][r] {
                out.push(mismatch(
                    format!("n={n}"),
                    &format!("r={r}"),
                    GOLDEN_TABLE2[n][r],
                    t[n][r],
                ));
            }
        }
    }
    out
}

/// Compare against the reference list; only meaningful for default parameters.
pub fn golden_delta(values: &[(u64, Delta)]) -> Vec<GoldenMismatch> {
    let mut out = Vec::new();
    for &(l, d) in values {
        let Some(i) = l.checked_sub(GOLDEN_DELTA_FIRST_L).map(|i| i as usize) else {
            continue;
        };
        if let Some(&want) = GOLDEN_DELTA.get(i) {
            if d != Delta::Finite(want) {
                out.push(mismatch(format!("l={l}"), "delta", want, d));
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Md,
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "md" => Ok(Format::Md),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::parse(s, other, "expected md, csv or json")),
        }
    }
}

#[derive(Serialize)]
struct Versioned<'a, T: Serialize> {
    schema: u32,
    table: &'a str,
    rows: T,
}

fn to_json<T: Serialize>(table: &str, rows: T) -> String {
    serde_json::to_string_pretty(&Versioned {
        schema: 1,
        table,
        rows,
    })
    .expect("serializes")
        + "\n"
}

pub fn render_table1(rows: &[Table1Row], format: Format) -> String {
    let with_max = rows.iter().any(|r| r.max_observed.is_some());
    let max_cell = |r: &Table1Row| {
        r.max_observed
            .as_ref()
            .map_or(String::new(), |m| m.value.to_string())
    };
    let mut s = String::new();
    match format {
        Format::Md => {
            if with_max {
                let _ = writeln!(s, "| n | max e_3(n,k) ({MAX_OBSERVED_LABEL}) | e_3(n,2*3^L+n-1) | n-1+ord_3(floor(n/3)!) |");
                let _ = writeln!(s, "|---|---|---|---|");
            } else {
                let _ = writeln!(s, "| n | e_3(n,2*3^L+n-1) | n-1+ord_3(floor(n/3)!) |");
                let _ = writeln!(s, "|---|---|---|");
            }
            for r in rows {
                if with_max {
                    let _ = writeln!(
                        s,
                        "| {} | {} | {} | {} |",
                        r.n,
                        max_cell(r),
                        r.stable,
                        r.bound
                    );
                } else {
                    let _ = writeln!(s, "| {} | {} | {} |", r.n, r.stable, r.bound);
                }
            }
        }
        Format::Csv => {
            s.push_str(if with_max {
                "n,stable,bound,max_observed\n"
            } else {
                "n,stable,bound\n"
            });
            for r in rows {
                let _ = write!(s, "{},{},{}", r.n, r.stable, r.bound);
                if with_max {
                    let _ = write!(s, ",{}", max_cell(r));
                }
                s.push('\n');
            }
        }
        Format::Json => s = to_json("one", rows),
    }
    s
}

pub fn render_table2(t: &[[u32; 9]; 9], format: Format) -> String {
    let mut s = String::new();
    match format {
        Format::Md => {
            let _ = writeln!(
                s,
                "| {{n}}_9 \\ {{r}}_9 | 0 | 1 | 2 | 3 | 4 | 5 | 6 | 7 | 8 |"
            );
            let _ = writeln!(s, "|---|---|---|---|---|---|---|---|---|---|");
            for (n, row) in t.iter().enumerate() {
                let cells: Vec<String> = row.iter().map(u32::to_string).collect();
                let _ = writeln!(s, "| {n} | {} |", cells.join(" | "));
            }
        }
        Format::Csv => {
            s.push_str("n,r0,r1,r2,r3,r4,r5,r6,r7,r8\n");
            for (n, row) in t.iter().enumerate() {
                let cells: Vec<String> = row.iter().map(u32::to_string).collect();
                let _ = writeln!(s, "{n},{}", cells.join(","));
            }
        }
        Format::Json => s = to_json("two", t),
    }
    s
}

pub fn render_delta(values: &[(u64, Delta)], format: Format) -> String {
    let mut s = String::new();
    match format {
        Format::Md => {
            let _ = writeln!(s, "| l | delta |");
            let _ = writeln!(s, "|---|---|");
            for (l, d) in values {
                let _ = writeln!(s, "| {l} | {d} |");
            }
        }
        Format::Csv => {
            s.push_str("l,delta\n");
            for (l, d) in values {
                let _ = writeln!(s, "{l},{d}");
            }
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Row {
                l: u64,
                delta: Delta,
            }
            let rows: Vec<Row> = values.iter().map(|&(l, delta)| Row { l, delta }).collect();
            s = to_json("delta", rows);
        }
    }
    s
}
