//! The individual checks. Each `*_batch` function evaluates a run of
//! instances that differ only in the innermost parameter and share the
//! expensive part (a binomial row, a power table, a Stirling row).

use num_bigint::BigInt;

use super::{CheckOutcome, CheckResult, Instance, Order};
use crate::exponent::StructuredExponent;
use crate::padic::{
    carries, euler_phi_prime_power, least_residue, ord_factorial, ord_int, trunc_val, ModPE, Prime,
    Tri, TruncatedValuation,
};
use crate::poly::IntPolynomial;
use crate::polysum::{
    alt_sum_falling, alt_sum_powers, alt_sum_row, binomial_row, lemma33_sides, sun_identity_sides,
};
use crate::stirling::{e_p, mstirling_mod_row, stable_params, EpOptions, DEFAULT_WINDOW};

fn prime_power(p: Prime, alpha: u32) -> u64 {
    p.checked_pow(alpha).expect("p^alpha fits in u64")
}

fn inst5(p: Prime, alpha: u32, n: u64, r: i64, key: &'static str, v: i64) -> Instance {
    Instance::new(&[
        ("p", p.get() as i64),
        ("alpha", alpha as i64),
        ("n", n as i64),
        ("r", r),
        (key, v),
    ])
}

fn inst4(p: Prime, alpha: u32, n: u64, r: i64) -> Instance {
    Instance::new(&[
        ("p", p.get() as i64),
        ("alpha", alpha as i64),
        ("n", n as i64),
        ("r", r),
    ])
}

/// `ord_p(Σ_{k≡r (mod p^α)} C(n,k)(-1)^k f((k-r)/p^α)) >= ord_p(⌊n/p^α⌋!)`.
pub fn check_combthm(p: Prime, alpha: u32, n: u64, r: i64, f: &IntPolynomial) -> CheckOutcome {
    let m = prime_power(p, alpha);
    let sum = alt_sum_row(&binomial_row(n), n, r, m, f);
    let bound = ord_factorial(p, n / m) as i64;
    CheckOutcome::judge(
        inst4(p, alpha, n, r).with_poly(f),
        ord_int(p, &sum).into(),
        bound,
    )
}

/// [`check_combthm`] for `f = x^l`, every `l` in `ls`.
pub fn combthm_batch(
    p: Prime,
    alpha: u32,
    n: u64,
    r: i64,
    ls: &[u64],
    row: &[BigInt],
) -> Vec<CheckOutcome> {
    let m = prime_power(p, alpha);
    let l_max = ls.iter().copied().max().unwrap_or(0) as usize;
    let sums = alt_sum_powers(row, n, r, m, l_max);
    let bound = ord_factorial(p, n / m) as i64;
    ls.iter()
        .map(|&l| {
            let lhs = ord_int(p, &sums[l as usize]).into();
            CheckOutcome::judge(inst5(p, alpha, n, r, "l", l as i64), lhs, bound)
        })
        .collect()
}

/// Bound of the sharpened inequality, with the carry count separated out.
fn strthm_parts(p: Prime, alpha: u32, n: u64, r: i64) -> (i64, u32) {
    let m = prime_power(p, alpha);
    let a = least_residue(r, m).expect("modulus is positive");
    let b = least_residue(n as i64 - r, m).expect("modulus is positive");
    (ord_factorial(p, n / m) as i64, carries(p, a, b))
}

/// `ord_p(Σ_{k≡r} C(n,k)(-1)^k ((k-r)/p^α)^l) >= ord_p(⌊n/p^α⌋!) + τ_p({r}, {n-r})`.
pub fn check_strthm(p: Prime, alpha: u32, n: u64, r: i64, l: u64) -> CheckOutcome {
    strthm_batch(p, alpha, n, r, &[l], &binomial_row(n)).remove(0)
}

/// Besides the inequality, each outcome checks that the bound exceeds the
/// unsharpened one by exactly the carry count, cross-checked through
/// Legendre's formula for `ord_p C(a+b, a)`, and that the excess is at most `α`.
pub fn strthm_batch(
    p: Prime,
    alpha: u32,
    n: u64,
    r: i64,
    ls: &[u64],
    row: &[BigInt],
) -> Vec<CheckOutcome> {
    let m = prime_power(p, alpha);
    let (base, tau) = strthm_parts(p, alpha, n, r);
    let bound = base + tau as i64;
    let a = least_residue(r, m).expect("modulus is positive");
    let b = least_residue(n as i64 - r, m).expect("modulus is positive");
    let legendre =
        ord_factorial(p, a + b) as i64 - ord_factorial(p, a) as i64 - ord_factorial(p, b) as i64;
    let unsharpened = ord_factorial(p, n / m) as i64;
    let excess_ok = bound - unsharpened == legendre && legendre <= alpha as i64;

    let l_max = ls.iter().copied().max().unwrap_or(0) as usize;
    let sums = alt_sum_powers(row, n, r, m, l_max);
    ls.iter()
        .map(|&l| {
            let lhs = ord_int(p, &sums[l as usize]).into();
            let out = CheckOutcome::judge(inst5(p, alpha, n, r, "l", l as i64), lhs, bound);
            if excess_ok {
                out
            } else {
                let mut out = out.with_detail(format!(
                    "bound excess {} over the unsharpened bound differs from ord_p C(a+b,a) = {legendre}",
                    bound - unsharpened
                ));
                out.holds = Tri::False;
                out
            }
        })
        .collect()
}

/// `ord_p((1/l!)·Σ_{k≡r} C(n,k)(-1)^k (x)_l) >= ord_p(⌊n/p^α⌋!) - ord_p(l!)`
/// where `(x)_l` is the falling factorial at `x = (k-r)/p^α`.
pub fn check_cor35(p: Prime, alpha: u32, n: u64, r: i64, l: u64) -> CheckOutcome {
    cor35_batch(p, alpha, n, r, &[l], &binomial_row(n)).remove(0)
}

pub fn cor35_batch(
    p: Prime,
    alpha: u32,
    n: u64,
    r: i64,
    ls: &[u64],
    row: &[BigInt],
) -> Vec<CheckOutcome> {
    let m = prime_power(p, alpha);
    let l_max = ls.iter().copied().max().unwrap_or(0) as usize;
    let sums = alt_sum_falling(row, n, r, m, l_max);
    let top = ord_factorial(p, n / m) as i64;
    ls.iter()
        .map(|&l| {
            let ol = ord_factorial(p, l) as i64;
            let lhs = match Order::from(ord_int(p, &sums[l as usize])) {
                Order::Finite(v) => Order::Finite(v - ol),
                other => other,
            };
            CheckOutcome::judge(inst5(p, alpha, n, r, "l", l as i64), lhs, top - ol)
        })
        .collect()
}

/// `⌊n/p^(α-1)⌋`, read as `n·p` when `α = 0`.
fn n_over_prev_power(p: Prime, alpha: u32, n: u64) -> u64 {
    if alpha == 0 {
        n * p.get()
    } else {
        n / prime_power(p, alpha - 1)
    }
}

/// `ord_p(Σ_{k≡r} C(n,k)(-1)^k) >= ord_p(⌊n/p^(α-1)⌋!)`, together with
/// `ord_p(⌊n/p^(α-1)⌋!) = ⌊n/p^α⌋ + ord_p(⌊n/p^α⌋!)`.
pub fn check_lemma31(p: Prime, alpha: u32, n: u64, r: i64) -> CheckOutcome {
    lemma31_batch(p, alpha, n, &[r], &binomial_row(n)).remove(0)
}

pub fn lemma31_batch(
    p: Prime,
    alpha: u32,
    n: u64,
    rs: &[i64],
    row: &[BigInt],
) -> Vec<CheckOutcome> {
    let m = prime_power(p, alpha);
    let bound = ord_factorial(p, n_over_prev_power(p, alpha, n)) as i64;
    let chain = (n / m + ord_factorial(p, n / m)) as i64;
    let one = IntPolynomial::constant(1);
    rs.iter()
        .map(|&r| {
            let lhs = ord_int(p, &alt_sum_row(row, n, r, m, &one)).into();
            let out = CheckOutcome::judge(inst4(p, alpha, n, r), lhs, bound);
            if bound == chain {
                out
            } else {
                let mut out = out.with_detail(format!("chain equality fails: {bound} != {chain}"));
                out.holds = Tri::False;
                out
            }
        })
        .collect()
}

/// `ord_p(Σ_{k≡r} C(n,k)(-1)^k) >= ⌊(n - p^(α-1))/φ(p^α)⌋`, for `α >= 1`, `n >= p^(α-1)`.
pub fn check_weisman(p: Prime, alpha: u32, n: u64, r: i64) -> CheckResult {
    weisman_batch(p, alpha, n, &[r], &binomial_row(n)).remove(0)
}

pub fn weisman_batch(p: Prime, alpha: u32, n: u64, rs: &[i64], row: &[BigInt]) -> Vec<CheckResult> {
    if alpha == 0 {
        return rs
            .iter()
            .map(|&r| CheckResult::skipped(inst4(p, alpha, n, r), "needs alpha >= 1"))
            .collect();
    }
    let prev = prime_power(p, alpha - 1);
    if n < prev {
        return rs
            .iter()
            .map(|&r| CheckResult::skipped(inst4(p, alpha, n, r), "needs n >= p^(alpha-1)"))
            .collect();
    }
    let m = prime_power(p, alpha);
    let phi = euler_phi_prime_power(p, alpha).expect("alpha >= 1");
    let bound = ((n - prev) / phi) as i64;
    let one = IntPolynomial::constant(1);
    rs.iter()
        .map(|&r| {
            let lhs = ord_int(p, &alt_sum_row(row, n, r, m, &one)).into();
            CheckResult::Checked(CheckOutcome::judge(inst4(p, alpha, n, r), lhs, bound))
        })
        .collect()
}

fn thm14i_bound(p: Prime, alpha: u32, l: u64, n: u64, m: u64) -> i64 {
    (l * (alpha as u64 + 1)).min(n - 1 + ord_factorial(p, m / p.get())) as i64
}

/// `ord_p(m!·Σ_{k=0}^l C(l,k)(-1)^k S(kh(p-1)p^α + n-1, m)) >= min(l(α+1), n-1+ord_p(⌊m/p⌋!))`,
/// evaluated modulo `p^E` with `E` four above the bound.
pub fn check_thm14i(p: Prime, alpha: u32, h: u64, l: u64, m: u64, n: u64) -> CheckOutcome {
    thm14i_batch(p, alpha, h, l, n, &[m]).remove(0)
}

pub fn thm14i_batch(p: Prime, alpha: u32, h: u64, l: u64, n: u64, ms: &[u64]) -> Vec<CheckOutcome> {
    let inst = |m: u64| {
        Instance::new(&[
            ("p", p.get() as i64),
            ("alpha", alpha as i64),
            ("h", h as i64),
            ("l", l as i64),
            ("n", n as i64),
            ("m", m as i64),
        ])
    };
    if n == 0 {
        return ms
            .iter()
            .map(|&m| CheckOutcome::undetermined(inst(m), "needs n >= 1".into()))
            .collect();
    }
    let Some(&m_max) = ms.iter().max() else {
        return Vec::new();
    };
    let max_bound = ms
        .iter()
        .map(|&m| thm14i_bound(p, alpha, l, n, m))
        .max()
        .unwrap_or(0);
    let precision = max_bound as u32 + 4;

    let mut totals: Option<Vec<ModPE>> = None;
    let binoms = binomial_row(l);
    for (kk, c) in binoms.iter().enumerate() {
        let c = if kk % 2 == 0 { c.clone() } else { -c };
        let exponent = if kk == 0 {
            StructuredExponent::plain(n - 1)
        } else {
            StructuredExponent::tower(kk as u64 * h * (p.get() - 1), p, alpha as u64, n - 1)
        };
        let row = match mstirling_mod_row(&exponent, m_max, p, precision) {
            Ok(row) => row,
            Err(e) => {
                return ms
                    .iter()
                    .map(|&m| CheckOutcome::undetermined(inst(m), e.to_string()))
                    .collect();
            }
        };
        let scaled: Vec<ModPE> = row.iter().map(|x| x.scale(&c)).collect();
        totals = Some(match totals {
            None => scaled,
            Some(acc) => acc
                .iter()
                .zip(&scaled)
                .map(|(a, b)| a.try_add(b).expect("same modulus"))
                .collect(),
        });
    }
    let totals = totals.expect("binomial row is nonempty");
    ms.iter()
        .map(|&m| {
            let lhs = trunc_val(&totals[m as usize]).into();
            CheckOutcome::judge(inst(m), lhs, thm14i_bound(p, alpha, l, n, m))
        })
        .collect()
}

/// Smallest `L` for which the factorial equality is asserted: the stable
/// threshold `max(N, N0)` for both `(2, n-1)` and `(2, n)`.
pub fn factorial_eq_min_l(n: u64) -> crate::error::Result<u64> {
    let two = Prime::new(2).expect("2 is prime");
    let a = stable_params(two, n - 1, DEFAULT_WINDOW)?;
    let b = stable_params(two, n, DEFAULT_WINDOW)?;
    Ok(a.l_min().max(b.l_min()))
}

/// `e_2(n-1, 2^L + n-1) = ord_2((n-1)!)` for even `n > 2`.
pub fn check_factorial_eq(n: u64, l: Option<u64>) -> CheckResult {
    let inst = Instance::new(&[("n", n as i64)]);
    if n <= 2 || !n.is_multiple_of(2) {
        return CheckResult::skipped(inst, "needs even n > 2");
    }
    let l_min = match factorial_eq_min_l(n) {
        Ok(v) => v,
        Err(e) => return CheckResult::Checked(CheckOutcome::undetermined(inst, e.to_string())),
    };
    let l = l.unwrap_or(l_min);
    if l < l_min {
        return CheckResult::skipped(inst, format!("needs L >= {l_min}"));
    }
    let two = Prime::new(2).expect("2 is prime");
    let k = StructuredExponent::tower(1u32, two, l, n - 1);
    let target = ord_factorial(two, n - 1) as i64;
    let res = match e_p(two, n - 1, &k, &EpOptions::default()) {
        Ok(res) => res,
        Err(e) => return CheckResult::Checked(CheckOutcome::undetermined(inst, e.to_string())),
    };
    let detail = format!(
        "L={l}, certificate {}, m in [{}, {}]",
        res.certificate, res.m_scanned.0, res.m_scanned.1
    );
    let out = match (res.certified, res.value) {
        (true, TruncatedValuation::Exact(v)) => {
            let mut out = CheckOutcome::judge(inst, Order::Finite(v as i64), target);
            out.holds = Tri::from(v as i64 == target);
            out
        }
        _ => {
            let mut out = CheckOutcome::judge(inst, res.value.into(), target);
            out.holds = Tri::Undetermined;
            out
        }
    };
    CheckResult::Checked(out.with_detail(detail))
}

fn identity_instance(n: u64, m: u64, r: i64, f: &IntPolynomial) -> Instance {
    Instance::new(&[("n", n as i64), ("m", m as i64), ("r", r)]).with_poly(f)
}

fn identity_outcome(inst: Instance, lhs: BigInt, rhs: BigInt) -> CheckOutcome {
    let equal = lhs == rhs;
    let detail = (!equal).then(|| format!("lhs={lhs} rhs={rhs}"));
    CheckOutcome::equality(inst, equal, detail)
}

/// The floor-sum identity
/// `Σ_k C(n,k)(-1)^k f(⌊(k-r)/m⌋) = -Σ_{k≡r-1+m} C(n-1,k)(-1)^k Δf((k-r+1-m)/m)`.
pub fn check_sun_identity(n: u64, m: u64, r: i64, f: &IntPolynomial) -> CheckResult {
    let inst = identity_instance(n, m, r, f);
    if n == 0 || m == 0 {
        return CheckResult::skipped(inst, "needs n >= 1 and m >= 1");
    }
    let (lhs, rhs) = sun_identity_sides(n, m, r, f);
    CheckResult::Checked(identity_outcome(inst, lhs, rhs))
}

/// The decomposition of a residue-class sum through `Δf`, see [`lemma33_sides`].
pub fn check_lemma33(n: u64, m: u64, r: i64, f: &IntPolynomial) -> CheckResult {
    let inst = identity_instance(n, m, r, f);
    if n == 0 || m == 0 {
        return CheckResult::skipped(inst, "needs n >= 1 and m >= 1");
    }
    let (lhs, rhs) = lemma33_sides(n, m, r, f);
    CheckResult::Checked(identity_outcome(inst, lhs, rhs))
}

/// Modulus `(p-1)p^t` of the congruence on `l`, with `t = ⌊log_p(n/p^α)⌋`,
/// and whether `n/p^α < 2`. `None` when `n < p^α`.
pub fn conj52_modulus(p: Prime, alpha: u32, n: u64) -> Option<(u64, bool)> {
    let m = prime_power(p, alpha);
    if n < m {
        return None;
    }
    let mut t = 0u32;
    while p.checked_pow(alpha + t + 1).is_some_and(|q| q <= n) {
        t += 1;
    }
    Some(((p.get() - 1) * p.checked_pow(t)?, n < 2 * m))
}

/// Residue that `l` must have modulo [`conj52_modulus`].
fn conj52_residue(p: Prime, alpha: u32, n: u64, r: i64) -> i64 {
    let m = prime_power(p, alpha) as i64;
    r.div_euclid(m) + (n as i64 - r).div_euclid(m)
}

/// Smallest `l >= ⌊n/p^α⌋` meeting the congruence, when the instance is in range.
pub fn conj52_smallest_l(p: Prime, alpha: u32, n: u64, r: i64) -> Option<u64> {
    let m = prime_power(p, alpha);
    if n + 1 < 2 * m {
        return None;
    }
    let (modulus, _) = conj52_modulus(p, alpha, n)?;
    let lo = n / m;
    let target = conj52_residue(p, alpha, n, r).rem_euclid(modulus as i64) as u64;
    let shift = (target + modulus - lo % modulus) % modulus;
    Some(lo + shift)
}

/// Equality in the carry-sharpened inequality when `l >= ⌊n/p^α⌋` meets the
/// congruence. `holds` is true exactly when the slack is 0. Instances with
/// `n/p^α < 2` use the modulus `p - 1` and are marked in `detail`.
pub fn check_conj52(p: Prime, alpha: u32, n: u64, r: i64, l: u64) -> CheckResult {
    conj52_eval(p, alpha, n, r, Some(l), &binomial_row(n))
}

pub fn conj52_batch(p: Prime, alpha: u32, n: u64, rs: &[i64], row: &[BigInt]) -> Vec<CheckResult> {
    rs.iter()
        .map(|&r| conj52_eval(p, alpha, n, r, None, row))
        .collect()
}

/// Marker placed in `detail` for the `n/p^α ∈ [1, 2)` instances.
pub const CONJ52_BOUNDARY: &str = "boundary: n/p^alpha < 2, modulus p-1";

fn conj52_eval(
    p: Prime,
    alpha: u32,
    n: u64,
    r: i64,
    l: Option<u64>,
    row: &[BigInt],
) -> CheckResult {
    let m = prime_power(p, alpha);
    let pre = |l: i64| inst5(p, alpha, n, r, "l", l);
    if n + 1 < 2 * m {
        return CheckResult::skipped(pre(l.map_or(-1, |l| l as i64)), "needs n >= 2p^alpha - 1");
    }
    let (modulus, boundary) = conj52_modulus(p, alpha, n).expect("n >= p^alpha");
    let l = match l {
        Some(l) => l,
        None => conj52_smallest_l(p, alpha, n, r).expect("preconditions checked"),
    };
    let inst = pre(l as i64);
    if l < n / m {
        return CheckResult::skipped(inst, "needs l >= floor(n/p^alpha)");
    }
    let target = conj52_residue(p, alpha, n, r).rem_euclid(modulus as i64) as u64;
    if l % modulus != target {
        return CheckResult::skipped(inst, format!("needs l = {target} mod {modulus}"));
    }
    let (base, tau) = strthm_parts(p, alpha, n, r);
    let sum: BigInt = alt_sum_row(row, n, r, m, &IntPolynomial::monomial(l as usize));
    let mut out = CheckOutcome::judge(inst, ord_int(p, &sum).into(), base + tau as i64);
    out.holds = Tri::from(out.slack == Some(0));
    if boundary {
        out.detail = Some(CONJ52_BOUNDARY.into());
    }
    CheckResult::Checked(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn combthm_examples() {
        let out = check_combthm(p(2), 2, 100, 0, &IntPolynomial::monomial(25));
        assert_eq!(out.slack, Some(0));
        assert_eq!(out.holds, Tri::True);
        for n in 0..9 {
            for r in -3..5 {
                let out = check_combthm(p(3), 2, n, r, &IntPolynomial::monomial(3));
                assert_eq!(out.bound, Some(0));
                assert_eq!(out.holds, Tri::True);
            }
        }
        assert!(check_combthm(p(3), 2, 100, 1, &IntPolynomial::monomial(7))
            .holds
            .is_true());
    }

    #[test]
    fn strthm_examples() {
        let out = check_strthm(p(3), 2, 9, 1, 3);
        assert_eq!(out.bound, Some(2));
        assert!(out.holds.is_true());
        for n in 0..40 {
            let a = check_strthm(p(3), 2, n, 18, 4);
            let b = check_combthm(p(3), 2, n, 18, &IntPolynomial::monomial(4));
            assert_eq!(a.bound, b.bound);
        }
        assert!(check_strthm(p(3), 2, 22, 5, 7).holds.is_true());
    }

    #[test]
    fn cor35_examples() {
        for (pp, a, n, r) in [(3u64, 1u32, 27u64, 2i64), (2, 2, 40, 5), (5, 1, 30, -2)] {
            let c = check_cor35(p(pp), a, n, r, 0);
            let d = check_combthm(p(pp), a, n, r, &IntPolynomial::constant(1));
            assert_eq!((c.lhs, c.bound), (d.lhs, d.bound));
        }
        assert!(check_cor35(p(3), 1, 27, 2, 4).holds.is_true());
        assert!(check_cor35(p(2), 2, 40, -3, 3).holds.is_true());
    }

    #[test]
    fn lemma31_and_weisman_examples() {
        let out = check_lemma31(p(3), 0, 7, 2);
        assert_eq!(out.lhs, Some(Order::Infinite));
        assert!(out.holds.is_true());
        assert!(check_lemma31(p(3), 2, 40, 5).holds.is_true());
        assert!(check_lemma31(p(2), 3, 100, 1).holds.is_true());

        let w = |pp, a, n, r| check_weisman(p(pp), a, n, r).outcome().cloned();
        assert!(w(3, 2, 40, 5).unwrap().holds.is_true());
        assert!(w(2, 4, 200, 7).unwrap().holds.is_true());
        let at_edge = w(3, 2, 3, 1).unwrap();
        assert_eq!(at_edge.bound, Some(0));
        assert!(matches!(
            check_weisman(p(3), 0, 3, 1),
            CheckResult::Skipped(_)
        ));
    }

    #[test]
    fn thm14i_examples() {
        // l = 0 leaves m!·S(n-1, m), which vanishes for m >= n
        let out = check_thm14i(p(3), 1, 1, 0, 12, 10);
        assert!(matches!(out.lhs, Some(Order::AtLeast(_))));
        assert!(out.holds.is_true());
        assert!(check_thm14i(p(3), 1, 1, 1, 29, 29).holds.is_true());
        assert!(check_thm14i(p(2), 2, 1, 2, 12, 10).holds.is_true());
    }

    #[test]
    fn thm14i_batch_matches_single() {
        let ms: Vec<u64> = (8..20).collect();
        let batch = thm14i_batch(p(3), 2, 2, 3, 8, &ms);
        for (out, &m) in batch.iter().zip(&ms) {
            assert_eq!(out, &check_thm14i(p(3), 2, 2, 3, m, 8));
        }
    }

    #[test]
    fn factorial_eq_examples() {
        for (n, v) in [(4u64, 1i64), (6, 3), (20, 16)] {
            let out = check_factorial_eq(n, None);
            let out = out.outcome().expect("checked");
            assert_eq!(out.lhs, Some(Order::Finite(v)), "n = {n}");
            assert!(out.holds.is_true());
        }
        assert!(matches!(
            check_factorial_eq(5, None),
            CheckResult::Skipped(_)
        ));
    }

    #[test]
    fn identities_hold_on_examples() {
        let f: IntPolynomial = "3*x^2-5*x+1".parse().unwrap();
        for (n, m, r) in [(10u64, 3u64, -4i64), (1, 1, 0), (25, 9, 12)] {
            assert!(check_sun_identity(n, m, r, &f)
                .outcome()
                .unwrap()
                .holds
                .is_true());
            assert!(check_lemma33(n, m, r, &f)
                .outcome()
                .unwrap()
                .holds
                .is_true());
        }
    }

    #[test]
    fn conj52_examples() {
        let l = conj52_smallest_l(p(3), 1, 8, 0).unwrap();
        assert!(l >= 2);
        let out = check_conj52(p(3), 1, 8, 0, l);
        assert_eq!(out.outcome().unwrap().slack, Some(0));
        assert!(matches!(
            check_conj52(p(3), 1, 8, 0, 0),
            CheckResult::Skipped(_)
        ));
        assert!(matches!(
            check_conj52(p(3), 1, 4, 0, 5),
            CheckResult::Skipped(_)
        ));
        // n = 2p^alpha - 1 is the only boundary case under the precondition
        assert_eq!(conj52_modulus(p(3), 1, 5), Some((2, true)));
        assert_eq!(conj52_modulus(p(3), 1, 6), Some((2, false)));
        assert_eq!(conj52_modulus(p(3), 1, 9), Some((6, false)));
    }
}
