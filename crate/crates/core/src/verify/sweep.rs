//! Running a check over a grid and summarizing the outcomes.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::checks::*;
use super::grid::GridSpec;
use super::{CheckName, CheckOutcome, CheckResult, Instance};
use crate::error::{Error, Result};
use crate::padic::{Prime, Tri};
use crate::poly::IntPolynomial;
use crate::polysum::binomial_row;

/// Undetermined instances listed in a report beyond the count.
const MAX_LISTED_UNDETERMINED: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SliceStats {
    pub slice: String,
    pub checked: u64,
    pub min_slack: Option<i64>,
    pub max_slack: Option<i64>,
}

/// Equality statistics of the conjecture sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EqualityStats {
    pub instances: u64,
    pub equalities: u64,
    pub rate: f64,
    /// Instances with `n/p^α < 2`, where the congruence modulus degenerates to `p - 1`.
    pub boundary: Vec<Instance>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub schema: u32,
    pub check: CheckName,
    pub grid: String,
    pub checked: u64,
    pub skipped: u64,
    pub undetermined: u64,
    /// Instances with `holds = false`; for the conjecture, every non-equality.
    pub violations: Vec<CheckOutcome>,
    pub undetermined_instances: Vec<CheckOutcome>,
    pub slices: Vec<SliceStats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equality: Option<EqualityStats>,
    #[serde(skip)]
    pub wall_time: Duration,
}

#[derive(Default)]
struct Acc {
    checked: u64,
    skipped: u64,
    undetermined: u64,
    violations: Vec<CheckOutcome>,
    undetermined_instances: Vec<CheckOutcome>,
    slices: Vec<SliceStats>,
    equalities: u64,
    boundary: Vec<Instance>,
}

impl Acc {
    fn absorb(&mut self, check: CheckName, result: CheckResult) {
        let out = match result {
            CheckResult::Skipped(_) => {
                self.skipped += 1;
                return;
            }
            CheckResult::Checked(out) => out,
        };
        self.checked += 1;
        let key = check
            .slice_keys()
            .iter()
            .filter_map(|k| out.instance.get(k).map(|v| format!("{k}={v}")))
            .collect::<Vec<_>>()
            .join(" ");
        let key = if key.is_empty() {
            "all".to_string()
        } else {
            key
        };
        let slice = match self.slices.iter().position(|s| s.slice == key) {
            Some(i) => &mut self.slices[i],
            None => {
                self.slices.push(SliceStats {
                    slice: key,
                    checked: 0,
                    min_slack: None,
                    max_slack: None,
                });
                self.slices.last_mut().unwrap()
            }
        };
        slice.checked += 1;
        if let Some(s) = out.slack {
            slice.min_slack = Some(slice.min_slack.map_or(s, |m| m.min(s)));
            slice.max_slack = Some(slice.max_slack.map_or(s, |m| m.max(s)));
        }
        if out.detail.as_deref() == Some(CONJ52_BOUNDARY) {
            self.boundary.push(out.instance.clone());
        }
        match out.holds {
            Tri::True => self.equalities += 1,
            Tri::False => self.violations.push(out),
            Tri::Undetermined => {
                self.undetermined += 1;
                if self.undetermined_instances.len() < MAX_LISTED_UNDETERMINED {
                    self.undetermined_instances.push(out);
                }
            }
        }
    }

    fn merge(&mut self, other: Acc) {
        self.checked += other.checked;
        self.skipped += other.skipped;
        self.undetermined += other.undetermined;
        self.equalities += other.equalities;
        self.violations.extend(other.violations);
        for u in other.undetermined_instances {
            if self.undetermined_instances.len() < MAX_LISTED_UNDETERMINED {
                self.undetermined_instances.push(u);
            }
        }
        self.boundary.extend(other.boundary);
        for s in other.slices {
            match self.slices.iter_mut().find(|t| t.slice == s.slice) {
                Some(t) => {
                    t.checked += s.checked;
                    t.min_slack = [t.min_slack, s.min_slack].into_iter().flatten().min();
                    t.max_slack = [t.max_slack, s.max_slack].into_iter().flatten().max();
                }
                None => self.slices.push(s),
            }
        }
    }
}

/// One unit of work: fixed values of the outer keys and the values of the
/// innermost key, or a single sampled point.
struct Group {
    prefix: Vec<i64>,
    tail: Vec<i64>,
    poly: Option<IntPolynomial>,
}

/// Named view of one point, indexed by the check's parameter list.
struct Point<'a> {
    names: &'a [&'a str],
    values: Vec<i64>,
}

impl Point<'_> {
    fn get(&self, name: &str) -> i64 {
        let idx = self
            .names
            .iter()
            .position(|n| *n == name)
            .expect("grid keys validated");
        self.values[idx]
    }
}

fn nonneg(v: i64) -> Option<u64> {
    u64::try_from(v).ok()
}

/// Validated `(p, α, n)` or the reason the point is out of range.
fn p_alpha_n(pt: &Point) -> std::result::Result<(Prime, u32, u64), String> {
    let p = nonneg(pt.get("p"))
        .and_then(|p| Prime::new(p).ok())
        .ok_or_else(|| format!("p = {} is not prime", pt.get("p")))?;
    let alpha = u32::try_from(pt.get("alpha")).map_err(|_| "alpha must be >= 0".to_string())?;
    if p.checked_pow(alpha).is_none() {
        return Err("p^alpha overflows".into());
    }
    let n = nonneg(pt.get("n")).ok_or("n must be >= 0")?;
    Ok((p, alpha, n))
}

fn raw_instance(names: &[&'static str], values: &[i64]) -> Instance {
    Instance::new(
        &names
            .iter()
            .copied()
            .zip(values.iter().copied())
            .collect::<Vec<_>>(),
    )
}

/// Evaluate `batch_values` of the batch key with every other key fixed.
fn eval_batch(check: CheckName, pt: &Point, batch: &[i64]) -> Vec<CheckResult> {
    let names = check.params();
    let skip_all = |reason: String| -> Vec<CheckResult> {
        let bk = check.batch_key();
        batch
            .iter()
            .map(|&b| {
                let values: Vec<i64> = names
                    .iter()
                    .map(|n| if *n == bk { b } else { pt.get(n) })
                    .collect();
                CheckResult::skipped(raw_instance(names, &values), reason.clone())
            })
            .collect()
    };
    let checked = |v: Vec<CheckOutcome>| v.into_iter().map(CheckResult::Checked).collect();

    match check {
        CheckName::CombThm | CheckName::StrThm | CheckName::Cor35 => {
            let (p, alpha, n) = match p_alpha_n(pt) {
                Ok(v) => v,
                Err(e) => return skip_all(e),
            };
            let r = pt.get("r");
            let Some(ls) = batch
                .iter()
                .map(|&l| nonneg(l))
                .collect::<Option<Vec<u64>>>()
            else {
                return skip_all("l must be >= 0".into());
            };
            let row = binomial_row(n);
            checked(match check {
                CheckName::CombThm => combthm_batch(p, alpha, n, r, &ls, &row),
                CheckName::StrThm => strthm_batch(p, alpha, n, r, &ls, &row),
                _ => cor35_batch(p, alpha, n, r, &ls, &row),
            })
        }
        CheckName::Lemma31 | CheckName::Weisman | CheckName::Conj52 => {
            let (p, alpha, n) = match p_alpha_n(pt) {
                Ok(v) => v,
                Err(e) => return skip_all(e),
            };
            let row = binomial_row(n);
            match check {
                CheckName::Lemma31 => checked(lemma31_batch(p, alpha, n, batch, &row)),
                CheckName::Weisman => weisman_batch(p, alpha, n, batch, &row),
                _ => conj52_batch(p, alpha, n, batch, &row),
            }
        }
        CheckName::Thm14i => {
            let (p, alpha, n) = match p_alpha_n(pt) {
                Ok(v) => v,
                Err(e) => return skip_all(e),
            };
            let (Some(h), Some(l)) = (nonneg(pt.get("h")), nonneg(pt.get("l"))) else {
                return skip_all("h and l must be >= 0".into());
            };
            if n == 0 {
                return skip_all("n must be >= 1".into());
            }
            let Some(ms) = batch
                .iter()
                .map(|&m| nonneg(m))
                .collect::<Option<Vec<u64>>>()
            else {
                return skip_all("m must be >= 0".into());
            };
            checked(thm14i_batch(p, alpha, h, l, n, &ms))
        }
        CheckName::FactorialEq => batch
            .iter()
            .map(|&n| match nonneg(n) {
                Some(n) => check_factorial_eq(n, None),
                None => CheckResult::skipped(Instance::new(&[("n", n)]), "n must be positive"),
            })
            .collect(),
        CheckName::SunIdentity | CheckName::Lemma33 => {
            unreachable!("identity checks run on sampled points")
        }
    }
}

fn eval_identity(check: CheckName, pt: &Point, f: &IntPolynomial) -> CheckResult {
    let (n, m, r) = (pt.get("n"), pt.get("m"), pt.get("r"));
    let (Some(n), Some(m)) = (nonneg(n), nonneg(m)) else {
        let inst = Instance::new(&[("n", n), ("m", m), ("r", r)]).with_poly(f);
        return CheckResult::skipped(inst, "n and m must be >= 0");
    };
    match check {
        CheckName::SunIdentity => check_sun_identity(n, m, r, f),
        _ => check_lemma33(n, m, r, f),
    }
}

fn validate_keys(check: CheckName, grid: &GridSpec) -> Result<()> {
    let names = grid.names();
    for want in check.params() {
        if !names.contains(want) {
            return Err(Error::parse(
                grid.source(),
                *want,
                format!("{check} needs key {want:?}"),
            ));
        }
    }
    for have in &names {
        if !check.params().contains(have) {
            return Err(Error::parse(
                grid.source(),
                *have,
                format!("{check} has no parameter {have:?}"),
            ));
        }
    }
    if check.is_identity() && grid.samples.is_none() {
        return Err(Error::parse(
            grid.source(),
            "samples",
            format!("{check} needs samples=N"),
        ));
    }
    Ok(())
}

fn build_groups(check: CheckName, grid: &GridSpec) -> Result<Vec<Group>> {
    let mut rng = ChaCha8Rng::seed_from_u64(grid.seed);
    if let Some(count) = grid.samples {
        let points = grid.sample_points(count, &mut rng)?;
        let names = grid.names();
        let mut groups = Vec::with_capacity(points.len());
        for pt in points {
            let poly = if check.is_identity() {
                let deg_idx = names.iter().position(|n| *n == "deg").expect("validated");
                let coef_idx = names.iter().position(|n| *n == "coef").expect("validated");
                let deg = usize::try_from(pt[deg_idx])
                    .map_err(|_| Error::parse(grid.source(), "deg", "degree must be >= 0"))?;
                let pool = grid.values_at(coef_idx, &pt[..coef_idx])?;
                let coeffs: Vec<BigInt> = (0..=deg)
                    .map(|_| BigInt::from(pool[rng.gen_range(0..pool.len())]))
                    .collect();
                Some(IntPolynomial::new(coeffs))
            } else {
                None
            };
            let last = *pt.last().expect("nonempty");
            groups.push(Group {
                prefix: pt[..pt.len() - 1].to_vec(),
                tail: vec![last],
                poly,
            });
        }
        return Ok(groups);
    }
    Ok(grid
        .groups()?
        .into_iter()
        .map(|(prefix, tail)| Group {
            prefix,
            tail,
            poly: None,
        })
        .collect())
}

fn eval_group(check: CheckName, grid_names: &[&'static str], group: &Group) -> Acc {
    let mut acc = Acc::default();
    let names = check.params();
    // reorder a full grid point into the check's parameter order
    let to_point = |values: &[i64]| Point {
        names,
        values: names
            .iter()
            .map(|n| values[grid_names.iter().position(|g| g == n).expect("validated")])
            .collect(),
    };
    let last = *grid_names.last().expect("nonempty");
    if let Some(f) = &group.poly {
        let mut full = group.prefix.clone();
        full.extend(&group.tail);
        acc.absorb(check, eval_identity(check, &to_point(&full), f));
        return acc;
    }
    if last == check.batch_key() {
        let mut full = group.prefix.clone();
        full.push(group.tail[0]);
        for r in eval_batch(check, &to_point(&full), &group.tail) {
            acc.absorb(check, r);
        }
    } else {
        for &t in &group.tail {
            let mut full = group.prefix.clone();
            full.push(t);
            let pt = to_point(&full);
            let b = pt.get(check.batch_key());
            for r in eval_batch(check, &pt, &[b]) {
                acc.absorb(check, r);
            }
        }
    }
    acc
}

/// Static key names for a validated grid.
fn static_names(check: CheckName, grid: &GridSpec) -> Vec<&'static str> {
    grid.names()
        .iter()
        .map(|n| *check.params().iter().find(|p| *p == n).expect("validated"))
        .collect()
}

/// Run `check` over `grid` on `jobs` worker threads. The report does not
/// depend on `jobs`: groups are evaluated independently and merged in grid
/// order.
pub fn sweep(check: CheckName, grid: &GridSpec, jobs: usize) -> Result<SweepReport> {
    let start = Instant::now();
    validate_keys(check, grid)?;
    let groups = build_groups(check, grid)?;
    let names = static_names(check, grid);
    let partials: Vec<Acc> = crate::with_worker_pool(jobs, || {
        groups
            .par_iter()
            .map(|g| eval_group(check, &names, g))
            .collect()
    });
    let mut acc = Acc::default();
    for part in partials {
        acc.merge(part);
    }
    let equality = check.is_conjecture().then(|| EqualityStats {
        instances: acc.checked,
        equalities: acc.equalities,
        rate: if acc.checked == 0 {
            0.0
        } else {
            acc.equalities as f64 / acc.checked as f64
        },
        boundary: std::mem::take(&mut acc.boundary),
    });
    Ok(SweepReport {
        schema: 1,
        check,
        grid: grid.source().to_string(),
        checked: acc.checked,
        skipped: acc.skipped,
        undetermined: acc.undetermined,
        violations: acc.violations,
        undetermined_instances: acc.undetermined_instances,
        slices: acc.slices,
        equality,
        wall_time: start.elapsed(),
    })
}

/// [`sweep`] on a grid string, where `default` selects the check's default grid.
pub fn sweep_str(check: CheckName, grid: &str, jobs: usize) -> Result<SweepReport> {
    let text = if grid.trim() == "default" {
        check.default_grid()
    } else {
        grid
    };
    sweep(check, &GridSpec::parse(text)?, jobs)
}

impl SweepReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# {} sweep\n", self.check);
        let _ = writeln!(s, "grid: `{}`\n", self.grid);
        let _ = writeln!(s, "| checked | skipped | undetermined | violations |");
        let _ = writeln!(s, "|---|---|---|---|");
        let _ = writeln!(
            s,
            "| {} | {} | {} | {} |\n",
            self.checked,
            self.skipped,
            self.undetermined,
            self.violations.len()
        );
        if let Some(eq) = &self.equality {
            let _ = writeln!(
                s,
                "equality: {}/{} ({:.2}%), boundary instances: {}\n",
                eq.equalities,
                eq.instances,
                eq.rate * 100.0,
                eq.boundary.len()
            );
        }
        if !self.slices.is_empty() {
            let _ = writeln!(s, "| slice | checked | min slack | max slack |");
            let _ = writeln!(s, "|---|---|---|---|");
            let opt = |v: Option<i64>| v.map_or("-".to_string(), |v| v.to_string());
            for sl in &self.slices {
                let _ = writeln!(
                    s,
                    "| {} | {} | {} | {} |",
                    sl.slice,
                    sl.checked,
                    opt(sl.min_slack),
                    opt(sl.max_slack)
                );
            }
            s.push('\n');
        }
        let title = if self.check.is_conjecture() {
            "non-equalities"
        } else {
            "violations"
        };
        if !self.violations.is_empty() {
            let _ = writeln!(s, "## {title}\n");
            for v in &self.violations {
                let _ = writeln!(s, "- {v}");
            }
            s.push('\n');
        }
        if !self.undetermined_instances.is_empty() {
            let _ = writeln!(s, "## undetermined\n");
            for v in &self.undetermined_instances {
                let _ = writeln!(s, "- {v}");
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_combthm_sweep_is_clean() {
        let rep = sweep_str(
            CheckName::CombThm,
            "p=2,3; alpha=0..2; n=1..40; r=-5..10; l=0..8",
            1,
        )
        .unwrap();
        assert!(rep.violations.is_empty());
        assert_eq!(rep.checked, 2 * 3 * 40 * 16 * 9);
        assert_eq!(rep.slices.len(), 6);
    }

    #[test]
    fn key_order_does_not_change_counts() {
        let a = sweep_str(
            CheckName::StrThm,
            "p=3; alpha=1..2; n=1..20; r=0..5; l=0..4",
            1,
        )
        .unwrap();
        let b = sweep_str(
            CheckName::StrThm,
            "p=3; alpha=1..2; n=1..20; l=0..4; r=0..5",
            1,
        )
        .unwrap();
        assert_eq!(
            (a.checked, a.violations.len()),
            (b.checked, b.violations.len())
        );
        assert_eq!(a.slices, b.slices);
    }

    #[test]
    fn reports_do_not_depend_on_jobs() {
        let g = "p=2,3; alpha=1..2; n=3..30; r=0..n";
        let a = sweep_str(CheckName::Conj52, g, 1).unwrap();
        let b = sweep_str(CheckName::Conj52, g, 4).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.to_markdown(), b.to_markdown());
    }

    #[test]
    fn identity_sweep_needs_samples() {
        assert!(sweep_str(CheckName::Lemma33, "n=1..3; m=1..2; r=0; deg=1; coef=1", 1).is_err());
        let rep = sweep_str(
            CheckName::SunIdentity,
            "samples=200; seed=5; n=1..30; m=1..9; r=-12..12; deg=0..5; coef=-9..9",
            1,
        )
        .unwrap();
        assert_eq!(rep.checked, 200);
        assert!(rep.violations.is_empty());
    }

    #[test]
    fn bad_keys_are_rejected() {
        assert!(sweep_str(CheckName::CombThm, "p=2; alpha=1; n=3; r=0", 1).is_err());
        assert!(sweep_str(CheckName::Lemma31, "p=2; alpha=1; n=3; r=0; q=1", 1).is_err());
    }

    #[test]
    fn non_prime_p_is_skipped() {
        let rep = sweep_str(CheckName::Lemma31, "p=4; alpha=1; n=3; r=0..2", 1).unwrap();
        assert_eq!((rep.checked, rep.skipped), (0, 3));
    }
}
