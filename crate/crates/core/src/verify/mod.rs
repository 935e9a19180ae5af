//! Mechanical checking of the inequalities and identities over parameter grids.

use std::fmt;
use std::str::FromStr;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::padic::{Tri, TruncatedValuation, Valuation};
use crate::poly::IntPolynomial;

pub mod checks;
pub mod grid;
pub mod sweep;

pub use checks::*;
pub use grid::GridSpec;
pub use sweep::{sweep, sweep_str, EqualityStats, SliceStats, SweepReport};

/// A p-adic order as seen by a check. `Finite` may be negative for the
/// rational sums of the falling-factorial check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    Finite(i64),
    Infinite,
    AtLeast(u64),
}

impl From<Valuation> for Order {
    fn from(v: Valuation) -> Self {
        match v {
            Valuation::Finite(v) => Order::Finite(v as i64),
            Valuation::Infinite => Order::Infinite,
        }
    }
}

impl From<TruncatedValuation> for Order {
    fn from(v: TruncatedValuation) -> Self {
        match v {
            TruncatedValuation::Exact(v) => Order::Finite(v as i64),
            TruncatedValuation::AtLeast(e) => Order::AtLeast(e),
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(v) => write!(f, "{v}"),
            Order::Infinite => f.write_str("inf"),
            Order::AtLeast(e) => write!(f, ">={e}"),
        }
    }
}

impl Serialize for Order {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Named parameter values of one instance, in grid order, plus the
/// polynomial for the identity checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub params: Vec<(&'static str, i64)>,
    pub poly: Option<IntPolynomial>,
}

impl Instance {
    pub fn new(params: &[(&'static str, i64)]) -> Self {
        Instance {
            params: params.to_vec(),
            poly: None,
        }
    }

    pub fn with_poly(mut self, f: &IntPolynomial) -> Self {
        self.poly = Some(f.clone());
        self
    }

    pub fn get(&self, name: &str) -> Option<i64> {
        self.params
            .iter()
            .find(|(k, _)| *k == name)
            .map(|(_, v)| *v)
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, v) in &self.params {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{k}={v}")?;
            first = false;
        }
        if let Some(poly) = &self.poly {
            write!(f, " f={poly}")?;
        }
        Ok(())
    }
}

impl Serialize for Instance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        for (k, v) in &self.params {
            map.serialize_entry(k, v)?;
        }
        if let Some(poly) = &self.poly {
            map.serialize_entry("f", &poly.to_string())?;
        }
        map.end()
    }
}

fn serialize_tri<S: Serializer>(t: &Tri, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(t)
}

/// Result of one instance of a check.
///
/// `holds` is false only when `lhs` is finite and below `bound` (or, for
/// equality statements, when the two sides differ).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub instance: Instance,
    pub lhs: Option<Order>,
    pub bound: Option<i64>,
    /// `lhs - bound` when both are finite.
    pub slack: Option<i64>,
    #[serde(serialize_with = "serialize_tri")]
    pub holds: Tri,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckOutcome {
    /// Compare an order against a lower bound.
    pub fn judge(instance: Instance, lhs: Order, bound: i64) -> Self {
        let (holds, slack) = match lhs {
            Order::Infinite => (Tri::True, None),
            Order::Finite(v) => (Tri::from(v >= bound), Some(v - bound)),
            Order::AtLeast(e) if e as i64 >= bound => (Tri::True, None),
            Order::AtLeast(_) => (Tri::Undetermined, None),
        };
        CheckOutcome {
            instance,
            lhs: Some(lhs),
            bound: Some(bound),
            slack,
            holds,
            detail: None,
        }
    }

    /// Outcome of an exact equality test.
    pub fn equality(instance: Instance, equal: bool, detail: Option<String>) -> Self {
        CheckOutcome {
            instance,
            lhs: None,
            bound: None,
            slack: None,
            holds: Tri::from(equal),
            detail,
        }
    }

    pub fn undetermined(instance: Instance, detail: String) -> Self {
        CheckOutcome {
            instance,
            lhs: None,
            bound: None,
            slack: None,
            holds: Tri::Undetermined,
            detail: Some(detail),
        }
    }

    fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: holds={}", self.instance, self.holds)?;
        if let Some(lhs) = self.lhs {
            write!(f, " lhs={lhs}")?;
        }
        if let Some(b) = self.bound {
            write!(f, " bound={b}")?;
        }
        if let Some(s) = self.slack {
            write!(f, " slack={s}")?;
        }
        if let Some(d) = &self.detail {
            write!(f, " ({d})")?;
        }
        Ok(())
    }
}

/// An instance outside a check's preconditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Skipped {
    pub instance: Instance,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckResult {
    Checked(CheckOutcome),
    Skipped(Skipped),
}

impl CheckResult {
    pub fn skipped(instance: Instance, reason: impl Into<String>) -> Self {
        CheckResult::Skipped(Skipped {
            instance,
            reason: reason.into(),
        })
    }

    pub fn outcome(&self) -> Option<&CheckOutcome> {
        match self {
            CheckResult::Checked(o) => Some(o),
            CheckResult::Skipped(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckName {
    CombThm,
    StrThm,
    Cor35,
    Lemma31,
    Weisman,
    Thm14i,
    FactorialEq,
    SunIdentity,
    Lemma33,
    Conj52,
}

impl CheckName {
    pub const ALL: [CheckName; 10] = [
        CheckName::CombThm,
        CheckName::StrThm,
        CheckName::Cor35,
        CheckName::Lemma31,
        CheckName::Weisman,
        CheckName::Thm14i,
        CheckName::FactorialEq,
        CheckName::SunIdentity,
        CheckName::Lemma33,
        CheckName::Conj52,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::CombThm => "combthm",
            CheckName::StrThm => "strthm",
            CheckName::Cor35 => "cor35",
            CheckName::Lemma31 => "lemma31",
            CheckName::Weisman => "weisman",
            CheckName::Thm14i => "thm14i",
            CheckName::FactorialEq => "factorial-eq",
            CheckName::SunIdentity => "sun-identity",
            CheckName::Lemma33 => "lemma33",
            CheckName::Conj52 => "conj52",
        }
    }

    /// Parameter names a grid for this check must define.
    pub fn params(self) -> &'static [&'static str] {
        match self {
            CheckName::CombThm | CheckName::StrThm | CheckName::Cor35 => {
                &["p", "alpha", "n", "r", "l"]
            }
            CheckName::Lemma31 | CheckName::Weisman | CheckName::Conj52 => {
                &["p", "alpha", "n", "r"]
            }
            CheckName::Thm14i => &["p", "alpha", "h", "l", "n", "m"],
            CheckName::FactorialEq => &["n"],
            CheckName::SunIdentity | CheckName::Lemma33 => &["n", "m", "r", "deg", "coef"],
        }
    }

    /// The parameter evaluated in bulk when it is the innermost grid key.
    pub(crate) fn batch_key(self) -> &'static str {
        match self {
            CheckName::CombThm | CheckName::StrThm | CheckName::Cor35 => "l",
            CheckName::Lemma31 | CheckName::Weisman | CheckName::Conj52 => "r",
            CheckName::Thm14i => "m",
            CheckName::FactorialEq => "n",
            CheckName::SunIdentity | CheckName::Lemma33 => "coef",
        }
    }

    pub(crate) fn slice_keys(self) -> &'static [&'static str] {
        match self {
            CheckName::FactorialEq => &[],
            CheckName::SunIdentity | CheckName::Lemma33 => &["m"],
            _ => &["p", "alpha"],
        }
    }

    pub fn is_conjecture(self) -> bool {
        self == CheckName::Conj52
    }

    pub fn is_identity(self) -> bool {
        matches!(self, CheckName::SunIdentity | CheckName::Lemma33)
    }

    /// Grid used for `--grid default`.
    pub fn default_grid(self) -> &'static str {
        match self {
            CheckName::CombThm | CheckName::StrThm | CheckName::Cor35 => {
                "p=2,3,5; alpha=0..3; n=1..200; r=-10..2*p^alpha; l=0..30"
            }
            CheckName::Lemma31 | CheckName::Weisman => {
                "p=2,3,5; alpha=0..3; n=1..200; r=-10..2*p^alpha"
            }
            CheckName::Thm14i => "p=2,3; alpha=0..3; h=1..2; l=0..3; n=2..30; m=n..n+20",
            CheckName::FactorialEq => "n=4..40:2",
            CheckName::SunIdentity | CheckName::Lemma33 => {
                "samples=10000; seed=20241017; n=1..60; m=1..9; r=-12..12; deg=0..5; coef=-9..9"
            }
            CheckName::Conj52 => "p=2,3,5; alpha=1..2; n=2*p^alpha-1..120; r=0..n",
        }
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckName::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::UnknownCheck(s.to_string()))
    }
}

impl Serialize for CheckName {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}
