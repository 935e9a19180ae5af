//! Grid specifications for sweeps.
//!
//! ```text
//! p=2,3,5; alpha=0..3; n=1..200; r=-10..2*p^alpha; l=0..30
//! n=4..40:2
//! samples=10000; seed=7; n=1..60; m=1..9; r=-12..12; deg=0..5; coef=-9..9
//! ```
//!
//! Keys are separated by `;`, values by `,`. A value is an integer expression
//! or an inclusive range `a..b` with optional step `a..b:s`. Expressions use
//! `+ - * ^`, parentheses and the names of earlier keys. Keys iterate in the
//! order written, outermost first. `samples=N` draws `N` points at random,
//! each key uniformly from its value list, seeded by `seed`.

use std::collections::HashMap;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Expr {
    Num(i64),
    Var(String),
    Neg(Box<Expr>),
    Bin(char, Box<Expr>, Box<Expr>),
}

impl Expr {
    fn eval(&self, env: &HashMap<&str, i64>) -> Option<i64> {
        match self {
            Expr::Num(v) => Some(*v),
            Expr::Var(name) => env.get(name.as_str()).copied(),
            Expr::Neg(e) => e.eval(env)?.checked_neg(),
            Expr::Bin(op, a, b) => {
                let (a, b) = (a.eval(env)?, b.eval(env)?);
                match op {
                    '+' => a.checked_add(b),
                    '-' => a.checked_sub(b),
                    '*' => a.checked_mul(b),
                    '^' => u32::try_from(b).ok().and_then(|e| a.checked_pow(e)),
                    _ => unreachable!(),
                }
            }
        }
    }

    fn vars<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Expr::Num(_) => {}
            Expr::Var(v) => out.push(v),
            Expr::Neg(e) => e.vars(out),
            Expr::Bin(_, a, b) => {
                a.vars(out);
                b.vars(out);
            }
        }
    }
}

struct ExprParser<'a> {
    input: &'a str,
    src: &'a [u8],
    pos: usize,
}

impl<'a> ExprParser<'a> {
    fn parse(input: &'a str, text: &'a str) -> Result<Expr> {
        let mut p = ExprParser {
            input,
            src: text.as_bytes(),
            pos: 0,
        };
        let e = p.sum(text)?;
        if p.pos != p.src.len() {
            return Err(Error::parse(
                input,
                &text[p.pos..],
                "unexpected trailing input",
            ));
        }
        Ok(e)
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn sum(&mut self, text: &str) -> Result<Expr> {
        let mut lhs = self.product(text)?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.product(text)?;
            lhs = Expr::Bin(c as char, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn product(&mut self, text: &str) -> Result<Expr> {
        let mut lhs = self.unary(text)?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let rhs = self.unary(text)?;
            lhs = Expr::Bin('*', Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self, text: &str) -> Result<Expr> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.unary(text)?)));
        }
        self.power(text)
    }

    fn power(&mut self, text: &str) -> Result<Expr> {
        let base = self.atom(text)?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let exp = self.unary(text)?;
            return Ok(Expr::Bin('^', Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn atom(&mut self, text: &str) -> Result<Expr> {
        let start = self.pos;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.sum(text)?;
                if self.peek() != Some(b')') {
                    return Err(Error::parse(
                        self.input,
                        &text[start..],
                        "unbalanced parenthesis",
                    ));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let tok = &text[start..self.pos];
                tok.parse()
                    .map(Expr::Num)
                    .map_err(|_| Error::parse(self.input, tok, "integer out of range"))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                while self
                    .peek()
                    .is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_')
                {
                    self.pos += 1;
                }
                Ok(Expr::Var(text[start..self.pos].to_string()))
            }
            _ => Err(Error::parse(
                self.input,
                if start < text.len() {
                    &text[start..]
                } else {
                    text
                },
                "expected a number, a name or '('",
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Item {
    Single(Expr),
    Range(Expr, Expr, Option<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Param {
    name: String,
    items: Vec<Item>,
}

/// A parsed grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSpec {
    params: Vec<Param>,
    pub samples: Option<u64>,
    pub seed: u64,
    source: String,
}

/// Seed used when a sampled grid does not name one.
pub const DEFAULT_SEED: u64 = 20_241_017;

impl GridSpec {
    pub fn parse(input: &str) -> Result<Self> {
        let mut params: Vec<Param> = Vec::new();
        let mut samples = None;
        let mut seed = DEFAULT_SEED;
        for clause in input.split(';') {
            let clause = clause.trim();
            if clause.is_empty() {
                continue;
            }
            let (key, value) = clause
                .split_once('=')
                .ok_or_else(|| Error::parse(input, clause, "expected key=values"))?;
            let key = key.trim();
            let value: String = value.chars().filter(|c| !c.is_whitespace()).collect();
            if key.is_empty() || !key.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_') {
                return Err(Error::parse(input, key, "bad key"));
            }
            match key {
                "samples" | "seed" => {
                    let v: u64 = value.parse().map_err(|_| {
                        Error::parse(input, clause, "expected a nonnegative integer")
                    })?;
                    if key == "samples" {
                        samples = Some(v);
                    } else {
                        seed = v;
                    }
                    continue;
                }
                _ => {}
            }
            if params.iter().any(|p| p.name == key) {
                return Err(Error::parse(input, key, "duplicate key"));
            }
            let mut items = Vec::new();
            for piece in value.split(',') {
                if piece.is_empty() {
                    return Err(Error::parse(input, clause, "empty value"));
                }
                let item = match piece.split_once("..") {
                    None => Item::Single(ExprParser::parse(input, piece)?),
                    Some((lo, rest)) => {
                        let (hi, step) = match rest.split_once(':') {
                            None => (rest, None),
                            Some((hi, s)) => (hi, Some(ExprParser::parse(input, s)?)),
                        };
                        Item::Range(
                            ExprParser::parse(input, lo)?,
                            ExprParser::parse(input, hi)?,
                            step,
                        )
                    }
                };
                let mut used = Vec::new();
                match &item {
                    Item::Single(e) => e.vars(&mut used),
                    Item::Range(a, b, s) => {
                        a.vars(&mut used);
                        b.vars(&mut used);
                        if let Some(s) = s {
                            s.vars(&mut used);
                        }
                    }
                }
                if let Some(bad) = used.iter().find(|v| !params.iter().any(|p| p.name == **v)) {
                    return Err(Error::parse(
                        input,
                        *bad,
                        "refers to an undefined or later key",
                    ));
                }
                items.push(item);
            }
            params.push(Param {
                name: key.to_string(),
                items,
            });
        }
        if params.is_empty() {
            return Err(Error::parse(input, input, "grid defines no keys"));
        }
        Ok(GridSpec {
            params,
            samples,
            seed,
            source: input.to_string(),
        })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn names(&self) -> Vec<&str> {
        self.params.iter().map(|p| p.name.as_str()).collect()
    }

    /// Values of key `idx` given the values of the keys before it.
    pub(crate) fn values_at(&self, idx: usize, prefix: &[i64]) -> Result<Vec<i64>> {
        let env: HashMap<&str, i64> = self.params[..idx]
            .iter()
            .zip(prefix)
            .map(|(p, v)| (p.name.as_str(), *v))
            .collect();
        let name = &self.params[idx].name;
        let overflow = || {
            Error::parse(
                &self.source,
                name.as_str(),
                "expression overflows or is undefined",
            )
        };
        let mut out = Vec::new();
        for item in &self.params[idx].items {
            match item {
                Item::Single(e) => out.push(e.eval(&env).ok_or_else(overflow)?),
                Item::Range(a, b, s) => {
                    let lo = a.eval(&env).ok_or_else(overflow)?;
                    let hi = b.eval(&env).ok_or_else(overflow)?;
                    let step = match s {
                        Some(s) => s.eval(&env).ok_or_else(overflow)?,
                        None => 1,
                    };
                    if step <= 0 {
                        return Err(Error::parse(
                            &self.source,
                            name.as_str(),
                            "range step must be positive",
                        ));
                    }
                    let mut v = lo;
                    while v <= hi {
                        out.push(v);
                        v = match v.checked_add(step) {
                            Some(v) => v,
                            None => break,
                        };
                    }
                }
            }
        }
        Ok(out)
    }

    /// Cartesian enumeration as groups sharing every key but the last, in
    /// lexicographic order of the written keys.
    pub(crate) fn groups(&self) -> Result<Vec<(Vec<i64>, Vec<i64>)>> {
        let last = self.params.len() - 1;
        let mut out = Vec::new();
        let mut prefix = Vec::with_capacity(last);
        self.walk(0, last, &mut prefix, &mut out)?;
        Ok(out)
    }

    fn walk(
        &self,
        idx: usize,
        last: usize,
        prefix: &mut Vec<i64>,
        out: &mut Vec<(Vec<i64>, Vec<i64>)>,
    ) -> Result<()> {
        let values = self.values_at(idx, prefix)?;
        if idx == last {
            if !values.is_empty() {
                out.push((prefix.clone(), values));
            }
            return Ok(());
        }
        for v in values {
            prefix.push(v);
            self.walk(idx + 1, last, prefix, out)?;
            prefix.pop();
        }
        Ok(())
    }

    /// `samples` random points, each key drawn uniformly from its values.
    /// Points whose dependent ranges come out empty are redrawn.
    pub(crate) fn sample_points<R: rand::Rng>(
        &self,
        count: u64,
        rng: &mut R,
    ) -> Result<Vec<Vec<i64>>> {
        let mut out = Vec::with_capacity(count as usize);
        let mut attempts = 0u64;
        while (out.len() as u64) < count {
            attempts += 1;
            if attempts > count.saturating_mul(100).max(1000) {
                return Err(Error::parse(
                    &self.source,
                    "samples",
                    "grid has too few points to sample from",
                ));
            }
            let mut point = Vec::with_capacity(self.params.len());
            let mut ok = true;
            for idx in 0..self.params.len() {
                let values = self.values_at(idx, &point)?;
                if values.is_empty() {
                    ok = false;
                    break;
                }
                point.push(values[rng.gen_range(0..values.len())]);
            }
            if ok {
                out.push(point);
            }
        }
        Ok(out)
    }
}
