//! Payoffs determined by the set of vertices visited infinitely often.
//!
//! A [`PayoffSpec`] is an ordered list of rules `if <condition> then <vector>`
//! plus a default vector. Conditions are Boolean formulas over atoms
//! `inf(v)`. Evaluation is first-match.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{GameError, VertexId};

/// Exact payoff value.
pub type Rational = Ratio<i64>;

/// Parses `"3"`, `"-1"` or `"2/3"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational, GameError> {
    let s = s.trim();
    let bad = || GameError::Parse(format!("invalid rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Ratio::new(n, d))
        }
        None => Ok(Ratio::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A payoff vector, one exact rational per player.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PayoffVector(pub Vec<Rational>);

impl PayoffVector {
    pub fn from_ints(v: &[i64]) -> Self {
        PayoffVector(v.iter().map(|&x| Ratio::from_integer(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> Rational {
        self.0[i]
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &PayoffVector) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Componentwise maximum.
    pub fn join(&self, other: &PayoffVector) -> PayoffVector {
        PayoffVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn zeros(n: usize) -> Self {
        PayoffVector(vec![Rational::zero(); n])
    }
}

impl fmt::Display for PayoffVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", format_rational(r))?;
        }
        write!(f, ")")
    }
}

impl FromStr for PayoffVector {
    type Err = GameError;

    /// Accepts `(0,0,1,1,1)` or `0,0,1,1,1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        if inner.trim().is_empty() {
            return Ok(PayoffVector(Vec::new()));
        }
        inner
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>, _>>()
            .map(PayoffVector)
    }
}

/// JSON literal for a rational: an integer or a string such as `"1/2"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalLit(pub Rational);

impl Serialize for RationalLit {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_integer() {
            s.serialize_i64(*self.0.numer())
        } else {
            s.serialize_str(&format_rational(&self.0))
        }
    }
}

impl<'de> Deserialize<'de> for RationalLit {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(i) => Ok(RationalLit(Ratio::from_integer(i))),
            Raw::Str(s) => parse_rational(&s)
                .map(RationalLit)
                .map_err(serde::de::Error::custom),
        }
    }
}

impl Serialize for PayoffVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let lits: Vec<RationalLit> = self.0.iter().map(|r| RationalLit(*r)).collect();
        lits.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PayoffVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let lits = Vec::<RationalLit>::deserialize(d)?;
        Ok(PayoffVector(lits.into_iter().map(|l| l.0).collect()))
    }
}

/// Boolean formula over `inf(v)` atoms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InfExpr {
    True,
    False,
    Inf(VertexId),
    Not(Box<InfExpr>),
    And(Box<InfExpr>, Box<InfExpr>),
    Or(Box<InfExpr>, Box<InfExpr>),
}

impl InfExpr {
    pub fn eval(&self, inf: &impl Fn(VertexId) -> bool) -> bool {
        match self {
            InfExpr::True => true,
            InfExpr::False => false,
            InfExpr::Inf(v) => inf(*v),
            InfExpr::Not(e) => !e.eval(inf),
            InfExpr::And(a, b) => a.eval(inf) && b.eval(inf),
            InfExpr::Or(a, b) => a.eval(inf) || b.eval(inf),
        }
    }

    pub fn collect_atoms(&self, out: &mut BTreeSet<VertexId>) {
        match self {
            InfExpr::True | InfExpr::False => {}
            InfExpr::Inf(v) => {
                out.insert(*v);
            }
            InfExpr::Not(e) => e.collect_atoms(out),
            InfExpr::And(a, b) | InfExpr::Or(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    /// Parses `inf(v1) & !(inf(v2) | inf(v3))`. Precedence: `!` over `&` over `|`.
    pub fn parse(
        src: &str,
        lookup: &impl Fn(&str) -> Option<VertexId>,
    ) -> Result<InfExpr, GameError> {
        let mut p = ExprParser { src, pos: 0, lookup };
        let e = p.or()?;
        p.skip_ws();
        if p.pos != src.len() {
            return Err(p.err("trailing input"));
        }
        Ok(e)
    }

    pub fn render(&self, names: &[String]) -> String {
        fn go(e: &InfExpr, names: &[String], prec: u8, out: &mut String) {
            match e {
                InfExpr::True => out.push_str("true"),
                InfExpr::False => out.push_str("false"),
                InfExpr::Inf(v) => {
                    out.push_str("inf(");
                    out.push_str(&names[v.index()]);
                    out.push(')');
                }
                InfExpr::Not(e) => {
                    out.push('!');
                    go(e, names, 3, out);
                }
                InfExpr::And(a, b) => {
                    if prec > 2 {
                        out.push('(');
                    }
                    go(a, names, 2, out);
                    out.push_str(" & ");
                    go(b, names, 3, out);
                    if prec > 2 {
                        out.push(')');
                    }
                }
                InfExpr::Or(a, b) => {
                    if prec > 1 {
                        out.push('(');
                    }
                    go(a, names, 1, out);
                    out.push_str(" | ");
                    go(b, names, 2, out);
                    if prec > 1 {
                        out.push(')');
                    }
                }
            }
        }
        let mut out = String::new();
        go(self, names, 0, &mut out);
        out
    }
}

struct ExprParser<'a, F> {
    src: &'a str,
    pos: usize,
    lookup: &'a F,
}

impl<F: Fn(&str) -> Option<VertexId>> ExprParser<'_, F> {
    fn err(&self, what: &str) -> GameError {
        GameError::Parse(format!(
            "payoff condition `{}`: {what} at offset {}",
            self.src, self.pos
        ))
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn or(&mut self) -> Result<InfExpr, GameError> {
        let mut e = self.and()?;
        while self.eat("|") {
            e = InfExpr::Or(Box::new(e), Box::new(self.and()?));
        }
        Ok(e)
    }

    fn and(&mut self) -> Result<InfExpr, GameError> {
        let mut e = self.unary()?;
        while self.eat("&") {
            e = InfExpr::And(Box::new(e), Box::new(self.unary()?));
        }
        Ok(e)
    }

    fn unary(&mut self) -> Result<InfExpr, GameError> {
        if self.eat("!") {
            return Ok(InfExpr::Not(Box::new(self.unary()?)));
        }
        if self.eat("(") {
            let e = self.or()?;
            if !self.eat(")") {
                return Err(self.err("expected `)`"));
            }
            return Ok(e);
        }
        if self.eat("true") {
            return Ok(InfExpr::True);
        }
        if self.eat("false") {
            return Ok(InfExpr::False);
        }
        if self.eat("inf") {
            if !self.eat("(") {
                return Err(self.err("expected `(` after inf"));
            }
            self.skip_ws();
            let start = self.pos;
            while let Some(c) = self.src[self.pos..].chars().next() {
                if c == ')' || c.is_whitespace() {
                    break;
                }
                self.pos += c.len_utf8();
            }
            let name = &self.src[start..self.pos];
            let v = (self.lookup)(name)
                .ok_or_else(|| GameError::UnknownVertex(name.to_string()))?;
            if !self.eat(")") {
                return Err(self.err("expected `)`"));
            }
            return Ok(InfExpr::Inf(v));
        }
        Err(self.err("expected `inf(v)`, `!`, `(`, `true` or `false`"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PayoffRule {
    pub condition: InfExpr,
    pub vector: PayoffVector,
}

/// First-match rule list over the Inf-set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PayoffSpec {
    pub rules: Vec<PayoffRule>,
    pub default: PayoffVector,
}

impl PayoffSpec {
    pub fn new(rules: Vec<PayoffRule>, default: PayoffVector, players: usize) -> Result<Self, GameError> {
        for v in rules.iter().map(|r| &r.vector).chain(std::iter::once(&default)) {
            if v.len() != players {
                return Err(GameError::PayoffArity {
                    expected: players,
                    got: v.len(),
                });
            }
        }
        Ok(PayoffSpec { rules, default })
    }

    /// Evaluates on an Inf-set given as a membership predicate.
    pub fn evaluate(&self, inf: impl Fn(VertexId) -> bool) -> &PayoffVector {
        self.rules
            .iter()
            .find(|r| r.condition.eval(&inf))
            .map(|r| &r.vector)
            .unwrap_or(&self.default)
    }

    pub fn payoff_of_inf_set(&self, inf: &BTreeSet<VertexId>) -> PayoffVector {
        self.evaluate(|v| inf.contains(&v)).clone()
    }

    /// Payoff of the ultimately periodic play `prefix · cycle^ω`.
    pub fn payoff_of_lasso(
        &self,
        _prefix: &[VertexId],
        cycle: &[VertexId],
    ) -> Result<PayoffVector, GameError> {
        if cycle.is_empty() {
            return Err(GameError::EmptyCycle);
        }
        let inf: BTreeSet<VertexId> = cycle.iter().copied().collect();
        Ok(self.payoff_of_inf_set(&inf))
    }

    /// Vertices mentioned by some `inf(v)` atom.
    pub fn atoms(&self) -> BTreeSet<VertexId> {
        let mut out = BTreeSet::new();
        for r in &self.rules {
            r.condition.collect_atoms(&mut out);
        }
        out
    }

    /// Distinct rule vectors followed by the default, in first-appearance order.
    pub fn distinct_vectors(&self) -> Vec<PayoffVector> {
        let mut out: Vec<PayoffVector> = Vec::new();
        for v in self.rules.iter().map(|r| &r.vector).chain(std::iter::once(&self.default)) {
            if !out.contains(v) {
                out.push(v.clone());
            }
        }
        out
    }

    /// Componentwise maximum over all vectors.
    pub fn max_vector(&self) -> PayoffVector {
        self.rules
            .iter()
            .map(|r| &r.vector)
            .fold(self.default.clone(), |acc, v| acc.join(v))
    }
}
