//! Payoff predicates such as `p[2]=1 & p[3]>=1 | p=(0,0,3,3,3)`.

use std::fmt;
use std::str::FromStr;

use crate::game::{parse_rational, PayoffVector, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CmpOp {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

impl CmpOp {
    fn holds(self, a: Rational, b: Rational) -> bool {
        match self {
            CmpOp::Eq => a == b,
            CmpOp::Ne => a != b,
            CmpOp::Lt => a < b,
            CmpOp::Le => a <= b,
            CmpOp::Gt => a > b,
            CmpOp::Ge => a >= b,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            CmpOp::Eq => "=",
            CmpOp::Ne => "!=",
            CmpOp::Lt => "<",
            CmpOp::Le => "<=",
            CmpOp::Gt => ">",
            CmpOp::Ge => ">=",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Query {
    True,
    False,
    Cmp(usize, CmpOp, Rational),
    Equals(PayoffVector),
    Not(Box<Query>),
    And(Box<Query>, Box<Query>),
    Or(Box<Query>, Box<Query>),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("predicate: {0}")]
pub struct QueryError(pub String);

impl Query {
    /// Exact equality with a payoff vector.
    pub fn exactly(p: PayoffVector) -> Query {
        Query::Equals(p)
    }

    pub fn eval(&self, p: &PayoffVector) -> bool {
        match self {
            Query::True => true,
            Query::False => false,
            Query::Cmp(i, op, c) => *i < p.len() && op.holds(p.get(*i), *c),
            Query::Equals(q) => q == p,
            Query::Not(q) => !q.eval(p),
            Query::And(a, b) => a.eval(p) && b.eval(p),
            Query::Or(a, b) => a.eval(p) || b.eval(p),
        }
    }

    /// Rejects component indices and vector lengths that do not fit `players`.
    pub fn check_arity(&self, players: usize) -> Result<(), QueryError> {
        match self {
            Query::True | Query::False => Ok(()),
            Query::Cmp(i, _, _) if *i >= players => Err(QueryError(format!(
                "p[{i}] out of range for {players} players"
            ))),
            Query::Cmp(..) => Ok(()),
            Query::Equals(q) if q.len() != players => Err(QueryError(format!(
                "vector of length {} for {players} players",
                q.len()
            ))),
            Query::Equals(_) => Ok(()),
            Query::Not(q) => q.check_arity(players),
            Query::And(a, b) | Query::Or(a, b) => {
                a.check_arity(players)?;
                b.check_arity(players)
            }
        }
    }
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Query::True => write!(f, "true"),
            Query::False => write!(f, "false"),
            Query::Cmp(i, op, c) => {
                write!(f, "p[{i}]{}{}", op.symbol(), crate::game::format_rational(c))
            }
            Query::Equals(p) => write!(f, "p={p}"),
            Query::Not(q) => write!(f, "!({q})"),
            Query::And(a, b) => write!(f, "({a} & {b})"),
            Query::Or(a, b) => write!(f, "({a} | {b})"),
        }
    }
}

impl FromStr for Query {
    type Err = QueryError;

    fn from_str(s: &str) -> Result<Query, QueryError> {
        let mut p = Parser { src: s, pos: 0 };
        let q = p.or()?;
        p.ws();
        if p.pos != s.len() {
            return Err(p.err("trailing input"));
        }
        Ok(q)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> QueryError {
        QueryError(format!("{msg} at offset {} in `{}`", self.pos, self.src))
    }

    fn ws(&mut self) {
        while self.rest().starts_with(char::is_whitespace) {
            self.pos += self.rest().chars().next().unwrap().len_utf8();
        }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn or(&mut self) -> Result<Query, QueryError> {
        let mut q = self.and()?;
        while self.eat("|") {
            q = Query::Or(Box::new(q), Box::new(self.and()?));
        }
        Ok(q)
    }

    fn and(&mut self) -> Result<Query, QueryError> {
        let mut q = self.unary()?;
        while self.eat("&") {
            q = Query::And(Box::new(q), Box::new(self.unary()?));
        }
        Ok(q)
    }

    fn unary(&mut self) -> Result<Query, QueryError> {
        if self.eat("!") {
            if self.rest().starts_with('=') {
                return Err(self.err("unexpected `=`"));
            }
            return Ok(Query::Not(Box::new(self.unary()?)));
        }
        if self.eat("(") {
            let q = self.or()?;
            if !self.eat(")") {
                return Err(self.err("expected `)`"));
            }
            return Ok(q);
        }
        if self.eat("true") {
            return Ok(Query::True);
        }
        if self.eat("false") {
            return Ok(Query::False);
        }
        if !self.eat("p") {
            return Err(self.err("expected `p[i]`, `p=(..)`, `!`, `(` or `true`"));
        }
        if self.eat("[") {
            let i = self.number()?;
            if !self.eat("]") {
                return Err(self.err("expected `]`"));
            }
            let op = self.op()?;
            let c = self.rational()?;
            return Ok(Query::Cmp(i, op, c));
        }
        if self.eat("=") && self.eat("(") {
            let mut v = vec![self.rational()?];
            while self.eat(",") {
                v.push(self.rational()?);
            }
            if !self.eat(")") {
                return Err(self.err("expected `)`"));
            }
            return Ok(Query::Equals(PayoffVector(v)));
        }
        Err(self.err("expected `[` or `=(` after `p`"))
    }

    fn op(&mut self) -> Result<CmpOp, QueryError> {
        for (tok, op) in [
            ("!=", CmpOp::Ne),
            ("<=", CmpOp::Le),
            (">=", CmpOp::Ge),
            ("==", CmpOp::Eq),
            ("=", CmpOp::Eq),
            ("<", CmpOp::Lt),
            (">", CmpOp::Gt),
        ] {
            if self.eat(tok) {
                return Ok(op);
            }
        }
        Err(self.err("expected comparison operator"))
    }

    fn token(&mut self) -> &str {
        self.ws();
        let start = self.pos;
        while self
            .rest()
            .starts_with(|c: char| c.is_ascii_digit() || c == '-' || c == '/')
        {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn number(&mut self) -> Result<usize, QueryError> {
        let t = self.token().to_string();
        t.parse().map_err(|_| self.err("expected index"))
    }

    fn rational(&mut self) -> Result<Rational, QueryError> {
        let t = self.token().to_string();
        parse_rational(&t).map_err(|_| self.err("expected rational"))
    }
}
