//! Ordinals below ω^(ω³) in Cantor normal form.
//!
//! Exponents are [`GraphRank`]s ω²·a + ω·b + c, which is all the ranking
//! function ever produces.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// ω²·a + ω·b + c; ordered lexicographically on (a, b, c).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GraphRank {
    pub a: u64,
    pub b: u64,
    pub c: u64,
}

impl GraphRank {
    pub fn new(a: u64, b: u64, c: u64) -> Self {
        GraphRank { a, b, c }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0 && self.c == 0
    }
}

pub fn graph_rank_cmp(x: &GraphRank, y: &GraphRank) -> Ordering {
    x.cmp(y)
}

impl fmt::Display for GraphRank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.a {
            0 => {}
            1 => parts.push("w^2".to_string()),
            a => parts.push(format!("w^2*{a}")),
        }
        match self.b {
            0 => {}
            1 => parts.push("w".to_string()),
            b => parts.push(format!("w*{b}")),
        }
        if self.c > 0 || parts.is_empty() {
            parts.push(self.c.to_string());
        }
        f.write_str(&parts.join("+"))
    }
}

/// ⊕ ω^{β_i}·m_i, kept with strictly descending exponents and positive
/// multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Ordinal {
    terms: Vec<(GraphRank, u64)>,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal::default()
    }

    pub fn omega_pow(beta: GraphRank) -> Self {
        Ordinal {
            terms: vec![(beta, 1)],
        }
    }

    pub fn finite(n: u64) -> Self {
        Ordinal::from_terms([(GraphRank::default(), n)])
    }

    /// Normalises any list of (exponent, multiplicity) pairs.
    pub fn from_terms(terms: impl IntoIterator<Item = (GraphRank, u64)>) -> Self {
        let mut acc: BTreeMap<GraphRank, u64> = BTreeMap::new();
        for (e, m) in terms {
            if m > 0 {
                *acc.entry(e).or_default() += m;
            }
        }
        Ordinal {
            terms: acc.into_iter().rev().collect(),
        }
    }

    pub fn terms(&self) -> &[(GraphRank, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Lexicographic comparison of the CNF term lists.
pub fn ord_cmp(x: &Ordinal, y: &Ordinal) -> Ordering {
    for (s, t) in x.terms.iter().zip(&y.terms) {
        match s.0.cmp(&t.0).then(s.1.cmp(&t.1)) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    x.terms.len().cmp(&y.terms.len())
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        ord_cmp(self, other)
    }
}

pub fn natural_sum(x: &Ordinal, y: &Ordinal) -> Ordinal {
    Ordinal::from_terms(x.terms.iter().chain(&y.terms).copied())
}

/// Largest coefficient appearing anywhere in the normal form.
pub fn ord_norm(x: &Ordinal) -> u64 {
    x.terms
        .iter()
        .map(|(e, m)| (*m).max(e.a).max(e.b).max(e.c))
        .max()
        .unwrap_or(0)
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, m)| {
                if e.is_zero() {
                    return m.to_string();
                }
                let base = if e.a == 0 && e.b == 0 {
                    if e.c == 1 {
                        "w".to_string()
                    } else {
                        format!("w^{}", e.c)
                    }
                } else if *e == GraphRank::new(0, 1, 0) {
                    "w^w".to_string()
                } else {
                    format!("w^({e})")
                };
                if *m == 1 {
                    base
                } else {
                    format!("{base}*{m}")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Parses the printed form, e.g. `w^(w^2*2+w*2) + w^(w*3+1)*4 + 3`.
/// Terms may come in any order; the result is normalised.
pub fn parse_ordinal(s: &str) -> Result<Ordinal> {
    let mut p = Parser {
        s: s.as_bytes(),
        pos: 0,
    };
    let mut terms = Vec::new();
    p.ws();
    if p.eat(b'0') && p.at_end() {
        return Ok(Ordinal::zero());
    }
    p.pos = 0;
    loop {
        p.ws();
        terms.push(p.term()?);
        p.ws();
        if p.at_end() {
            break;
        }
        p.expect(b'+')?;
    }
    Ok(Ordinal::from_terms(terms))
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Malformed(format!("ordinal at byte {}: {msg}", self.pos))
    }
    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }
    fn at_end(&self) -> bool {
        self.pos >= self.s.len()
    }
    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }
    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }
    fn expect(&mut self, c: u8) -> Result<()> {
        self.ws();
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", c as char)))
        }
    }
    fn number(&mut self) -> Result<u64> {
        self.ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("expected a number"))
    }
    fn omega(&mut self) -> bool {
        self.ws();
        self.eat(b'w')
    }
    fn mult(&mut self) -> Result<u64> {
        self.ws();
        if self.eat(b'*') {
            self.number()
        } else {
            Ok(1)
        }
    }
    /// One summand of an ordinal: n | w | w^n | w^w | w^(rank), each
    /// optionally followed by `*m`.
    fn term(&mut self) -> Result<(GraphRank, u64)> {
        if !self.omega() {
            return Ok((GraphRank::default(), self.number()?));
        }
        self.ws();
        let exp = if self.eat(b'^') {
            self.ws();
            if self.eat(b'(') {
                let r = self.rank()?;
                self.expect(b')')?;
                r
            } else if self.omega() {
                GraphRank::new(0, 1, 0)
            } else {
                GraphRank::new(0, 0, self.number()?)
            }
        } else {
            GraphRank::new(0, 0, 1)
        };
        Ok((exp, self.mult()?))
    }
    /// ω²·a + ω·b + c written as a sum of `w^2*a`, `w*b`, `c` pieces.
    fn rank(&mut self) -> Result<GraphRank> {
        let mut r = GraphRank::default();
        loop {
            if self.omega() {
                self.ws();
                if self.eat(b'^') {
                    if self.number()? != 2 {
                        return Err(self.err("exponent must be below w^3"));
                    }
                    r.a += self.mult()?;
                } else {
                    r.b += self.mult()?;
                }
            } else {
                r.c += self.number()?;
            }
            self.ws();
            if !self.eat(b'+') {
                return Ok(r);
            }
        }
    }
}
