//! Text syntax for polynomials: `2x*y - 3z^2`, `x^3+y^3+z^3`.
//!
//! Terms are joined by `+`/`-`; a term is an optional decimal coefficient
//! followed by variable powers, with `*` optional between factors.
//! Whitespace is ignored everywhere. Runs of letters that are not a declared
//! variable are split into declared names when that is unambiguous from the
//! left, so `xy` reads as `x*y` in a ring with variables `x, y`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::{PolyRing, Polynomial};

/// Upper bound on a single exponent accepted from text.
pub const MAX_EXPONENT: u32 = 1 << 20;

struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    ring: &'a Arc<PolyRing>,
    len: usize,
}

fn err(column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        column,
        message: message.into(),
    }
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|c| c.1)
    }

    /// 1-based column of the current position in the original text.
    fn column(&self) -> usize {
        self.chars
            .get(self.pos)
            .map(|c| c.0 + 1)
            .unwrap_or(self.len + 1)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<(usize, String)> {
        let col = self.column();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| {
            (
                col,
                self.chars[start..self.pos].iter().map(|c| c.1).collect(),
            )
        })
    }

    fn ident(&mut self) -> Option<(usize, String)> {
        let col = self.column();
        if !matches!(self.peek(), Some(c) if c.is_ascii_alphabetic()) {
            return None;
        }
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        Some((
            col,
            self.chars[start..self.pos].iter().map(|c| c.1).collect(),
        ))
    }

    fn coefficient(&self, digits: &str) -> u32 {
        let f = self.ring.field();
        digits.bytes().fold(0u32, |acc, b| {
            f.add(
                f.mul(acc, 10 % f.characteristic()),
                f.reduce_u64((b - b'0') as u64),
            )
        })
    }

    /// Splits an identifier into declared variable names.
    fn resolve(&self, col: usize, name: &str) -> Result<Vec<usize>> {
        if let Some(i) = self.ring.index_of(name) {
            return Ok(vec![i]);
        }
        // split[k] = Some(index of the variable ending the prefix of length k)
        let n = name.len();
        let mut reach: Vec<Option<(usize, usize)>> = vec![None; n + 1];
        let mut ok = vec![false; n + 1];
        ok[0] = true;
        for end in 1..=n {
            for (vi, v) in self.ring.names().iter().enumerate() {
                let l = v.len();
                if l <= end && ok[end - l] && &name[end - l..end] == v.as_str() {
                    ok[end] = true;
                    reach[end] = Some((vi, end - l));
                    break;
                }
            }
        }
        if !ok[n] {
            return Err(err(col, format!("unknown variable {name:?}")));
        }
        let mut out = Vec::new();
        let mut end = n;
        while end > 0 {
            let (vi, start) = reach[end].expect("reachable prefix");
            out.push(vi);
            end = start;
        }
        out.reverse();
        Ok(out)
    }

    fn term(&mut self) -> Result<(Monomial, u32)> {
        let nv = self.ring.nvars();
        let mut exps = vec![0u32; nv];
        let mut coeff = 1u32 % self.ring.characteristic();
        let mut saw_anything = false;
        if let Some((_, d)) = self.digits() {
            coeff = self.coefficient(&d);
            saw_anything = true;
            if self.eat('*') && !matches!(self.peek(), Some(c) if c.is_ascii_alphabetic()) {
                return Err(err(self.column(), "expected a variable after '*'"));
            }
        }
        while let Some((col, name)) = self.ident() {
            saw_anything = true;
            let vars = self.resolve(col, &name)?;
            let mut exp = 1u32;
            if self.eat('^') {
                let Some((ecol, d)) = self.digits() else {
                    return Err(err(self.column(), "expected an exponent after '^'"));
                };
                exp = d
                    .parse::<u32>()
                    .ok()
                    .filter(|&e| e <= MAX_EXPONENT)
                    .ok_or_else(|| err(ecol, format!("exponent {d} too large")))?;
            }
            let last = vars.len() - 1;
            for (k, vi) in vars.into_iter().enumerate() {
                let e = if k == last { exp } else { 1 };
                exps[vi] = exps[vi]
                    .checked_add(e)
                    .filter(|&s| s <= MAX_EXPONENT)
                    .ok_or_else(|| err(col, "exponent too large"))?;
            }
            if self.eat('*') && !matches!(self.peek(), Some(c) if c.is_ascii_alphabetic()) {
                return Err(err(self.column(), "expected a variable after '*'"));
            }
        }
        if !saw_anything {
            return Err(err(self.column(), "expected a term"));
        }
        Ok((Monomial::from_exponents(&exps), coeff))
    }
}

/// Parses a polynomial over `ring`.
pub fn parse_polynomial(ring: &Arc<PolyRing>, text: &str) -> Result<Polynomial> {
    let chars: Vec<(usize, char)> = text
        .chars()
        .enumerate()
        .filter(|(_, c)| !c.is_whitespace())
        .collect();
    let mut cur = Cursor {
        chars,
        pos: 0,
        ring,
        len: text.chars().count(),
    };
    if cur.peek().is_none() {
        return Err(err(1, "empty polynomial"));
    }
    let f = ring.field();
    let mut terms = Vec::new();
    let mut first = true;
    loop {
        let negative = cur.eat('-');
        if !negative && !cur.eat('+') && !first {
            break;
        }
        first = false;
        let (m, c) = cur.term()?;
        terms.push((m, if negative { f.neg(c) } else { c }));
    }
    if cur.peek().is_some() {
        return Err(err(
            cur.column(),
            format!("unexpected character {:?}", cur.peek().unwrap()),
        ));
    }
    Ok(Polynomial::from_terms(ring, terms))
}
