//! Line-oriented session files.
//!
//! ```text
//! # Fermat cubic
//! char 5
//! vars x:1 y:1 z:1
//! rel x^3 + y^3 + z^3
//! ideal I = x, y
//! elem f = z^2
//! assert cm
//! q 5,25
//! cap 40
//! seed 42
//! ```
//!
//! `#` starts a comment. `char` precedes `vars`, which precedes every
//! polynomial. `q`, `cap` and `seed` set command defaults.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use frobsat::{parse_polynomial, Ideal, PolyRing, Polynomial, Ring, Zp};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Assertion {
    Equidimensional,
    CohenMacaulay,
    Domain,
}

impl Assertion {
    pub fn keyword(&self) -> &'static str {
        match self {
            Assertion::Equidimensional => "equidim",
            Assertion::CohenMacaulay => "cm",
            Assertion::Domain => "domain",
        }
    }

    fn from_keyword(s: &str) -> Option<Self> {
        match s {
            "equidim" => Some(Assertion::Equidimensional),
            "cm" => Some(Assertion::CohenMacaulay),
            "domain" => Some(Assertion::Domain),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SessionFile {
    pub ring: Arc<Ring>,
    pub ideals: Vec<(String, Vec<Polynomial>)>,
    pub elements: Vec<(String, Polynomial)>,
    pub assertions: BTreeSet<Assertion>,
    pub q_list: Option<Vec<u64>>,
    pub cap: Option<u64>,
    pub seed: Option<u64>,
}

impl PartialEq for SessionFile {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = (self.ring.base(), other.ring.base());
        a.characteristic() == b.characteristic()
            && a.names() == b.names()
            && a.weights() == b.weights()
            && self.ring.relations() == other.ring.relations()
            && self.ideals == other.ideals
            && self.elements == other.elements
            && self.assertions == other.assertions
            && self.q_list == other.q_list
            && self.cap == other.cap
            && self.seed == other.seed
    }
}

impl SessionFile {
    pub fn base(&self) -> &Arc<PolyRing> {
        self.ring.base()
    }

    pub fn ideal_generators(&self, name: &str) -> Result<&[Polynomial]> {
        self.ideals
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, g)| g.as_slice())
            .ok_or_else(|| CliError::UnknownIdeal(name.to_string()))
    }

    pub fn ideal(&self, name: &str) -> Result<Ideal> {
        Ok(Ideal::new(
            &self.ring,
            self.ideal_generators(name)?.to_vec(),
        )?)
    }

    pub fn element(&self, name: &str) -> Result<&Polynomial> {
        self.elements
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, f)| f)
            .ok_or_else(|| CliError::UnknownElement(name.to_string()))
    }

    pub fn asserts(&self, a: Assertion) -> bool {
        self.assertions.contains(&a)
    }
}

fn join(items: impl IntoIterator<Item = String>, sep: &str) -> String {
    items.into_iter().collect::<Vec<_>>().join(sep)
}

impl fmt::Display for SessionFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = self.base();
        writeln!(f, "char {}", base.characteristic())?;
        let vars = base
            .names()
            .iter()
            .zip(base.weights())
            .map(|(n, w)| format!("{n}:{w}"));
        writeln!(f, "vars {}", join(vars, " "))?;
        for r in self.ring.relations() {
            writeln!(f, "rel {}", r.to_text())?;
        }
        for (name, gens) in &self.ideals {
            let gens = join(gens.iter().map(|g| g.to_text()), ", ");
            writeln!(f, "ideal {name} = {gens}")?;
        }
        for (name, e) in &self.elements {
            writeln!(f, "elem {name} = {}", e.to_text())?;
        }
        for a in &self.assertions {
            writeln!(f, "assert {}", a.keyword())?;
        }
        if let Some(q) = &self.q_list {
            writeln!(f, "q {}", join(q.iter().map(u64::to_string), ","))?;
        }
        if let Some(c) = self.cap {
            writeln!(f, "cap {c}")?;
        }
        if let Some(s) = self.seed {
            writeln!(f, "seed {s}")?;
        }
        Ok(())
    }
}

/// One input line, for column reporting.
struct Line<'a> {
    number: usize,
    text: &'a str,
}

impl<'a> Line<'a> {
    fn syntax(&self, offset: usize, message: impl Into<String>) -> CliError {
        CliError::Syntax {
            line: self.number,
            column: offset + 1,
            message: message.into(),
        }
    }

    fn invalid(&self, offset: usize, source: frobsat::Error) -> CliError {
        match source {
            frobsat::Error::Parse { column, message } => CliError::Syntax {
                line: self.number,
                column: offset + column,
                message,
            },
            source => CliError::Invalid {
                line: self.number,
                column: offset + 1,
                source,
            },
        }
    }

    /// Character offset of `part`, which must be a subslice of the line.
    fn offset_of(&self, part: &str) -> usize {
        let bytes = part.as_ptr() as usize - self.text.as_ptr() as usize;
        self.text[..bytes].chars().count()
    }
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_u64(line: &Line, token: &str, what: &str) -> Result<u64> {
    token.parse().map_err(|_| {
        line.syntax(
            line.offset_of(token),
            format!("expected {what}, found {token:?}"),
        )
    })
}

#[derive(Default)]
struct Builder {
    field: Option<Zp>,
    base: Option<Arc<PolyRing>>,
    relations: Vec<Polynomial>,
    ideals: Vec<(String, Vec<Polynomial>)>,
    elements: Vec<(String, Polynomial)>,
    assertions: BTreeSet<Assertion>,
    q_list: Option<Vec<u64>>,
    cap: Option<u64>,
    seed: Option<u64>,
}

impl Builder {
    fn base(&self, line: &Line, at: usize) -> Result<Arc<PolyRing>> {
        self.base
            .clone()
            .ok_or_else(|| line.syntax(at, "`vars` must come before polynomials"))
    }

    fn form(&self, line: &Line, text: &str) -> Result<Polynomial> {
        let text = text.trim();
        let at = line.offset_of(text);
        let base = self.base(line, at)?;
        let f = parse_polynomial(&base, text).map_err(|e| line.invalid(at, e))?;
        f.homogeneous_degree().map_err(|e| line.invalid(at, e))?;
        Ok(f)
    }

    fn name_taken(&self, name: &str) -> bool {
        self.ideals.iter().any(|(n, _)| n == name) || self.elements.iter().any(|(n, _)| n == name)
    }

    fn definition<'t>(&self, line: &Line, rest: &'t str) -> Result<(String, &'t str)> {
        let Some(eq) = rest.find('=') else {
            return Err(line.syntax(line.offset_of(rest), "expected `<name> = ...`"));
        };
        let name = rest[..eq].trim();
        if !valid_name(name) {
            return Err(line.syntax(line.offset_of(rest), format!("invalid name {name:?}")));
        }
        if self.name_taken(name) {
            return Err(line.syntax(
                line.offset_of(rest),
                format!("name {name:?} is already defined"),
            ));
        }
        Ok((name.to_string(), &rest[eq + 1..]))
    }

    fn line(&mut self, line: &Line) -> Result<()> {
        let body = match line.text.find('#') {
            Some(k) => &line.text[..k],
            None => line.text,
        };
        let trimmed = body.trim();
        if trimmed.is_empty() {
            return Ok(());
        }
        let (keyword, rest) = match trimmed.find(char::is_whitespace) {
            Some(k) => (&trimmed[..k], trimmed[k..].trim_start()),
            None => (trimmed, &trimmed[trimmed.len()..]),
        };
        let kw_at = line.offset_of(keyword);
        match keyword {
            "char" => {
                if self.field.is_some() {
                    return Err(line.syntax(kw_at, "duplicate `char`"));
                }
                let p = parse_u64(line, rest, "a prime")?;
                self.field = Some(Zp::new(p).map_err(|e| line.invalid(line.offset_of(rest), e))?);
            }
            "vars" => {
                let field = self
                    .field
                    .ok_or_else(|| line.syntax(kw_at, "`char` must come before `vars`"))?;
                if self.base.is_some() {
                    return Err(line.syntax(kw_at, "duplicate `vars`"));
                }
                let mut vars = Vec::new();
                for token in rest.split_whitespace() {
                    let (name, weight) = match token.split_once(':') {
                        Some((n, w)) => {
                            let w: u32 = w.parse().map_err(|_| {
                                line.syntax(line.offset_of(w), format!("invalid weight {w:?}"))
                            })?;
                            (n, w)
                        }
                        None => (token, 1),
                    };
                    vars.push((name.to_string(), weight));
                }
                if vars.is_empty() {
                    return Err(line.syntax(kw_at, "`vars` needs at least one variable"));
                }
                let base = PolyRing::new(field.characteristic() as u64, vars)
                    .map_err(|e| line.invalid(line.offset_of(rest), e))?;
                self.base = Some(base);
            }
            "rel" => {
                let f = self.form(line, rest)?;
                if f.is_zero() {
                    return Err(line.syntax(line.offset_of(rest), "relation is zero"));
                }
                self.relations.push(f);
            }
            "ideal" => {
                let (name, list) = self.definition(line, rest)?;
                let mut gens = Vec::new();
                if !list.trim().is_empty() {
                    for part in list.split(',') {
                        gens.push(self.form(line, part)?);
                    }
                }
                self.ideals.push((name, gens));
            }
            "elem" => {
                let (name, text) = self.definition(line, rest)?;
                let f = self.form(line, text)?;
                self.elements.push((name, f));
            }
            "assert" => {
                let a = Assertion::from_keyword(rest).ok_or_else(|| {
                    line.syntax(line.offset_of(rest), format!("unknown assertion {rest:?}"))
                })?;
                self.assertions.insert(a);
            }
            "q" => {
                let field = self
                    .field
                    .ok_or_else(|| line.syntax(kw_at, "`char` must come before `q`"))?;
                let mut qs = Vec::new();
                for token in rest.split(',') {
                    let token = token.trim();
                    let q = parse_u64(line, token, "a power of the characteristic")?;
                    field
                        .check_q(q)
                        .map_err(|e| line.invalid(line.offset_of(token), e))?;
                    if qs.last().is_some_and(|&last| last >= q) {
                        return Err(line
                            .syntax(line.offset_of(token), "q values must be strictly ascending"));
                    }
                    qs.push(q);
                }
                self.q_list = Some(qs);
            }
            "cap" => self.cap = Some(parse_u64(line, rest, "a degree cap")?),
            "seed" => self.seed = Some(parse_u64(line, rest, "a seed")?),
            other => return Err(line.syntax(kw_at, format!("unknown keyword {other:?}"))),
        }
        Ok(())
    }
}

/// Parses a session; errors carry 1-based line and column numbers.
pub fn parse_session(text: &str) -> Result<SessionFile> {
    let mut b = Builder::default();
    let mut last = 0;
    for (k, raw) in text.split('\n').enumerate() {
        let raw = raw.strip_suffix('\r').unwrap_or(raw);
        b.line(&Line {
            number: k + 1,
            text: raw,
        })?;
        last = k + 1;
    }
    let base = b.base.ok_or(CliError::Syntax {
        line: last,
        column: 1,
        message: "missing `vars` line".into(),
    })?;
    let ring = Ring::new(base, b.relations)?;
    Ok(SessionFile {
        ring,
        ideals: b.ideals,
        elements: b.elements,
        assertions: b.assertions,
        q_list: b.q_list,
        cap: b.cap,
        seed: b.seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fermat_session() {
        let s = parse_session("char 5\nvars x:1 y:1 z:1\nrel x^3+y^3+z^3\nideal I = x, y").unwrap();
        assert_eq!(s.ring.relations().len(), 1);
        assert_eq!(s.ideal_generators("I").unwrap().len(), 2);
        assert_eq!(parse_session(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn errors_have_positions() {
        let e = parse_session("char 4\nvars x").unwrap_err();
        assert!(
            matches!(
                e,
                CliError::Invalid {
                    line: 1,
                    column: 6,
                    source: frobsat::Error::InvalidPrime(4)
                }
            ),
            "{e}"
        );
        let e = parse_session("char 2\nvars x:1 y:1\nideal I = x + y^2").unwrap_err();
        match e {
            CliError::Invalid {
                line: 3,
                column: 11,
                source: frobsat::Error::Inhomogeneous { degrees },
            } => {
                assert_eq!(degrees, vec![1, 2])
            }
            other => panic!("{other}"),
        }
        let e = parse_session("char 2\nvars x y\nelem f = x + w").unwrap_err();
        assert!(
            matches!(
                e,
                CliError::Syntax {
                    line: 3,
                    column: 14,
                    ..
                }
            ),
            "{e}"
        );
        assert!(parse_session("char 2\nvars x\nideal I = x\nelem I = x").is_err());
        assert!(parse_session("vars x").is_err());
        assert!(parse_session("char 2\nvars x\nq 4,2").is_err());
        assert!(parse_session("char 2\nvars x\nq 3").is_err());
        assert!(parse_session("char 2\nvars x\nfrob 3").is_err());
    }

    #[test]
    fn comments_defaults_and_unit_weights() {
        let s = parse_session(
            "# c\nchar 3 # prime\nvars a b:2\nq 3,9\ncap 7\nseed 1\nassert domain\nideal Z =\n",
        )
        .unwrap();
        assert_eq!(s.base().weights(), &[1, 2]);
        assert_eq!(s.q_list, Some(vec![3, 9]));
        assert!(s.ideal_generators("Z").unwrap().is_empty());
        assert!(s.asserts(Assertion::Domain));
        assert_eq!(parse_session(&s.to_string()).unwrap(), s);
    }
}
