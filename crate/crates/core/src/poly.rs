//! Sparse distributed polynomials over F_p with a positive weighted grading.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Zp;
use crate::monomial::{Monomial, MonomialOrder};

/// The ambient polynomial ring `S = F_p[x_1, ..., x_n]` with weights `d_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyRing {
    field: Zp,
    names: Vec<String>,
    weights: Vec<u32>,
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl PolyRing {
    pub fn new<S: Into<String>>(
        p: u64,
        vars: impl IntoIterator<Item = (S, u32)>,
    ) -> Result<Arc<Self>> {
        let field = Zp::new(p)?;
        let mut names = Vec::new();
        let mut weights = Vec::new();
        for (name, w) in vars {
            let name = name.into();
            if !valid_name(&name) {
                return Err(Error::InvalidVariable(format!(
                    "bad variable name {name:?}"
                )));
            }
            if names.contains(&name) {
                return Err(Error::InvalidVariable(format!("duplicate variable {name}")));
            }
            if w == 0 {
                return Err(Error::InvalidVariable(format!(
                    "variable {name} has weight 0"
                )));
            }
            names.push(name);
            weights.push(w);
        }
        Ok(Arc::new(PolyRing {
            field,
            names,
            weights,
        }))
    }

    /// Standard-graded ring with the given variable names.
    pub fn standard(p: u64, names: &[&str]) -> Result<Arc<Self>> {
        Self::new(p, names.iter().map(|n| (*n, 1)))
    }

    /// A copy of this ring with an extra weight-0 variable `t` in front,
    /// used for elimination.
    pub(crate) fn with_elimination_variable(&self) -> Arc<Self> {
        let mut names = vec!["_t".to_string()];
        names.extend(self.names.iter().cloned());
        let mut weights = vec![0];
        weights.extend(&self.weights);
        Arc::new(PolyRing {
            field: self.field,
            names,
            weights,
        })
    }

    #[inline]
    pub fn field(&self) -> Zp {
        self.field
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.field.characteristic()
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    #[inline]
    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn is_standard_graded(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }
}

/// Ring identity check: pointer equality first, then structural.
pub(crate) fn same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A polynomial in `S`. Terms are kept sorted by descending weighted grevlex
/// with no zero coefficients, so equal polynomials have equal term lists.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<(Monomial, u32)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}
impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

/// The arithmetic operations exposed by [`Polynomial::arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Upper bound on the initial hash capacity of a product.
const MUL_CAPACITY_CAP: usize = 1 << 16;

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: i64) -> Self {
        let c = ring.field.reduce_i64(c);
        Self::term(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, 1)
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Self {
        Self::term(ring, Monomial::variable(ring.nvars(), i), 1)
    }

    pub fn term(ring: &Arc<PolyRing>, m: Monomial, c: u32) -> Self {
        assert_eq!(m.nvars(), ring.nvars(), "monomial arity mismatch");
        let c = c % ring.characteristic();
        let terms = if c == 0 { Vec::new() } else { vec![(m, c)] };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms(
        ring: &Arc<PolyRing>,
        terms: impl IntoIterator<Item = (Monomial, u32)>,
    ) -> Self {
        let f = ring.field;
        let mut acc: HashMap<Monomial, u32> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), ring.nvars(), "monomial arity mismatch");
            let e = acc.entry(m).or_insert(0);
            *e = f.add(*e, f.reduce_u64(c as u64));
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        sort_desc(&mut terms, MonomialOrder::Grevlex, ring.weights());
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Wraps terms already sorted by descending grevlex with nonzero coefficients.
    pub(crate) fn from_sorted_terms(ring: &Arc<PolyRing>, terms: Vec<(Monomial, u32)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| {
            MonomialOrder::Grevlex.cmp(&w[0].0, &w[1].0, ring.weights()) == Ordering::Greater
        }));
        debug_assert!(terms.iter().all(|t| t.1 != 0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    #[inline]
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    /// Terms in descending grevlex order.
    #[inline]
    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Leading term under grevlex.
    pub fn leading_term(&self) -> Option<&(Monomial, u32)> {
        self.terms.first()
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// `a op b` with a ring check.
    pub fn arith(&self, other: &Polynomial, op: ArithOp) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(match op {
            ArithOp::Add => self.add_unchecked(other, false),
            ArithOp::Sub => self.add_unchecked(other, true),
            ArithOp::Mul => self.mul_unchecked(other),
        })
    }

    fn add_unchecked(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let f = self.ring.field;
        let w = self.ring.weights();
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let sgn = |c: u32| if negate { f.neg(c) } else { c };
        while i < a.len() && j < b.len() {
            match MonomialOrder::Grevlex.cmp(&a[i].0, &b[j].0, w) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), sgn(b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = f.add(a[i].1, sgn(b[j].1));
                    if c != 0 {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), sgn(*c))));
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let f = self.ring.field;
        let mut acc: HashMap<Monomial, u32> =
            HashMap::with_capacity(self.len().saturating_mul(other.len()).min(MUL_CAPACITY_CAP));
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let e = acc.entry(ma.mul(mb)).or_insert(0);
                *e = f.add(*e, f.mul(*ca, *cb));
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        sort_desc(&mut terms, MonomialOrder::Grevlex, self.ring.weights());
        Polynomial {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn neg(&self) -> Polynomial {
        let f = self.ring.field;
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), f.neg(*c)))
                .collect(),
        }
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let f = self.ring.field;
        let c = f.reduce_u64(c as u64);
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), f.mul(*a, c)))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), *c)).collect(),
        }
    }

    /// Scales so that the leading coefficient is 1.
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.scale(self.ring.field.inv(*c)),
        }
    }

    /// `f^k` by repeated squaring.
    pub fn pow(&self, mut k: u64) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.ring);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// `f^q` for `q` a power of the characteristic.
    pub fn frobenius_pow(&self, q: u64) -> Result<Polynomial> {
        self.ring.field.check_q(q)?;
        Ok(self.pow(q))
    }

    /// Term-wise `q`-th power; equals `f^q` when `q = p^e`.
    pub fn frobenius_termwise(&self, q: u64) -> Result<Polynomial> {
        self.ring.field.check_q(q)?;
        let f = self.ring.field;
        let q32 =
            u32::try_from(q).map_err(|_| Error::InvalidArgument(format!("q = {q} too large")))?;
        Ok(Polynomial::from_terms(
            &self.ring,
            self.terms.iter().map(|(m, c)| (m.pow(q32), f.pow(*c, q))),
        ))
    }

    /// Splits `f` into its weighted-homogeneous components.
    pub fn homogeneous_components(&self) -> BTreeMap<u64, Polynomial> {
        let mut parts: BTreeMap<u64, Vec<(Monomial, u32)>> = BTreeMap::new();
        for t in &self.terms {
            parts
                .entry(t.0.weighted_degree(self.ring.weights()))
                .or_default()
                .push(t.clone());
        }
        parts
            .into_iter()
            .map(|(d, terms)| {
                (
                    d,
                    Polynomial {
                        ring: self.ring.clone(),
                        terms,
                    },
                )
            })
            .collect()
    }

    /// Distinct weighted degrees of the terms, ascending.
    pub fn degree_split(&self) -> Vec<u64> {
        self.homogeneous_components().into_keys().collect()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree_split().len() <= 1
    }

    /// Weighted degree of the leading term (the degree of `f` when homogeneous).
    pub fn degree(&self) -> Option<u64> {
        self.terms
            .first()
            .map(|(m, _)| m.weighted_degree(self.ring.weights()))
    }

    /// Degree of a homogeneous polynomial; `Inhomogeneous` otherwise. Zero has no degree.
    pub fn homogeneous_degree(&self) -> Result<Option<u64>> {
        let degs = self.degree_split();
        match degs.len() {
            0 => Ok(None),
            1 => Ok(Some(degs[0])),
            _ => Err(Error::Inhomogeneous { degrees: degs }),
        }
    }

    pub fn derivative(&self, i: usize) -> Polynomial {
        let f = self.ring.field;
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.exponents()[i];
            if e == 0 {
                return None;
            }
            let mut m2 = m.clone();
            m2.exponents_mut()[i] -= 1;
            Some((m2, f.mul(*c, f.reduce_u64(e as u64))))
        });
        Polynomial::from_terms(&self.ring, terms)
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Polynomial) -> Option<Polynomial> {
        let (lm, lc) = d.terms.first()?;
        let f = self.ring.field;
        let inv = f.inv(*lc);
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.terms.first().cloned() {
            let qm = lm.quotient_of(&m)?;
            let qc = f.mul(c, inv);
            let t = Polynomial::term(&self.ring, qm.clone(), qc);
            rem = rem.add_unchecked(&d.mul_unchecked(&t), true);
            quot.push((qm, qc));
        }
        Some(Polynomial::from_terms(&self.ring, quot))
    }

    /// Re-embeds into `target`, which must be this ring with a weight-0
    /// variable prepended.
    pub(crate) fn lift_to_elimination(&self, target: &Arc<PolyRing>, t_exp: u32) -> Polynomial {
        Polynomial::from_terms(
            target,
            self.terms
                .iter()
                .map(|(m, c)| (m.with_prepended(t_exp), *c)),
        )
    }

    /// Prints using the symmetric coefficient representatives.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

pub(crate) fn sort_desc(terms: &mut [(Monomial, u32)], order: MonomialOrder, weights: &[u32]) {
    terms.sort_unstable_by(|a, b| order.cmp(&b.0, &a.0, weights));
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial, names: &[String]) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(&names[i])?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let field = self.ring.field;
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let s = field.symmetric(*c);
            let mag = s.unsigned_abs();
            match (k, s < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else {
                if mag != 1 {
                    write!(f, "{mag}*")?;
                }
                write_monomial(f, m, &self.ring.names)?;
            }
        }
        Ok(())
    }
}

/// Operator sugar. These panic on ring mismatch; use [`Polynomial::arith`] for
/// a checked variant.
impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.arith(rhs, ArithOp::Add).expect("ring mismatch in +")
    }
}
impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.arith(rhs, ArithOp::Sub).expect("ring mismatch in -")
    }
}
impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.arith(rhs, ArithOp::Mul).expect("ring mismatch in *")
    }
}
impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}
