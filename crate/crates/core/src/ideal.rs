//! Ideal calculus in `R = S/K`: sums, products, Frobenius powers, colons,
//! saturations, intersections, dimension and Hilbert data.
//!
//! Every ideal is represented by generators in `S`; the relations `K` are
//! adjoined whenever a basis is computed, so all statements are about ideals
//! of `R`. Equality is equality of reduced grevlex bases of `gens + K`.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::groebner::{buchberger_unchecked, GroebnerBasis};
use crate::monomial::{monomials_of_degree, Monomial, MonomialOrder};
use crate::poly::{same_ring, PolyRing, Polynomial};
use crate::ring::Ring;

/// A homogeneous ideal of `R`.
#[derive(Clone)]
pub struct Ideal {
    ring: Arc<Ring>,
    gens: Vec<Polynomial>,
    gb: Arc<OnceLock<GroebnerBasis>>,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal({self})")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, g) in self.gens.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        if self.gens.is_empty() {
            f.write_str("0")?;
        }
        f.write_str(")")
    }
}

/// Binary ideal constructions of [`Ideal::combine`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CombineOp {
    Sum,
    Product,
}

/// Graded dimensions of `R/A` for degrees `0..=cap`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertTable {
    pub dims: Vec<usize>,
    pub exact_dimension_zero: bool,
}

impl Ideal {
    /// Validates ring membership and homogeneity of every generator.
    pub fn new(ring: &Arc<Ring>, gens: Vec<Polynomial>) -> Result<Ideal> {
        for g in &gens {
            if !same_ring(g.ring(), ring.base()) {
                return Err(Error::RingMismatch);
            }
            g.homogeneous_degree()?;
        }
        Ok(Self::from_gens_unchecked(ring, gens))
    }

    pub(crate) fn from_gens_unchecked(ring: &Arc<Ring>, gens: Vec<Polynomial>) -> Ideal {
        debug_assert!(gens.iter().all(|g| g.is_homogeneous()));
        Ideal {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            gb: Arc::new(OnceLock::new()),
        }
    }

    fn from_gb(ring: &Arc<Ring>, gb: GroebnerBasis) -> Ideal {
        let gens = gb.basis();
        let cell = OnceLock::new();
        let _ = cell.set(gb);
        Ideal {
            ring: ring.clone(),
            gens,
            gb: Arc::new(cell),
        }
    }

    pub fn zero(ring: &Arc<Ring>) -> Ideal {
        Self::from_gens_unchecked(ring, Vec::new())
    }

    pub fn unit(ring: &Arc<Ring>) -> Ideal {
        Self::from_gens_unchecked(ring, vec![Polynomial::one(ring.base())])
    }

    /// The irrelevant ideal generated by all variables.
    pub fn irrelevant(ring: &Arc<Ring>) -> Ideal {
        let n = ring.base().nvars();
        Self::from_gens_unchecked(ring, (0..n).map(|i| ring.var(i)).collect())
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn base(&self) -> &Arc<PolyRing> {
        self.ring.base()
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    /// Reduced grevlex basis of `gens + K`.
    pub fn gb(&self) -> &GroebnerBasis {
        self.gb.get_or_init(|| {
            let mut all = self.gens.clone();
            all.extend(self.ring.relations().iter().cloned());
            buchberger_unchecked(self.ring.base(), &all, MonomialOrder::Grevlex)
        })
    }

    /// Canonical generators: the reduced grevlex basis of `gens + K`.
    pub fn canonical_generators(&self) -> Vec<Polynomial> {
        self.gb().basis()
    }

    fn check(&self, other: &Ideal) -> Result<()> {
        if self.ring.same_as(&other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    fn check_poly(&self, f: &Polynomial) -> Result<()> {
        if same_ring(f.ring(), self.ring.base()) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        self.check_poly(f)?;
        Ok(self.gb().normal_form_unchecked(f).is_zero())
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        self.check_poly(f)?;
        Ok(self.gb().normal_form_unchecked(f))
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        self.check(other)?;
        let gb = self.gb();
        Ok(other
            .gens
            .iter()
            .all(|g| gb.normal_form_unchecked(g).is_zero()))
    }

    pub fn same_ideal(&self, other: &Ideal) -> Result<bool> {
        self.check(other)?;
        Ok(self.gb() == other.gb())
    }

    pub fn is_unit(&self) -> bool {
        self.gb().is_unit()
    }

    /// `true` iff the ideal is zero in `R`.
    pub fn is_zero(&self) -> bool {
        self.gens.iter().all(|g| self.ring.is_zero_in_quotient(g))
    }

    pub fn combine(&self, other: &Ideal, op: CombineOp) -> Result<Ideal> {
        self.check(other)?;
        let gens = match op {
            CombineOp::Sum => self.gens.iter().chain(&other.gens).cloned().collect(),
            CombineOp::Product => self
                .gens
                .iter()
                .flat_map(|a| other.gens.iter().map(move |b| a * b))
                .collect(),
        };
        Ok(Self::from_gens_unchecked(&self.ring, gens))
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.combine(other, CombineOp::Sum)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.combine(other, CombineOp::Product)
    }

    /// `self + (f)`.
    pub fn with_element(&self, f: &Polynomial) -> Result<Ideal> {
        self.check_poly(f)?;
        f.homogeneous_degree()?;
        let mut gens = self.gens.clone();
        gens.push(f.clone());
        Ok(Self::from_gens_unchecked(&self.ring, gens))
    }

    /// `I^[q]`, generated by the `q`-th powers of the generators.
    pub fn frobenius_power(&self, q: u64) -> Result<Ideal> {
        self.ring.base().field().check_q(q)?;
        let gens = self.gens.iter().map(|g| g.pow(q)).collect();
        Ok(Self::from_gens_unchecked(&self.ring, gens))
    }

    /// `(self + K) ∩ (other + K)`.
    pub fn intersection(&self, other: &Ideal) -> Result<Ideal> {
        self.check(other)?;
        if self.is_unit() {
            return Ok(other.clone());
        }
        if other.is_unit() {
            return Ok(self.clone());
        }
        let gb = intersect_in_s(self.ring.base(), &self.gb().basis(), &other.gb().basis());
        Ok(Self::from_gb(&self.ring, gb))
    }

    /// `self : (b) = {r : r b ∈ self}`.
    pub fn colon_element(&self, b: &Polynomial) -> Result<Ideal> {
        self.check_poly(b)?;
        b.homogeneous_degree()?;
        if self.contains(b)? {
            return Ok(Self::unit(&self.ring));
        }
        let inter = intersect_in_s(
            self.ring.base(),
            &self.gb().basis(),
            std::slice::from_ref(b),
        );
        let quotients: Vec<Polynomial> = inter
            .basis()
            .into_iter()
            .map(|h| {
                h.div_exact(b)
                    .expect("intersection with (b) is divisible by b")
                    .monic()
            })
            .collect();
        Ok(Self::from_gens_unchecked(&self.ring, quotients))
    }

    /// `self : other`, the intersection of the colons by each generator.
    pub fn colon(&self, other: &Ideal) -> Result<Ideal> {
        self.check(other)?;
        let nonzero: Vec<&Polynomial> = other
            .gens
            .iter()
            .filter(|g| !self.ring.is_zero_in_quotient(g))
            .collect();
        if nonzero.is_empty() {
            return Err(Error::InvalidArgument("colon by the zero ideal".into()));
        }
        let mut acc: Option<Ideal> = None;
        for b in nonzero {
            let c = self.colon_element(b)?;
            if c.is_unit() {
                continue;
            }
            acc = Some(match acc {
                None => c,
                Some(a) => a.intersection(&c)?,
            });
        }
        Ok(acc.unwrap_or_else(|| Self::unit(&self.ring)))
    }

    /// `self : f^∞`, by iterating `A ← A : (f)` to a fixpoint.
    pub fn saturate_wrt(&self, f: &Polynomial) -> Result<Ideal> {
        self.check_poly(f)?;
        if f.is_zero() {
            return Err(Error::InvalidArgument("saturation by zero".into()));
        }
        let mut cur = self.clone();
        loop {
            let next = cur.colon_element(f)?;
            if next.same_ideal(&cur)? {
                return Ok(cur);
            }
            cur = next;
        }
    }

    /// `self : m^∞` with `m` the irrelevant ideal.
    pub fn saturate_irrelevant(&self) -> Result<Ideal> {
        let m = Self::irrelevant(&self.ring);
        if m.is_zero() {
            return Ok(self.clone());
        }
        let mut cur = self.clone();
        loop {
            let next = cur.colon(&m)?;
            if next.same_ideal(&cur)? {
                return Ok(cur);
            }
            cur = next;
        }
    }

    /// Krull dimension of `R/self`; `None` for the unit ideal.
    pub fn dimension(&self) -> Option<usize> {
        let gb = self.gb();
        if gb.is_unit() {
            return None;
        }
        Some(dimension_from_leading_monomials(
            self.ring.base().nvars(),
            &gb.leading_monomials(),
        ))
    }

    /// `dim R - dim R/self`; `None` for the unit ideal (infinite height).
    pub fn height(&self) -> Option<usize> {
        let d = self.dimension()?;
        let ambient = Self::zero(&self.ring)
            .dimension()
            .expect("R is not the zero ring");
        Some(ambient.saturating_sub(d))
    }

    /// Graded dimensions of `R/self` in degrees `0..=cap`.
    pub fn hilbert_table(&self, cap: u64) -> HilbertTable {
        let gb = self.gb();
        let w = self.ring.base().weights();
        let dims = (0..=cap)
            .map(|d| {
                monomials_of_degree(w, d)
                    .iter()
                    .filter(|m| gb.is_standard(m))
                    .count()
            })
            .collect();
        HilbertTable {
            dims,
            exact_dimension_zero: self.dimension() == Some(0),
        }
    }

    /// Standard monomials of `R/self` of degree `d`, descending grevlex.
    pub fn standard_monomials(&self, d: u64) -> Vec<Monomial> {
        let gb = self.gb();
        monomials_of_degree(self.ring.base().weights(), d)
            .into_iter()
            .filter(|m| gb.is_standard(m))
            .collect()
    }

    /// Largest degree of a standard monomial of an Artinian quotient.
    pub fn top_socle_degree(&self) -> Result<u64> {
        match self.dimension() {
            None => return Err(Error::UnitIdeal),
            Some(0) => {}
            Some(dimension) => return Err(Error::NotArtinian { dimension }),
        }
        let gb = self.gb();
        let w = self.ring.base().weights();
        let n = w.len();
        // depth-first walk of the order ideal of standard monomials
        let mut best = 0u64;
        let mut stack = vec![(Monomial::one(n), 0usize)];
        while let Some((m, from)) = stack.pop() {
            best = best.max(m.weighted_degree(w));
            for i in from..n {
                let next = m.mul(&Monomial::variable(n, i));
                if gb.is_standard(&next) {
                    stack.push((next, i));
                }
            }
        }
        Ok(best)
    }

    /// Least `N` with `R_{≥N} ⊆ self`; 0 for the unit ideal.
    pub fn truncation_bound(&self) -> Result<u64> {
        if self.is_unit() {
            return Ok(0);
        }
        Ok(self.top_socle_degree()? + 1)
    }

    /// Number of variables that are nonzero in `R`.
    pub fn ambient_dimension(ring: &Arc<Ring>) -> usize {
        Self::zero(ring).dimension().unwrap_or(0)
    }
}

/// Dimension of `S/J` for a monomial ideal `J` given by its generators:
/// the size of a largest set of variables supporting no generator.
pub fn dimension_from_leading_monomials(nvars: usize, lms: &[Monomial]) -> usize {
    // minimal hitting set of the supports by branch and bound
    let supports: Vec<Vec<usize>> = lms.iter().map(|m| m.support().collect()).collect();
    fn search(supports: &[Vec<usize>], chosen: &mut Vec<bool>, size: usize, best: &mut usize) {
        if size >= *best {
            return;
        }
        let unhit = supports.iter().find(|s| !s.iter().any(|&v| chosen[v]));
        match unhit {
            None => *best = size,
            Some(s) => {
                for &v in s {
                    chosen[v] = true;
                    search(supports, chosen, size + 1, best);
                    chosen[v] = false;
                }
            }
        }
    }
    let mut best = nvars + 1;
    search(&supports, &mut vec![false; nvars], 0, &mut best);
    nvars - best.min(nvars)
}

/// Reduced grevlex basis of `(a) ∩ (b)` in `S`, by eliminating `t` from
/// `t·(a) + (1 - t)·(b)`.
pub(crate) fn intersect_in_s(
    base: &Arc<PolyRing>,
    a: &[Polynomial],
    b: &[Polynomial],
) -> GroebnerBasis {
    if a.iter().all(|f| f.is_zero()) || b.iter().all(|f| f.is_zero()) {
        return buchberger_unchecked(base, &[], MonomialOrder::Grevlex);
    }
    let ext = base.with_elimination_variable();
    let t = Polynomial::var(&ext, 0);
    let one_minus_t = &Polynomial::one(&ext) - &t;
    let mut gens = Vec::with_capacity(a.len() + b.len());
    gens.extend(a.iter().map(|f| &t * &f.lift_to_elimination(&ext, 0)));
    gens.extend(
        b.iter()
            .map(|g| &one_minus_t * &g.lift_to_elimination(&ext, 0)),
    );
    let gb = buchberger_unchecked(&ext, &gens, MonomialOrder::Block(1));
    let elems = gb
        .terms()
        .iter()
        .filter(|g| g[0].0.exponents()[0] == 0)
        .map(|g| g.iter().map(|(m, c)| (m.without_first(), *c)).collect())
        .collect();
    GroebnerBasis::from_reduced_terms(base, MonomialOrder::Grevlex, elems)
}
