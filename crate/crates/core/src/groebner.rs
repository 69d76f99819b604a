//! Buchberger's algorithm with the Gebauer–Möller criteria, normal forms and
//! membership.
//!
//! Pairs are selected by the normal strategy: smallest weighted degree of
//! the lcm, ties broken by pair index. Every new basis element is made monic.
//! The result is the reduced basis, sorted by descending leading monomial,
//! so it depends only on the ideal and the order.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Zp;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{same_ring, sort_desc, PolyRing, Polynomial};
use crate::ring::Ring;

/// Terms sorted by descending order, nonzero coefficients.
pub(crate) type Terms = Vec<(Monomial, u32)>;

/// Arithmetic context for one order.
#[derive(Clone, Copy)]
pub(crate) struct OrderCtx<'a> {
    pub field: Zp,
    pub order: MonomialOrder,
    pub weights: &'a [u32],
}

impl<'a> OrderCtx<'a> {
    pub fn new(ring: &'a PolyRing, order: MonomialOrder) -> Self {
        OrderCtx {
            field: ring.field(),
            order,
            weights: ring.weights(),
        }
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b, self.weights)
    }

    pub fn sorted(&self, p: &Polynomial) -> Terms {
        let mut t = p.terms().to_vec();
        if self.order != MonomialOrder::Grevlex {
            sort_desc(&mut t, self.order, self.weights);
        }
        t
    }

    pub fn monic(&self, t: &mut Terms) {
        if let Some(&(_, c)) = t.first() {
            if c != 1 {
                let inv = self.field.inv(c);
                for term in t.iter_mut() {
                    term.1 = self.field.mul(term.1, inv);
                }
            }
        }
    }

    /// `a - c * m * b`, merging sorted term lists.
    pub fn sub_mul(
        &self,
        a: &[(Monomial, u32)],
        c: u32,
        m: &Monomial,
        b: &[(Monomial, u32)],
    ) -> Terms {
        let f = self.field;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let mut bj: Option<(Monomial, u32)> =
            b.first().map(|(bm, bc)| (bm.mul(m), f.neg(f.mul(*bc, c))));
        while i < a.len() {
            let Some((ref bm, bc)) = bj else { break };
            match self.cmp(&a[i].0, bm) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((bm.clone(), bc));
                    j += 1;
                    bj = b.get(j).map(|(bm, bc)| (bm.mul(m), f.neg(f.mul(*bc, c))));
                }
                Ordering::Equal => {
                    let s = f.add(a[i].1, bc);
                    if s != 0 {
                        out.push((a[i].0.clone(), s));
                    }
                    i += 1;
                    j += 1;
                    bj = b.get(j).map(|(bm, bc)| (bm.mul(m), f.neg(f.mul(*bc, c))));
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        if let Some(first) = bj {
            out.push(first);
            out.extend(
                b[j + 1..]
                    .iter()
                    .map(|(bm, bc)| (bm.mul(m), f.neg(f.mul(*bc, c)))),
            );
        }
        out
    }

    /// Finds a reducer whose leading monomial divides `m`.
    #[inline]
    fn find_reducer<'b>(
        &self,
        m: &Monomial,
        basis: &'b [Terms],
        active: &[usize],
    ) -> Option<&'b Terms> {
        active
            .iter()
            .map(|&k| &basis[k])
            .find(|g| g[0].0.divides(m))
    }

    /// Reduces until the leading term is irreducible.
    pub fn top_reduce(&self, mut f: Terms, basis: &[Terms], active: &[usize]) -> Terms {
        while let Some((m, c)) = f.first() {
            let Some(g) = self.find_reducer(m, basis, active) else {
                break;
            };
            let q = g[0].0.quotient_of(m).expect("divides");
            let c = *c;
            // g is monic
            f = self.sub_mul(&f[1..], c, &q, &g[1..]);
        }
        f
    }

    /// Full reduction: no term of the result is divisible by a leading monomial.
    pub fn full_reduce(&self, mut f: Terms, basis: &[Terms], active: &[usize]) -> Terms {
        let mut pos = 0;
        while pos < f.len() {
            let found = self.find_reducer(&f[pos].0, basis, active);
            match found {
                None => pos += 1,
                Some(g) => {
                    let (m, c) = f[pos].clone();
                    let q = g[0].0.quotient_of(&m).expect("divides");
                    let tail = f.split_off(pos);
                    let reduced = self.sub_mul(&tail[1..], c, &q, &g[1..]);
                    f.extend(reduced);
                }
            }
        }
        f
    }
}

/// A reduced Gröbner basis.
#[derive(Clone)]
pub struct GroebnerBasis {
    ring: Arc<PolyRing>,
    order: MonomialOrder,
    elems: Vec<Terms>,
}

impl std::fmt::Debug for GroebnerBasis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroebnerBasis")
            .field("order", &self.order)
            .field("basis", &self.basis())
            .finish()
    }
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.order == other.order && self.elems == other.elems
    }
}
impl Eq for GroebnerBasis {}

struct Pair {
    deg: u64,
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Engine<'a> {
    ctx: OrderCtx<'a>,
    polys: Vec<Terms>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

impl<'a> Engine<'a> {
    fn lm(&self, k: usize) -> &Monomial {
        &self.polys[k][0].0
    }

    fn insert(&mut self, h: Terms) {
        let hidx = self.polys.len();
        self.polys.push(h);
        let h_lm = self.lm(hidx).clone();

        // candidate pairs (g, h), processed in index order
        let cands: Vec<(usize, Monomial, bool)> = self
            .active
            .iter()
            .map(|&g| {
                let glm = self.lm(g);
                (g, glm.lcm(&h_lm), glm.is_coprime(&h_lm))
            })
            .collect();
        let mut kept: Vec<usize> = Vec::new();
        for idx in 0..cands.len() {
            let (_, ref l1, coprime) = cands[idx];
            if coprime {
                kept.push(idx);
                continue;
            }
            let dominated = cands[idx + 1..].iter().any(|c| c.1.divides(l1))
                || kept.iter().any(|&k| cands[k].1.divides(l1));
            if !dominated {
                kept.push(idx);
            }
        }

        // chain criterion on the old pairs
        let polys = &self.polys;
        self.pairs.retain(|pr| {
            if !h_lm.divides(&pr.lcm) {
                return true;
            }
            let li = polys[pr.i][0].0.lcm(&h_lm);
            let lj = polys[pr.j][0].0.lcm(&h_lm);
            li == pr.lcm || lj == pr.lcm
        });

        for k in kept {
            let (g, ref lcm, coprime) = cands[k];
            if coprime {
                continue;
            }
            self.pairs.push(Pair {
                deg: lcm.weighted_degree(self.ctx.weights),
                i: g,
                j: hidx,
                lcm: lcm.clone(),
            });
        }

        let polys = &self.polys;
        self.active.retain(|&g| !h_lm.divides(&polys[g][0].0));
        self.active.push(hidx);
    }

    fn pop_pair(&mut self) -> Option<Pair> {
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by_key(|(_, p)| (p.deg, p.i, p.j))
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(best))
    }

    fn spoly(&self, pr: &Pair) -> Terms {
        let (f, g) = (&self.polys[pr.i], &self.polys[pr.j]);
        let mf = f[0].0.quotient_of(&pr.lcm).expect("lcm");
        let mg = g[0].0.quotient_of(&pr.lcm).expect("lcm");
        let fs: Terms = f[1..].iter().map(|(m, c)| (m.mul(&mf), *c)).collect();
        self.ctx.sub_mul(&fs, 1, &mg, &g[1..])
    }
}

/// Computes the reduced Gröbner basis of `(gens)` in `S` under `order`.
/// Zero generators are dropped; an empty effective input gives the zero ideal.
pub fn buchberger(
    ring: &Arc<PolyRing>,
    gens: &[Polynomial],
    order: MonomialOrder,
) -> Result<GroebnerBasis> {
    if let Some(g) = gens.iter().find(|g| !same_ring(g.ring(), ring)) {
        let _ = g;
        return Err(Error::RingMismatch);
    }
    Ok(buchberger_unchecked(ring, gens, order))
}

pub(crate) fn buchberger_unchecked(
    ring: &Arc<PolyRing>,
    gens: &[Polynomial],
    order: MonomialOrder,
) -> GroebnerBasis {
    let ctx = OrderCtx::new(ring, order);
    let mut inputs: Vec<Terms> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| ctx.sorted(g))
        .collect();
    inputs.sort_by(|a, b| {
        let da = a[0].0.weighted_degree(ctx.weights);
        let db = b[0].0.weighted_degree(ctx.weights);
        da.cmp(&db).then_with(|| ctx.cmp(&a[0].0, &b[0].0))
    });

    let mut eng = Engine {
        ctx,
        polys: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    for f in inputs {
        let mut h = ctx.top_reduce(f, &eng.polys, &eng.active);
        if h.is_empty() {
            continue;
        }
        ctx.monic(&mut h);
        if h[0].0.is_one() {
            return unit_basis(ring, order);
        }
        eng.insert(h);
    }
    while let Some(pr) = eng.pop_pair() {
        let s = eng.spoly(&pr);
        let mut h = ctx.top_reduce(s, &eng.polys, &eng.active);
        if h.is_empty() {
            continue;
        }
        ctx.monic(&mut h);
        if h[0].0.is_one() {
            return unit_basis(ring, order);
        }
        eng.insert(h);
    }

    // interreduce the minimal basis
    let mut active = eng.active.clone();
    active.sort_by(|&a, &b| ctx.cmp(&eng.polys[b][0].0, &eng.polys[a][0].0));
    let mut elems = Vec::with_capacity(active.len());
    for (k, &idx) in active.iter().enumerate() {
        let others: Vec<usize> = active
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .map(|(_, &x)| x)
            .collect();
        let g = &eng.polys[idx];
        let mut red = vec![g[0].clone()];
        red.extend(ctx.full_reduce(g[1..].to_vec(), &eng.polys, &others));
        elems.push(red);
    }
    GroebnerBasis {
        ring: ring.clone(),
        order,
        elems,
    }
}

fn unit_basis(ring: &Arc<PolyRing>, order: MonomialOrder) -> GroebnerBasis {
    GroebnerBasis {
        ring: ring.clone(),
        order,
        elems: vec![vec![(Monomial::one(ring.nvars()), 1)]],
    }
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.elems.len() == 1 && self.elems[0][0].0.is_one()
    }

    /// Basis elements as polynomials, in descending order of leading monomial.
    pub fn basis(&self) -> Vec<Polynomial> {
        self.elems
            .iter()
            .map(|t| {
                let mut t = t.clone();
                if self.order != MonomialOrder::Grevlex {
                    sort_desc(&mut t, MonomialOrder::Grevlex, self.ring.weights());
                }
                Polynomial::from_sorted_terms(&self.ring, t)
            })
            .collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elems.iter().map(|t| t[0].0.clone()).collect()
    }

    pub(crate) fn terms(&self) -> &[Terms] {
        &self.elems
    }

    /// Unique remainder of `f` modulo the basis.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(self.normal_form_unchecked(f))
    }

    pub(crate) fn normal_form_unchecked(&self, f: &Polynomial) -> Polynomial {
        let ctx = OrderCtx::new(&self.ring, self.order);
        let all: Vec<usize> = (0..self.elems.len()).collect();
        let mut r = ctx.full_reduce(ctx.sorted(f), &self.elems, &all);
        if self.order != MonomialOrder::Grevlex {
            sort_desc(&mut r, MonomialOrder::Grevlex, self.ring.weights());
        }
        Polynomial::from_sorted_terms(&self.ring, r)
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// `true` iff the monomial is not divisible by any leading monomial.
    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.elems.iter().any(|g| g[0].0.divides(m))
    }
}

/// `f ∈ (gens) + K` in `S`, where `K` are the relations of `ring`.
pub fn gb_membership(ring: &Ring, f: &Polynomial, gens: &[Polynomial]) -> Result<bool> {
    let base = ring.base();
    if !same_ring(f.ring(), base) || gens.iter().any(|g| !same_ring(g.ring(), base)) {
        return Err(Error::RingMismatch);
    }
    let mut all = gens.to_vec();
    all.extend(ring.relations().iter().cloned());
    buchberger_unchecked(base, &all, MonomialOrder::Grevlex).contains(f)
}

impl GroebnerBasis {
    /// Wraps elements already forming a reduced basis, sorted by descending
    /// leading monomial under `order`.
    pub(crate) fn from_reduced_terms(
        ring: &Arc<PolyRing>,
        order: MonomialOrder,
        elems: Vec<Terms>,
    ) -> Self {
        GroebnerBasis {
            ring: ring.clone(),
            order,
            elems,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    fn setup(p: u64, vars: &[&str]) -> Arc<PolyRing> {
        PolyRing::standard(p, vars).unwrap()
    }

    fn polys(r: &Arc<PolyRing>, xs: &[&str]) -> Vec<Polynomial> {
        xs.iter().map(|s| parse_polynomial(r, s).unwrap()).collect()
    }

    #[test]
    fn normal_form_examples() {
        let r = setup(5, &["x", "y"]);
        let gx = buchberger(&r, &polys(&r, &["x"]), MonomialOrder::Grevlex).unwrap();
        assert!(gx
            .normal_form(&parse_polynomial(&r, "x^2").unwrap())
            .unwrap()
            .is_zero());
        assert_eq!(
            gx.normal_form(&parse_polynomial(&r, "y").unwrap())
                .unwrap()
                .to_string(),
            "y"
        );
        let g = buchberger(&r, &polys(&r, &["x^2 - y^2"]), MonomialOrder::Grevlex).unwrap();
        let nf = g
            .normal_form(&parse_polynomial(&r, "x^2*y + y^3").unwrap())
            .unwrap();
        assert_eq!(nf, parse_polynomial(&r, "2y^3").unwrap());
    }

    #[test]
    fn buchberger_examples() {
        let r = setup(7, &["x", "y", "z"]);
        let g = buchberger(&r, &polys(&r, &["x", "y"]), MonomialOrder::Grevlex).unwrap();
        assert_eq!(g.basis(), polys(&r, &["x", "y"]));
        let g = buchberger(&r, &polys(&r, &["x^2", "x*y"]), MonomialOrder::Grevlex).unwrap();
        assert_eq!(g.basis(), polys(&r, &["x^2", "x*y"]));
        let g = buchberger(&r, &polys(&r, &["x - y", "y - z"]), MonomialOrder::Lex).unwrap();
        assert_eq!(g.basis(), polys(&r, &["x - z", "y - z"]));
    }

    #[test]
    fn zero_and_unit() {
        let r = setup(3, &["x", "y"]);
        let g = buchberger(&r, &polys(&r, &["0"]), MonomialOrder::Grevlex).unwrap();
        assert!(g.is_empty());
        let g = buchberger(&r, &polys(&r, &["x", "x + 1"]), MonomialOrder::Lex).unwrap();
        assert!(g.is_unit());
    }

    #[test]
    fn different_generators_same_basis() {
        let r = setup(5, &["x", "y", "z"]);
        let a = buchberger(
            &r,
            &polys(&r, &["x^2 - y*z", "x*y - z^2"]),
            MonomialOrder::Grevlex,
        )
        .unwrap();
        let b = buchberger(
            &r,
            &polys(&r, &["x^2 - y*z + 2x*y - 2z^2", "x*y - z^2", "x^3 - x*y*z"]),
            MonomialOrder::Grevlex,
        )
        .unwrap();
        assert_eq!(a, b);
        let again = buchberger(&r, &a.basis(), MonomialOrder::Grevlex).unwrap();
        assert_eq!(a, again);
    }

    #[test]
    fn ring_mismatch() {
        let r = setup(5, &["x", "y"]);
        let s = setup(7, &["x", "y"]);
        let f = parse_polynomial(&s, "x").unwrap();
        assert_eq!(
            buchberger(&r, &[f], MonomialOrder::Grevlex).unwrap_err(),
            Error::RingMismatch
        );
    }
}
