//! Degreewise linear algebra over F_p on graded pieces of `R = S/K`:
//! product containments `R_{≥D} ⊆ R_{≥N}·R_{≥M}` and graded pieces of the
//! first Koszul homology.

use rayon::prelude::*;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::Zp;
use crate::groebner::GroebnerBasis;
use crate::ideal::Ideal;
use crate::monomial::Monomial;
use crate::poly::{same_ring, Polynomial};
use crate::ring::Ring;

/// Standard-monomial basis of a graded piece `(R/A)_d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPieceBasis {
    pub degree: u64,
    pub monomials: Vec<Monomial>,
}

impl GradedPieceBasis {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }
}

/// Basis of `(R/A)_d`; pass [`Ideal::zero`] for `R_d` itself.
pub fn graded_piece(quotient: &Ideal, d: u64) -> GradedPieceBasis {
    GradedPieceBasis {
        degree: d,
        monomials: quotient.standard_monomials(d),
    }
}

/// Row-echelon accumulator over F_p.
pub struct Echelon {
    field: Zp,
    rows: Vec<(usize, Vec<u32>)>,
}

impl Echelon {
    pub fn new(field: Zp) -> Self {
        Echelon {
            field,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` to the span; returns `true` when the rank grew.
    pub fn insert(&mut self, mut v: Vec<u32>) -> bool {
        let f = self.field;
        for (piv, row) in &self.rows {
            let c = v[*piv];
            if c != 0 {
                for (x, r) in v.iter_mut().zip(row) {
                    if *r != 0 {
                        *x = f.sub(*x, f.mul(c, *r));
                    }
                }
            }
        }
        let Some(piv) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(v[piv]);
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        // keep existing rows reduced at the new pivot
        for (_, row) in self.rows.iter_mut() {
            let c = row[piv];
            if c != 0 {
                for (x, r) in row.iter_mut().zip(&v) {
                    *x = f.sub(*x, f.mul(c, *r));
                }
            }
        }
        self.rows.push((piv, v));
        true
    }
}

/// Rank of a dense matrix over F_p by Gaussian elimination.
pub fn rank_mod_p(field: Zp, rows: Vec<Vec<u32>>) -> usize {
    let mut e = Echelon::new(field);
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Standard-monomial coordinates on graded pieces of `R = S/K`.
struct Pieces<'a> {
    ring: &'a Ring,
    gb: &'a GroebnerBasis,
    bases: HashMap<u64, (Vec<Monomial>, HashMap<Monomial, usize>)>,
    monomial_nf: HashMap<Monomial, Vec<u32>>,
}

impl<'a> Pieces<'a> {
    fn new(ring: &'a Ring) -> Self {
        Pieces {
            ring,
            gb: ring.relations_gb(),
            bases: HashMap::new(),
            monomial_nf: HashMap::new(),
        }
    }

    fn basis(&mut self, d: u64) -> &(Vec<Monomial>, HashMap<Monomial, usize>) {
        let gb = self.gb;
        let w = self.ring.base().weights();
        self.bases.entry(d).or_insert_with(|| {
            let mons: Vec<Monomial> = crate::monomial::monomials_of_degree(w, d)
                .into_iter()
                .filter(|m| gb.is_standard(m))
                .collect();
            let index = mons
                .iter()
                .cloned()
                .enumerate()
                .map(|(i, m)| (m, i))
                .collect();
            (mons, index)
        })
    }

    fn dim(&mut self, d: Option<u64>) -> usize {
        d.map_or(0, |d| self.basis(d).0.len())
    }

    /// Coordinates of a homogeneous polynomial of degree `d` in `R_d`.
    fn coords(&mut self, f: &Polynomial, d: u64) -> Vec<u32> {
        let nf = self.gb.normal_form_unchecked(f);
        let (mons, index) = self.basis(d);
        let mut v = vec![0u32; mons.len()];
        for (m, c) in nf.terms() {
            v[index[m]] = *c;
        }
        v
    }

    fn monomial_coords(&mut self, m: &Monomial, d: u64) -> Vec<u32> {
        if let Some(v) = self.monomial_nf.get(m) {
            return v.clone();
        }
        let f = Polynomial::term(self.ring.base(), m.clone(), 1);
        let v = self.coords(&f, d);
        self.monomial_nf.insert(m.clone(), v.clone());
        v
    }
}

/// `true` iff `R_d ⊆ (R_{≥N}·R_{≥M})_d` for every `d` in `[start, cap]`.
pub fn product_containment(ring: &Ring, n: u64, m: u64, start: u64, cap: u64) -> bool {
    let field = ring.base().field();
    let mut pieces = Pieces::new(ring);
    for d in start..=cap {
        let target = pieces.basis(d).0.len();
        if target == 0 {
            continue;
        }
        if d < n + m {
            return false;
        }
        let mut ech = Echelon::new(field);
        'outer: for a in n..=d - m {
            let left = pieces.basis(a).0.clone();
            let right = pieces.basis(d - a).0.clone();
            for u in &left {
                for v in &right {
                    let uv = u.mul(v);
                    let vec = pieces.monomial_coords(&uv, d);
                    if ech.insert(vec) && ech.rank() == target {
                        break 'outer;
                    }
                }
            }
        }
        if ech.rank() < target {
            return false;
        }
    }
    true
}

fn element_degrees(ring: &Ring, elements: &[Polynomial]) -> Result<Vec<u64>> {
    elements
        .iter()
        .map(|x| {
            if !same_ring(x.ring(), ring.base()) {
                return Err(Error::RingMismatch);
            }
            if ring.is_zero_in_quotient(x) {
                return Err(Error::InvalidArgument(format!("element {x} is zero in R")));
            }
            Ok(x.homogeneous_degree()?.expect("nonzero"))
        })
        .collect()
}

/// `dim_F_p [H_1(x_1, ..., x_n; R)]_d`, where the homological degree of
/// `(r_i)` is `deg r_i + deg x_i`.
pub fn koszul_h1_piece(ring: &Ring, elements: &[Polynomial], d: u64) -> Result<usize> {
    let degs = element_degrees(ring, elements)?;
    Ok(h1_piece(ring, elements, &degs, d))
}

fn h1_piece(ring: &Ring, elements: &[Polynomial], degs: &[u64], d: u64) -> usize {
    let field = ring.base().field();
    let mut pieces = Pieces::new(ring);
    let n = elements.len();
    let sub = |a: u64, b: u64| a.checked_sub(b);

    // K_1 in degree d: blocks R_{d - d_i}
    let mut offsets = Vec::with_capacity(n);
    let mut total = 0usize;
    for &di in degs {
        offsets.push(total);
        total += pieces.dim(sub(d, di));
    }
    if total == 0 {
        return 0;
    }

    let mut first = Echelon::new(field);
    for i in 0..n {
        let Some(a) = sub(d, degs[i]) else { continue };
        let basis = pieces.basis(a).0.clone();
        for u in basis {
            let f = elements[i].mul_monomial(&u);
            first.insert(pieces.coords(&f, d));
        }
    }
    let kernel = total - first.rank();
    if kernel == 0 {
        return 0;
    }

    let mut second = Echelon::new(field);
    for i in 0..n {
        for j in i + 1..n {
            let Some(a) = sub(d, degs[i] + degs[j]) else {
                continue;
            };
            let basis = pieces.basis(a).0.clone();
            for w in basis {
                let mut v = vec![0u32; total];
                // w e_i ∧ e_j ↦ w x_i e_j − w x_j e_i
                let cj = pieces.coords(&elements[i].mul_monomial(&w), d - degs[j]);
                for (k, c) in cj.into_iter().enumerate() {
                    v[offsets[j] + k] = c;
                }
                let ci = pieces.coords(&elements[j].mul_monomial(&w), d - degs[i]);
                for (k, c) in ci.into_iter().enumerate() {
                    v[offsets[i] + k] = field.neg(c);
                }
                second.insert(v);
            }
        }
    }
    kernel - second.rank()
}

/// Degree scan of `H_1`; see [`koszul_h1_top_degree`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KoszulReport {
    pub element_degrees: Vec<u64>,
    /// `dims[d] = dim [H_1]_d` for `d = 0..=cap`.
    pub dims: Vec<usize>,
    /// Last degree with nonzero homology, if any.
    pub top: Option<u64>,
    /// The final `window` scanned degrees are all zero.
    pub stable: bool,
    pub cap: u64,
    pub window: u64,
}

impl KoszulReport {
    /// Least `N` with `[H_1]_i = 0` for all scanned `i ≥ N`.
    pub fn vanishing_from(&self) -> u64 {
        self.top.map_or(0, |t| t + 1)
    }
}

/// Scans `d = 0..=cap` and reports the last nonzero degree of `H_1`.
/// Stability is declared only when the last `window` degrees vanish.
pub fn koszul_h1_top_degree(
    ring: &Ring,
    elements: &[Polynomial],
    cap: u64,
    window: u64,
) -> Result<KoszulReport> {
    if window == 0 {
        return Err(Error::InvalidArgument("window must be positive".into()));
    }
    let degs = element_degrees(ring, elements)?;
    let dims: Vec<usize> = (0..=cap)
        .into_par_iter()
        .map(|d| h1_piece(ring, elements, &degs, d))
        .collect();
    let top = dims.iter().rposition(|&x| x != 0).map(|t| t as u64);
    let stable = cap + 1 >= window && top.is_none_or(|t| t + window <= cap);
    Ok(KoszulReport {
        element_degrees: degs,
        dims,
        top,
        stable,
        cap,
        window,
    })
}
