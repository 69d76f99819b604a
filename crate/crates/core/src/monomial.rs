//! Exponent vectors and monomial orders.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// A monomial of `S = F_p[x_1, ..., x_n]`, stored as its exponent vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[u32; 6]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = 1;
        m
    }

    #[inline]
    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u64 {
        self.0
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as u64 * w as u64)
            .sum()
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|a| a * k).collect())
    }

    /// `true` iff `self` divides `other`.
    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(
            other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    pub(crate) fn exponents_mut(&mut self) -> &mut [u32] {
        &mut self.0
    }

    pub(crate) fn with_prepended(&self, e: u32) -> Monomial {
        let mut v = SmallVec::with_capacity(self.0.len() + 1);
        v.push(e);
        v.extend_from_slice(&self.0);
        Monomial(v)
    }

    pub(crate) fn without_first(&self) -> Monomial {
        Monomial(SmallVec::from_slice(&self.0[1..]))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// Supported term orders.
///
/// `Grevlex` is graded by the ring weights with reverse-lexicographic tie
/// breaking. `Block(k)` compares the first `k` variables by unweighted grevlex
/// and breaks ties with weighted grevlex on the remaining ones, so it
/// eliminates the first `k` variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Grevlex,
    Lex,
    Block(usize),
}

#[inline]
fn revlex_tail(a: &[u32], b: &[u32]) -> Ordering {
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

#[inline]
fn wdeg(e: &[u32], w: &[u32]) -> u64 {
    e.iter().zip(w).map(|(&a, &b)| a as u64 * b as u64).sum()
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial, weights: &[u32]) -> Ordering {
        let (a, b) = (a.exponents(), b.exponents());
        match *self {
            MonomialOrder::Grevlex => wdeg(a, weights)
                .cmp(&wdeg(b, weights))
                .then_with(|| revlex_tail(a, b)),
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::Block(k) => {
                let k = k.min(a.len());
                let (a1, a2) = a.split_at(k);
                let (b1, b2) = b.split_at(k);
                let d1 = |e: &[u32]| e.iter().map(|&x| x as u64).sum::<u64>();
                d1(a1)
                    .cmp(&d1(b1))
                    .then_with(|| revlex_tail(a1, b1))
                    .then_with(|| wdeg(a2, &weights[k..]).cmp(&wdeg(b2, &weights[k..])))
                    .then_with(|| revlex_tail(a2, b2))
            }
        }
    }
}

/// All monomials of weighted degree `d`, in descending grevlex order.
pub fn monomials_of_degree(weights: &[u32], d: u64) -> Vec<Monomial> {
    fn rec(weights: &[u32], i: usize, left: u64, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == weights.len() {
            if left == 0 {
                out.push(Monomial::from_exponents(cur));
            }
            return;
        }
        let w = weights[i] as u64;
        if i + 1 == weights.len() {
            if left.is_multiple_of(w) {
                cur[i] = (left / w) as u32;
                out.push(Monomial::from_exponents(cur));
                cur[i] = 0;
            }
            return;
        }
        let mut e = 0u64;
        while e * w <= left {
            cur[i] = e as u32;
            rec(weights, i + 1, left - e * w, cur, out);
            e += 1;
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if weights.is_empty() {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    let mut cur = vec![0u32; weights.len()];
    rec(weights, 0, d, &mut cur, &mut out);
    out.sort_by(|a, b| MonomialOrder::Grevlex.cmp(b, a, weights));
    out
}
