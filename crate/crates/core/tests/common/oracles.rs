//! Independent reference computations: dense linear algebra over F_p in a
//! single degree, with no Gröbner bases involved.

#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::Arc;

use frobsat::{Monomial, PolyRing, Polynomial, Ring};
use rand::Rng;

/// Exponent vectors of weighted degree `d`, in no particular order.
pub fn exponent_vectors(weights: &[u32], d: u64) -> Vec<Vec<u32>> {
    let mut out = vec![];
    let mut stack = vec![(0usize, d, Vec::<u32>::new())];
    while let Some((i, left, cur)) = stack.pop() {
        if i == weights.len() {
            if left == 0 {
                out.push(cur);
            }
            continue;
        }
        let w = weights[i] as u64;
        for e in 0..=left / w {
            let mut next = cur.clone();
            next.push(e as u32);
            stack.push((i + 1, left - e * w, next));
        }
    }
    out
}

fn inv(a: u64, p: u64) -> u64 {
    // Fermat
    let (mut base, mut e, mut r) = (a % p, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    r
}

/// Rank by textbook Gauss–Jordan elimination on a dense copy.
pub fn rank_oracle(p: u64, rows: &[Vec<u32>]) -> usize {
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as u64 % p).collect())
        .collect();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let s = inv(m[rank][col], p);
        for x in m[rank].iter_mut() {
            *x = *x * s % p;
        }
        let pivot = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let f = row[col];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + p * p - f * y) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn degree_of(weights: &[u32], e: &[u32]) -> u64 {
    e.iter()
        .zip(weights)
        .map(|(a, w)| *a as u64 * *w as u64)
        .sum()
}

/// Decides `f ∈ (gens) + (relations)` for homogeneous `f` of degree `d` by
/// comparing the rank of the degree-`d` span with and without `f`.
pub fn membership_oracle(ring: &Ring, gens: &[Polynomial], f: &Polynomial) -> bool {
    if f.is_zero() {
        return true;
    }
    let base = ring.base();
    let w = base.weights();
    let p = base.characteristic() as u64;
    let d = degree_of(w, f.terms()[0].0.exponents());
    let basis = exponent_vectors(w, d);
    let index: HashMap<Vec<u32>, usize> = basis
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, e)| (e, i))
        .collect();
    let to_row = |terms: &mut dyn Iterator<Item = (Vec<u32>, u32)>| {
        let mut row = vec![0u32; basis.len()];
        for (e, c) in terms {
            let k = index[&e];
            row[k] = ((row[k] as u64 + c as u64) % p) as u32;
        }
        row
    };
    let mut rows = Vec::new();
    for h in gens.iter().chain(ring.relations()) {
        if h.is_zero() {
            continue;
        }
        let e = degree_of(w, h.terms()[0].0.exponents());
        if e > d {
            continue;
        }
        for m in exponent_vectors(w, d - e) {
            let mut it = h.terms().iter().map(|(mono, c)| {
                (
                    mono.exponents()
                        .iter()
                        .zip(&m)
                        .map(|(a, b)| a + b)
                        .collect::<Vec<u32>>(),
                    *c,
                )
            });
            rows.push(to_row(&mut it));
        }
    }
    let before = rank_oracle(p, &rows);
    let mut it = f
        .terms()
        .iter()
        .map(|(mono, c)| (mono.exponents().to_vec(), *c));
    rows.push(to_row(&mut it));
    rank_oracle(p, &rows) == before
}

/// A random form of degree `d` with uniformly random coefficients.
pub fn random_form(base: &Arc<PolyRing>, d: u64, density: f64, rng: &mut impl Rng) -> Polynomial {
    let p = base.characteristic();
    let mut terms: Vec<(Monomial, u32)> = Vec::new();
    for e in exponent_vectors(base.weights(), d) {
        if rng.gen_bool(density) {
            terms.push((Monomial::from_exponents(&e), rng.gen_range(0..p)));
        }
    }
    Polynomial::from_terms(base, terms)
}

/// A nonzero random form of degree `d`.
pub fn random_nonzero_form(
    base: &Arc<PolyRing>,
    d: u64,
    density: f64,
    rng: &mut impl Rng,
) -> Polynomial {
    loop {
        let f = random_form(base, d, density, rng);
        if !f.is_zero() {
            return f;
        }
    }
}

/// A random ideal's generators: `count` nonzero forms with degrees in `1..=max_deg`.
pub fn random_generators(
    base: &Arc<PolyRing>,
    count: usize,
    max_deg: u64,
    rng: &mut impl Rng,
) -> Vec<Polynomial> {
    (0..count)
        .map(|_| {
            let d = rng.gen_range(1..=max_deg);
            random_nonzero_form(base, d, 0.5, rng)
        })
        .collect()
}
