#![allow(dead_code)]

pub mod oracles;

use std::sync::Arc;

use frobsat::{parse_polynomial, Ideal, PolyRing, Polynomial, Ring};

pub fn ring(p: u64, vars: &[&str], rels: &[&str]) -> Arc<Ring> {
    let base = PolyRing::standard(p, vars).unwrap();
    let rels = rels
        .iter()
        .map(|s| parse_polynomial(&base, s).unwrap())
        .collect();
    Ring::new(base, rels).unwrap()
}

pub fn poly(r: &Arc<Ring>, s: &str) -> Polynomial {
    parse_polynomial(r.base(), s).unwrap()
}

pub fn ideal(r: &Arc<Ring>, gens: &[&str]) -> Ideal {
    Ideal::new(r, gens.iter().map(|s| poly(r, s)).collect()).unwrap()
}
