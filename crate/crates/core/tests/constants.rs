//! Constant searches against monomial brute force.

mod common;

use common::oracles::exponent_vectors;
use common::{ideal, poly, ring};
use frobsat::lc::{lemma21_constant, lemma22_constants, SearchOutcome};
use frobsat::{PolyRing, Ring};

fn weighted(e: &[u32], w: &[u32]) -> u64 {
    e.iter().zip(w).map(|(a, b)| *a as u64 * *b as u64).sum()
}

/// Whether a monomial splits as `u·v` with `deg u ≥ n` and `deg v ≥ m`.
fn splits(e: &[u32], w: &[u32], n: u64, m: u64) -> bool {
    let total = weighted(e, w);
    let mut divisors = vec![vec![]];
    for &a in e {
        divisors = divisors
            .into_iter()
            .flat_map(|d: Vec<u32>| (0..=a).map(move |k| [d.clone(), vec![k]].concat()))
            .collect();
    }
    divisors.iter().any(|u| {
        let du = weighted(u, w);
        du >= n && total - du >= m
    })
}

fn lemma21_oracle(w: &[u32], n_max: u64, m_max: u64, d_cap: u64) -> Option<u64> {
    (0..=d_cap).find(|&l| {
        (0..=n_max).all(|n| {
            (0..=m_max).all(|m| {
                (n + m + l..=d_cap)
                    .all(|s| exponent_vectors(w, s).iter().all(|e| splits(e, w, n, m)))
            })
        })
    })
}

#[test]
fn lemma21_matches_brute_force() {
    for (p, w, caps) in [
        (2u64, vec![1u32, 1], (4u64, 4u64, 20u64)),
        (3, vec![2], (3, 3, 20)),
        (2, vec![1, 3], (3, 3, 24)),
        (5, vec![2, 3], (3, 2, 20)),
        (2, vec![1, 1, 2], (2, 3, 16)),
    ] {
        let names: Vec<(String, u32)> = w
            .iter()
            .enumerate()
            .map(|(i, &wi)| (format!("x{i}"), wi))
            .collect();
        let r = Ring::polynomial_ring(PolyRing::new(p, names).unwrap());
        let expected = lemma21_oracle(&w, caps.0, caps.1, caps.2).unwrap();
        assert_eq!(
            lemma21_constant(&r, caps.0, caps.1, caps.2),
            SearchOutcome::Found(expected),
            "weights {w:?}"
        );
    }
}

#[test]
fn lemma21_weights_one_three() {
    let r = Ring::polynomial_ring(PolyRing::new(2, [("x", 1), ("y", 3)]).unwrap());
    // y^k·x^0 in degree 3k: splitting needs a multiple of 3 above N
    assert_eq!(lemma21_constant(&r, 3, 3, 24), SearchOutcome::Found(2));
}

#[test]
fn lemma21_reports_cap() {
    let r = Ring::polynomial_ring(PolyRing::new(2, [("y", 5)]).unwrap());
    assert_eq!(lemma21_constant(&r, 2, 2, 6), SearchOutcome::AtLeast(3));
}

/// Exponent vectors of the generators of a monomial ideal.
type MonomialIdeal = Vec<Vec<u32>>;

fn in_monomial_ideal(e: &[u32], gens: &MonomialIdeal) -> bool {
    gens.iter().any(|g| g.iter().zip(e).all(|(a, b)| a <= b))
}

fn frob(gens: &MonomialIdeal, q: u64) -> MonomialIdeal {
    gens.iter()
        .map(|g| g.iter().map(|a| a * q as u32).collect())
        .collect()
}

/// `R_{≥N1 q + N2 l k q} ⊆ J^[q] + (z^{N2 l q})` for monomial `J` and `z`,
/// standard grading, checked in the single degree where it starts.
fn lemma22_holds(
    j: &MonomialIdeal,
    z: &[u32],
    n1: u64,
    n2: u64,
    q_list: &[u64],
    l_max: u64,
) -> bool {
    let n = z.len();
    let k: u64 = z.iter().map(|a| *a as u64).sum();
    q_list.iter().all(|&q| {
        (1..=l_max).all(|l| {
            let mut gens = frob(j, q);
            gens.push(z.iter().map(|a| a * (n2 * l * q) as u32).collect());
            let s = n1 * q + n2 * l * k * q;
            exponent_vectors(&vec![1; n], s)
                .iter()
                .all(|e| in_monomial_ideal(e, &gens))
        })
    })
}

fn lemma22_oracle(
    j: &MonomialIdeal,
    z: &[u32],
    q_list: &[u64],
    l_max: u64,
    d_cap: u64,
) -> Option<(u64, u64)> {
    (1..=d_cap).find_map(|n2| {
        (0..=d_cap)
            .find(|&n1| lemma22_holds(j, z, n1, n2, q_list, l_max))
            .map(|n1| (n1, n2))
    })
}

#[test]
fn lemma22_matches_brute_force() {
    // (p, variables, J, J as exponents, z, z as exponents, q list, l_max)
    type Case<'a> = (
        u64,
        Vec<&'a str>,
        Vec<&'a str>,
        MonomialIdeal,
        &'a str,
        Vec<u32>,
        Vec<u64>,
        u64,
    );
    let cases: Vec<Case> = vec![
        (
            2,
            vec!["x", "y"],
            vec!["x"],
            vec![vec![1, 0]],
            "y",
            vec![0, 1],
            vec![2, 4],
            3,
        ),
        (
            3,
            vec!["x", "y", "z"],
            vec!["x", "y"],
            vec![vec![1, 0, 0], vec![0, 1, 0]],
            "z",
            vec![0, 0, 1],
            vec![3],
            2,
        ),
        (
            2,
            vec!["x", "y"],
            vec!["x", "y"],
            vec![vec![1, 0], vec![0, 1]],
            "x",
            vec![1, 0],
            vec![2, 4],
            2,
        ),
        (
            3,
            vec!["x", "y"],
            vec!["x^2"],
            vec![vec![2, 0]],
            "y^2",
            vec![0, 2],
            vec![3, 9],
            2,
        ),
        (
            2,
            vec!["x", "y", "z"],
            vec!["x^2", "y"],
            vec![vec![2, 0, 0], vec![0, 1, 0]],
            "z^2",
            vec![0, 0, 2],
            vec![2, 4],
            2,
        ),
    ];
    for (p, vars, jg, jm, z, zm, qs, l_max) in cases {
        let r = ring(p, &vars, &[]);
        let got = lemma22_constants(&ideal(&r, &jg), &poly(&r, z), &qs, l_max, 12).unwrap();
        let expected = lemma22_oracle(&jm, &zm, &qs, l_max, 12);
        assert_eq!(got, expected, "J={jg:?} z={z}");
    }
}

#[test]
fn lemma22_examples() {
    let r = ring(2, &["x", "y"], &[]);
    assert_eq!(
        lemma22_constants(&ideal(&r, &["x"]), &poly(&r, "y"), &[2, 4], 3, 10).unwrap(),
        Some((1, 1))
    );
    // (x^3, y^3, z^{3l}) has socle degree 3l + 3, so 3·N1 + 3l ≥ 3l + 4 forces N1 = 2
    let r = ring(3, &["x", "y", "z"], &[]);
    assert_eq!(
        lemma22_constants(&ideal(&r, &["x", "y"]), &poly(&r, "z"), &[3], 2, 10).unwrap(),
        Some((2, 1))
    );
}

#[test]
fn lemma22_constants_survive_smaller_caps() {
    let r = ring(2, &["x", "y", "z"], &[]);
    let j = ideal(&r, &["x^2", "y"]);
    let z = poly(&r, "z^2");
    let jm: MonomialIdeal = vec![vec![2, 0, 0], vec![0, 1, 0]];
    let (n1, n2) = lemma22_constants(&j, &z, &[2, 4, 8], 3, 12)
        .unwrap()
        .unwrap();
    for (qs, l_max) in [(vec![2u64, 4], 3u64), (vec![2], 1), (vec![4, 8], 2)] {
        assert!(lemma22_holds(&jm, &[0, 0, 2], n1, n2, &qs, l_max));
        let (m1, m2) = lemma22_constants(&j, &z, &qs, l_max, 12).unwrap().unwrap();
        assert!((m2, m1) <= (n2, n1));
    }
}

#[test]
fn lemma22_rejects_non_primary() {
    let r = ring(2, &["x", "y", "z"], &[]);
    assert!(lemma22_constants(&ideal(&r, &["x"]), &poly(&r, "y"), &[2], 1, 4).is_err());
}
