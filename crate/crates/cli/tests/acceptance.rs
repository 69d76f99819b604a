//! Acceptance suite: one PASS/FAIL line per criterion, each checked for
//! correctness and against its wall-clock limit. Exits nonzero on any FAIL.

#[path = "../../core/tests/common/oracles.rs"]
mod oracles;

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use frobsat::graded::rank_mod_p;
use frobsat::lc::{
    lemma21_constant, lemma22_constants, nu, prop31_verify, thm23_verify, verify_gap,
};
use frobsat::lc::{LcVerdict, Prop31Status, SearchOutcome};
use frobsat::linkage::{choose_generic_x, lemma34_cm_check, reduction_chain, ChainOptions};
use frobsat::tight_closure::{tc_evidence, TcStatus};
use frobsat::{
    buchberger, gb_membership, parse_polynomial, Ideal, MonomialOrder, PolyRing, Polynomial, Ring,
    Zp,
};
use frobsat_cli::{parse_session, run_command, Command, Flags};
use oracles::{membership_oracle, random_form, random_generators, rank_oracle};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

/// Name, time limit in seconds, check.
type Criterion = (&'static str, u64, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ring(p: u64, vars: &[&str], rels: &[&str]) -> Arc<Ring> {
    let base = PolyRing::standard(p, vars).unwrap();
    let rels = rels
        .iter()
        .map(|s| parse_polynomial(&base, s).unwrap())
        .collect();
    Ring::new(base, rels).unwrap()
}

fn poly(r: &Arc<Ring>, s: &str) -> Polynomial {
    parse_polynomial(r.base(), s).unwrap()
}

fn ideal(r: &Arc<Ring>, gens: &[&str]) -> Ideal {
    Ideal::new(r, gens.iter().map(|s| poly(r, s)).collect()).unwrap()
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn c1_membership_oracle() -> Outcome {
    const NAMES: [&str; 3] = ["x", "y", "z"];
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut checks, mut members, mut ideals) = (0, 0, 0);
    for trial in 0..120 {
        let p = [2u64, 3, 5][trial % 3];
        let nvars = 1 + (trial / 3) % 3;
        let base = PolyRing::standard(p, &NAMES[..nvars]).unwrap();
        let r = Ring::polynomial_ring(base.clone());
        let gens = random_generators(&base, rng.gen_range(1..=3), 4, &mut rng);
        ideals += 1;
        for k in 0..4 {
            let d = rng.gen_range(0..=6u64);
            let f = if k % 2 == 0 {
                gens.iter().filter(|g| g.degree().unwrap() <= d).fold(
                    Polynomial::zero(&base),
                    |acc, g| {
                        &acc + &(&random_form(&base, d - g.degree().unwrap(), 0.6, &mut rng) * g)
                    },
                )
            } else {
                random_form(&base, d, 0.6, &mut rng)
            };
            let expected = membership_oracle(&r, &gens, &f);
            let got = gb_membership(&r, &f, &gens).map_err(err)?;
            ensure!(got == expected, "disagreement on f = {f} for {gens:?}");
            checks += 1;
            members += expected as usize;
        }
    }
    // the rank routine the oracle relies on is itself cross-checked
    for _ in 0..100 {
        let p = [2u64, 3, 5][rng.gen_range(0..3)];
        let m: Vec<Vec<u32>> = (0..rng.gen_range(1..7))
            .map(|_| {
                (0..rng.gen_range(1..7))
                    .map(|_| rng.gen_range(0..p as u32))
                    .collect()
            })
            .collect();
        let width = m.iter().map(Vec::len).min().unwrap();
        let m: Vec<Vec<u32>> = m.into_iter().map(|r| r[..width].to_vec()).collect();
        ensure!(
            rank_mod_p(Zp::new(p).unwrap(), m.clone()) == rank_oracle(p, &m),
            "rank mismatch on {m:?}"
        );
    }
    Ok(format!(
        "{ideals} ideals, {checks} probes ({members} members), 100% agreement"
    ))
}

fn c2_nu_closed_form() -> Outcome {
    let r = ring(2, &["x", "y"], &[]);
    let i = ideal(&r, &["x^2", "x*y"]);
    let mut seen = vec![];
    for q in [2u64, 4, 8] {
        let g = nu(&i, q).map_err(err)?;
        let qs = q.to_string();
        ensure!(
            g.saturation
                .same_ideal(&ideal(&r, &[&format!("x^{qs}")]))
                .unwrap(),
            "saturation at q = {q}"
        );
        let ann = ideal(&r, &[&format!("x^{qs}"), &format!("y^{qs}")]);
        ensure!(
            g.annihilator
                .as_ref()
                .is_some_and(|a| a.same_ideal(&ann).unwrap()),
            "annihilator at q = {q}"
        );
        // (x^q, y^q) has socle x^{q-1} y^{q-1} in degree 2q - 2
        ensure!(
            g.bound == 2 * q - 1,
            "nu({q}) = {} != {}",
            g.bound,
            2 * q - 1
        );
        ensure!(
            verify_gap(&g).map_err(err)?,
            "generator-level check failed at q = {q}"
        );
        seen.push(g.bound);
    }
    Ok(format!("nu = {seen:?}"))
}

fn c3_parameter_vanishing() -> Outcome {
    for p in [2u64, 3, 5] {
        let r = ring(p, &["x", "y", "z"], &[]);
        let i = ideal(&r, &["x", "y"]);
        for q in [p, p * p] {
            let g = nu(&i, q).map_err(err)?;
            ensure!(
                g.bound == 0 && g.is_saturated(),
                "nu = {} for p = {p}, q = {q}",
                g.bound
            );
        }
    }
    Ok("nu = 0 for p in {2,3,5}, q in {p, p^2}".into())
}

fn c4_prop31_pipeline() -> Outcome {
    let r = ring(5, &["x", "y", "z"], &["x^3 + y^3 + z^3"]);
    let rep =
        prop31_verify(&r, &[poly(&r, "x")], &poly(&r, "y"), &[5, 25], 40, 6, true).map_err(err)?;
    let k = rep.koszul.as_ref().ok_or("no Koszul scan")?;
    ensure!(k.stable, "Koszul scan not stable: {:?}", k.dims);
    ensure!(
        rep.status == Prop31Status::Pass,
        "status {:?}: {:?}",
        rep.status,
        rep.rows
    );
    let rows: Vec<String> = rep
        .rows
        .iter()
        .map(|r| format!("q={} nu={} <= {}", r.q, r.nu, r.bound))
        .collect();
    Ok(format!(
        "H_1 top {:?}, D = {}, {}",
        k.top,
        rep.degree_sum,
        rows.join(", ")
    ))
}

fn c5_lemma21() -> Outcome {
    let std = Ring::polynomial_ring(PolyRing::standard(2, &["x", "y"]).unwrap());
    let a = lemma21_constant(&std, 4, 4, 20);
    ensure!(a == SearchOutcome::Found(0), "standard grading gave {a:?}");
    let w = Ring::polynomial_ring(PolyRing::new(3, [("x", 2)]).unwrap());
    let b = lemma21_constant(&w, 3, 3, 20);
    // parity oracle: only even degrees are nonzero, R_{≥N}·R_{≥M} starts in
    // degree even(N) + even(M), and R_{≥s} starts in degree even(s)
    let even = |s: u64| s + s % 2;
    let parity = (0..=3u64)
        .flat_map(|n| (0..=3u64).map(move |m| (n, m)))
        .map(|(n, m)| {
            (0..)
                .find(|l| even(n + m + l) >= even(n) + even(m))
                .unwrap()
        })
        .max()
        .unwrap();
    ensure!(
        b == SearchOutcome::Found(parity),
        "weight-2 grading gave {b:?}, parity oracle {parity}"
    );
    Ok(format!("L = 0 (standard), L = {parity} (weight 2)"))
}

fn c6_lemma22() -> Outcome {
    let r = ring(2, &["x", "y"], &[]);
    let found =
        lemma22_constants(&ideal(&r, &["x"]), &poly(&r, "y"), &[2, 4], 3, 10).map_err(err)?;
    ensure!(found == Some((1, 1)), "found {found:?}");
    // monomial count: x^a y^b lies outside (x^q, y^{N2 l q}) iff a < q and
    // b < N2 l q, so the top missing degree is q - 1 + N2 l q - 1
    let holds = |n1: u64, n2: u64| {
        [2u64, 4]
            .iter()
            .all(|&q| (1..=3u64).all(|l| n1 * q + n2 * l * q > q - 1 + n2 * l * q - 1))
    };
    ensure!(holds(1, 1) && !holds(0, 1), "monomial oracle disagrees");
    Ok("(N1, N2) = (1, 1)".into())
}

fn c7_lemma34() -> Outcome {
    let mut fixed = 0;
    for p in [2u64, 3] {
        let r = ring(p, &["x", "y", "z"], &[]);
        let i = ideal(&r, &["x*y", "x*z"]);
        let x = [poly(&r, "x*y + x*z")];
        for q in [p, p * p] {
            let rep = lemma34_cm_check(&i, &x, q).map_err(err)?;
            ensure!(rep.equal, "p = {p}, q = {q}: witnesses {:?}", rep.witnesses);
            fixed += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    let (mut random, mut instances) = (0, 0);
    while instances < 24 {
        let p = [2u64, 3][rng.gen_range(0..2)];
        let names = ["x", "y", "z"];
        let nvars = rng.gen_range(2..=3);
        let base = PolyRing::standard(p, &names[..nvars]).unwrap();
        let r = Ring::polynomial_ring(base.clone());
        let i = Ideal::new(
            &r,
            random_generators(&base, rng.gen_range(1..=3), 3, &mut rng),
        )
        .unwrap();
        if i.is_zero() || !i.dimension().is_some_and(|d| d >= 1) {
            continue;
        }
        let Ok(cert) = choose_generic_x(&i, rng.gen(), 25) else {
            continue;
        };
        instances += 1;
        for q in [p, p * p] {
            let rep = lemma34_cm_check(&i, &cert.elements, q).map_err(err)?;
            ensure!(
                rep.equal,
                "I = {i}, x = {:?}, q = {q}: witnesses {:?}",
                cert.elements,
                rep.witnesses
            );
            random += 1;
        }
    }
    Ok(format!(
        "{fixed} fixed cases, {random} random (I, x, q) cases over {instances} ideals"
    ))
}

fn c8_thm23() -> Outcome {
    let r = ring(2, &["x", "y"], &[]);
    let rep = thm23_verify(
        &ideal(&r, &["x^2", "x*y"]),
        &poly(&r, "x"),
        &[2, 4, 8],
        None,
    )
    .map_err(err)?;
    ensure!(
        rep.colon_height == Some(2) && rep.ring_dimension == 2,
        "height {:?}",
        rep.colon_height
    );
    ensure!(rep.hypothesis_holds, "hypothesis rejected");
    let j: Vec<u64> = rep.j_scan.rows.iter().map(|r| r.nu()).collect();
    let i: Vec<u64> = rep.i_scan.rows.iter().map(|r| r.nu()).collect();
    ensure!(j == vec![3, 7, 15], "nu_J = {j:?}");
    ensure!(i == vec![0, 0, 0], "nu_I = {i:?}");
    ensure!(
        rep.j_scan.verdict == LcVerdict::ConsistentWithLc,
        "J verdict {:?}",
        rep.j_scan.verdict
    );
    ensure!(rep.conclusion_consistent, "conclusion marked inconsistent");
    Ok(format!("height(J:y) = 2, nu_J = {j:?}, nu_I = {i:?}"))
}

fn c9_chain() -> Outcome {
    let r = ring(5, &["x", "y", "z"], &[]);
    let i = ideal(&r, &["x*y", "x*z"]);
    let opts = ChainOptions {
        seed: 42,
        max_steps: 4,
        max_retries: 20,
        q_list: vec![5, 25],
        budget: None,
    };
    let rep = reduction_chain(&i, &opts).map_err(err)?;
    ensure!(rep.steps.len() == 1, "{} steps", rep.steps.len());
    let s = &rep.steps[0];
    ensure!(
        s.certificate.is_valid() && s.certificate.height == 1,
        "invalid certificate"
    );
    ensure!(
        s.dim_before == 2 && s.dim_after == Some(1) && s.dimension_dropped(),
        "dimension {} -> {:?}",
        s.dim_before,
        s.dim_after
    );
    ensure!(
        rep.terminal.height() == Some(2),
        "height(J) = {:?}",
        rep.terminal.height()
    );
    ensure!(rep.terminal.contains_ideal(&i).unwrap(), "I not inside J");
    let scan = rep.terminal_scan.as_ref().ok_or("no terminal scan")?;
    ensure!(
        scan.rows.len() == 2 && !scan.truncated,
        "terminal scan incomplete"
    );
    Ok(format!(
        "J = {} (dim 1, height 2), terminal nu = {:?}",
        rep.terminal,
        scan.nu_values()
    ))
}

fn c10_tight_closure() -> Outcome {
    let r = ring(7, &["x", "y", "z"], &["x^3 + y^3 + z^3"]);
    let i = ideal(&r, &["x", "y"]);
    let v = tc_evidence(&poly(&r, "z^2"), &i, &poly(&r, "x^2"), 2).map_err(err)?;
    ensure!(
        v.status == TcStatus::EvidenceInStar(2),
        "status {:?}",
        v.status
    );
    // direct membership of x^2 z^{2q} in (x^q, y^q, x^3 + y^3 + z^3)
    for q in [7u64, 49] {
        let gens: Vec<Polynomial> = ["x", "y"]
            .iter()
            .map(|v| poly(&r, v).pow(q))
            .chain([poly(&r, "x^3 + y^3 + z^3")])
            .collect();
        let gb = buchberger(r.base(), &gens, MonomialOrder::Grevlex).map_err(err)?;
        let f = &poly(&r, "x^2") * &poly(&r, "z^2").pow(q);
        ensure!(
            gb.contains(&f).map_err(err)?,
            "direct membership fails at q = {q}"
        );
        if q == 7 {
            ensure!(
                membership_oracle(&Ring::polynomial_ring(r.base().clone()), &gens, &f),
                "linear algebra disagrees"
            );
        }
    }
    let s = ring(5, &["x", "y"], &[]);
    let w = tc_evidence(
        &poly(&s, "y"),
        &ideal(&s, &["x"]),
        &Polynomial::one(s.base()),
        2,
    )
    .map_err(err)?;
    ensure!(
        w.status == TcStatus::NotInStarIfTestElement(1),
        "status {:?}",
        w.status
    );
    Ok("EvidenceInStar(2); NotInStarIfTestElement(1)".into())
}

fn c11_determinism() -> Outcome {
    let sessions = [
        (
            "char 5\nvars x:1 y:1 z:1\nideal I = x*y, x*z\nq 5,25\nseed 42\n",
            Command::Chain,
        ),
        (
            "char 2\nvars x:1 y:1\nideal I = x*y, x^2\nq 2,4,8\n",
            Command::LcScan,
        ),
        (
            "char 5\nvars x y z\nideal I = x*z, y*z, x*y\nseed 7\n",
            Command::Link,
        ),
        (
            "char 7\nvars x y z\nrel x^3+y^3+z^3\nideal I = x, y\nelem f = z^2\nq 7,49\n",
            Command::Tc,
        ),
    ];
    let flags = Flags {
        ideal: Some("I".into()),
        elem: Some("f".into()),
        ..Flags::default()
    };
    for (text, cmd) in sessions {
        let s = parse_session(text).map_err(err)?;
        let a = run_command(&s, cmd, &flags).map_err(err)?.render();
        let b = run_command(&parse_session(text).map_err(err)?, cmd, &flags)
            .map_err(err)?
            .render();
        ensure!(a == b, "{} differs between runs", cmd.name());
    }
    // the binary, twice, on the seed-42 chain
    let dir = std::env::temp_dir().join(format!("frobsat-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(err)?;
    let path = dir.join("chain.session");
    std::fs::write(&path, sessions[0].0).map_err(err)?;
    let run = || {
        std::process::Command::new(env!("CARGO_BIN_EXE_frobsat"))
            .args([
                "chain",
                path.to_str().unwrap(),
                "--ideal",
                "I",
                "--seed",
                "42",
            ])
            .output()
    };
    let (a, b) = (run().map_err(err)?, run().map_err(err)?);
    std::fs::remove_dir_all(&dir).ok();
    ensure!(
        a.status.success() && b.status.success(),
        "chain exited with {:?}",
        a.status
    );
    ensure!(
        a.stdout == b.stdout && !a.stdout.is_empty(),
        "chain output differs between runs"
    );
    Ok(format!(
        "4 sessions via library, seed-42 chain via binary ({} bytes) byte-identical",
        a.stdout.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        (
            "Groebner membership vs degreewise linear algebra",
            60,
            c1_membership_oracle,
        ),
        ("nu closed form 2q-1 for (x^2, xy)", 10, c2_nu_closed_form),
        (
            "parameter ideal (x, y) has nu = 0",
            10,
            c3_parameter_vanishing,
        ),
        (
            "Koszul-bound pipeline on the Fermat cubic",
            300,
            c4_prop31_pipeline,
        ),
        ("product containment constants L", 10, c5_lemma21),
        ("constants (N1, N2) for J = (x), z = y", 10, c6_lemma22),
        ("colon-saturation equality in CM rings", 120, c7_lemma34),
        (
            "linkage-of-scans verifier on (x^2, xy), y = x",
            10,
            c8_thm23,
        ),
        ("reduction chain on (xy, xz)", 30, c9_chain),
        ("tight closure evidence", 120, c10_tight_closure),
        ("determinism of reports", 10, c11_determinism),
    ];
    let mut failed = 0;
    for (k, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let within = elapsed <= Duration::from_secs(*limit);
        let (tag, detail) = match (&outcome, within) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("over time limit; {d}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!(
            "[{tag}] criterion {:>2}: {name} ({:.2} s, limit {limit} s): {detail}",
            k + 1,
            elapsed.as_secs_f64()
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
