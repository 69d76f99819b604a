//! Command dispatch: one command maps to one library operation and yields
//! one [`Report`].

use std::time::{Duration, Instant};

use frobsat::graded::{koszul_h1_top_degree, KoszulReport};
use frobsat::lc::{
    default_q_list, lc_scan, lemma21_constant, lemma22_constants, nu, prop31_verify, thm23_verify,
    verify_gap, LcReport, SaturationGap, SearchOutcome,
};
use frobsat::linkage::{
    choose_generic_x, lemma34_cm_check, link_ideal, reduction_chain, ChainOptions, ChainStep,
    LinkCertificate,
};
use frobsat::tight_closure::{
    default_test_candidate, frobenius_closure_test, lcstar_scan_heuristic, tc_evidence, TcVerdict,
    LCSTAR_CAVEAT,
};
use frobsat::{Ideal, Polynomial};
use serde_json::{json, Map, Value};

use crate::error::{CliError, Result};
use crate::report::{ideal_text, poly_text, Report};
use crate::session::{Assertion, SessionFile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    LcScan,
    Nu,
    Lemma21,
    Lemma22,
    Koszul,
    Prop31,
    Thm23,
    Link,
    Chain,
    Lemma34,
    Tc,
    Fc,
    Lcstar,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::LcScan => "lc-scan",
            Command::Nu => "nu",
            Command::Lemma21 => "lemma21",
            Command::Lemma22 => "lemma22",
            Command::Koszul => "koszul",
            Command::Prop31 => "prop31",
            Command::Thm23 => "thm23",
            Command::Link => "link",
            Command::Chain => "chain",
            Command::Lemma34 => "lemma34",
            Command::Tc => "tc",
            Command::Fc => "fc",
            Command::Lcstar => "lcstar",
        }
    }
}

/// Command-line options; unset values fall back to session defaults, then
/// to per-command defaults.
#[derive(Debug, Clone, Default)]
pub struct Flags {
    pub ideal: Option<String>,
    pub elem: Option<String>,
    /// Ideal whose generators are the linking elements.
    pub x: Option<String>,
    pub q: Option<Vec<u64>>,
    pub cap: Option<u64>,
    pub seed: Option<u64>,
    pub emax: Option<u32>,
    /// Element name, or `auto` for the lowest-degree Jacobian candidate.
    pub c: Option<String>,
    pub window: Option<u64>,
    pub lmax: Option<u64>,
    pub nmax: Option<u64>,
    pub mmax: Option<u64>,
    pub retries: Option<usize>,
    pub steps: Option<usize>,
    /// Per-q wall-clock budget for scans.
    pub budget: Option<Duration>,
    pub timings: bool,
}

struct Ctx<'a> {
    session: &'a SessionFile,
    flags: &'a Flags,
    inputs: Map<String, Value>,
    timings: Map<String, Value>,
}

fn ms(d: Duration) -> Value {
    json!(d.as_millis() as u64)
}

impl<'a> Ctx<'a> {
    fn ideal(&mut self) -> Result<Ideal> {
        let name = self
            .flags
            .ideal
            .as_deref()
            .ok_or_else(|| CliError::Usage("--ideal is required".into()))?;
        let i = self.session.ideal(name)?;
        self.inputs.insert(
            "ideal".into(),
            json!({ "name": name, "generators": ideal_text(&i) }),
        );
        Ok(i)
    }

    fn element(&mut self, key: &str) -> Result<Polynomial> {
        let name = self
            .flags
            .elem
            .as_deref()
            .ok_or_else(|| CliError::Usage("--elem is required".into()))?;
        let f = self.session.element(name)?.clone();
        self.inputs
            .insert(key.into(), json!({ "name": name, "value": poly_text(&f) }));
        Ok(f)
    }

    fn q_list(&mut self) -> Vec<u64> {
        let q = self
            .flags
            .q
            .clone()
            .or_else(|| self.session.q_list.clone())
            .unwrap_or_else(|| default_q_list(&self.session.ring, 3));
        self.inputs.insert("q".into(), json!(q));
        q
    }

    fn cap(&mut self, default: u64) -> u64 {
        let cap = self.flags.cap.or(self.session.cap).unwrap_or(default);
        self.inputs.insert("cap".into(), json!(cap));
        cap
    }

    fn param<T: Copy + Into<Value>>(&mut self, key: &str, value: Option<T>, default: T) -> T {
        let v = value.unwrap_or(default);
        self.inputs.insert(key.into(), v.into());
        v
    }

    fn seed(&self) -> u64 {
        self.flags.seed.or(self.session.seed).unwrap_or(0)
    }

    fn require(&self, command: Command, assertion: Assertion) -> Result<()> {
        if self.session.asserts(assertion) {
            Ok(())
        } else {
            Err(CliError::MissingAssertion {
                command: command.name(),
                assertion: assertion.keyword(),
            })
        }
    }

    fn test_element(&mut self) -> Result<Polynomial> {
        let c = match self.flags.c.as_deref() {
            None | Some("auto") => default_test_candidate(&self.session.ring)?,
            Some(name) => self.session.element(name)?.clone(),
        };
        self.inputs.insert(
            "c".into(),
            json!({ "name": self.flags.c.clone().unwrap_or_else(|| "auto".into()), "value": poly_text(&c) }),
        );
        Ok(c)
    }
}

fn gap_json(g: &SaturationGap) -> Value {
    json!({
        "nu": g.bound,
        "saturated": g.is_saturated(),
        "saturation": ideal_text(&g.saturation),
        "annihilator": g.annihilator.as_ref().map(ideal_text),
        "gap_dims": g.gap_dims,
    })
}

fn scan_json(r: &LcReport, timings: &mut Map<String, Value>, key: &str) -> Value {
    let rows: Vec<Value> = r
        .rows
        .iter()
        .map(|row| {
            let mut v = gap_json(&row.gap);
            v["q"] = json!(row.q);
            v
        })
        .collect();
    timings.insert(
        key.into(),
        Value::Array(
            r.rows
                .iter()
                .map(|row| json!({ "q": row.q, "ms": ms(row.elapsed) }))
                .collect(),
        ),
    );
    let scanned: Vec<u64> = r.rows.iter().map(|row| row.q).collect();
    json!({
        "ideal": ideal_text(&r.ideal),
        "rows": rows,
        "n_fit": r.n_fit,
        "verdict": r.verdict.as_str(),
        "truncated": r.truncated,
        "scope": format!("nu(q) <= {}*q holds for the scanned q = {:?} only", r.n_fit, scanned),
    })
}

fn koszul_json(k: &KoszulReport) -> Value {
    json!({
        "element_degrees": k.element_degrees,
        "dims": k.dims,
        "top": k.top,
        "stable": k.stable,
        "cap": k.cap,
        "window": k.window,
        "vanishing_from": k.vanishing_from(),
    })
}

fn certificate_json(c: &LinkCertificate) -> Value {
    json!({
        "ideal": ideal_text(&c.ideal),
        "height": c.height,
        "elements": c.elements.iter().map(poly_text).collect::<Vec<_>>(),
        "elements_height": c.elements_height,
        "elements_height_ok": c.elements_height_ok(),
        "link": ideal_text(&c.link),
        "link_height": c.link_height,
        "link_height_ok": c.link_height_ok(),
        "valid": c.is_valid(),
        "seed": c.seed,
        "attempt": c.attempt,
    })
}

fn steps_json(steps: &[ChainStep]) -> Value {
    Value::Array(
        steps
            .iter()
            .map(|s| {
                json!({
                    "certificate": certificate_json(&s.certificate),
                    "dim_before": s.dim_before,
                    "dim_after": s.dim_after,
                    "dimension_dropped": s.dimension_dropped(),
                })
            })
            .collect(),
    )
}

fn tc_json(v: &TcVerdict) -> Value {
    json!({
        "status": v.status.name(),
        "exponent": v.status.exponent(),
        "e_max": v.e_max,
        "element": poly_text(&v.element),
        "ideal": ideal_text(&v.ideal),
        "test_element": v.test_element.as_ref().map(poly_text),
    })
}

fn ring_json(s: &SessionFile) -> Value {
    let base = s.base();
    json!({
        "char": base.characteristic(),
        "vars": base.names().iter().zip(base.weights()).map(|(n, w)| format!("{n}:{w}")).collect::<Vec<_>>(),
        "relations": s.ring.relations().iter().map(poly_text).collect::<Vec<_>>(),
    })
}

/// Runs `command` against `session`. Mathematical outcomes such as
/// `fail`, `inconclusive` or a genericity failure are results; only input
/// and validation problems are errors.
pub fn run_command(session: &SessionFile, command: Command, flags: &Flags) -> Result<Report> {
    let start = Instant::now();
    let mut cx = Ctx {
        session,
        flags,
        inputs: Map::new(),
        timings: Map::new(),
    };
    cx.inputs.insert("ring".into(), ring_json(session));
    let result = dispatch(&mut cx, command)?;
    cx.timings.insert("total_ms".into(), ms(start.elapsed()));
    let seed = cx.seed();
    Ok(Report {
        command: command.name().into(),
        inputs: Value::Object(cx.inputs),
        assertions: session
            .assertions
            .iter()
            .map(|a| a.keyword().to_string())
            .collect(),
        result,
        seed,
        timings: flags.timings.then_some(Value::Object(cx.timings)),
    })
}

fn dispatch(cx: &mut Ctx, command: Command) -> Result<Value> {
    let ring = cx.session.ring.clone();
    let budget = cx.flags.budget;
    Ok(match command {
        Command::Nu => {
            let i = cx.ideal()?;
            let mut rows = Vec::new();
            for q in cx.q_list() {
                let t = Instant::now();
                let g = nu(&i, q)?;
                let mut v = gap_json(&g);
                v["q"] = json!(q);
                v["verified"] = json!(verify_gap(&g)?);
                cx.timings.insert(format!("q{q}_ms"), ms(t.elapsed()));
                rows.push(v);
            }
            json!({ "rows": rows })
        }
        Command::LcScan => {
            let i = cx.ideal()?;
            let q = cx.q_list();
            let r = lc_scan(&i, &q, budget)?;
            scan_json(&r, &mut cx.timings, "rows")
        }
        Command::Lemma21 => {
            let n = cx.param("n_max", cx.flags.nmax, 4);
            let m = cx.param("m_max", cx.flags.mmax, 4);
            let cap = cx.cap(20);
            match lemma21_constant(&ring, n, m, cap) {
                SearchOutcome::Found(l) => json!({ "outcome": "found", "L": l }),
                SearchOutcome::AtLeast(l) => json!({ "outcome": "at-least", "L": l }),
            }
        }
        Command::Lemma22 => {
            let j = cx.ideal()?;
            let z = cx.element("z")?;
            let q = cx.q_list();
            let l_max = cx.param("l_max", cx.flags.lmax, 3);
            let cap = cx.cap(10);
            match lemma22_constants(&j, &z, &q, l_max, cap)? {
                Some((n1, n2)) => json!({ "found": true, "N1": n1, "N2": n2 }),
                None => json!({ "found": false, "N1": null, "N2": null }),
            }
        }
        Command::Koszul => {
            let i = cx.ideal()?;
            let mut elements = i.gens().to_vec();
            if cx.flags.elem.is_some() {
                elements.push(cx.element("z")?);
            }
            let cap = cx.cap(30);
            let window = cx.param("window", cx.flags.window, 6);
            koszul_json(&koszul_h1_top_degree(&ring, &elements, cap, window)?)
        }
        Command::Prop31 => {
            let j = cx.ideal()?;
            let z = cx.element("z")?;
            let q = cx.q_list();
            let cap = cx.cap(40);
            let window = cx.param("window", cx.flags.window, 6);
            let equidim = cx.session.asserts(Assertion::Equidimensional);
            let r = prop31_verify(&ring, j.gens(), &z, &q, cap, window, equidim)?;
            json!({
                "status": r.status.as_str(),
                "violations": r.violations,
                "ring_dimension": r.ring_dimension,
                "koszul": r.koszul.as_ref().map(koszul_json),
                "degree_sum": r.degree_sum,
                "vanishing_from": r.vanishing_from,
                "rows": r.rows.iter().map(|row| json!({
                    "q": row.q, "nu": row.nu, "bound": row.bound, "pass": row.pass,
                })).collect::<Vec<_>>(),
            })
        }
        Command::Thm23 => {
            let j = cx.ideal()?;
            let y = cx.element("y")?;
            let q = cx.q_list();
            let r = thm23_verify(&j, &y, &q, budget)?;
            json!({
                "ring_dimension": r.ring_dimension,
                "colon_height": r.colon_height.map_or(json!("infinite"), |h| json!(h)),
                "hypothesis_holds": r.hypothesis_holds,
                "j_scan": scan_json(&r.j_scan, &mut cx.timings, "j_rows"),
                "i_scan": scan_json(&r.i_scan, &mut cx.timings, "i_rows"),
                "conclusion_consistent": r.conclusion_consistent,
            })
        }
        Command::Link => {
            let i = cx.ideal()?;
            if let Some(name) = cx.flags.x.clone() {
                let x = cx.session.ideal_generators(&name)?.to_vec();
                cx.inputs.insert("x".into(), json!({ "name": name, "elements": x.iter().map(poly_text).collect::<Vec<_>>() }));
                json!({ "link": ideal_text(&link_ideal(&i, &x)?) })
            } else {
                let retries = cx.param("retries", cx.flags.retries.map(|r| r as u64), 20) as usize;
                match choose_generic_x(&i, cx.seed(), retries) {
                    Ok(c) => json!({ "status": "certified", "certificate": certificate_json(&c) }),
                    Err(e @ frobsat::Error::GenericityFailure { .. }) => {
                        json!({ "status": "genericity-failure", "error": e.to_string() })
                    }
                    Err(e) => return Err(e.into()),
                }
            }
        }
        Command::Chain => {
            let i = cx.ideal()?;
            let q = cx.q_list();
            let opts = ChainOptions {
                seed: cx.seed(),
                max_steps: cx.param("steps", cx.flags.steps.map(|s| s as u64), 4) as usize,
                max_retries: cx.param("retries", cx.flags.retries.map(|r| r as u64), 20) as usize,
                q_list: q,
                budget,
            };
            match reduction_chain(&i, &opts) {
                Ok(r) => json!({
                    "status": "completed",
                    "steps": steps_json(&r.steps),
                    "stop": r.stop.as_str(),
                    "terminal": ideal_text(&r.terminal),
                    "terminal_dimension": r.terminal.dimension(),
                    "terminal_height": r.terminal.height(),
                    "terminal_scan": r.terminal_scan.as_ref().map(|s| scan_json(s, &mut cx.timings, "terminal_rows")),
                }),
                Err(f) if matches!(f.error, frobsat::Error::GenericityFailure { .. }) => json!({
                    "status": "genericity-failure",
                    "error": f.error.to_string(),
                    "steps": steps_json(&f.steps),
                }),
                Err(f) => return Err(f.into()),
            }
        }
        Command::Lemma34 => {
            cx.require(command, Assertion::CohenMacaulay)?;
            let i = cx.ideal()?;
            let q = cx.q_list();
            let mut out = Map::new();
            let x = if let Some(name) = cx.flags.x.clone() {
                let x = cx.session.ideal_generators(&name)?.to_vec();
                cx.inputs.insert("x".into(), json!({ "name": name, "elements": x.iter().map(poly_text).collect::<Vec<_>>() }));
                x
            } else {
                let retries = cx.param("retries", cx.flags.retries.map(|r| r as u64), 20) as usize;
                let c = choose_generic_x(&i, cx.seed(), retries)?;
                out.insert("certificate".into(), certificate_json(&c));
                c.elements
            };
            let mut rows = Vec::new();
            for q in q {
                let r = lemma34_cm_check(&i, &x, q)?;
                rows.push(json!({
                    "q": r.q,
                    "equal": r.equal,
                    "lhs": ideal_text(&r.lhs),
                    "rhs": ideal_text(&r.rhs),
                    "witnesses": r.witnesses.iter().map(poly_text).collect::<Vec<_>>(),
                }));
            }
            out.insert(
                "all_equal".into(),
                json!(rows.iter().all(|r| r["equal"] == json!(true))),
            );
            out.insert("rows".into(), Value::Array(rows));
            Value::Object(out)
        }
        Command::Tc => {
            let i = cx.ideal()?;
            let f = cx.element("f")?;
            let c = cx.test_element()?;
            let e_max = cx.param("e_max", cx.flags.emax, 2);
            let mut v = tc_json(&tc_evidence(&f, &i, &c, e_max)?);
            v["note"] = json!(
                "certified only if c is a test element; R^o membership of c is a user assertion"
            );
            v
        }
        Command::Fc => {
            let i = cx.ideal()?;
            let f = cx.element("f")?;
            let e_max = cx.param("e_max", cx.flags.emax, 2);
            tc_json(&frobenius_closure_test(&f, &i, e_max)?)
        }
        Command::Lcstar => {
            let i = cx.ideal()?;
            let c = cx.test_element()?;
            let q = cx.q_list();
            let r = lcstar_scan_heuristic(&i, &c, &q, budget)?;
            cx.timings.insert(
                "rows".into(),
                Value::Array(
                    r.rows
                        .iter()
                        .map(|row| json!({ "q": row.q, "ms": ms(row.elapsed) }))
                        .collect(),
                ),
            );
            json!({
                "label": LCSTAR_CAVEAT,
                "rows": r.rows.iter().map(|row| {
                    let mut v = gap_json(&row.gap);
                    v["q"] = json!(row.q);
                    v["upper_approximation"] = json!(ideal_text(&row.gap.ideal));
                    v
                }).collect::<Vec<_>>(),
                "n_fit": r.n_fit,
                "verdict": r.verdict.as_str(),
                "truncated": r.truncated,
            })
        }
    })
}
