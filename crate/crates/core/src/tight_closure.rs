//! Evidence about tight closure membership through the families
//! `c·f^q ∈ I^[q]`, and a heuristic scan of the upper approximations
//! `U_q = I^[q] : c`.
//!
//! Nothing here computes a tight closure. Statuses say what was observed for
//! the scanned exponents; whether `c` is a test element is the caller's
//! assertion.

use std::time::Duration;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::lc::{
    saturation_gap, scan_rows, validate_q_list, verdict_for, LcVerdict, SaturationGap,
};
use crate::poly::Polynomial;
use crate::ring::Ring;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TcStatus {
    InIdeal,
    /// Least `e` with `f^{p^e} ∈ I^[p^e]`.
    FrobeniusClosure(u32),
    /// `c·f^q ∈ I^[q]` for every `q = p^e`, `1 ≤ e ≤ e_max`.
    EvidenceInStar(u32),
    /// First `e` with `c·f^q ∉ I^[q]`; a non-membership certificate when
    /// `c` is a test element.
    NotInStarIfTestElement(u32),
    Inconclusive,
}

impl TcStatus {
    pub fn name(&self) -> &'static str {
        match self {
            TcStatus::InIdeal => "in-ideal",
            TcStatus::FrobeniusClosure(_) => "frobenius-closure",
            TcStatus::EvidenceInStar(_) => "evidence-in-star",
            TcStatus::NotInStarIfTestElement(_) => "not-in-star-if-test-element",
            TcStatus::Inconclusive => "inconclusive",
        }
    }

    pub fn exponent(&self) -> Option<u32> {
        match *self {
            TcStatus::FrobeniusClosure(e)
            | TcStatus::EvidenceInStar(e)
            | TcStatus::NotInStarIfTestElement(e) => Some(e),
            TcStatus::InIdeal | TcStatus::Inconclusive => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct TcVerdict {
    pub element: Polynomial,
    pub ideal: Ideal,
    /// `None` for the Frobenius closure test (`c = 1`).
    pub test_element: Option<Polynomial>,
    pub e_max: u32,
    pub status: TcStatus,
}

fn check_form(f: &Polynomial, what: &str) -> Result<()> {
    f.homogeneous_degree().map(|_| ()).map_err(|e| match e {
        Error::Inhomogeneous { degrees } => {
            Error::InvalidArgument(format!("{what} is not homogeneous (degrees {degrees:?})"))
        }
        other => other,
    })
}

fn q_of(p: u32, e: u32) -> u64 {
    (p as u64).pow(e)
}

/// `InIdeal`, else the least `e ≤ e_max` with `f^q ∈ I^[q]`, else `Inconclusive`.
pub fn frobenius_closure_test(f: &Polynomial, ideal: &Ideal, e_max: u32) -> Result<TcVerdict> {
    check_form(f, "f")?;
    let p = ideal.ring().characteristic();
    let verdict = |status| TcVerdict {
        element: f.clone(),
        ideal: ideal.clone(),
        test_element: None,
        e_max,
        status,
    };
    if ideal.contains(f)? {
        return Ok(verdict(TcStatus::InIdeal));
    }
    for e in 1..=e_max {
        let q = q_of(p, e);
        if ideal.frobenius_power(q)?.contains(&f.frobenius_pow(q)?)? {
            return Ok(verdict(TcStatus::FrobeniusClosure(e)));
        }
    }
    Ok(verdict(TcStatus::Inconclusive))
}

/// Partial derivatives of the relations that are nonzero in `R`, lowest
/// degree first; `[1]` for a polynomial ring. Whether they lie in `R^o` is
/// not checked.
pub fn jacobian_test_candidates(ring: &Ring) -> Result<Vec<Polynomial>> {
    if ring.is_polynomial_ring() {
        return Ok(vec![Polynomial::one(ring.base())]);
    }
    let mut out: Vec<Polynomial> = Vec::new();
    for rel in ring.relations() {
        for i in 0..ring.base().nvars() {
            let d = rel.derivative(i);
            if !ring.is_zero_in_quotient(&d) && !out.contains(&d) {
                out.push(d);
            }
        }
    }
    if out.is_empty() {
        return Err(Error::NoCandidates);
    }
    out.sort_by_key(|c| c.degree());
    Ok(out)
}

/// The lowest-degree Jacobian candidate.
pub fn default_test_candidate(ring: &Ring) -> Result<Polynomial> {
    Ok(jacobian_test_candidates(ring)?.swap_remove(0))
}

fn check_test_element(c: &Polynomial, ideal: &Ideal) -> Result<()> {
    check_form(c, "c")?;
    if ideal.ring().is_zero_in_quotient(c) {
        return Err(Error::InvalidArgument("c is zero in R".into()));
    }
    Ok(())
}

/// Checks `c·f^q ∈ I^[q]` for `q = p, ..., p^{e_max}`.
pub fn tc_evidence(f: &Polynomial, ideal: &Ideal, c: &Polynomial, e_max: u32) -> Result<TcVerdict> {
    check_form(f, "f")?;
    check_test_element(c, ideal)?;
    if e_max == 0 {
        return Err(Error::InvalidArgument("e_max must be positive".into()));
    }
    let p = ideal.ring().characteristic();
    let mut status = TcStatus::EvidenceInStar(e_max);
    for e in 1..=e_max {
        let q = q_of(p, e);
        let cfq = c.arith(&f.frobenius_pow(q)?, crate::poly::ArithOp::Mul)?;
        if !ideal.frobenius_power(q)?.contains(&cfq)? {
            status = TcStatus::NotInStarIfTestElement(e);
            break;
        }
    }
    Ok(TcVerdict {
        element: f.clone(),
        ideal: ideal.clone(),
        test_element: Some(c.clone()),
        e_max,
        status,
    })
}

/// Statement attached to every heuristic scan.
pub const LCSTAR_CAVEAT: &str =
    "HEURISTIC: I^[q] ⊆ (I^[q])^* ⊆ U_q = I^[q] : c when c is a test element; bounds describe U_q only";

#[derive(Debug, Clone)]
pub struct LcStarRow {
    pub q: u64,
    /// Saturation data of `U_q`.
    pub gap: SaturationGap,
    pub elapsed: Duration,
}

#[derive(Debug, Clone)]
pub struct LcStarReport {
    pub ideal: Ideal,
    pub test_element: Polynomial,
    pub rows: Vec<LcStarRow>,
    pub n_fit: u64,
    pub verdict: LcVerdict,
    pub truncated: bool,
}

/// Tabulates `ν*(q)`, the saturation bound of `U_q = I^[q] : c`.
pub fn lcstar_scan_heuristic(
    ideal: &Ideal,
    c: &Polynomial,
    q_list: &[u64],
    budget: Option<Duration>,
) -> Result<LcStarReport> {
    check_test_element(c, ideal)?;
    validate_q_list(ideal.ring(), q_list)?;
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let (rows, truncated) = scan_rows(q_list, budget, |q| {
        saturation_gap(&ideal.frobenius_power(q)?.colon_element(c)?)
    })?;
    let rows: Vec<LcStarRow> = rows
        .into_iter()
        .map(|r| LcStarRow {
            q: r.q,
            gap: r.gap,
            elapsed: r.elapsed,
        })
        .collect();
    let nus: Vec<(u64, u64)> = rows.iter().map(|r| (r.q, r.gap.bound)).collect();
    let n_fit = nus.iter().map(|&(q, n)| n.div_ceil(q)).max().unwrap_or(0);
    Ok(LcStarReport {
        ideal: ideal.clone(),
        test_element: c.clone(),
        verdict: verdict_for(&nus, truncated),
        rows,
        n_fit,
        truncated,
    })
}
