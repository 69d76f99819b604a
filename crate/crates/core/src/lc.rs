//! Saturation gaps of Frobenius powers and the drivers built on them.
//!
//! For a homogeneous ideal `I` and `q = p^e`, `ν(q)` is the least `N` with
//! `R_{≥N}·(I^[q])^sat ⊆ I^[q]`. It is computed as the truncation bound of
//! the annihilator `I^[q] : (I^[q])^sat`. Finite scans over `q` can only be
//! consistent with a linear bound `ν(q) ≤ N·q`; they never prove one.

use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graded::{koszul_h1_top_degree, product_containment, KoszulReport};
use crate::ideal::Ideal;
use crate::monomial::monomials_of_degree;
use crate::poly::{same_ring, Polynomial};
use crate::ring::Ring;

/// `A`, its saturation, and the annihilator of `A^sat/A`.
#[derive(Debug, Clone)]
pub struct SaturationGap {
    pub ideal: Ideal,
    pub saturation: Ideal,
    /// `A : A^sat`; `None` when `A` is saturated.
    pub annihilator: Option<Ideal>,
    /// Least `N` with `R_{≥N}·A^sat ⊆ A`.
    pub bound: u64,
    /// `dim (A^sat/A)_d` for `d = 0..gap_dims.len()`; zero beyond.
    pub gap_dims: Vec<usize>,
}

impl SaturationGap {
    pub fn is_saturated(&self) -> bool {
        self.annihilator.is_none()
    }
}

/// Saturation data of an arbitrary homogeneous ideal.
pub fn saturation_gap(a: &Ideal) -> Result<SaturationGap> {
    let sat = a.saturate_irrelevant()?;
    if sat.same_ideal(a)? {
        return Ok(SaturationGap {
            ideal: a.clone(),
            saturation: sat,
            annihilator: None,
            bound: 0,
            gap_dims: Vec::new(),
        });
    }
    let ann = a.colon(&sat)?;
    let bound = ann.truncation_bound()?;
    // elements of A^sat of degree ≥ bound + (max generator degree) lie in A
    let top_gen = sat
        .canonical_generators()
        .iter()
        .filter_map(|g| g.degree())
        .max()
        .unwrap_or(0);
    let cap = bound + top_gen;
    let ha = a.hilbert_table(cap).dims;
    let hs = sat.hilbert_table(cap).dims;
    let mut gap_dims: Vec<usize> = ha.iter().zip(&hs).map(|(x, y)| x - y).collect();
    while gap_dims.last() == Some(&0) {
        gap_dims.pop();
    }
    Ok(SaturationGap {
        ideal: a.clone(),
        saturation: sat,
        annihilator: Some(ann),
        bound,
        gap_dims,
    })
}

/// `ν(q)` for `I`, with the full saturation data of `I^[q]`.
pub fn nu(ideal: &Ideal, q: u64) -> Result<SaturationGap> {
    ideal.base().field().check_q(q)?;
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    saturation_gap(&ideal.frobenius_power(q)?)
}

/// Generator-level check of the defining property of the bound: every
/// monomial of degree `≥ bound` times every generator of `A^sat` lies in `A`,
/// and for a positive bound some monomial of degree `bound - 1` does not
/// multiply `A^sat` into `A`.
pub fn verify_gap(gap: &SaturationGap) -> Result<bool> {
    let a = &gap.ideal;
    let w = a.base().weights();
    let wmax = w.iter().copied().max().unwrap_or(1) as u64;
    let sat_gens = gap.saturation.canonical_generators();
    let base = a.base();
    for d in gap.bound..gap.bound + wmax {
        for u in monomials_of_degree(w, d) {
            for s in &sat_gens {
                if !a.contains(&s.mul_monomial(&u))? {
                    return Ok(false);
                }
            }
        }
    }
    if gap.bound == 0 {
        return Ok(true);
    }
    for u in monomials_of_degree(w, gap.bound - 1) {
        for s in &sat_gens {
            let us = s.mul_monomial(&u);
            if !a.contains(&us)? {
                debug_assert!(same_ring(us.ring(), base));
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Outcome of a finite scan over `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LcVerdict {
    /// `⌈ν(q)/q⌉` does not strictly increase across the scan.
    ConsistentWithLc,
    /// `⌈ν(q)/q⌉` strictly increases at every scanned step.
    GrowthDetected,
    /// Fewer than two completed rows, or the scan stopped on its budget.
    Inconclusive,
}

impl LcVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            LcVerdict::ConsistentWithLc => "consistent-with-LC",
            LcVerdict::GrowthDetected => "growth-detected",
            LcVerdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone)]
pub struct LcRow {
    pub q: u64,
    pub gap: SaturationGap,
    pub elapsed: Duration,
}

impl LcRow {
    pub fn nu(&self) -> u64 {
        self.gap.bound
    }
}

#[derive(Debug, Clone)]
pub struct LcReport {
    pub ideal: Ideal,
    pub rows: Vec<LcRow>,
    /// `max ⌈ν(q)/q⌉` over the completed rows.
    pub n_fit: u64,
    pub verdict: LcVerdict,
    /// Set when later `q` were skipped because a row exceeded the budget.
    pub truncated: bool,
}

impl LcReport {
    pub fn nu_values(&self) -> Vec<(u64, u64)> {
        self.rows.iter().map(|r| (r.q, r.nu())).collect()
    }
}

pub(crate) fn validate_q_list(ring: &Ring, q_list: &[u64]) -> Result<()> {
    if q_list.is_empty() {
        return Err(Error::InvalidArgument("empty q list".into()));
    }
    let field = ring.base().field();
    for q in q_list {
        field.check_q(*q)?;
    }
    if q_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(
            "q list must be strictly ascending".into(),
        ));
    }
    Ok(())
}

/// The first `count` powers `p, p^2, ...` of the characteristic.
pub fn default_q_list(ring: &Ring, count: usize) -> Vec<u64> {
    let p = ring.characteristic() as u64;
    std::iter::successors(Some(p), |q| q.checked_mul(p))
        .take(count)
        .collect()
}

fn ceil_div(a: u64, b: u64) -> u64 {
    a.div_ceil(b)
}

pub(crate) fn verdict_for(nus: &[(u64, u64)], truncated: bool) -> LcVerdict {
    if truncated || nus.len() < 2 {
        return LcVerdict::Inconclusive;
    }
    let ratios: Vec<u64> = nus.iter().map(|&(q, n)| ceil_div(n, q)).collect();
    if ratios.windows(2).all(|w| w[1] > w[0]) {
        LcVerdict::GrowthDetected
    } else {
        LcVerdict::ConsistentWithLc
    }
}

/// Runs `row` for each `q`, in parallel without a budget and in order with
/// one, stopping after the first row that exceeds the budget.
pub(crate) fn scan_rows(
    q_list: &[u64],
    budget: Option<Duration>,
    row: impl Fn(u64) -> Result<SaturationGap> + Sync,
) -> Result<(Vec<LcRow>, bool)> {
    let timed = |q: u64| -> Result<LcRow> {
        let start = Instant::now();
        let gap = row(q)?;
        Ok(LcRow {
            q,
            gap,
            elapsed: start.elapsed(),
        })
    };
    let Some(budget) = budget else {
        let rows = q_list
            .par_iter()
            .map(|&q| timed(q))
            .collect::<Result<Vec<_>>>()?;
        return Ok((rows, false));
    };
    let mut rows = Vec::new();
    for (k, &q) in q_list.iter().enumerate() {
        let r = timed(q)?;
        let over = r.elapsed > budget;
        rows.push(r);
        if over && k + 1 < q_list.len() {
            return Ok((rows, true));
        }
    }
    Ok((rows, false))
}

/// Tabulates `ν(q)` over `q_list`. When a row takes longer than `budget`,
/// the remaining `q` are skipped and the report is marked truncated.
pub fn lc_scan(ideal: &Ideal, q_list: &[u64], budget: Option<Duration>) -> Result<LcReport> {
    validate_q_list(ideal.ring(), q_list)?;
    let (rows, truncated) = scan_rows(q_list, budget, |q| nu(ideal, q))?;
    let nus: Vec<(u64, u64)> = rows.iter().map(|r| (r.q, r.nu())).collect();
    let n_fit = nus.iter().map(|&(q, n)| ceil_div(n, q)).max().unwrap_or(0);
    let verdict = verdict_for(&nus, truncated);
    Ok(LcReport {
        ideal: ideal.clone(),
        rows,
        n_fit,
        verdict,
        truncated,
    })
}

/// Result of a bounded constant search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(u64),
    /// No value below the cap works.
    AtLeast(u64),
}

/// Least `L` with `R_{≥N+M+L} ⊆ R_{≥N}·R_{≥M}` for all `N ≤ n_max`,
/// `M ≤ m_max`, checked in degrees up to `d_cap`.
pub fn lemma21_constant(ring: &Ring, n_max: u64, m_max: u64, d_cap: u64) -> SearchOutcome {
    let mut l = 0;
    while n_max + m_max + l <= d_cap {
        let ok = (0..=n_max)
            .all(|n| (0..=m_max).all(|m| product_containment(ring, n, m, n + m + l, d_cap)));
        if ok {
            return SearchOutcome::Found(l);
        }
        l += 1;
    }
    SearchOutcome::AtLeast(l)
}

/// Constants `(N1, N2)` with `R_{≥N1 q + N2 l k q} ⊆ J^[q] + (z^{N2 l q})`
/// for every scanned `q` and `1 ≤ l ≤ l_max`, where `k = deg z`.
///
/// Candidates are ordered by `N2` first, then `N1`, both capped at `d_cap`.
/// Each containment is decided by the truncation bound of the right side.
pub fn lemma22_constants(
    j: &Ideal,
    z: &Polynomial,
    q_list: &[u64],
    l_max: u64,
    d_cap: u64,
) -> Result<Option<(u64, u64)>> {
    validate_q_list(j.ring(), q_list)?;
    let k = match z.homogeneous_degree()? {
        Some(k) if k > 0 => k,
        _ => {
            return Err(Error::InvalidArgument(
                "z must be a form of positive degree".into(),
            ))
        }
    };
    if l_max == 0 {
        return Err(Error::InvalidArgument("l_max must be positive".into()));
    }
    let jz = j.with_element(z)?;
    match jz.dimension() {
        Some(0) => {}
        None => return Err(Error::UnitIdeal),
        Some(dimension) => return Err(Error::NotMPrimary { dimension }),
    }
    let powers: Vec<Ideal> = q_list
        .iter()
        .map(|&q| j.frobenius_power(q))
        .collect::<Result<_>>()?;
    let mut cache: std::collections::HashMap<(u64, u64), u64> = Default::default();
    for n2 in 1..=d_cap {
        let mut need = 0u64;
        for (qi, &q) in q_list.iter().enumerate() {
            for l in 1..=l_max {
                let e = n2 * l * q;
                let t = match cache.get(&(q, e)) {
                    Some(t) => *t,
                    None => {
                        let t = powers[qi].with_element(&z.pow(e))?.truncation_bound()?;
                        cache.insert((q, e), t);
                        t
                    }
                };
                let shift = n2 * l * k * q;
                need = need.max(ceil_div(t.saturating_sub(shift), q));
            }
        }
        if need <= d_cap {
            return Ok(Some((need, n2)));
        }
    }
    Ok(None)
}

/// Outcome of [`prop31_verify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Prop31Status {
    Pass,
    Fail,
    /// The Koszul scan did not stabilise below its cap.
    Inconclusive,
    HypothesisViolation,
}

impl Prop31Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Prop31Status::Pass => "pass",
            Prop31Status::Fail => "fail",
            Prop31Status::Inconclusive => "inconclusive",
            Prop31Status::HypothesisViolation => "hypothesis-violation",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prop31Row {
    pub q: u64,
    pub nu: u64,
    pub bound: u64,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct Prop31Report {
    pub ring_dimension: usize,
    pub violations: Vec<String>,
    pub koszul: Option<KoszulReport>,
    /// Sum of the parameter degrees.
    pub degree_sum: u64,
    /// `N` with `[H_1]_i = 0` for `i ≥ N`.
    pub vanishing_from: Option<u64>,
    pub rows: Vec<Prop31Row>,
    pub status: Prop31Status,
}

/// Checks `ν(q) ≤ (D + N)·q` for `J = (params)`, where `N` is the observed
/// vanishing degree of `H_1(params, z; R)` and `D` the sum of the parameter
/// degrees. Hypotheses are checked first and reported instead of erroring.
pub fn prop31_verify(
    ring: &std::sync::Arc<Ring>,
    params: &[Polynomial],
    z: &Polynomial,
    q_list: &[u64],
    cap: u64,
    window: u64,
    equidimensional_asserted: bool,
) -> Result<Prop31Report> {
    validate_q_list(ring, q_list)?;
    let n = Ideal::ambient_dimension(ring);
    let mut violations = Vec::new();
    if !equidimensional_asserted {
        violations
            .push("equidimensionality of R is not asserted (user assertion required)".to_string());
    }
    if params.len() + 1 != n {
        violations.push(format!(
            "expected {} parameters for dim R = {n}, got {}",
            n.saturating_sub(1),
            params.len()
        ));
    }
    let mut degree_sum = 0;
    for x in params.iter().chain(std::iter::once(z)) {
        match x.homogeneous_degree() {
            Ok(Some(d)) if d > 0 && !ring.is_zero_in_quotient(x) => {
                if !std::ptr::eq(x, z) {
                    degree_sum += d;
                }
            }
            Ok(_) => violations.push(format!("{x} is not a nonzero form of positive degree in R")),
            Err(e) => violations.push(format!("{x}: {e}")),
        }
    }
    let report = |violations, status| Prop31Report {
        ring_dimension: n,
        violations,
        koszul: None,
        degree_sum,
        vanishing_from: None,
        rows: Vec::new(),
        status,
    };
    if !violations.is_empty() {
        return Ok(report(violations, Prop31Status::HypothesisViolation));
    }
    let j = Ideal::new(ring, params.to_vec())?;
    if j.dimension() != Some(1) {
        violations.push(format!(
            "dim R/J = {:?}, expected 1 (parameters)",
            j.dimension()
        ));
    }
    if j.with_element(z)?.dimension() != Some(0) {
        violations.push("J + (z) is not primary to the irrelevant ideal".to_string());
    }
    if !violations.is_empty() {
        return Ok(report(violations, Prop31Status::HypothesisViolation));
    }

    let mut elements = params.to_vec();
    elements.push(z.clone());
    let koszul = koszul_h1_top_degree(ring, &elements, cap, window)?;
    if !koszul.stable {
        let mut r = report(Vec::new(), Prop31Status::Inconclusive);
        r.koszul = Some(koszul);
        return Ok(r);
    }
    let vanishing = koszul.vanishing_from();
    let mut rows = Vec::new();
    for &q in q_list {
        let nu = nu(&j, q)?.bound;
        let bound = (degree_sum + vanishing) * q;
        rows.push(Prop31Row {
            q,
            nu,
            bound,
            pass: nu <= bound,
        });
    }
    let status = if rows.iter().all(|r| r.pass) {
        Prop31Status::Pass
    } else {
        Prop31Status::Fail
    };
    Ok(Prop31Report {
        ring_dimension: n,
        violations: Vec::new(),
        koszul: Some(koszul),
        degree_sum,
        vanishing_from: Some(vanishing),
        rows,
        status,
    })
}

#[derive(Debug, Clone)]
pub struct Thm23Report {
    pub ring_dimension: usize,
    /// Height of `J : y`; `None` when `J : y` is the unit ideal.
    pub colon_height: Option<usize>,
    pub hypothesis_holds: bool,
    pub j_scan: LcReport,
    pub i_scan: LcReport,
    /// `false` only if the hypothesis holds, the scan of `J` is consistent
    /// with a linear bound, and the scan of `I = J + (y)` shows growth.
    pub conclusion_consistent: bool,
}

/// Compares the scans of `J` and `I = J + (y)` and checks `height(J:y) ≥ d - 1`.
pub fn thm23_verify(
    j: &Ideal,
    y: &Polynomial,
    q_list: &[u64],
    budget: Option<Duration>,
) -> Result<Thm23Report> {
    match y.homogeneous_degree()? {
        Some(d) if d > 0 => {}
        _ => {
            return Err(Error::InvalidArgument(
                "y must be a form of positive degree".into(),
            ))
        }
    }
    let d = Ideal::ambient_dimension(j.ring());
    let colon = j.colon_element(y)?;
    let colon_height = colon.height();
    let hypothesis_holds = colon_height.is_none_or(|h| h + 1 >= d);
    let i = j.with_element(y)?;
    let j_scan = lc_scan(j, q_list, budget)?;
    let i_scan = lc_scan(&i, q_list, budget)?;
    let conclusion_consistent = !(hypothesis_holds
        && j_scan.verdict == LcVerdict::ConsistentWithLc
        && i_scan.verdict == LcVerdict::GrowthDetected);
    Ok(Thm23Report {
        ring_dimension: d,
        colon_height,
        hypothesis_holds,
        j_scan,
        i_scan,
        conclusion_consistent,
    })
}
