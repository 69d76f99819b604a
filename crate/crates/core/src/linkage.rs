//! Linkage by generic elements: `J = (x : I) + I` for `g = height(I)`
//! random combinations `x` of the generators of `I`.
//!
//! Genericity over a finite prime field is not guaranteed, so every choice
//! is certified by `height((x)) = g` and `height(J) ≥ g + 1`, and redrawn on
//! failure. Randomness comes from ChaCha8 seeded with the caller's seed and
//! one stream per attempt, so equal seeds give equal results.

use std::time::Duration;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::lc::{lc_scan, LcReport};
use crate::monomial::monomials_of_degree;
use crate::poly::{PolyRing, Polynomial};
use std::sync::Arc;

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn random_form(base: &Arc<PolyRing>, d: u64, rng: &mut ChaCha8Rng) -> Polynomial {
    let p = base.characteristic();
    let monos = monomials_of_degree(base.weights(), d);
    loop {
        let f =
            Polynomial::from_terms(base, monos.iter().map(|m| (m.clone(), rng.gen_range(0..p))));
        if !f.is_zero() {
            return f;
        }
    }
}

fn representable(weights: &[u32], d: u64) -> bool {
    d == 0 || !monomials_of_degree(weights, d).is_empty()
}

fn equalize_with(gens: &[Polynomial], rng: &mut ChaCha8Rng) -> Result<Vec<Polynomial>> {
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    let base = first.ring().clone();
    let mut degrees = Vec::with_capacity(gens.len());
    for g in gens {
        match g.homogeneous_degree()? {
            Some(d) => degrees.push(d),
            None => return Err(Error::InvalidElements("zero generator".into())),
        }
    }
    let mut target = degrees.iter().copied().max().unwrap_or(0);
    while !degrees
        .iter()
        .all(|&d| representable(base.weights(), target - d))
    {
        target += 1;
    }
    Ok(gens
        .iter()
        .zip(&degrees)
        .map(|(g, &d)| {
            if d == target {
                g.clone()
            } else {
                &random_form(&base, target - d, rng) * g
            }
        })
        .collect())
}

/// Multiplies each generator by a random form so that all share one degree.
/// The target is the largest degree, raised until every shortfall is the
/// degree of some monomial.
pub fn equalize_degrees(gens: &[Polynomial], seed: u64) -> Result<Vec<Polynomial>> {
    equalize_with(gens, &mut rng_for(seed, 0))
}

/// A certified choice of `x` for `I`.
#[derive(Debug, Clone)]
pub struct LinkCertificate {
    pub ideal: Ideal,
    /// `g = height(I)`.
    pub height: usize,
    pub elements: Vec<Polynomial>,
    pub link: Ideal,
    pub elements_height: usize,
    /// `None` when `J` is the unit ideal.
    pub link_height: Option<usize>,
    pub seed: u64,
    /// Index of the attempt that produced this certificate.
    pub attempt: usize,
}

impl LinkCertificate {
    pub fn elements_height_ok(&self) -> bool {
        self.elements_height == self.height
    }

    pub fn link_height_ok(&self) -> bool {
        self.link_height.is_none_or(|h| h > self.height)
    }

    pub fn is_valid(&self) -> bool {
        self.elements_height_ok() && self.link_height_ok()
    }
}

fn height_of(elements: &[Polynomial], ideal: &Ideal) -> Result<usize> {
    let x = Ideal::new(ideal.ring(), elements.to_vec())?;
    Ok(x.height().unwrap_or(usize::MAX))
}

/// Draws `g` random combinations of equalized generators until both height
/// checks pass, trying `max_retries + 1` times.
pub fn choose_generic_x(ideal: &Ideal, seed: u64, max_retries: usize) -> Result<LinkCertificate> {
    let g = match ideal.height() {
        None => return Err(Error::UnitIdeal),
        Some(0) => return Err(Error::InvalidArgument("the zero ideal has no link".into())),
        Some(g) => g,
    };
    let gens = ideal.canonical_generators();
    let p = ideal.ring().characteristic();
    for attempt in 0..=max_retries {
        let mut rng = rng_for(seed, attempt as u64);
        let eq = equalize_with(&gens, &mut rng)?;
        let base = ideal.base();
        let elements: Vec<Polynomial> = (0..g)
            .map(|_| {
                eq.iter().fold(Polynomial::zero(base), |acc, e| {
                    &acc + &e.scale(rng.gen_range(0..p))
                })
            })
            .collect();
        if elements.iter().any(|x| ideal.ring().is_zero_in_quotient(x)) {
            continue;
        }
        let elements_height = height_of(&elements, ideal)?;
        if elements_height != g {
            continue;
        }
        let link = link_unchecked(ideal, &elements)?;
        let cert = LinkCertificate {
            ideal: ideal.clone(),
            height: g,
            link_height: link.height(),
            link,
            elements,
            elements_height,
            seed,
            attempt,
        };
        if cert.is_valid() {
            return Ok(cert);
        }
    }
    Err(Error::GenericityFailure {
        seed,
        attempts: max_retries + 1,
    })
}

fn link_unchecked(ideal: &Ideal, x: &[Polynomial]) -> Result<Ideal> {
    Ideal::new(ideal.ring(), x.to_vec())?
        .colon(ideal)?
        .sum(ideal)
}

fn check_elements(ideal: &Ideal, x: &[Polynomial]) -> Result<()> {
    for f in x {
        if !ideal.contains(f)? {
            return Err(Error::InvalidElements(format!("{f} is not in the ideal")));
        }
    }
    let g = ideal.height().ok_or(Error::UnitIdeal)?;
    let h = height_of(x, ideal)?;
    if h != g {
        return Err(Error::InvalidElements(format!(
            "height of (x) is {h}, expected {g}"
        )));
    }
    Ok(())
}

/// `J = (x : I) + I`, after checking `x ⊆ I` and `height((x)) = height(I)`.
pub fn link_ideal(ideal: &Ideal, x: &[Polynomial]) -> Result<Ideal> {
    if ideal.is_zero() {
        return Err(Error::InvalidArgument("the zero ideal has no link".into()));
    }
    check_elements(ideal, x)?;
    link_unchecked(ideal, x)
}

#[derive(Debug, Clone)]
pub struct Lemma34Report {
    pub q: u64,
    /// `((x)^[q] : I^[q]) ∩ (I^[q])^sat`.
    pub lhs: Ideal,
    /// `(x)^[q]`.
    pub rhs: Ideal,
    pub equal: bool,
    /// Generators of `lhs` outside `rhs`.
    pub witnesses: Vec<Polynomial>,
}

/// Compares `((x)^[q] : I^[q]) ∩ (I^[q])^sat` with `(x)^[q]`. The ring is
/// assumed Cohen–Macaulay by the caller; `x` must pass both certificate
/// checks and `I` must not be primary to the irrelevant ideal.
pub fn lemma34_cm_check(ideal: &Ideal, x: &[Polynomial], q: u64) -> Result<Lemma34Report> {
    ideal.base().field().check_q(q)?;
    if ideal.is_zero() {
        return Err(Error::InvalidArgument("the zero ideal has no link".into()));
    }
    if ideal.dimension() == Some(0) {
        return Err(Error::InvalidArgument(
            "I is primary to the irrelevant ideal; dim R/I ≥ 1 is required".into(),
        ));
    }
    check_elements(ideal, x)?;
    let g = ideal.height().ok_or(Error::UnitIdeal)?;
    if link_unchecked(ideal, x)?.height().is_some_and(|h| h <= g) {
        return Err(Error::InvalidElements(format!(
            "height of (x : I) + I is at most {g}"
        )));
    }
    let xq = Ideal::new(ideal.ring(), x.to_vec())?.frobenius_power(q)?;
    let iq = ideal.frobenius_power(q)?;
    let lhs = xq.colon(&iq)?.intersection(&iq.saturate_irrelevant()?)?;
    let mut witnesses = Vec::new();
    for f in lhs.canonical_generators() {
        if !xq.contains(&f)? {
            witnesses.push(f);
        }
    }
    // (x)^[q] ⊆ lhs always, so equality is the absence of witnesses
    let equal = witnesses.is_empty();
    Ok(Lemma34Report {
        q,
        lhs,
        rhs: xq,
        equal,
        witnesses,
    })
}

#[derive(Debug, Clone)]
pub struct ChainStep {
    pub certificate: LinkCertificate,
    /// `dim R/I` before the step.
    pub dim_before: usize,
    /// `dim R/J`; `None` when `J = (1)`.
    pub dim_after: Option<usize>,
}

impl ChainStep {
    pub fn dimension_dropped(&self) -> bool {
        self.dim_after.is_none_or(|d| d < self.dim_before)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainStop {
    /// `dim R/J ≤ 1`.
    Terminal,
    UnitIdeal,
    MaxSteps,
}

impl ChainStop {
    pub fn as_str(&self) -> &'static str {
        match self {
            ChainStop::Terminal => "terminal",
            ChainStop::UnitIdeal => "unit-ideal",
            ChainStop::MaxSteps => "max-steps",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ChainReport {
    pub steps: Vec<ChainStep>,
    pub terminal: Ideal,
    pub stop: ChainStop,
    /// Scan of the terminal ideal; `None` when it is the unit ideal.
    pub terminal_scan: Option<LcReport>,
}

/// A chain that stopped on an error, with the steps completed before it.
#[derive(Debug, Clone, thiserror::Error)]
#[error("{error} (after {} completed steps)", steps.len())]
pub struct ChainFailure {
    pub steps: Vec<ChainStep>,
    #[source]
    pub error: Error,
}

#[derive(Debug, Clone)]
pub struct ChainOptions {
    pub seed: u64,
    pub max_steps: usize,
    pub max_retries: usize,
    pub q_list: Vec<u64>,
    pub budget: Option<Duration>,
}

/// Replaces `I` by its link while `dim R/I ≥ 2`, then scans the terminal
/// ideal. Step `k` draws with seed `seed + k`.
pub fn reduction_chain(
    ideal: &Ideal,
    opts: &ChainOptions,
) -> std::result::Result<ChainReport, ChainFailure> {
    let mut steps = Vec::new();
    let fail = |steps: &Vec<ChainStep>, error| ChainFailure {
        steps: steps.clone(),
        error,
    };
    if !ideal.base().is_standard_graded() {
        return Err(fail(
            &steps,
            Error::InvalidArgument("reduction chains need a standard grading".into()),
        ));
    }
    let mut current = ideal.clone();
    let stop = loop {
        let dim = match current.dimension() {
            None => break ChainStop::UnitIdeal,
            Some(d) if d <= 1 => break ChainStop::Terminal,
            Some(d) => d,
        };
        if steps.len() >= opts.max_steps {
            break ChainStop::MaxSteps;
        }
        let step_seed = opts.seed.wrapping_add(steps.len() as u64);
        let cert =
            choose_generic_x(&current, step_seed, opts.max_retries).map_err(|e| fail(&steps, e))?;
        let next = cert.link.clone();
        steps.push(ChainStep {
            certificate: cert,
            dim_before: dim,
            dim_after: next.dimension(),
        });
        current = next;
    };
    let terminal_scan = if current.is_unit() {
        None
    } else {
        Some(lc_scan(&current, &opts.q_list, opts.budget).map_err(|e| fail(&steps, e))?)
    };
    Ok(ChainReport {
        steps,
        terminal: current,
        stop,
        terminal_scan,
    })
}
