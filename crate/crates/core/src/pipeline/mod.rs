//! The end-to-end computation: relations ideal, a prime component and its
//! σ-period, hypergeometric elements, their exponent lattice, the torsor
//! ideal, the maximal σ-ideal and its stabilizer.

mod bound;
mod stabilizer;

use serde::Serialize;

pub use bound::{jordan_expression, theoretical_bound, TheoreticalBound, MAX_EXPANDED_EXPONENT};
pub use stabilizer::{check_group, describe_component, det_of_vars, fixes_ideal, g_names, sample_points, stabilizer, GroupCheck, Stabilizer};

use crate::difference::{det_poly, DifferenceSystem};
use crate::elements::{hyper_elements, HyperElement};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{MultiPoly, PolyIdeal, TermOrder};
use crate::lattice::{sigma_quotient_lattice, ExponentLattice};
use crate::relations::{coefficient_bound, relations_ideal, RelationsRequest};
use crate::linalg::Matrix;
use crate::scalar::{RatFunc, Rational};
use crate::structure::{associated_primes, radical_binomial, sigma_period, PrimeComponent};

/// Whether σ(I) ⊆ I.
pub fn is_sigma_stable(ideal: &PolyIdeal<RatFunc>, sys: &DifferenceSystem) -> bool {
    ideal.contains_ideal(&sys.sigma_image_ideal(ideal, 1))
}

/// Splits z into disjoint-support parts z⁺ − z⁻.
fn split_signs(z: &[i64]) -> (Vec<u32>, Vec<u32>) {
    let plus = z.iter().map(|&v| v.max(0) as u32).collect();
    let minus = z.iter().map(|&v| (-v).max(0) as u32).collect();
    (plus, minus)
}

fn power_of(elements: &[HyperElement], exps: &[u32], ideal: &PolyIdeal<RatFunc>) -> MultiPoly<RatFunc> {
    elements.iter().zip(exps).fold(MultiPoly::one(ideal.ring()), |acc, (el, &e)| acc.mul(&el.p.pow(e)))
}

/// I_irr together with P^{m⁺} − f·P^{m⁻} for each lattice generator m.
pub fn torsor_extension(
    irr: &PolyIdeal<RatFunc>,
    elements: &[HyperElement],
    lattice: &ExponentLattice,
) -> PolyIdeal<RatFunc> {
    let extra = lattice
        .basis
        .iter()
        .zip(&lattice.witnesses)
        .map(|(z, f)| {
            let (plus, minus) = split_signs(z);
            power_of(elements, &plus, irr).sub(&power_of(elements, &minus, irr).scale(f))
        })
        .collect();
    irr.add_generators(extra).reduced()
}

/// √𝒫 ∩ σ(√𝒫) ∩ ⋯ ∩ σ^{δ−1}(√𝒫).
pub fn maximal_sigma_ideal(
    p_ideal: &PolyIdeal<RatFunc>,
    irr: &PolyIdeal<RatFunc>,
    elements: &[HyperElement],
    lattice: &ExponentLattice,
    sys: &DifferenceSystem,
    delta: usize,
) -> Result<(PolyIdeal<RatFunc>, PolyIdeal<RatFunc>)> {
    let det = det_poly(sys.n(), p_ideal.ring());
    let ps: Vec<MultiPoly<RatFunc>> = elements.iter().map(|e| e.p.clone()).collect();
    let radical = radical_binomial(p_ideal, irr, &ps, lattice.is_zero(), sys, delta, &det)?;
    let mut acc = radical.clone();
    let mut image = radical.clone();
    for _ in 1..delta {
        image = sys.sigma_image_ideal(&image, 1).reduced();
        acc = acc.intersect(&image);
    }
    Ok((radical, acc.reduced()))
}

/// Parameters of a full run.
#[derive(Clone, Debug)]
pub struct GaloisOptions {
    pub degree: u32,
    /// Degree in x of relation coefficients; `None` computes a bound.
    pub coeff_degree: Option<u32>,
    /// Degree of the hypergeometric elements.
    pub char_degree: u32,
    pub order: TermOrder,
    /// Points sampled for the group-axiom check; 0 skips it.
    pub check_points: usize,
    /// Germ start and initial term; default to the least admissible index
    /// and the identity.
    pub rho: Option<i64>,
    pub z_rho: Option<Matrix<Rational>>,
}

impl Default for GaloisOptions {
    fn default() -> Self {
        GaloisOptions {
            degree: 2,
            coeff_degree: Some(0),
            char_degree: 1,
            order: TermOrder::GrevLex,
            check_points: 20,
            rho: None,
            z_rho: None,
        }
    }
}

/// One step of the run with the canonical text of its result.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TranscriptRecord {
    pub step: String,
    pub title: String,
    pub lines: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct GaloisOutput {
    pub relations: PolyIdeal<RatFunc>,
    pub coeff_degree: u32,
    pub components: Vec<PrimeComponent<RatFunc>>,
    pub irr: PolyIdeal<RatFunc>,
    pub delta: usize,
    pub elements: Vec<HyperElement>,
    pub lattice: ExponentLattice,
    pub torsor: PolyIdeal<RatFunc>,
    pub radical: PolyIdeal<RatFunc>,
    pub maximal_sigma_ideal: PolyIdeal<RatFunc>,
    pub stabilizer: Stabilizer,
    pub group_check: GroupCheck,
    pub caveat: String,
    pub transcript: Vec<TranscriptRecord>,
}

/// A stage failure with the transcript recorded so far.
#[derive(Debug)]
pub struct StageError {
    pub stage: &'static str,
    pub error: Error,
    pub transcript: Vec<TranscriptRecord>,
}

impl std::fmt::Display for StageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "stage {}: {}", self.stage, self.error)
    }
}

impl std::error::Error for StageError {}

fn lines_of<C: Field>(ideal: &PolyIdeal<C>) -> Vec<String> {
    ideal.canonical_lines()
}

/// The bound record: κ₃, I(n) and the size of d̃, or why it is unavailable.
fn bound_lines(n: u64, degree: u32) -> Vec<String> {
    match theoretical_bound(n, false) {
        Ok(b) => vec![
            format!("kappa3 has {} bits", b.kappa3_bits()),
            format!("I(n) = {}", b.i_n),
            "d~ = kappa3^(I(n) - 1)".into(),
            format!("used degree {degree} is below d~; the group is exact once the relations ideal is proto-maximal"),
        ],
        Err(e) => vec![format!("not evaluated: {e}")],
    }
}

struct Run {
    transcript: Vec<TranscriptRecord>,
}

impl Run {
    fn stage<T>(&mut self, stage: &'static str, r: Result<T>) -> Result<T, StageError> {
        r.map_err(|error| StageError { stage, error, transcript: self.transcript.clone() })
    }

    fn record(&mut self, step: &str, title: &str, lines: Vec<String>) {
        self.transcript.push(TranscriptRecord { step: step.into(), title: title.into(), lines });
    }
}

/// Runs every stage and returns the stabilizer of the maximal σ-ideal.
pub fn compute_galois_group(sys: &DifferenceSystem, opts: &GaloisOptions) -> Result<GaloisOutput, StageError> {
    let mut run = Run { transcript: Vec::new() };
    let n = sys.n();

    let ell = match opts.coeff_degree {
        Some(l) => l,
        None => run.stage("coefficient-bound", coefficient_bound(sys, opts.degree))?,
    };
    let mut req = RelationsRequest::new(opts.degree, ell);
    req.order = opts.order;
    req.rho = opts.rho;
    req.z_rho = opts.z_rho.clone();
    let rel = run.stage("relations", relations_ideal(sys, &req))?;
    let relations = rel.ideal.clone();
    run.record("i", &format!("relations ideal, d = {}, coefficient degree {ell}", opts.degree), lines_of(&relations));

    let det = det_poly(n, relations.ring());
    let components = run.stage("decompose", associated_primes(&relations, Some(&det)))?;
    let Some(first) = components.first() else {
        return Err(StageError {
            stage: "decompose",
            error: Error::Internal("the relations ideal has no component meeting GL_n".into()),
            transcript: run.transcript,
        });
    };
    let irr = first.ideal.clone();
    let delta = run.stage("period", sigma_period(&irr, sys, components.len()))?;
    let mut lines: Vec<String> = components.iter().map(|c| format!("{} [{}]", c.ideal, c.class)).collect();
    lines.push(format!("I_irr = {irr}"));
    lines.push(format!("delta = {delta}"));
    run.record("ii", "associated primes, chosen component and its period", lines);

    let elements = run.stage("hyper", hyper_elements(&irr, sys, delta, opts.char_degree))?;
    run.record("iii", "hypergeometric elements (P, certificate)", elements.iter().map(|e| e.to_string()).collect());

    let certs: Vec<RatFunc> = elements.iter().map(|e| e.b.clone()).collect();
    let lattice = run.stage("lattice", sigma_quotient_lattice(&certs, delta))?;
    run.record("iv", "exponent lattice", vec![lattice.to_string()]);

    let torsor = torsor_extension(&irr, &elements, &lattice);
    run.record("v", "torsor ideal", lines_of(&torsor));

    let (radical, maximal) = run.stage("maximal", maximal_sigma_ideal(&torsor, &irr, &elements, &lattice, sys, delta))?;
    if !is_sigma_stable(&maximal, sys) {
        return Err(StageError {
            stage: "maximal",
            error: Error::Internal("the intersection of σ-translates is not σ-stable".into()),
            transcript: run.transcript,
        });
    }
    run.record("vi", "maximal sigma-ideal", lines_of(&maximal));

    let stab = run.stage("stabilizer", stabilizer(&maximal, n))?;
    let group_check = if opts.check_points > 0 {
        run.stage("stabilizer", check_group(&stab, Some(&maximal), opts.check_points, 0x5eed))?
    } else {
        GroupCheck::default()
    };
    let mut lines = lines_of(&stab.ideal);
    for (k, c) in stab.components.iter().enumerate() {
        lines.push(format!("component {}: {}", k + 1, c.ideal));
        lines.push(format!("    {}", describe_component(&c.ideal, n)));
    }
    lines.push(format!(
        "group axioms at {} sampled points: {}",
        group_check.points,
        if group_check.passed() { "ok" } else { "FAILED" }
    ));
    run.record("vii", "stabilizer (Galois group)", lines);

    run.record("bound", "theoretical degree bound", bound_lines(n as u64, opts.degree));
    let caveat = format!(
        "relations were computed at degree {}; the stabilizer is the Galois group once the relations ideal is \
         proto-maximal, which is guaranteed only at the theoretical degree d~ reported by `bound`",
        opts.degree
    );
    Ok(GaloisOutput {
        relations,
        coeff_degree: ell,
        components,
        irr,
        delta,
        elements,
        lattice,
        torsor,
        radical,
        maximal_sigma_ideal: maximal,
        stabilizer: stab,
        group_check,
        caveat,
        transcript: run.transcript,
    })
}
