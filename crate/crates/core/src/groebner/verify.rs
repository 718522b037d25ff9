use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{buchberger_over, engine, power_in, rabinowitsch, OrderKind, RadicalMembership, TermOrder};
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};
use crate::polyring::{FieldSpec, Polynomial};
use crate::simplicial::ideal_minimal_primes;
use crate::witness::{Provenance, WitnessSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyOptions {
    pub field: FieldSpec,
    pub order: OrderKind,
    /// Search for explicit exponents `g^k ∈ J` after the Rabinowitsch test.
    pub explicit_power: bool,
    pub cap: u32,
    /// Compare the Krull lower bound with the witness size.
    pub certify_ara: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            field: FieldSpec::Rationals,
            order: OrderKind::Degrevlex,
            explicit_power: false,
            cap: 64,
            certify_ara: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Certified,
    Refuted,
    Inconclusive,
}

impl Verdict {
    /// Process exit code: 0 certified, 1 refuted, 2 inconclusive.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Certified => 0,
            Verdict::Refuted => 1,
            Verdict::Inconclusive => 2,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Certified => "certified",
            Verdict::Refuted => "refuted",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// Evidence for `element ∈ I`: every term is checked against the generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementCheck {
    pub index: usize,
    pub element: Polynomial,
    pub terms: usize,
    pub contained: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub offending_term: Option<Monomial>,
}

/// Evidence for `generator ∈ √J`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorCheck {
    pub generator: Monomial,
    pub result: RadicalMembership,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AraCertificate {
    /// Largest height of a minimal prime.
    pub lower: usize,
    /// Number of witness elements.
    pub upper: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<usize>,
    /// Smallest height of a minimal prime.
    pub height: usize,
    pub unmixed: bool,
    pub sci: bool,
}

impl fmt::Display for AraCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exact {
            Some(a) => write!(f, "ara = {a}"),
            None => write!(f, "ara ∈ [{}, {}]", self.lower, self.upper),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub target: MonomialIdeal,
    pub provenance: Provenance,
    pub witness_size: usize,
    pub field: FieldSpec,
    pub order: OrderKind,
    /// `J ⊆ I`, element by element.
    pub j_in_i: Vec<ElementCheck>,
    /// `I ⊆ √J`, generator by generator.
    pub i_in_radical_j: Vec<GeneratorCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ara: Option<AraCertificate>,
    /// Primes below 1000 dividing a leading coefficient met during the
    /// rational computations; reduction modulo any other prime preserves
    /// those computations step by step.
    pub excluded_prime_candidates: Vec<u64>,
    /// Whether a leading coefficient had a prime factor of 1000 or more.
    pub large_prime_factors: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rational_verdict: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub characteristic_dependent: Option<bool>,
    pub failures: Vec<String>,
    pub verdict: Verdict,
}

impl VerificationReport {
    pub fn j_in_i_holds(&self) -> bool {
        self.j_in_i.iter().all(|c| c.contained)
    }

    pub fn i_in_radical_j_holds(&self) -> bool {
        self.i_in_radical_j.iter().all(|c| c.result.is_member())
    }

    /// One line: verdict, bounds and the first failure.
    pub fn summary(&self) -> String {
        let mut s = format!("{}", self.verdict);
        if let Some(a) = &self.ara {
            s.push_str(&format!(", {a}"));
        }
        if let Some(f) = self.failures.first() {
            s.push_str(&format!(": {f}"));
        }
        s
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "target: {}", self.target)?;
        writeln!(f, "witness: {} elements ({})", self.witness_size, self.provenance)?;
        writeln!(f, "field: {}, order: {}", self.field, self.order)?;
        writeln!(
            f,
            "J ⊆ I: {} ({} of {} elements)",
            if self.j_in_i_holds() { "yes" } else { "no" },
            self.j_in_i.iter().filter(|c| c.contained).count(),
            self.j_in_i.len()
        )?;
        writeln!(
            f,
            "I ⊆ √J: {} ({} of {} generators)",
            if self.i_in_radical_j_holds() { "yes" } else { "no" },
            self.i_in_radical_j.iter().filter(|c| c.result.is_member()).count(),
            self.i_in_radical_j.len()
        )?;
        for c in &self.i_in_radical_j {
            if let RadicalMembership::Member { power: Some(k), .. } = c.result {
                writeln!(f, "  ({})^{k} ∈ J", c.generator)?;
            }
        }
        if let Some(a) = &self.ara {
            writeln!(f, "{a} (bounds [{}, {}]), SCI: {}", a.lower, a.upper, if a.sci { "yes" } else { "no" })?;
        }
        if !self.excluded_prime_candidates.is_empty() {
            let ps: Vec<String> = self.excluded_prime_candidates.iter().map(ToString::to_string).collect();
            writeln!(f, "leading coefficient primes: {}", ps.join(", "))?;
        }
        if let Some(dep) = self.characteristic_dependent {
            writeln!(f, "characteristic dependent: {}", if dep { "yes" } else { "no" })?;
        }
        for failure in &self.failures {
            writeln!(f, "failure: {failure}")?;
        }
        write!(f, "verdict: {}", self.verdict)
    }
}

/// Checks `√J = I` for a witness `J` of a squarefree monomial ideal `I`.
pub fn verify_up_to_radical(witness: &WitnessSet, opts: &VerifyOptions) -> Result<VerificationReport> {
    let target = &witness.target;
    if !target.is_squarefree() {
        return Err(Error::TargetNotSquarefree);
    }
    let order = TermOrder { kind: opts.order, priority: None };
    let mut failures = Vec::new();

    let j_in_i: Vec<ElementCheck> = witness
        .elements
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let offending_term = target.first_term_outside(e);
            ElementCheck {
                index: i + 1,
                element: e.clone(),
                terms: e.num_terms(),
                contained: offending_term.is_none(),
                offending_term,
            }
        })
        .collect();
    for c in j_in_i.iter().filter(|c| !c.contained) {
        failures.push(format!(
            "J ⊆ I: element {} has term {} outside the target",
            c.index,
            c.offending_term.as_ref().expect("recorded")
        ));
    }

    let gens: Vec<Polynomial> = witness.elements.iter().filter(|e| !e.is_zero()).cloned().collect();
    let slack: Vec<Result<(Monomial, super::SlackCheck)>> = target
        .generators()
        .par_iter()
        .map(|g| Ok((g.clone(), rabinowitsch(&Polynomial::from(g.clone()), &gens, &order, opts.field)?)))
        .collect();
    let mut leading = Vec::new();
    let mut i_in_radical_j = Vec::with_capacity(slack.len());
    let mut members = Vec::new();
    for s in slack {
        let (g, slack) = s?;
        leading.extend(slack.leading_coefficients);
        let result = if slack.member {
            members.push(i_in_radical_j.len());
            RadicalMembership::Member { slack_basis_size: 1, cases: slack.cases, power: None }
        } else {
            failures.push(format!("I ⊆ √J: generator {g} is not in the radical of J"));
            RadicalMembership::NotMember { slack_basis_size: slack.basis_size }
        };
        i_in_radical_j.push(GeneratorCheck { generator: g, result });
    }

    if opts.explicit_power && !members.is_empty() {
        let basis = buchberger_over(&gens, &order, opts.field)?;
        leading.extend(basis.leading_coefficients.iter().cloned());
        let powers: Vec<Result<Option<u32>>> = members
            .par_iter()
            .map(|&i| power_in(&Polynomial::from(i_in_radical_j[i].generator.clone()), &basis, opts.cap))
            .collect();
        for (&i, k) in members.iter().zip(powers) {
            let check = &mut i_in_radical_j[i];
            let cases = match check.result {
                RadicalMembership::Member { cases, .. } => cases,
                _ => 1,
            };
            check.result = match k? {
                Some(k) => RadicalMembership::Member { slack_basis_size: 1, cases, power: Some(k) },
                None => {
                    failures.push(format!(
                        "I ⊆ √J: certificate not found below cap {} for generator {}",
                        opts.cap, check.generator
                    ));
                    RadicalMembership::CapExceeded { cap: opts.cap }
                }
            };
        }
    }

    let (excluded_prime_candidates, large_prime_factors) = match opts.field {
        FieldSpec::Rationals => engine::small_prime_factors(&leading),
        FieldSpec::Prime(_) => (Vec::new(), false),
    };

    let mut report = VerificationReport {
        target: target.clone(),
        provenance: witness.provenance,
        witness_size: witness.len(),
        field: opts.field,
        order: opts.order,
        j_in_i,
        i_in_radical_j,
        ara: None,
        excluded_prime_candidates,
        large_prime_factors,
        rational_verdict: None,
        characteristic_dependent: None,
        failures,
        verdict: Verdict::Certified,
    };
    report.verdict = if !report.j_in_i_holds()
        || report.i_in_radical_j.iter().any(|c| matches!(c.result, RadicalMembership::NotMember { .. }))
    {
        Verdict::Refuted
    } else if !report.i_in_radical_j_holds() {
        Verdict::Inconclusive
    } else {
        Verdict::Certified
    };

    if opts.certify_ara && report.verdict == Verdict::Certified {
        let ara = ara_bounds(target, witness.len())?;
        if ara.exact.is_none() {
            report.failures.push(ara.to_string());
            report.verdict = Verdict::Inconclusive;
        }
        report.ara = Some(ara);
    }
    Ok(report)
}

fn ara_bounds(target: &MonomialIdeal, size: usize) -> Result<AraCertificate> {
    let heights: Vec<usize> = ideal_minimal_primes(target)?.iter().map(|p| p.height()).collect();
    let lower = heights.iter().copied().max().unwrap_or(0);
    let height = heights.iter().copied().min().unwrap_or(0);
    let unmixed = heights.iter().all(|&h| h == height);
    let exact = (lower == size).then_some(size);
    Ok(AraCertificate { lower, upper: size, exact, height, unmixed, sci: exact == Some(height) && unmixed })
}

/// Verification followed by the comparison of the Krull bound with the
/// witness size.
pub fn certify_ara(witness: &WitnessSet, opts: &VerifyOptions) -> Result<VerificationReport> {
    verify_up_to_radical(witness, &VerifyOptions { certify_ara: true, ..opts.clone() })
}

/// Like [`verify_up_to_radical`]; over a prime field the rational run is
/// repeated and any change of verdict is flagged.
pub fn verify_with_reference(witness: &WitnessSet, opts: &VerifyOptions) -> Result<VerificationReport> {
    let mut report = verify_up_to_radical(witness, opts)?;
    if let FieldSpec::Prime(_) = opts.field {
        let rational = verify_up_to_radical(witness, &VerifyOptions { field: FieldSpec::Rationals, ..opts.clone() })?;
        report.characteristic_dependent = Some(rational.verdict != report.verdict);
        report.rational_verdict = Some(rational.verdict);
        report.excluded_prime_candidates = rational.excluded_prime_candidates;
        report.large_prime_factors = rational.large_prime_factors;
    }
    Ok(report)
}
