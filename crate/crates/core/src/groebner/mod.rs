//! Gröbner bases, ideal membership and radical membership.
//!
//! Radical membership uses the Rabinowitsch trick: `g ∈ √J` iff
//! `1 ∈ J + (1 − y·g)` for a fresh slack variable `y`, which is placed above
//! every other variable in the term order.

mod engine;
mod order;
mod verify;

use std::collections::{BTreeMap, BTreeSet};
use std::hash::{DefaultHasher, Hash, Hasher};

use num_rational::BigRational;
use serde::Serialize;

pub use order::{OrderKind, TermOrder};
pub use verify::{
    certify_ara, verify_up_to_radical, verify_with_reference, AraCertificate, ElementCheck, GeneratorCheck, Verdict,
    VerificationReport, VerifyOptions,
};

use crate::error::Result;
use crate::monomial::{Monomial, Variable};
use crate::polyring::{FieldSpec, Polynomial};
use engine::{Domain, Integers, Limit, PrimeField};

/// A reduced Gröbner basis with monic generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroebnerBasis {
    pub generators: Vec<Polynomial>,
    pub order: TermOrder,
    pub field: FieldSpec,
    /// Hash of the canonical text of the input generators, in input order.
    pub source_hash: u64,
    #[serde(skip)]
    pub(crate) leading_coefficients: Vec<BigRational>,
}

impl GroebnerBasis {
    pub fn is_unit(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].is_one()
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        engine::remainder(&self.order, self.field, f, &self.generators)
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }
}

fn source_hash(gens: &[Polynomial]) -> u64 {
    let mut h = DefaultHasher::new();
    for g in gens {
        g.to_string().hash(&mut h);
    }
    h.finish()
}

/// Basis computation; `None` when the basis outgrew `limit`.
fn run<D: Domain>(
    d: &D,
    gens: &[Polynomial],
    order: &TermOrder,
    field: FieldSpec,
    stop_at_unit: bool,
    limit: Option<Limit>,
) -> Result<Option<GroebnerBasis>> {
    let refs: Vec<&Polynomial> = gens.iter().collect();
    let (ring, converted) = engine::setup(d, order, &refs)?;
    let out = engine::buchberger(d, &ring, converted, stop_at_unit, limit);
    if out.aborted {
        return Ok(None);
    }
    Ok(Some(GroebnerBasis {
        generators: out.basis.iter().map(|p| engine::to_monic_polynomial(d, &ring, p)).collect(),
        order: order.clone(),
        field,
        source_hash: source_hash(gens),
        leading_coefficients: out.stats.leading_coefficients,
    }))
}

fn compute_limited(
    gens: &[Polynomial],
    order: &TermOrder,
    field: FieldSpec,
    stop_at_unit: bool,
    limit: Option<Limit>,
) -> Result<Option<GroebnerBasis>> {
    match field {
        FieldSpec::Rationals => run(&Integers, gens, order, field, stop_at_unit, limit),
        FieldSpec::Prime(p) => run(&PrimeField::new(p), gens, order, field, stop_at_unit, limit),
    }
}

fn compute(gens: &[Polynomial], order: &TermOrder, field: FieldSpec, stop_at_unit: bool) -> Result<GroebnerBasis> {
    Ok(compute_limited(gens, order, field, stop_at_unit, None)?.expect("no limit"))
}

/// Reduced Gröbner basis of `gens` over the rationals.
pub fn buchberger(gens: &[Polynomial], order: &TermOrder) -> GroebnerBasis {
    compute(gens, order, FieldSpec::Rationals, false).expect("conversion over the rationals cannot fail")
}

/// Reduced Gröbner basis over an arbitrary supported field.
pub fn buchberger_over(gens: &[Polynomial], order: &TermOrder, field: FieldSpec) -> Result<GroebnerBasis> {
    compute(gens, order, field, false)
}

/// Remainder of multivariate division of `f` by `basis` over the rationals.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial], order: &TermOrder) -> Polynomial {
    engine::remainder(order, FieldSpec::Rationals, f, basis).expect("division over the rationals cannot fail")
}

/// `f ∈ (gens)`.
pub fn ideal_member(f: &Polynomial, gens: &[Polynomial], order: &TermOrder, field: FieldSpec) -> Result<bool> {
    if f.is_zero() {
        return Ok(true);
    }
    buchberger_over(gens, order, field)?.contains(f)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RadicalOptions {
    pub order: OrderKind,
    pub field: FieldSpec,
    /// Also search for an explicit `k` with `g^k ∈ J` (k = 1, 2, 4, ...).
    pub explicit_power: bool,
    pub cap: u32,
}

impl Default for RadicalOptions {
    fn default() -> Self {
        RadicalOptions { order: OrderKind::Degrevlex, field: FieldSpec::Rationals, explicit_power: false, cap: 64 }
    }
}

/// Outcome of a radical membership test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum RadicalMembership {
    Member {
        /// Size of the reduced slack basis, always `1` for `{1}`.
        slack_basis_size: usize,
        /// Number of Rabinowitsch systems that reduced to `{1}`.
        cases: usize,
        #[serde(skip_serializing_if = "Option::is_none")]
        power: Option<u32>,
    },
    NotMember {
        /// Size of the reduced slack basis that is not `{1}`.
        slack_basis_size: usize,
    },
    /// Rabinowitsch says member but no `g^k ∈ J` was found with `k ≤ cap`.
    CapExceeded { cap: u32 },
}

impl RadicalMembership {
    pub fn is_member(&self) -> bool {
        matches!(self, RadicalMembership::Member { .. })
    }
}

/// Slack variable index: one past every variable in use.
fn slack_variable(polys: &[&Polynomial]) -> Variable {
    Variable(polys.iter().map(|p| p.width()).max().unwrap_or(0) as u32)
}

/// Basis size beyond which a Rabinowitsch computation is split into cases.
const SPLIT_LIMIT: Limit = Limit { bits: 128, basis: 600 };

/// Result of the Rabinowitsch test of `g ∈ √J`, possibly assembled from
/// several cases.
#[derive(Debug, Clone)]
pub(crate) struct SlackCheck {
    pub member: bool,
    /// Number of Rabinowitsch systems solved.
    pub cases: usize,
    /// Size of the reduced slack basis that failed to be `{1}`.
    pub basis_size: usize,
    pub leading_coefficients: Vec<BigRational>,
}

/// Rabinowitsch test of `g ∈ √J`.
///
/// When the slack basis grows beyond a fixed size (number of elements or
/// coefficient bits) the test splits on a variable `x` outside `g`:
/// `g ∈ √J` iff `g ∈ √(J + (x))` and `x·g ∈ √J`. The first case is solved
/// with `x` set to zero. Every case is an ordinary Rabinowitsch computation,
/// so the answer does not depend on the splitting.
pub(crate) fn rabinowitsch(
    g: &Polynomial,
    gens: &[Polynomial],
    order: &TermOrder,
    field: FieldSpec,
) -> Result<SlackCheck> {
    rabinowitsch_limited(g, gens, order, field, SPLIT_LIMIT)
}

fn rabinowitsch_limited(
    g: &Polynomial,
    gens: &[Polynomial],
    order: &TermOrder,
    field: FieldSpec,
    limit: Limit,
) -> Result<SlackCheck> {
    let fixed: BTreeSet<Variable> = match g.as_term() {
        Some((m, _)) => m.support().collect(),
        None => BTreeSet::new(),
    };
    let gens: Vec<Polynomial> = gens.iter().filter(|f| !f.is_zero()).cloned().collect();
    let mut check = SlackCheck { member: true, cases: 0, basis_size: 1, leading_coefficients: Vec::new() };
    split_rabinowitsch(g.clone(), gens, fixed, order, field, limit, &mut check)?;
    Ok(check)
}

fn split_rabinowitsch(
    g: Polynomial,
    gens: Vec<Polynomial>,
    fixed: BTreeSet<Variable>,
    order: &TermOrder,
    field: FieldSpec,
    limit: Limit,
    check: &mut SlackCheck,
) -> Result<()> {
    if g.is_zero() {
        return Ok(());
    }
    let gens: Vec<Polynomial> = gens.iter().map(|f| strip_fixed(f, &fixed)).collect();
    let split = split_variable(&gens, &fixed);
    let bound = split.map(|_| limit);
    let mut all: Vec<&Polynomial> = gens.iter().collect();
    all.push(&g);
    let y = slack_variable(&all);
    let mut system = gens.clone();
    system.push(&Polynomial::one() - &(&g * &Polynomial::var(y)));
    if let Some(basis) = compute_limited(&system, &order.with_top(y), field, true, bound)? {
        check.cases += 1;
        check.leading_coefficients.extend(basis.leading_coefficients.iter().cloned());
        if !basis.is_unit() {
            check.member = false;
            check.basis_size = basis.len();
        }
        return Ok(());
    }
    let x = split.expect("only limited runs abort");
    let zeroed: Vec<Polynomial> = gens.iter().map(|f| f.set_zero(x)).filter(|f| !f.is_zero()).collect();
    split_rabinowitsch(g.set_zero(x), zeroed, fixed.clone(), order, field, limit, check)?;
    if !check.member {
        return Ok(());
    }
    let mut fixed = fixed;
    fixed.insert(x);
    split_rabinowitsch(&g * &Polynomial::var(x), gens, fixed, order, field, limit, check)
}

/// `f` divided by its largest monomial factor in the `fixed` variables. Every
/// fixed variable divides `g`, so it is nonzero wherever `g` is, and the
/// division does not change the zero set of `J` off the zero set of `g`.
fn strip_fixed(f: &Polynomial, fixed: &BTreeSet<Variable>) -> Polynomial {
    let common = f.monomials().cloned().reduce(|a, b| a.gcd(&b)).unwrap_or_else(Monomial::one);
    let factor = Monomial::from_exponents(
        common
            .exponents()
            .iter()
            .enumerate()
            .map(|(i, &e)| if fixed.contains(&Variable(i as u32)) { e } else { 0 })
            .collect(),
    );
    if factor.is_one() {
        return f.clone();
    }
    Polynomial::from_terms(f.terms().map(|(m, c)| (m.div(&factor).expect("common factor"), c.clone())))
}

/// The variable outside `fixed` occurring in the most terms of `gens`.
fn split_variable(gens: &[Polynomial], fixed: &BTreeSet<Variable>) -> Option<Variable> {
    let mut counts: BTreeMap<Variable, usize> = BTreeMap::new();
    for m in gens.iter().flat_map(|f| f.monomials()) {
        for v in m.support().filter(|v| !fixed.contains(v)) {
            *counts.entry(v).or_default() += 1;
        }
    }
    counts.into_iter().max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0))).map(|(v, _)| v)
}

/// `g ∈ √J`. With `explicit_power` the doubling search for `g^k ∈ J` runs
/// after the Rabinowitsch test confirms membership.
pub fn radical_member(g: &Polynomial, gens: &[Polynomial], opts: &RadicalOptions) -> Result<RadicalMembership> {
    let order = TermOrder { kind: opts.order, priority: None };
    let slack = rabinowitsch(g, gens, &order, opts.field)?;
    if !slack.member {
        return Ok(RadicalMembership::NotMember { slack_basis_size: slack.basis_size });
    }
    if !opts.explicit_power {
        return Ok(RadicalMembership::Member { slack_basis_size: 1, cases: slack.cases, power: None });
    }
    let basis = buchberger_over(gens, &order, opts.field)?;
    Ok(match power_in(g, &basis, opts.cap)? {
        Some(k) => RadicalMembership::Member { slack_basis_size: 1, cases: slack.cases, power: Some(k) },
        None => RadicalMembership::CapExceeded { cap: opts.cap },
    })
}

/// Smallest `k` of the form `2^i` (up to `cap`) with `g^k` in the ideal.
pub(crate) fn power_in(g: &Polynomial, basis: &GroebnerBasis, cap: u32) -> Result<Option<u32>> {
    let mut k = 1u32;
    let mut power = g.clone();
    while k <= cap {
        if basis.contains(&power)? {
            return Ok(Some(k));
        }
        power = &power * &power;
        k = match k.checked_mul(2) {
            Some(k) => k,
            None => break,
        };
    }
    Ok(None)
}

/// Convenience for monomial inputs.
pub fn monomial_polynomials(ms: &[Monomial]) -> Vec<Polynomial> {
    ms.iter().cloned().map(Polynomial::from).collect()
}
