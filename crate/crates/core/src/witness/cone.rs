use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{require_in, Provenance, Trace, WitnessSet};
use crate::error::{Error, Result};
use crate::groebner::{verify_up_to_radical, Verdict, VerifyOptions};
use crate::monomial::{Monomial, Variable};
use crate::polyring::{PolyMatrix, Polynomial};
use crate::simplicial::SimplicialComplex;

#[derive(Debug, Clone, Default)]
pub struct ConeLiftOptions {
    /// Trust the base witness instead of verifying it first.
    pub skip_base_verification: bool,
    /// Options for the base verification.
    pub verify: VerifyOptions,
}

/// Intermediate objects of the cone lift.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeLiftTrace {
    pub base: Vec<Polynomial>,
    pub facet: Vec<Variable>,
    pub apex: Variable,
    /// Generators of the facet prime, ascending; column `j` of `A` belongs
    /// to `columns[j]`.
    pub columns: Vec<Variable>,
    /// Every term is assigned to the largest column variable dividing it.
    pub assignment: String,
    pub a: PolyMatrix,
    pub a_bar: PolyMatrix,
    pub a_prime: PolyMatrix,
    pub d: Polynomial,
    pub lifted: Vec<Polynomial>,
}

/// Decomposes `q = sum a_j * columns[j]` assigning each term to the
/// largest-index column variable dividing it.
fn decompose(q: &Polynomial, columns: &[Variable]) -> Result<Vec<Polynomial>> {
    let mut parts: Vec<Vec<(Monomial, BigRational)>> = vec![Vec::new(); columns.len()];
    for (m, c) in q.terms() {
        let j = columns
            .iter()
            .rposition(|&v| m.exponent(v) > 0)
            .ok_or_else(|| Error::Undecomposable { element: q.to_string(), term: m.to_string() })?;
        let rest = m.div(&Monomial::var(columns[j])).expect("column variable divides the term");
        parts[j].push((rest, c.clone()));
    }
    Ok(parts.into_iter().map(Polynomial::from_terms).collect())
}

/// Lifts a set-theoretic complete intersection witness of `I_Δ` to one of
/// `I_Δ'`, where `Δ'` cones `facet` from `apex`. The result has one element
/// more than the base.
pub fn cone_lift(
    complex: &SimplicialComplex,
    facet: &[Variable],
    base: &WitnessSet,
    apex: Variable,
    opts: &ConeLiftOptions,
) -> Result<(WitnessSet, ConeLiftTrace)> {
    let coned = complex.cone(facet, apex)?;
    let ideal = complex.stanley_reisner_ideal();
    if ideal.is_empty() {
        return Err(Error::ZeroIdeal);
    }
    if !complex.is_unmixed() {
        return Err(Error::NotUnmixed);
    }
    let t = complex.height();
    if base.len() != t {
        return Err(Error::SciHypothesis { found: base.len(), height: t });
    }
    for (i, q) in base.elements.iter().enumerate() {
        require_in(&ideal, q, format!("base element {} ({q})", i + 1))?;
    }
    if !opts.skip_base_verification {
        if base.target != ideal {
            return Err(Error::BaseNotVerified(format!(
                "base target {} differs from the Stanley-Reisner ideal {ideal}",
                base.target
            )));
        }
        let report = verify_up_to_radical(base, &opts.verify)?;
        if report.verdict != Verdict::Certified {
            return Err(Error::BaseNotVerified(report.summary()));
        }
    }

    let mut facet_sorted = facet.to_vec();
    facet_sorted.sort();
    let columns: Vec<Variable> =
        complex.vertices().iter().copied().filter(|v| facet_sorted.binary_search(v).is_err()).collect();
    debug_assert_eq!(columns.len(), t);

    let mut a = PolyMatrix::zeros(t, t);
    let mut a_bar = PolyMatrix::zeros(t, t);
    for (i, q) in base.elements.iter().enumerate() {
        for (j, aij) in decompose(q, &columns)?.into_iter().enumerate() {
            let xj = Polynomial::var(columns[j]);
            require_in(&ideal, &(&aij * &xj), format!("a[{}][{}]*{}", i + 1, j + 1, columns[j]))?;
            a_bar.set(i, j, &aij.square_substitution() * &xj);
            a.set(i, j, aij);
        }
    }
    let x0 = Polynomial::var(apex);
    let a_prime = a_bar.add(&PolyMatrix::scalar(t, &x0))?;
    let d = &a_prime.determinant()? - &x0.pow(t as u32);
    require_in(&ideal, &d, "D")?;

    let mut lifted = vec![d.clone()];
    for (i, q) in base.elements.iter().enumerate() {
        let q_bar = (0..t).fold(Polynomial::zero(), |acc, j| &acc + &(a_bar.get(i, j) * &Polynomial::var(columns[j])));
        if q_bar != q.square_substitution() {
            return Err(Error::Postcondition(format!("row {} of the lifted matrix does not reproduce phi(q)", i + 1)));
        }
        require_in(&ideal, &q_bar, format!("lifted base element {}", i + 1))?;
        lifted.push(&q_bar + &(&x0 * &Polynomial::var(columns[i])));
    }

    let trace = ConeLiftTrace {
        base: base.elements.clone(),
        facet: facet_sorted,
        apex,
        columns,
        assignment: "largest_index".into(),
        a,
        a_bar,
        a_prime,
        d,
        lifted: lifted.clone(),
    };
    let witness = WitnessSet::new(coned.stanley_reisner_ideal(), lifted, Provenance::ConeLift)
        .with_trace(Trace::ConeLift(trace.clone()));
    Ok((witness, trace))
}
