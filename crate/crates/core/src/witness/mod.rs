//! Witness constructions: polynomial lists that generate a squarefree
//! monomial ideal up to radical.

mod cone;
mod example4;
mod family;
mod sv;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use cone::{cone_lift, ConeLiftOptions, ConeLiftTrace};
pub use example4::{example4_ideal, example4_matrix, example4_witness, Example4Trace};
pub use family::{family_ideal, family_matrix_b, family_witness, FamilyTrace};
pub use sv::{find_sv_partition, schmitt_vogel, sv_sums, validate_sv, SVPartition, SvTrace};

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};
use crate::polyring::Polynomial;
use crate::simplicial::cycle_complex;

/// Which construction produced a witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Provenance {
    #[serde(rename = "schmitt_vogel")]
    SchmittVogel,
    #[serde(rename = "cone_lift")]
    ConeLift,
    #[serde(rename = "family_In")]
    Family,
    #[serde(rename = "example4")]
    Example4,
    #[serde(rename = "user")]
    User,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::SchmittVogel => "schmitt_vogel",
            Provenance::ConeLift => "cone_lift",
            Provenance::Family => "family_In",
            Provenance::Example4 => "example4",
            Provenance::User => "user",
        })
    }
}

/// Intermediate data recorded by a construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Trace {
    SchmittVogel(SvTrace),
    ConeLift(ConeLiftTrace),
    Family(FamilyTrace),
    Example4(Example4Trace),
}

/// An ordered list of polynomials claimed to generate `target` up to radical.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessSet {
    pub target: MonomialIdeal,
    pub elements: Vec<Polynomial>,
    pub provenance: Provenance,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<Trace>,
}

impl WitnessSet {
    pub fn new(target: MonomialIdeal, elements: Vec<Polynomial>, provenance: Provenance) -> Self {
        WitnessSet { target, elements, provenance, trace: None }
    }

    pub fn with_trace(mut self, trace: Trace) -> Self {
        self.trace = Some(trace);
        self
    }

    pub fn without_trace(&self) -> Self {
        WitnessSet { trace: None, ..self.clone() }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// First element (index, term) with a term outside the target.
    pub fn first_outside(&self) -> Option<(usize, Monomial)> {
        self.elements.iter().enumerate().find_map(|(i, e)| self.target.first_term_outside(e).map(|m| (i, m)))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

impl fmt::Display for WitnessSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.elements {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}

/// The three-element witness of the 5-cycle ideal on `x1..x5`:
/// `x1*x3, x1*x4 + x2*x5, x2*x4 + x3*x5`.
pub fn cycle5_witness() -> WitnessSet {
    let target = cycle_complex(5).expect("n = 5").stanley_reisner_ideal();
    let elements = ["x1*x3", "x1*x4 + x2*x5", "x2*x4 + x3*x5"]
        .map(|s| s.parse::<Polynomial>().expect("well-formed literal"))
        .to_vec();
    WitnessSet::new(target, elements, Provenance::User)
}

/// Fails with the first term of `f` outside `ideal`.
pub(crate) fn require_in(ideal: &MonomialIdeal, f: &Polynomial, what: impl Into<String>) -> Result<()> {
    match ideal.first_term_outside(f) {
        None => Ok(()),
        Some(term) => Err(Error::NotInIdeal { what: what.into(), term: term.to_string() }),
    }
}
