use serde::{Deserialize, Serialize};

use super::{require_in, Provenance, Trace, WitnessSet};
use crate::error::Result;
use crate::monomial::{Monomial, MonomialIdeal};
use crate::polyring::{PolyMatrix, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Example4Trace {
    pub c: PolyMatrix,
    pub det_c: Polynomial,
}

fn p(s: &str) -> Polynomial {
    s.parse().expect("well-formed literal")
}

/// The nine generators on `x1..x6`, the Stanley-Reisner ideal of a triangle
/// boundary on `x1, x2, x3` joined to the path `x3 - x4 - x5 - x6 - x1`.
pub fn example4_ideal() -> MonomialIdeal {
    MonomialIdeal::new(
        ["x1*x4", "x1*x5", "x1*x2*x3", "x2*x4", "x2*x5", "x2*x6", "x3*x5", "x3*x6", "x4*x6"]
            .map(|s| s.parse::<Monomial>().expect("well-formed literal")),
    )
}

pub fn example4_matrix() -> PolyMatrix {
    PolyMatrix::from_rows(vec![
        vec![p("x1"), p("x2"), p("x3")],
        vec![p("x2"), p("x3"), p("x4")],
        vec![p("0"), p("x1"), p("x2")],
    ])
    .expect("rectangular")
}

/// `D = det C - x1*x2*x3 + x2^3` and `q_i = sum_j c_ij x_{3+j}`.
pub fn example4_witness() -> Result<(WitnessSet, PolyMatrix)> {
    let ideal = example4_ideal();
    let c = example4_matrix();
    let det_c = c.determinant()?;
    let d = &(&det_c - &p("x1*x2*x3")) + &p("x2^3");
    let mut elements = vec![d];
    for i in 0..3 {
        elements.push((0..3).fold(Polynomial::zero(), |acc, j| &acc + &(c.get(i, j) * &p(&format!("x{}", 4 + j)))));
    }
    for (k, e) in elements.iter().enumerate() {
        require_in(&ideal, e, format!("element {}", k + 1))?;
    }
    let witness = WitnessSet::new(ideal, elements, Provenance::Example4)
        .with_trace(Trace::Example4(Example4Trace { c: c.clone(), det_c }));
    Ok((witness, c))
}
