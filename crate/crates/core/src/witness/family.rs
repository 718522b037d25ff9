use serde::{Deserialize, Serialize};

use super::{require_in, Provenance, Trace, WitnessSet};
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal, Variable};
use crate::polyring::{PolyMatrix, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyTrace {
    pub n: usize,
    pub b: PolyMatrix,
    pub det_b: Polynomial,
}

fn x(i: usize) -> Monomial {
    Monomial::var(Variable(i as u32))
}

fn px(i: usize) -> Polynomial {
    Polynomial::from(x(i))
}

fn check_n(n: usize) -> Result<()> {
    if n < 6 {
        Err(Error::FamilyTooSmall(n))
    } else {
        Ok(())
    }
}

/// `I_n` on `x1..xn`: `x1*xj` (3 <= j <= n-1), `x2*xj` (4 <= j <= n),
/// `x3*xj` (5 <= j <= n) and `xj*xn` (4 <= j <= n-2).
pub fn family_ideal(n: usize) -> Result<MonomialIdeal> {
    check_n(n)?;
    let mut gens = Vec::with_capacity(4 * n - 15);
    gens.extend((3..n).map(|j| x(1).mul(&x(j))));
    gens.extend((4..=n).map(|j| x(2).mul(&x(j))));
    gens.extend((5..=n).map(|j| x(3).mul(&x(j))));
    gens.extend((4..=n - 2).map(|j| x(j).mul(&x(n))));
    Ok(MonomialIdeal::new(gens))
}

/// The `(n-3) x (n-3)` matrix `B`. Indices below are one-based:
/// `b_jj = x1` except `b_mm = x3`, `b_{j+1,j} = x2`,
/// `b_{j-1,j} = x3*x_{3+j}` for `2 <= j <= m-1`, and the last column is
/// `x2, x4, ..., x_{n-2}, x3` from top to bottom.
pub fn family_matrix_b(n: usize) -> Result<PolyMatrix> {
    check_n(n)?;
    let m = n - 3;
    let mut b = PolyMatrix::zeros(m, m);
    for j in 1..=m {
        b.set(j - 1, j - 1, px(1));
        if j < m {
            b.set(j, j - 1, px(2));
        }
        if (2..m).contains(&j) {
            b.set(j - 2, j - 1, Polynomial::from(x(3).mul(&x(3 + j))));
        }
    }
    b.set(0, m - 1, px(2));
    for i in 2..m {
        b.set(i - 1, m - 1, px(i + 2));
    }
    b.set(m - 1, m - 1, px(3));
    Ok(b)
}

/// `{D, q_1, ..., q_{n-3}}` with `q_i = sum_j b_ij x_{3+j}` and
/// `D = det B - (-1)^n x2^{n-3}`.
pub fn family_witness(n: usize) -> Result<WitnessSet> {
    let ideal = family_ideal(n)?;
    let b = family_matrix_b(n)?;
    let m = n - 3;
    let det_b = b.determinant()?;
    let sign = if n.is_multiple_of(2) { 1 } else { -1 };
    let d = &det_b - &Polynomial::integer(sign).mul_monomial(&x(2).pow(m as u32));

    // membership of D and the shape of D - x1^{n-4} x3
    require_in(&ideal, &d, "D")?;
    let head = Polynomial::from(x(1).pow(n as u32 - 4).mul(&x(3)));
    for term in (&d - &head).monomials() {
        let has_tail = (4..=n).any(|j| term.exponent(Variable(j as u32)) > 0);
        if term.exponent(Variable(2)) == 0 || !has_tail {
            return Err(Error::Postcondition(format!("term {term} of D - {head} lacks x2 or a variable x4..x{n}")));
        }
    }

    let mut elements = vec![d];
    for i in 0..m {
        let qi = (0..m).fold(Polynomial::zero(), |acc, j| &acc + &(b.get(i, j) * &px(4 + j)));
        require_in(&ideal, &qi, format!("q{}", i + 1))?;
        elements.push(qi);
    }
    Ok(WitnessSet::new(ideal, elements, Provenance::Family).with_trace(Trace::Family(FamilyTrace { n, b, det_b })))
}
