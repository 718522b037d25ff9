use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::Polynomial;
use crate::error::{Error, Result};
use crate::monomial::{Cursor, Monomial};

impl FromStr for Polynomial {
    type Err = Error;

    /// Signed sum of terms; a term is `coef`, `monomial` or `coef*monomial`
    /// with `coef` an integer or `a/b`.
    fn from_str(s: &str) -> Result<Self> {
        let mut cur = Cursor::new(s);
        let mut out = Polynomial::zero();
        cur.skip_ws();
        let mut negative = match cur.peek() {
            Some(b'-') => {
                cur.bump();
                true
            }
            Some(b'+') => {
                cur.bump();
                false
            }
            _ => false,
        };
        loop {
            cur.skip_ws();
            let (c, m) = term(&mut cur)?;
            out.add_term(m, if negative { -c } else { c });
            cur.skip_ws();
            match cur.peek() {
                None => return Ok(out),
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                Some(ch) => return cur.err(format!("unexpected character '{}'", ch as char)),
            }
            cur.bump();
        }
    }
}

fn term(cur: &mut Cursor<'_>) -> Result<(BigRational, Monomial)> {
    if cur.peek() == Some(b'x') {
        return Ok((BigRational::one(), cur.monomial()?));
    }
    let coeff = coefficient(cur)?;
    let save = cur.pos;
    cur.skip_ws();
    if cur.peek() == Some(b'*') {
        cur.bump();
        cur.skip_ws();
        Ok((coeff, cur.monomial()?))
    } else {
        cur.pos = save;
        Ok((coeff, Monomial::one()))
    }
}

fn coefficient(cur: &mut Cursor<'_>) -> Result<BigRational> {
    let num: BigInt = cur.digits()?.parse().expect("digits");
    let save = cur.pos;
    cur.skip_ws();
    if cur.peek() != Some(b'/') {
        cur.pos = save;
        return Ok(BigRational::from_integer(num));
    }
    cur.bump();
    cur.skip_ws();
    let at = cur.pos;
    let den: BigInt = cur.digits()?.parse().expect("digits");
    if den.is_zero() {
        return Err(Error::Parse { pos: at, msg: "zero denominator".into() });
    }
    Ok(BigRational::new(num, den))
}
