//! Variables, monomials and monomial ideals.
//!
//! A [`Monomial`] stores a dense exponent vector indexed by variable with the
//! trailing zeros trimmed, so two equal monomials always have equal
//! representations. The derived ordering is lexicographic with `x0 > x1 > ...`;
//! canonical text output lists terms in descending order of it.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::polyring::Polynomial;

/// An indeterminate `x<k>` identified by its index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variable(pub u32);

impl Variable {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

impl FromStr for Variable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut cur = Cursor::new(s);
        cur.skip_ws();
        let v = cur.variable()?;
        cur.skip_ws();
        cur.expect_end()?;
        Ok(v)
    }
}

impl Serialize for Variable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Variable {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A power product of variables. The empty product is the unit monomial `1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { exps: Vec::new() }
    }

    pub fn var(v: Variable) -> Self {
        Self::power(v, 1)
    }

    pub fn power(v: Variable, e: u32) -> Self {
        let mut exps = vec![0; v.index() + 1];
        exps[v.index()] = e;
        Self::from_exponents(exps)
    }

    /// Builds a monomial from a dense exponent vector (index = variable).
    pub fn from_exponents(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial { exps }
    }

    /// The product of the given variables, with multiplicity.
    pub fn product<I: IntoIterator<Item = Variable>>(vars: I) -> Self {
        let mut m = Monomial::one();
        for v in vars {
            m = m.mul(&Monomial::var(v));
        }
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, v: Variable) -> u32 {
        self.exps.get(v.index()).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    /// Number of variable slots in use (largest index + 1).
    pub fn width(&self) -> usize {
        self.exps.len()
    }

    /// Variables with a positive exponent, ascending.
    pub fn support(&self) -> impl Iterator<Item = Variable> + '_ {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| Variable(i as u32))
    }

    /// `(variable, exponent)` pairs with positive exponent, ascending.
    pub fn factors(&self) -> impl Iterator<Item = (Variable, u32)> + '_ {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, &e)| (Variable(i as u32), e))
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    /// The product of the support variables.
    pub fn squarefree_part(&self) -> Monomial {
        Monomial::from_exponents(self.exps.iter().map(|&e| e.min(1)).collect())
    }

    /// `self | other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.len() <= other.exps.len() && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (long, short) =
            if self.exps.len() >= other.exps.len() { (&self.exps, &other.exps) } else { (&other.exps, &self.exps) };
        let mut exps = long.clone();
        for (e, s) in exps.iter_mut().zip(short) {
            *e = e.checked_add(*s).expect("monomial exponent overflow");
        }
        Monomial { exps }
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let mut exps = self.exps.clone();
        for (e, o) in exps.iter_mut().zip(&other.exps) {
            *e -= o;
        }
        Some(Monomial::from_exponents(exps))
    }

    pub fn pow(&self, k: u32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial { exps: self.exps.iter().map(|&e| e.checked_mul(k).expect("monomial exponent overflow")).collect() }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let n = self.exps.len().max(other.exps.len());
        let exps = (0..n)
            .map(|i| {
                let a = self.exps.get(i).copied().unwrap_or(0);
                let b = other.exps.get(i).copied().unwrap_or(0);
                a.max(b)
            })
            .collect();
        Monomial { exps }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)).collect();
        Monomial::from_exponents(exps)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Applies `v -> rename(v)` to every variable.
    pub fn rename(&self, rename: impl Fn(Variable) -> Variable) -> Monomial {
        let mut m = Monomial::one();
        for (v, e) in self.factors() {
            m = m.mul(&Monomial::power(rename(v), e));
        }
        m
    }

    /// Ordering used for canonical text output: descending lexicographic with
    /// `x0 > x1 > ...`. Returns `Less` when `self` is printed first.
    pub fn display_cmp(&self, other: &Monomial) -> Ordering {
        other.cmp(self)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (v, e) in self.factors() {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Monomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut cur = Cursor::new(s);
        cur.skip_ws();
        let m = cur.monomial()?;
        cur.skip_ws();
        cur.expect_end()?;
        Ok(m)
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Monomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Divisibility-minimal subset of `ms`, in canonical display order.
pub fn minimalize<I: IntoIterator<Item = Monomial>>(ms: I) -> Vec<Monomial> {
    let mut all: Vec<Monomial> = ms.into_iter().collect();
    all.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    all.dedup();
    let mut kept: Vec<Monomial> = Vec::new();
    for m in all {
        if !kept.iter().any(|k| k.divides(&m)) {
            kept.push(m);
        }
    }
    kept.sort_by(|a, b| a.display_cmp(b));
    kept
}

/// An ideal generated by monomials, stored by its minimal generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "IdealRepr", into = "IdealRepr")]
pub struct MonomialIdeal {
    generators: Vec<Monomial>,
}

#[derive(Serialize, Deserialize)]
struct IdealRepr {
    generators: Vec<Monomial>,
}

impl From<IdealRepr> for MonomialIdeal {
    fn from(r: IdealRepr) -> Self {
        MonomialIdeal::new(r.generators)
    }
}

impl From<MonomialIdeal> for IdealRepr {
    fn from(i: MonomialIdeal) -> Self {
        IdealRepr { generators: i.generators }
    }
}

impl MonomialIdeal {
    pub fn new<I: IntoIterator<Item = Monomial>>(gens: I) -> Self {
        MonomialIdeal { generators: minimalize(gens) }
    }

    pub fn zero() -> Self {
        MonomialIdeal::default()
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_squarefree(&self) -> bool {
        self.generators.iter().all(Monomial::is_squarefree)
    }

    pub fn contains_monomial(&self, m: &Monomial) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }

    /// Per-term membership, exact for monomial ideals.
    pub fn contains(&self, f: &Polynomial) -> bool {
        ideal_contains(f, self)
    }

    /// First term of `f` outside the ideal, if any.
    pub fn first_term_outside(&self, f: &Polynomial) -> Option<Monomial> {
        f.terms().map(|(m, _)| m).find(|m| !self.contains_monomial(m)).cloned()
    }

    /// Largest variable index among generators plus one.
    pub fn width(&self) -> usize {
        self.generators.iter().map(Monomial::width).max().unwrap_or(0)
    }

    /// Radical of the ideal: squarefree parts of the generators.
    pub fn radical(&self) -> MonomialIdeal {
        MonomialIdeal::new(self.generators.iter().map(Monomial::squarefree_part))
    }

    pub fn rename(&self, rename: impl Fn(Variable) -> Variable) -> MonomialIdeal {
        MonomialIdeal::new(self.generators.iter().map(|g| g.rename(&rename)))
    }

    pub fn to_polynomials(&self) -> Vec<Polynomial> {
        self.generators.iter().cloned().map(Polynomial::from).collect()
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(")")
    }
}

pub fn divides(a: &Monomial, b: &Monomial) -> bool {
    a.divides(b)
}

/// True iff every term of `f` is divisible by some generator of `ideal`.
pub fn ideal_contains(f: &Polynomial, ideal: &MonomialIdeal) -> bool {
    f.terms().all(|(m, _)| ideal.contains_monomial(m))
}

/// Byte cursor shared by the monomial and polynomial parsers.
pub(crate) struct Cursor<'a> {
    src: &'a [u8],
    pub(crate) pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(s: &'a str) -> Self {
        Cursor { src: s.as_bytes(), pos: 0 }
    }

    pub(crate) fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    pub(crate) fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    pub(crate) fn bump(&mut self) {
        self.pos += 1;
    }

    pub(crate) fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t' | b'\n' | b'\r')) {
            self.pos += 1;
        }
    }

    pub(crate) fn expect_end(&self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.err(format!("unexpected character '{}'", c as char)),
        }
    }

    pub(crate) fn digits(&mut self) -> Result<&'a str> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits"))
    }

    pub(crate) fn number_u32(&mut self) -> Result<u32> {
        let at = self.pos;
        let d = self.digits()?;
        d.parse().map_err(|_| Error::Parse { pos: at, msg: format!("integer {d} out of range") })
    }

    pub(crate) fn variable(&mut self) -> Result<Variable> {
        if self.peek() != Some(b'x') {
            return self.err("expected variable 'x<k>'");
        }
        self.bump();
        Ok(Variable(self.number_u32()?))
    }

    /// `1` or `factor ('*' factor)*` with `factor = x<k> ('^' <e>)?`.
    pub(crate) fn monomial(&mut self) -> Result<Monomial> {
        if self.peek() == Some(b'1') {
            self.bump();
            return Ok(Monomial::one());
        }
        let mut m = self.factor()?;
        loop {
            let save = self.pos;
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.bump();
                self.skip_ws();
                m = m.mul(&self.factor()?);
            } else {
                self.pos = save;
                return Ok(m);
            }
        }
    }

    fn factor(&mut self) -> Result<Monomial> {
        let v = self.variable()?;
        let save = self.pos;
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.bump();
            self.skip_ws();
            let e = self.number_u32()?;
            Ok(Monomial::power(v, e))
        } else {
            self.pos = save;
            Ok(Monomial::var(v))
        }
    }
}

#[cfg(test)]
pub(crate) mod tests_support {
    use super::Monomial;
    use proptest::prelude::*;

    pub(crate) fn arb_monomial() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..3, 0..5).prop_map(Monomial::from_exponents)
    }
}

#[cfg(test)]
mod tests {
    use super::tests_support::arb_monomial;
    use super::*;
    use proptest::prelude::*;

    fn m(s: &str) -> Monomial {
        s.parse().unwrap()
    }

    fn c5_ideal() -> MonomialIdeal {
        MonomialIdeal::new(["x1*x3", "x1*x4", "x2*x4", "x2*x5", "x3*x5"].map(m))
    }

    #[test]
    fn divisibility_examples() {
        assert!(divides(&m("x1*x3"), &m("x1^2*x3*x5")));
        assert!(divides(&Monomial::one(), &m("x4^7")));
        assert!(!divides(&m("x2*x4"), &m("x1*x4")));
    }

    #[test]
    fn minimalize_examples() {
        assert_eq!(minimalize([m("x1*x3"), m("x1*x3*x5")]), vec![m("x1*x3")]);
        assert!(minimalize(Vec::new()).is_empty());
        let i6: Vec<Monomial> =
            ["x1*x3", "x1*x4", "x1*x5", "x2*x4", "x2*x5", "x2*x6", "x3*x5", "x3*x6", "x4*x6"].map(m).to_vec();
        assert_eq!(minimalize(i6.clone()).len(), 9);
    }

    #[test]
    fn per_term_membership() {
        let i = c5_ideal();
        assert!(ideal_contains(&"x1*x4 + x2*x5".parse().unwrap(), &i));
        assert!(ideal_contains(&Polynomial::zero(), &i));
        // exhaustive scan: x1*x2 is divisible by none of the five generators
        assert!(i.generators().iter().all(|g| !g.divides(&m("x1*x2"))));
        assert!(!ideal_contains(&"x1*x2".parse().unwrap(), &i));
    }

    #[test]
    fn text_round_trip() {
        for s in ["1", "x1^2*x3", "x0*x1^4*x3*x4", "x12"] {
            assert_eq!(m(s).to_string(), s);
        }
        assert_eq!(m("x3 * x1 ^ 2 * x1"), m("x1^3*x3"));
        assert!("x".parse::<Monomial>().is_err());
        assert!("x1*".parse::<Monomial>().is_err());
        assert!("y1".parse::<Monomial>().is_err());
    }

    #[test]
    fn display_order_is_descending_lex() {
        let mut ms = vec![m("x2*x3^2*x5"), m("x1^2*x3"), m("x1*x2*x4")];
        ms.sort_by(|a, b| a.display_cmp(b));
        assert_eq!(ms, vec![m("x1^2*x3"), m("x1*x2*x4"), m("x2*x3^2*x5")]);
    }

    proptest! {
        #[test]
        fn divides_is_partial_order(a in arb_monomial(), b in arb_monomial(), c in arb_monomial()) {
            prop_assert!(a.divides(&a));
            if a.divides(&b) && b.divides(&a) {
                prop_assert_eq!(&a, &b);
            }
            if a.divides(&b) && b.divides(&c) {
                prop_assert!(a.divides(&c));
            }
        }

        #[test]
        fn minimalize_idempotent_and_order_free(ms in proptest::collection::vec(arb_monomial(), 0..8)) {
            let once = minimalize(ms.clone());
            prop_assert_eq!(minimalize(once.clone()), once.clone());
            let mut rev = ms.clone();
            rev.reverse();
            prop_assert_eq!(minimalize(rev), once.clone());
            // dropping any kept generator shrinks the ideal
            for (i, g) in once.iter().enumerate() {
                let rest: Vec<_> = once.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, x)| x).collect();
                prop_assert!(!rest.iter().any(|r| r.divides(g)));
            }
        }

        #[test]
        fn membership_closed_under_sum_and_multiple(
            gens in proptest::collection::vec(arb_monomial(), 1..4),
            f in proptest::collection::vec(arb_monomial(), 0..4),
            g in proptest::collection::vec(arb_monomial(), 0..4),
            h in proptest::collection::vec(arb_monomial(), 0..3),
        ) {
            let ideal = MonomialIdeal::new(gens);
            let poly = |ts: &Vec<Monomial>| ts.iter().fold(Polynomial::zero(), |acc, t| &acc + &Polynomial::from(t.clone()));
            let (f, g, h) = (poly(&f), poly(&g), poly(&h));
            if ideal.contains(&f) && ideal.contains(&g) {
                prop_assert!(ideal.contains(&(&f + &g)));
                prop_assert!(ideal.contains(&(&h * &f)));
            }
        }

        #[test]
        fn monomial_text_round_trip(a in arb_monomial()) {
            let s = a.to_string();
            prop_assert_eq!(s.parse::<Monomial>().unwrap().to_string(), s);
        }
    }
}
