//! Internal representation used by the Buchberger loop.
//!
//! Variables are compressed to positions `0..n` ranked from lowest to highest
//! in the active term order, and polynomials are term vectors sorted in
//! descending order. Coefficients live in a [`Domain`]: fraction-free
//! integers with content removal for the rationals, or `u64` residues for a
//! prime field.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use smallvec::SmallVec;

use super::order::{compare, OrderKind, TermOrder};
use crate::error::{Error, Result};
use crate::monomial::{Monomial, Variable};
use crate::polyring::{FieldSpec, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct Mon {
    e: SmallVec<[u32; 12]>,
    deg: u64,
}

impl Mon {
    fn new(e: SmallVec<[u32; 12]>) -> Self {
        let deg = e.iter().map(|&x| x as u64).sum();
        Mon { e, deg }
    }

    fn divides(&self, other: &Mon) -> bool {
        self.deg <= other.deg && self.e.iter().zip(&other.e).all(|(a, b)| a <= b)
    }

    fn mul(&self, other: &Mon) -> Mon {
        Mon { e: self.e.iter().zip(&other.e).map(|(a, b)| a + b).collect(), deg: self.deg + other.deg }
    }

    fn div(&self, other: &Mon) -> Mon {
        Mon { e: self.e.iter().zip(&other.e).map(|(a, b)| a - b).collect(), deg: self.deg - other.deg }
    }

    fn lcm(&self, other: &Mon) -> Mon {
        Mon::new(self.e.iter().zip(&other.e).map(|(a, b)| *a.max(b)).collect())
    }

    fn coprime(&self, other: &Mon) -> bool {
        self.e.iter().zip(&other.e).all(|(a, b)| *a == 0 || *b == 0)
    }

    fn is_one(&self) -> bool {
        self.deg == 0
    }
}

/// Maps user variables to ranked positions for one computation.
#[derive(Debug, Clone)]
pub(crate) struct Ring {
    kind: OrderKind,
    ranked: Vec<Variable>,
}

impl Ring {
    pub(crate) fn new(order: &TermOrder, polys: &[&Polynomial]) -> Self {
        let mut vars: Vec<Variable> =
            polys.iter().flat_map(|p| p.monomials().flat_map(|m| m.support().collect::<Vec<_>>())).collect();
        vars.sort();
        vars.dedup();
        Ring { kind: order.kind, ranked: order.arrange(&vars) }
    }

    fn cmp(&self, a: &Mon, b: &Mon) -> Ordering {
        compare(self.kind, &a.e, &b.e, a.deg, b.deg)
    }

    fn mon(&self, m: &Monomial) -> Mon {
        Mon::new(self.ranked.iter().map(|&v| m.exponent(v)).collect())
    }

    fn monomial(&self, m: &Mon) -> Monomial {
        let width = self.ranked.iter().map(|v| v.index() + 1).max().unwrap_or(0);
        let mut exps = vec![0u32; width];
        for (v, &e) in self.ranked.iter().zip(&m.e) {
            exps[v.index()] = e;
        }
        Monomial::from_exponents(exps)
    }

    fn one(&self) -> Mon {
        Mon::new(SmallVec::from_elem(0, self.ranked.len()))
    }
}

pub(crate) type EPoly<C> = Vec<(Mon, C)>;

/// Coefficient arithmetic for the engine.
pub(crate) trait Domain: Sync {
    type C: Clone + PartialEq + std::fmt::Debug + Send + Sync;

    fn is_zero(&self, c: &Self::C) -> bool;
    fn is_one(&self, c: &Self::C) -> bool;
    fn mul(&self, a: &Self::C, b: &Self::C) -> Self::C;
    fn sub(&self, a: &Self::C, b: &Self::C) -> Self::C;
    fn neg(&self, a: &Self::C) -> Self::C;
    /// `(a, b)` with `a·cf = b·cg` and `a` as small as possible.
    fn multipliers(&self, cf: &Self::C, cg: &Self::C) -> (Self::C, Self::C);
    /// Content removal (integers) or monic scaling (fields).
    fn normalize(&self, p: &mut EPoly<Self::C>);
    fn convert(&self, ring: &Ring, p: &Polynomial) -> Result<EPoly<Self::C>>;
    fn to_rational(&self, c: &Self::C) -> BigRational;
    /// Size of a coefficient in bits.
    fn bits(&self, c: &Self::C) -> u64;
}

/// Integers standing in for the rationals: polynomials are kept primitive
/// with a positive leading coefficient.
pub(crate) struct Integers;

impl Domain for Integers {
    type C = BigInt;

    fn is_zero(&self, c: &BigInt) -> bool {
        c.is_zero()
    }

    fn is_one(&self, c: &BigInt) -> bool {
        c.is_one()
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }

    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }

    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }

    fn multipliers(&self, cf: &BigInt, cg: &BigInt) -> (BigInt, BigInt) {
        let g = cf.gcd(cg);
        let (mut a, mut b) = (cg / &g, cf / &g);
        if a.is_negative() {
            a = -a;
            b = -b;
        }
        (a, b)
    }

    fn normalize(&self, p: &mut EPoly<BigInt>) {
        let Some((_, lead)) = p.first() else { return };
        let negate = lead.is_negative();
        let mut g = BigInt::zero();
        for (_, c) in p.iter() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if negate {
            g = -g;
        }
        if !g.is_one() {
            for (_, c) in p.iter_mut() {
                *c = &*c / &g;
            }
        }
    }

    fn convert(&self, ring: &Ring, p: &Polynomial) -> Result<EPoly<BigInt>> {
        let den = p.terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let mut out: EPoly<BigInt> =
            p.terms().map(|(m, c)| (ring.mon(m), (c * BigRational::from_integer(den.clone())).to_integer())).collect();
        sort_desc(ring, &mut out);
        self.normalize(&mut out);
        Ok(out)
    }

    fn to_rational(&self, c: &BigInt) -> BigRational {
        BigRational::from_integer(c.clone())
    }

    fn bits(&self, c: &BigInt) -> u64 {
        c.bits()
    }
}

/// The prime field `F_p`, with `p < 2^31` so products fit in `u64`.
pub(crate) struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub(crate) fn new(p: u64) -> Self {
        PrimeField { p }
    }

    fn inv(&self, a: u64) -> u64 {
        // Fermat
        let (mut base, mut exp, mut acc) = (a % self.p, self.p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }

    fn reduce(&self, n: &BigInt) -> u64 {
        let r = n.mod_floor(&BigInt::from(self.p));
        r.to_u64().expect("residue fits")
    }
}

impl Domain for PrimeField {
    type C = u64;

    fn is_zero(&self, c: &u64) -> bool {
        *c == 0
    }

    fn is_one(&self, c: &u64) -> bool {
        *c == 1
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }

    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }

    fn multipliers(&self, cf: &u64, cg: &u64) -> (u64, u64) {
        (1, cf * self.inv(*cg) % self.p)
    }

    fn normalize(&self, p: &mut EPoly<u64>) {
        let Some((_, lead)) = p.first() else { return };
        if *lead == 1 {
            return;
        }
        let inv = self.inv(*lead);
        for (_, c) in p.iter_mut() {
            *c = *c * inv % self.p;
        }
    }

    fn convert(&self, ring: &Ring, p: &Polynomial) -> Result<EPoly<u64>> {
        let mut out = Vec::new();
        for (m, c) in p.terms() {
            let den = self.reduce(c.denom());
            if den == 0 {
                return Err(Error::BadReduction { coeff: c.to_string(), p: self.p });
            }
            let v = self.reduce(c.numer()) * self.inv(den) % self.p;
            if v != 0 {
                out.push((ring.mon(m), v));
            }
        }
        sort_desc(ring, &mut out);
        self.normalize(&mut out);
        Ok(out)
    }

    fn to_rational(&self, c: &u64) -> BigRational {
        BigRational::from_integer(BigInt::from(*c))
    }

    fn bits(&self, c: &u64) -> u64 {
        u64::from(64 - c.leading_zeros())
    }
}

fn sort_desc<C>(ring: &Ring, p: &mut EPoly<C>) {
    p.sort_by(|a, b| ring.cmp(&b.0, &a.0));
}

/// `a·f − b·m·g`, merged in descending order.
fn sub_mul<D: Domain>(
    d: &D,
    ring: &Ring,
    f: &EPoly<D::C>,
    a: &D::C,
    b: &D::C,
    m: &Mon,
    g: &EPoly<D::C>,
) -> EPoly<D::C> {
    let scale_f = !d.is_one(a);
    let mut out = Vec::with_capacity(f.len() + g.len());
    let (mut i, mut j) = (0, 0);
    let shifted = |j: usize| (g[j].0.mul(m), d.mul(b, &g[j].1));
    while i < f.len() || j < g.len() {
        let ord = if i == f.len() {
            Ordering::Less
        } else if j == g.len() {
            Ordering::Greater
        } else {
            ring.cmp(&f[i].0, &g[j].0.mul(m))
        };
        match ord {
            Ordering::Greater => {
                let c = if scale_f { d.mul(a, &f[i].1) } else { f[i].1.clone() };
                out.push((f[i].0.clone(), c));
                i += 1;
            }
            Ordering::Less => {
                let (mon, c) = shifted(j);
                out.push((mon, d.neg(&c)));
                j += 1;
            }
            Ordering::Equal => {
                let lhs = if scale_f { d.mul(a, &f[i].1) } else { f[i].1.clone() };
                let c = d.sub(&lhs, &d.mul(b, &g[j].1));
                if !d.is_zero(&c) {
                    out.push((f[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Fully reduces `f` by `basis` (every term, not just the leading one).
/// Over the integers the result is a nonzero scalar multiple of the
/// remainder, which is all membership needs.
fn reduce<D: Domain>(d: &D, ring: &Ring, mut f: EPoly<D::C>, basis: &[&EPoly<D::C>]) -> EPoly<D::C> {
    let mut k = 0;
    while k < f.len() {
        let reducer = basis.iter().find(|g| g[0].0.divides(&f[k].0));
        match reducer {
            Some(g) => {
                let m = f[k].0.div(&g[0].0);
                let (a, b) = d.multipliers(&f[k].1, &g[0].1);
                f = sub_mul(d, ring, &f, &a, &b, &m, g);
                d.normalize(&mut f);
            }
            None => k += 1,
        }
    }
    f
}

fn s_poly<D: Domain>(d: &D, ring: &Ring, f: &EPoly<D::C>, g: &EPoly<D::C>) -> EPoly<D::C> {
    let l = f[0].0.lcm(&g[0].0);
    let (a, b) = d.multipliers(&f[0].1, &g[0].1);
    let mf = l.div(&f[0].0);
    let mg = l.div(&g[0].0);
    let lifted: EPoly<D::C> = f.iter().map(|(m, c)| (m.mul(&mf), c.clone())).collect();
    let mut out = sub_mul(d, ring, &lifted, &a, &b, &mg, g);
    d.normalize(&mut out);
    out
}

#[derive(Debug, Clone, Default)]
pub(crate) struct Stats {
    pub pairs_considered: usize,
    pub pairs_reduced: usize,
    pub product_criterion: usize,
    pub chain_criterion: usize,
    /// Leading coefficients of every polynomial that entered the basis.
    pub leading_coefficients: Vec<BigRational>,
}

pub(crate) struct Outcome<C> {
    pub basis: Vec<EPoly<C>>,
    pub stats: Stats,
    /// The coefficient limit was exceeded; `basis` is incomplete.
    pub aborted: bool,
}

/// Size bounds for an abortable basis computation.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Limit {
    /// Largest coefficient size in bits.
    pub bits: u64,
    /// Largest number of basis elements.
    pub basis: usize,
}

/// Buchberger's algorithm with the normal selection strategy (smallest lcm
/// degree, ties by pair index) plus the coprime and chain criteria. With
/// `stop_at_unit` the loop returns `{1}` as soon as a constant appears; with
/// `limit` it gives up once the basis outgrows the bounds.
pub(crate) fn buchberger<D: Domain>(
    d: &D,
    ring: &Ring,
    gens: Vec<EPoly<D::C>>,
    stop_at_unit: bool,
    limit: Option<Limit>,
) -> Outcome<D::C> {
    let mut stats = Stats::default();
    let mut basis: Vec<EPoly<D::C>> = Vec::new();
    let mut queue: BTreeSet<(u64, usize, usize)> = BTreeSet::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();

    let unit = |d: &D, stats: Stats, c: &D::C| {
        let mut one = vec![(ring.one(), c.clone())];
        d.normalize(&mut one);
        Outcome { basis: vec![one], stats, aborted: false }
    };

    let mut incoming: Vec<EPoly<D::C>> = gens.into_iter().filter(|g| !g.is_empty()).collect();
    incoming.reverse();
    loop {
        let next = if let Some(g) = incoming.pop() {
            Some(g)
        } else {
            let mut found = None;
            while let Some(pair) = queue.pop_first() {
                let (_, i, j) = pair;
                pending.remove(&(i, j));
                stats.pairs_considered += 1;
                let (li, lj) = (&basis[i][0].0, &basis[j][0].0);
                if li.coprime(lj) {
                    stats.product_criterion += 1;
                    continue;
                }
                let l = li.lcm(lj);
                let chain = (0..basis.len()).any(|k| {
                    k != i
                        && k != j
                        && basis[k][0].0.divides(&l)
                        && !pending.contains(&(i.min(k), i.max(k)))
                        && !pending.contains(&(j.min(k), j.max(k)))
                });
                if chain {
                    stats.chain_criterion += 1;
                    continue;
                }
                stats.pairs_reduced += 1;
                let s = s_poly(d, ring, &basis[i], &basis[j]);
                let refs: Vec<&EPoly<D::C>> = basis.iter().collect();
                let r = reduce(d, ring, s, &refs);
                if !r.is_empty() {
                    found = Some(r);
                    break;
                }
            }
            found
        };
        let Some(mut g) = next else { break };
        if !basis.is_empty() {
            let refs: Vec<&EPoly<D::C>> = basis.iter().collect();
            g = reduce(d, ring, g, &refs);
            if g.is_empty() {
                continue;
            }
        }
        d.normalize(&mut g);
        stats.leading_coefficients.push(d.to_rational(&g[0].1));
        if g[0].0.is_one() && stop_at_unit {
            return unit(d, stats, &g[0].1);
        }
        if limit.is_some_and(|l| basis.len() >= l.basis || g.iter().any(|(_, c)| d.bits(c) > l.bits)) {
            return Outcome { basis, stats, aborted: true };
        }
        let new = basis.len();
        for (i, b) in basis.iter().enumerate() {
            let deg = b[0].0.lcm(&g[0].0).deg;
            queue.insert((deg, i, new));
            pending.insert((i, new));
        }
        basis.push(g);
    }

    Outcome { basis: interreduce(d, ring, basis), stats, aborted: false }
}

/// Minimal, tail-reduced, normalized basis sorted by descending leading
/// monomial.
fn interreduce<D: Domain>(d: &D, ring: &Ring, basis: Vec<EPoly<D::C>>) -> Vec<EPoly<D::C>> {
    let mut keep: Vec<EPoly<D::C>> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let redundant =
            basis.iter().enumerate().any(|(j, h)| j != i && h[0].0.divides(&g[0].0) && (h[0].0 != g[0].0 || j < i));
        if !redundant {
            keep.push(g.clone());
        }
    }
    let mut out = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<&EPoly<D::C>> = keep.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, h)| h).collect();
        let mut r = reduce(d, ring, keep[i].clone(), &others);
        d.normalize(&mut r);
        out.push(r);
    }
    out.sort_by(|a, b| ring.cmp(&b[0].0, &a[0].0));
    out
}

/// Back to a rational polynomial, scaled to be monic.
pub(crate) fn to_monic_polynomial<D: Domain>(d: &D, ring: &Ring, p: &EPoly<D::C>) -> Polynomial {
    let Some((_, lead)) = p.first() else {
        return Polynomial::zero();
    };
    let lead = d.to_rational(lead);
    Polynomial::from_terms(p.iter().map(|(m, c)| (ring.monomial(m), d.to_rational(c) / &lead)))
}

/// Exact remainder over a field: division with field quotients so that
/// `f − remainder` lies in the ideal of `basis`.
pub(crate) fn remainder(
    order: &TermOrder,
    field: FieldSpec,
    f: &Polynomial,
    basis: &[Polynomial],
) -> Result<Polynomial> {
    let mut all: Vec<&Polynomial> = basis.iter().collect();
    all.push(f);
    let ring = Ring::new(order, &all);
    let into_field = |c: &BigRational| -> Result<BigRational> {
        match field {
            FieldSpec::Rationals => Ok(c.clone()),
            FieldSpec::Prime(p) => {
                let pf = PrimeField::new(p);
                let den = pf.reduce(c.denom());
                if den == 0 {
                    return Err(Error::BadReduction { coeff: c.to_string(), p });
                }
                Ok(BigRational::from_integer(BigInt::from(pf.reduce(c.numer()) * pf.inv(den) % p)))
            }
        }
    };
    let in_field = |p: &Polynomial| -> Result<Polynomial> {
        let mut terms = Vec::with_capacity(p.num_terms());
        for (m, c) in p.terms() {
            terms.push((m.clone(), into_field(c)?));
        }
        Ok(Polynomial::from_terms(terms))
    };
    let lead = |p: &Polynomial| -> Option<(Monomial, BigRational)> {
        p.terms().max_by(|a, b| ring.cmp(&ring.mon(a.0), &ring.mon(b.0))).map(|(m, c)| (m.clone(), c.clone()))
    };
    let mut divisors = Vec::new();
    for g in basis {
        let g = in_field(g)?;
        if let Some((m, c)) = lead(&g) {
            divisors.push((m, c, g));
        }
    }
    let mut p = in_field(f)?;
    let mut rem = Polynomial::zero();
    while let Some((m, c)) = lead(&p) {
        match divisors.iter().find(|(lm, _, _)| lm.divides(&m)) {
            Some((lm, lc, g)) => {
                let q = into_field(&(&c / lc))?;
                let shift = Polynomial::term(q, m.div(lm).expect("divides"));
                p = in_field(&(&p - &(&shift * g)))?;
            }
            None => {
                let t = Polynomial::term(c, m);
                p = &p - &t;
                rem = &rem + &t;
            }
        }
    }
    Ok(rem)
}

/// Primes below 1000 dividing any of the integers, plus whether a cofactor
/// with no such prime factor remained.
pub(crate) fn small_prime_factors(values: &[BigRational]) -> (Vec<u64>, bool) {
    let mut primes = BTreeSet::new();
    let mut large = false;
    for v in values {
        for part in [v.numer(), v.denom()] {
            let mut n = part.abs();
            if n.sign() == Sign::NoSign {
                continue;
            }
            let mut q = 2u64;
            while q < 1000 && !n.is_one() {
                let qb = BigInt::from(q);
                while (&n % &qb).is_zero() {
                    primes.insert(q);
                    n /= &qb;
                }
                q += 1;
            }
            if !n.is_one() {
                large = true;
            }
        }
    }
    (primes.into_iter().collect(), large)
}

/// Prepares a ring and converts `polys` into the engine representation.
pub(crate) fn setup<D: Domain>(d: &D, order: &TermOrder, polys: &[&Polynomial]) -> Result<(Ring, Vec<EPoly<D::C>>)> {
    let ring = Ring::new(order, polys);
    let converted = polys.iter().map(|p| d.convert(&ring, p)).collect::<Result<Vec<_>>>()?;
    Ok((ring, converted))
}
