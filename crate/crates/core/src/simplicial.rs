//! Simplicial complexes and the Stanley-Reisner correspondence.
//!
//! A complex is stored by its vertex set and its facets. Vertex sets are
//! handled as `u64` bit masks indexed by variable, which limits the
//! combinatorial routines to variables `x0..x63`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal, Variable};

type Mask = u64;

fn var_mask(v: Variable) -> Result<Mask> {
    if v.0 >= 64 {
        Err(Error::VariableOutOfRange(v))
    } else {
        Ok(1u64 << v.0)
    }
}

fn set_mask(vs: &[Variable]) -> Result<Mask> {
    vs.iter().try_fold(0, |acc, &v| Ok(acc | var_mask(v)?))
}

fn mask_vars(m: Mask) -> Vec<Variable> {
    (0..64).filter(|i| m & (1u64 << i) != 0).map(Variable).collect()
}

fn mask_monomial(m: Mask) -> Monomial {
    Monomial::product(mask_vars(m))
}

fn support_mask(m: &Monomial) -> Result<Mask> {
    m.support().try_fold(0, |acc, v| Ok(acc | var_mask(v)?))
}

fn fmt_set(f: &mut fmt::Formatter<'_>, vs: &[Variable], open: &str, close: &str) -> fmt::Result {
    f.write_str(open)?;
    for (i, v) in vs.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{v}")?;
    }
    f.write_str(close)
}

/// The prime `P_F` generated by the vertices outside a facet `F`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MinimalPrime {
    pub variables: Vec<Variable>,
}

impl MinimalPrime {
    pub fn height(&self) -> usize {
        self.variables.len()
    }
}

impl fmt::Display for MinimalPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_set(f, &self.variables, "(", ")")
    }
}

/// A simplicial complex given by its facets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ComplexRepr", into = "ComplexRepr")]
pub struct SimplicialComplex {
    vertices: Vec<Variable>,
    facets: Vec<Vec<Variable>>,
}

#[derive(Serialize, Deserialize)]
struct ComplexRepr {
    vertices: Vec<Variable>,
    facets: Vec<Vec<Variable>>,
}

impl TryFrom<ComplexRepr> for SimplicialComplex {
    type Error = Error;

    fn try_from(r: ComplexRepr) -> Result<Self> {
        SimplicialComplex::new(r.vertices, r.facets)
    }
}

impl From<SimplicialComplex> for ComplexRepr {
    fn from(c: SimplicialComplex) -> Self {
        ComplexRepr { vertices: c.vertices, facets: c.facets }
    }
}

impl SimplicialComplex {
    /// Validates and canonicalizes: facets are nonempty, pairwise
    /// incomparable, drawn from `vertices`, and cover every vertex.
    pub fn new(vertices: Vec<Variable>, facets: Vec<Vec<Variable>>) -> Result<Self> {
        let vmask = set_mask(&vertices)?;
        if facets.is_empty() {
            return Err(Error::InvalidComplex("no facets".into()));
        }
        let mut vertices = vertices;
        vertices.sort();
        vertices.dedup();
        let mut masks = Vec::with_capacity(facets.len());
        for f in &facets {
            let m = set_mask(f)?;
            if m == 0 {
                return Err(Error::InvalidComplex("empty facet".into()));
            }
            if m & !vmask != 0 {
                return Err(Error::InvalidComplex(format!(
                    "facet uses {} which is not a vertex",
                    mask_vars(m & !vmask)[0]
                )));
            }
            masks.push(m);
        }
        for (i, a) in masks.iter().enumerate() {
            for (j, b) in masks.iter().enumerate() {
                if i != j && a & b == *a && (a != b || i < j) {
                    return Err(Error::InvalidComplex(format!(
                        "face {} is contained in face {}",
                        mask_monomial(*a),
                        mask_monomial(*b)
                    )));
                }
            }
        }
        let covered = masks.iter().fold(0, |acc, m| acc | m);
        if covered != vmask {
            return Err(Error::InvalidComplex(format!("vertex {} lies in no facet", mask_vars(vmask & !covered)[0])));
        }
        Ok(Self::from_masks(vmask, masks))
    }

    fn from_masks(vertices: Mask, mut facets: Vec<Mask>) -> Self {
        let mut facets: Vec<Vec<Variable>> = facets.drain(..).map(mask_vars).collect();
        facets.sort();
        SimplicialComplex { vertices: mask_vars(vertices), facets }
    }

    pub fn vertices(&self) -> &[Variable] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Vec<Variable>] {
        &self.facets
    }

    fn vertex_mask(&self) -> Mask {
        set_mask(&self.vertices).expect("validated on construction")
    }

    fn facet_masks(&self) -> Vec<Mask> {
        self.facets.iter().map(|f| set_mask(f).expect("validated on construction")).collect()
    }

    pub fn is_face(&self, face: &[Variable]) -> bool {
        match set_mask(face) {
            Ok(m) => self.facet_masks().iter().any(|f| f & m == m),
            Err(_) => false,
        }
    }

    /// Minimal non-faces by ascending-cardinality subset search; subsets that
    /// contain a known non-face are skipped.
    pub fn minimal_nonfaces(&self) -> Vec<Vec<Variable>> {
        let verts = self.vertex_mask();
        let positions = mask_vars(verts);
        let n = positions.len();
        let facets = self.facet_masks();
        let max_face = facets.iter().map(|f| f.count_ones() as usize).max().unwrap_or(0);
        let mut nonfaces: Vec<Mask> = Vec::new();
        for k in 1..=n.min(max_face + 1) {
            for local in combinations(n, k) {
                let subset =
                    (0..n).filter(|i| local & (1u64 << i) != 0).fold(0u64, |acc, i| acc | (1u64 << positions[i].0));
                if nonfaces.iter().any(|nf| nf & subset == *nf) {
                    continue;
                }
                if !facets.iter().any(|f| f & subset == subset) {
                    nonfaces.push(subset);
                }
            }
        }
        nonfaces.into_iter().map(mask_vars).collect()
    }

    /// `I_Δ`: products of the minimal non-faces.
    pub fn stanley_reisner_ideal(&self) -> MonomialIdeal {
        MonomialIdeal::new(self.minimal_nonfaces().into_iter().map(Monomial::product))
    }

    /// One prime `P_F = X \ F` per facet, in facet order.
    pub fn minimal_primes(&self) -> Vec<MinimalPrime> {
        let verts = self.vertex_mask();
        self.facet_masks().into_iter().map(|f| MinimalPrime { variables: mask_vars(verts & !f) }).collect()
    }

    fn max_facet_size(&self) -> usize {
        self.facets.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `|X| - max |F|`.
    pub fn height(&self) -> usize {
        self.vertices.len() - self.max_facet_size()
    }

    pub fn dimension(&self) -> usize {
        self.max_facet_size() - 1
    }

    pub fn is_pure(&self) -> bool {
        self.facets.windows(2).all(|w| w[0].len() == w[1].len())
    }

    pub fn is_unmixed(&self) -> bool {
        self.is_pure()
    }

    pub fn is_simplex(&self) -> bool {
        self.facets.len() == 1
    }

    /// Cohen-Macaulay test for pure one-dimensional complexes: the graph
    /// formed by the facets must be connected.
    pub fn is_cm_one_dimensional(&self) -> Result<bool> {
        if !self.is_pure() || self.dimension() != 1 {
            return Err(Error::NotOneDimensional(format!(
                "dimension {}, {}",
                self.dimension(),
                if self.is_pure() { "pure" } else { "impure" }
            )));
        }
        let idx = |v: Variable| self.vertices.binary_search(&v).expect("facet vertex");
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for edge in &self.facets {
            let (a, b) = (find(&mut parent, idx(edge[0])), find(&mut parent, idx(edge[1])));
            parent[a] = b;
        }
        let root = find(&mut parent, 0);
        Ok((0..self.vertices.len()).all(|v| find(&mut parent, v) == root))
    }

    /// `Δ ∪ co_apex(F)`: the facet `F` is replaced by `F ∪ {apex}`.
    pub fn cone(&self, facet: &[Variable], apex: Variable) -> Result<SimplicialComplex> {
        let f = set_mask(facet)?;
        let a = var_mask(apex)?;
        let facets = self.facet_masks();
        if !facets.contains(&f) {
            return Err(Error::NotAFacet(mask_monomial(f).to_string()));
        }
        if self.vertex_mask() & a != 0 {
            return Err(Error::ApexIsVertex(apex));
        }
        let new: Vec<Mask> = facets.into_iter().map(|g| if g == f { g | a } else { g }).collect();
        Ok(Self::from_masks(self.vertex_mask() | a, new))
    }

    /// Applies an injective relabeling of the vertices.
    pub fn rename(&self, rename: impl Fn(Variable) -> Variable) -> Result<SimplicialComplex> {
        SimplicialComplex::new(
            self.vertices.iter().map(|&v| rename(v)).collect(),
            self.facets.iter().map(|f| f.iter().map(|&v| rename(v)).collect()).collect(),
        )
    }

    /// The simplex on `vertices`.
    pub fn simplex(vertices: Vec<Variable>) -> Result<SimplicialComplex> {
        SimplicialComplex::new(vertices.clone(), vec![vertices])
    }

    /// The cycle graph `C_n` on `x1..xn` as a one-dimensional complex.
    pub fn cycle(n: usize) -> Result<SimplicialComplex> {
        cycle_complex(n)
    }
}

pub fn cycle_complex(n: usize) -> Result<SimplicialComplex> {
    if n < 3 {
        return Err(Error::CycleTooSmall(n));
    }
    let v = |i: usize| Variable(i as u32 + 1);
    SimplicialComplex::new((0..n).map(v).collect(), (0..n).map(|i| vec![v(i), v((i + 1) % n)]).collect())
}

/// Inverse of the Stanley-Reisner construction on the given vertex set.
pub fn complex_from_ideal(ideal: &MonomialIdeal, vertices: &[Variable]) -> Result<SimplicialComplex> {
    if let Some(g) = ideal.generators().iter().find(|g| !g.is_squarefree()) {
        return Err(Error::NotSquarefree(g.to_string()));
    }
    let vmask = set_mask(vertices)?;
    let supports = ideal.generators().iter().map(support_mask).collect::<Result<Vec<_>>>()?;
    if let Some(s) = supports.iter().find(|&&s| s & !vmask != 0) {
        return Err(Error::InvalidComplex(format!(
            "generator {} uses a variable outside the vertex set",
            mask_monomial(*s)
        )));
    }
    let covers = minimal_covers(&supports);
    let facets: Vec<Vec<Variable>> = covers.iter().map(|c| mask_vars(vmask & !c)).collect();
    SimplicialComplex::new(vertices.to_vec(), facets)
}

/// Minimal primes of a squarefree monomial ideal: its minimal vertex covers.
pub fn ideal_minimal_primes(ideal: &MonomialIdeal) -> Result<Vec<MinimalPrime>> {
    if let Some(g) = ideal.generators().iter().find(|g| !g.is_squarefree()) {
        return Err(Error::NotSquarefree(g.to_string()));
    }
    let supports = ideal.generators().iter().map(support_mask).collect::<Result<Vec<_>>>()?;
    let mut primes: Vec<MinimalPrime> =
        minimal_covers(&supports).into_iter().map(|c| MinimalPrime { variables: mask_vars(c) }).collect();
    primes.sort();
    Ok(primes)
}

/// Minimal sets meeting every member of `sets` (minimal transversals).
fn minimal_covers(sets: &[Mask]) -> Vec<Mask> {
    let mut covers: Vec<Mask> = vec![0];
    for &s in sets {
        let mut next: Vec<Mask> = Vec::new();
        for &c in &covers {
            if c & s != 0 {
                next.push(c);
            } else {
                next.extend(mask_vars(s).into_iter().map(|v| c | (1u64 << v.0)));
            }
        }
        next.sort_by_key(|m| (m.count_ones(), *m));
        next.dedup();
        let mut minimal: Vec<Mask> = Vec::new();
        for m in next {
            if !minimal.iter().any(|k| k & m == *k) {
                minimal.push(m);
            }
        }
        covers = minimal;
    }
    covers
}

/// All `k`-subsets of `0..n` as bit masks, in increasing numeric order.
fn combinations(n: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit = if n == 64 { u64::MAX } else { 1u64 << n };
    let first = if k == 0 { 0 } else { (1u64 << k) - 1 };
    let mut next = Some(first).filter(|&f| k <= n && (k == 0 || f < limit));
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            // Gosper's hack
            let c = cur & cur.wrapping_neg();
            let r = cur.wrapping_add(c);
            let nxt = (((r ^ cur) >> 2) / c) | r;
            (r != 0 && nxt < limit).then_some(nxt)
        };
        Some(cur)
    })
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, facet) in self.facets.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            fmt_set(f, facet, "{", "}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn x(i: u32) -> Variable {
        Variable(i)
    }

    fn vs(ids: &[u32]) -> Vec<Variable> {
        ids.iter().map(|&i| x(i)).collect()
    }

    fn ideal(gens: &[&str]) -> MonomialIdeal {
        MonomialIdeal::new(gens.iter().map(|s| s.parse().unwrap()))
    }

    fn complex(verts: &[u32], facets: &[&[u32]]) -> SimplicialComplex {
        SimplicialComplex::new(vs(verts), facets.iter().map(|f| vs(f)).collect()).unwrap()
    }

    fn i6() -> MonomialIdeal {
        ideal(&["x1*x3", "x1*x4", "x1*x5", "x2*x4", "x2*x5", "x2*x6", "x3*x5", "x3*x6", "x4*x6"])
    }

    fn i7_complex() -> SimplicialComplex {
        complex(&[1, 2, 3, 4, 5, 6, 7], &[&[1, 2], &[2, 3], &[3, 4], &[4, 5, 6], &[6, 7], &[7, 1]])
    }

    #[test]
    fn c5_stanley_reisner() {
        let c5 = cycle_complex(5).unwrap();
        assert_eq!(c5.stanley_reisner_ideal(), ideal(&["x1*x3", "x1*x4", "x2*x4", "x2*x5", "x3*x5"]));
        assert_eq!(c5.height(), 3);
        assert_eq!(c5.dimension(), 1);
        assert!(c5.is_pure());
        assert!(c5.is_cm_one_dimensional().unwrap());
    }

    #[test]
    fn simplex_has_zero_ideal() {
        let s = SimplicialComplex::simplex(vs(&[1, 2, 3])).unwrap();
        assert!(s.stanley_reisner_ideal().is_empty());
        assert_eq!(s.height(), 0);
        assert_eq!(s.minimal_primes(), vec![MinimalPrime { variables: vec![] }]);
        assert!(s.is_pure());
        assert_eq!(complex_from_ideal(&MonomialIdeal::zero(), &vs(&[1, 2, 3])).unwrap(), s);
    }

    #[test]
    fn triangle_boundary() {
        // subsets of {x1,x2,x3}: all proper ones are faces, the full set is not
        let t = cycle_complex(3).unwrap();
        assert_eq!(t.stanley_reisner_ideal(), ideal(&["x1*x2*x3"]));
        assert_eq!(cycle_complex(2), Err(Error::CycleTooSmall(2)));
    }

    #[test]
    fn cone_over_c5() {
        let c5 = cycle_complex(5).unwrap();
        let cone = c5.cone(&vs(&[1, 2]), x(0)).unwrap();
        assert_eq!(cone, complex(&[0, 1, 2, 3, 4, 5], &[&[0, 1, 2], &[2, 3], &[3, 4], &[4, 5], &[1, 5]]));
        let expected = ideal(&["x1*x3", "x1*x4", "x2*x4", "x2*x5", "x3*x5", "x0*x3", "x0*x4", "x0*x5"]);
        assert_eq!(cone.stanley_reisner_ideal(), expected);
        let base = c5.stanley_reisner_ideal();
        let gained: Vec<_> =
            expected.generators().iter().filter(|g| !base.generators().contains(g)).map(ToString::to_string).collect();
        assert_eq!(gained, vec!["x0*x3", "x0*x4", "x0*x5"]);

        // minimal primes: P_G + (x0) for G != F, and P_F
        let mut primes = cone.minimal_primes();
        primes.sort();
        let f = vs(&[1, 2]);
        let mut expected: Vec<MinimalPrime> = c5
            .facets()
            .iter()
            .zip(c5.minimal_primes())
            .map(|(g, mut p)| {
                if *g != f {
                    p.variables.insert(0, x(0));
                }
                p
            })
            .collect();
        expected.sort();
        assert_eq!(primes, expected);
        assert_eq!(primes.len(), 5);
        assert!(primes.contains(&MinimalPrime { variables: vs(&[3, 4, 5]) }));
    }

    #[test]
    fn cone_errors() {
        let c5 = cycle_complex(5).unwrap();
        assert!(matches!(c5.cone(&vs(&[1, 3]), x(0)), Err(Error::NotAFacet(_))));
        assert_eq!(c5.cone(&vs(&[1, 2]), x(4)), Err(Error::ApexIsVertex(x(4))));
    }

    #[test]
    fn cone_over_relabeled_c6_gives_i7_complex() {
        let relabeled = complex(&[1, 2, 3, 4, 6, 7], &[&[1, 2], &[2, 3], &[3, 4], &[4, 6], &[6, 7], &[7, 1]]);
        assert_eq!(relabeled.cone(&vs(&[4, 6]), x(5)).unwrap(), i7_complex());
    }

    #[test]
    fn ideal_to_complex() {
        let c5 =
            complex_from_ideal(&ideal(&["x1*x3", "x1*x4", "x2*x4", "x2*x5", "x3*x5"]), &vs(&[1, 2, 3, 4, 5])).unwrap();
        assert_eq!(c5, cycle_complex(5).unwrap());
        let c6 = complex_from_ideal(&i6(), &vs(&[1, 2, 3, 4, 5, 6])).unwrap();
        assert_eq!(c6, cycle_complex(6).unwrap());
        assert!(c6.is_pure());
        assert_eq!(complex_from_ideal(&ideal(&["x1^2*x2"]), &vs(&[1, 2])), Err(Error::NotSquarefree("x1^2*x2".into())));
        assert!(complex_from_ideal(&ideal(&["x1"]), &vs(&[1, 2])).is_err());
    }

    #[test]
    fn i7_is_not_pure() {
        let c = i7_complex();
        assert!(!c.is_pure());
        assert!(c.is_cm_one_dimensional().is_err());
        assert!(complex(&[1], &[&[1]]).is_pure());
    }

    #[test]
    fn one_dimensional_cm() {
        assert!(!complex(&[1, 2, 3, 4], &[&[1, 2], &[3, 4]]).is_cm_one_dimensional().unwrap());
        assert!(complex(&[1, 2, 3, 4], &[&[1, 2], &[2, 3], &[3, 4]]).is_cm_one_dimensional().unwrap());
        assert!(SimplicialComplex::simplex(vs(&[1, 2, 3])).unwrap().is_cm_one_dimensional().is_err());
    }

    #[test]
    fn invalid_complexes() {
        assert!(SimplicialComplex::new(vs(&[1, 2]), vec![vs(&[1])]).is_err());
        assert!(SimplicialComplex::new(vs(&[1, 2]), vec![vs(&[1, 2]), vs(&[1])]).is_err());
        assert!(SimplicialComplex::new(vs(&[1, 2]), vec![vs(&[1, 2]), vs(&[1, 2])]).is_err());
        assert!(SimplicialComplex::new(vs(&[1]), vec![vs(&[1, 2])]).is_err());
        assert!(SimplicialComplex::new(vs(&[1]), vec![vec![]]).is_err());
    }

    #[test]
    fn json_shape() {
        let c5 = cycle_complex(5).unwrap();
        let s = serde_json::to_string(&c5).unwrap();
        assert_eq!(
            s,
            r#"{"vertices":["x1","x2","x3","x4","x5"],"facets":[["x1","x2"],["x1","x5"],["x2","x3"],["x3","x4"],["x4","x5"]]}"#
        );
        let back: SimplicialComplex = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c5);
        assert!(serde_json::from_str::<SimplicialComplex>(r#"{"vertices":["x1"],"facets":[]}"#).is_err());
    }

    #[test]
    fn combinations_enumerate_all() {
        assert_eq!(combinations(4, 2).count(), 6);
        assert_eq!(combinations(5, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(combinations(3, 3).collect::<Vec<_>>(), vec![0b111]);
        assert_eq!(combinations(2, 3).count(), 0);
    }

    fn random_complex(rng: &mut ChaCha8Rng) -> SimplicialComplex {
        let n = rng.gen_range(1..=8u32);
        let verts: Vec<Variable> = (1..=n).map(x).collect();
        let mut faces: Vec<Mask> = (0..rng.gen_range(1..6))
            .map(|_| {
                let mut m = 0u64;
                while m == 0 {
                    m = (1..=n).filter(|_| rng.gen_bool(0.45)).fold(0, |a, i| a | (1 << i));
                }
                m
            })
            .collect();
        // singletons so every vertex is covered
        faces.extend((1..=n).map(|i| 1u64 << i));
        faces.sort_by_key(|f| std::cmp::Reverse(f.count_ones()));
        let mut maximal: Vec<Mask> = Vec::new();
        for f in faces {
            if !maximal.iter().any(|m| m & f == f) {
                maximal.push(f);
            }
        }
        SimplicialComplex::new(verts, maximal.into_iter().map(mask_vars).collect()).unwrap()
    }

    /// Intersection of the primes checked on every squarefree monomial over
    /// the vertex set, which is enough since both sides are squarefree.
    fn in_all_primes(primes: &[MinimalPrime], m: Mask) -> bool {
        primes.iter().all(|p| p.variables.iter().any(|v| m & (1 << v.0) != 0))
    }

    #[test]
    fn random_round_trip_and_prime_intersection() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let c = random_complex(&mut rng);
            let i = c.stanley_reisner_ideal();
            assert!(i.is_squarefree());
            assert_eq!(complex_from_ideal(&i, c.vertices()).unwrap(), c);

            let primes = c.minimal_primes();
            assert_eq!(primes.len(), c.facets().len());
            assert_eq!(c.height() + c.dimension() + 1, c.vertices().len());
            let heights: Vec<usize> = primes.iter().map(MinimalPrime::height).collect();
            assert_eq!(c.is_pure(), heights.iter().all(|&h| h == heights[0]));
            assert_eq!(c.height(), *heights.iter().min().unwrap());

            if c.vertices().len() <= 7 {
                let all = c.vertex_mask();
                let mut sub = all;
                loop {
                    let m = mask_monomial(sub);
                    assert_eq!(i.contains_monomial(&m), in_all_primes(&primes, sub), "{c} at {m}");
                    if sub == 0 {
                        break;
                    }
                    sub = (sub - 1) & all;
                }
            }

            let mut from_ideal = ideal_minimal_primes(&i).unwrap();
            let mut direct = primes.clone();
            from_ideal.sort();
            direct.sort();
            assert_eq!(from_ideal, direct);
        }
    }
}
