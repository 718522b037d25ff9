use serde::{Deserialize, Serialize};

use super::{Provenance, Trace, WitnessSet};
use crate::error::{Error, Result};
use crate::groebner::{normal_form, TermOrder};
use crate::monomial::{Monomial, MonomialIdeal};
use crate::polyring::Polynomial;

/// Levels `P_0, ..., P_r` with an exponent for every element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SVPartition {
    pub levels: Vec<Vec<Polynomial>>,
    /// `exponents[l][k]` is the exponent of `levels[l][k]`.
    pub exponents: Vec<Vec<u32>>,
}

/// Levels and exponents used by a Schmitt-Vogel witness.
pub type SvTrace = SVPartition;

impl SVPartition {
    /// All exponents equal to one.
    pub fn new(levels: Vec<Vec<Polynomial>>) -> Self {
        let exponents = levels.iter().map(|l| vec![1; l.len()]).collect();
        SVPartition { levels, exponents }
    }

    pub fn from_monomials(levels: Vec<Vec<Monomial>>) -> Self {
        SVPartition::new(levels.into_iter().map(|l| l.into_iter().map(Polynomial::from).collect()).collect())
    }

    pub fn with_exponents(mut self, exponents: Vec<Vec<u32>>) -> Self {
        self.exponents = exponents;
        self
    }

    pub fn elements(&self) -> impl Iterator<Item = &Polynomial> + '_ {
        self.levels.iter().flatten()
    }

    pub fn is_valid(&self) -> bool {
        validate_sv(self).is_ok()
    }
}

fn invalid(msg: String) -> Error {
    Error::InvalidPartition(msg)
}

/// `p' | f` in the polynomial ring.
fn principal_contains(generator: &Polynomial, f: &Polynomial) -> bool {
    match generator.as_term() {
        Some((m, _)) => MonomialIdeal::new([m.clone()]).contains(f),
        None => normal_form(f, std::slice::from_ref(generator), &TermOrder::degrevlex()).is_zero(),
    }
}

/// Checks the three level conditions and the exponent shape; the error names
/// the first violation.
pub fn validate_sv(partition: &SVPartition) -> Result<()> {
    let levels = &partition.levels;
    if levels.is_empty() {
        return Err(invalid("condition (i): no levels".into()));
    }
    if partition.exponents.len() != levels.len()
        || levels.iter().zip(&partition.exponents).any(|(l, e)| l.len() != e.len())
    {
        return Err(invalid("exponent table does not match the levels".into()));
    }
    if let Some(e) = partition.exponents.iter().flatten().find(|&&e| e == 0) {
        return Err(invalid(format!("exponent {e} must be at least 1")));
    }
    for (l, level) in levels.iter().enumerate() {
        if level.is_empty() {
            return Err(invalid(format!("condition (i): level {l} is empty")));
        }
        if let Some(p) = level.iter().find(|p| p.is_zero()) {
            return Err(invalid(format!("condition (i): level {l} contains {p}")));
        }
    }
    if levels[0].len() != 1 {
        return Err(invalid(format!("condition (ii): level 0 has {} elements, expected exactly one", levels[0].len())));
    }
    for (l, level) in levels.iter().enumerate().skip(1) {
        for a in 0..level.len() {
            for b in a + 1..level.len() {
                let (p, q) = (&level[a], &level[b]);
                if p == q {
                    continue;
                }
                let product = p * q;
                let covered = levels[..l].iter().flatten().any(|g| principal_contains(g, &product));
                if !covered {
                    return Err(invalid(format!(
                        "condition (iii): no lower-level element divides ({p})*({q}) at level {l}"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// `q_l = sum over P_l of p^e(p)` for every level, without validation.
pub fn sv_sums(partition: &SVPartition) -> Vec<Polynomial> {
    partition
        .levels
        .iter()
        .zip(&partition.exponents)
        .map(|(level, exps)| level.iter().zip(exps).fold(Polynomial::zero(), |acc, (p, &e)| &acc + &p.pow(e)))
        .collect()
}

/// The Schmitt-Vogel witness of a partition of monomials. The target is the
/// radical of the monomial ideal they generate.
pub fn schmitt_vogel(partition: &SVPartition) -> Result<WitnessSet> {
    validate_sv(partition)?;
    let mut support = Vec::new();
    for p in partition.elements() {
        match p.as_term() {
            Some((m, _)) => support.push(m.squarefree_part()),
            None => return Err(invalid(format!("{p} is not a monomial"))),
        }
    }
    let target = MonomialIdeal::new(support);
    Ok(WitnessSet::new(target, sv_sums(partition), Provenance::SchmittVogel)
        .with_trace(Trace::SchmittVogel(partition.clone())))
}

/// Searches for a valid partition of the minimal generators of `ideal` into
/// exactly `levels` nonempty levels. At most `budget` search nodes are
/// visited; `None` means no partition was found within the budget.
pub fn find_sv_partition(ideal: &MonomialIdeal, levels: usize, budget: usize) -> Option<SVPartition> {
    let gens = ideal.generators();
    if levels == 0 || gens.len() < levels {
        return None;
    }
    let mut search = Search { gens, budget, placed: Vec::new() };
    let remaining: Vec<usize> = (0..gens.len()).collect();
    if !search.run(&remaining, levels) {
        return None;
    }
    Some(SVPartition::from_monomials(
        search.placed.iter().map(|l| l.iter().map(|&i| gens[i].clone()).collect()).collect(),
    ))
}

struct Search<'a> {
    gens: &'a [Monomial],
    budget: usize,
    placed: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn covered(&self, a: usize, b: usize) -> bool {
        let product = self.gens[a].mul(&self.gens[b]);
        self.placed.iter().flatten().any(|&k| self.gens[k].divides(&product))
    }

    fn run(&mut self, remaining: &[usize], levels_left: usize) -> bool {
        if self.budget == 0 {
            return false;
        }
        self.budget -= 1;
        if levels_left == 0 {
            return remaining.is_empty();
        }
        if self.placed.is_empty() {
            for (k, &first) in remaining.iter().enumerate() {
                self.placed.push(vec![first]);
                let rest: Vec<usize> = remaining.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &i)| i).collect();
                if self.run(&rest, levels_left - 1) {
                    return true;
                }
                self.placed.pop();
            }
            return false;
        }
        if levels_left == 1 {
            let ok = remaining.iter().enumerate().all(|(k, &a)| remaining[k + 1..].iter().all(|&b| self.covered(a, b)));
            if ok && !remaining.is_empty() {
                self.placed.push(remaining.to_vec());
                return true;
            }
            return false;
        }
        let mut chosen = Vec::new();
        self.cliques(remaining, 0, &mut chosen, levels_left)
    }

    /// Enumerates pairwise covered subsets of `remaining`, larger first, and
    /// recurses on each as the next level.
    fn cliques(&mut self, remaining: &[usize], from: usize, chosen: &mut Vec<usize>, levels_left: usize) -> bool {
        if self.budget == 0 {
            return false;
        }
        if from == remaining.len() {
            if chosen.is_empty() || chosen.len() + levels_left - 1 > remaining.len() {
                return false;
            }
            let rest: Vec<usize> = remaining.iter().copied().filter(|i| !chosen.contains(i)).collect();
            self.placed.push(chosen.clone());
            if self.run(&rest, levels_left - 1) {
                return true;
            }
            self.placed.pop();
            return false;
        }
        let candidate = remaining[from];
        if chosen.iter().all(|&c| self.covered(c, candidate)) {
            chosen.push(candidate);
            if self.cliques(remaining, from + 1, chosen, levels_left) {
                return true;
            }
            chosen.pop();
        }
        self.cliques(remaining, from + 1, chosen, levels_left)
    }
}
