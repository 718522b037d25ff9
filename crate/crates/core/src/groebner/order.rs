use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{Monomial, Variable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    #[default]
    Degrevlex,
    Lex,
    Deglex,
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderKind::Degrevlex => "degrevlex",
            OrderKind::Lex => "lex",
            OrderKind::Deglex => "deglex",
        })
    }
}

impl FromStr for OrderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "degrevlex" | "grevlex" => Ok(OrderKind::Degrevlex),
            "lex" => Ok(OrderKind::Lex),
            "deglex" => Ok(OrderKind::Deglex),
            _ => Err(Error::Parse { pos: 0, msg: format!("unknown term order '{s}'") }),
        }
    }
}

/// A monomial order together with a variable priority.
///
/// Without an explicit priority a larger index means a larger variable
/// (`x0 < x1 < ...`). An explicit priority lists variables from lowest to
/// highest; unlisted variables rank below all listed ones, by index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct TermOrder {
    pub kind: OrderKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub priority: Option<Vec<Variable>>,
}

impl TermOrder {
    pub fn degrevlex() -> Self {
        TermOrder { kind: OrderKind::Degrevlex, priority: None }
    }

    pub fn lex() -> Self {
        TermOrder { kind: OrderKind::Lex, priority: None }
    }

    pub fn deglex() -> Self {
        TermOrder { kind: OrderKind::Deglex, priority: None }
    }

    pub fn with_priority(mut self, ascending: Vec<Variable>) -> Self {
        self.priority = Some(ascending);
        self
    }

    /// The same order with `v` placed above every other variable.
    pub fn with_top(&self, v: Variable) -> Self {
        match &self.priority {
            None => self.clone(),
            Some(p) => {
                let mut p: Vec<Variable> = p.iter().copied().filter(|&w| w != v).collect();
                p.push(v);
                TermOrder { kind: self.kind, priority: Some(p) }
            }
        }
    }

    /// Positions for `vars` (sorted ascending, deduplicated): the returned
    /// vector lists the variables from lowest to highest rank.
    pub(crate) fn arrange(&self, vars: &[Variable]) -> Vec<Variable> {
        match &self.priority {
            None => vars.to_vec(),
            Some(p) => {
                let mut out: Vec<Variable> = vars.iter().copied().filter(|v| !p.contains(v)).collect();
                out.extend(p.iter().copied().filter(|v| vars.contains(v)));
                out
            }
        }
    }

    /// Compares two monomials. Intended for tests and one-off use; the
    /// engine compares on pre-arranged exponent vectors instead.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let mut vars: Vec<Variable> = a.support().chain(b.support()).collect();
        if let Some(p) = &self.priority {
            vars.extend(p.iter().copied());
        }
        vars.sort();
        vars.dedup();
        let ranked = self.arrange(&vars);
        let ea: Vec<u32> = ranked.iter().map(|&v| a.exponent(v)).collect();
        let eb: Vec<u32> = ranked.iter().map(|&v| b.exponent(v)).collect();
        compare(self.kind, &ea, &eb, a.degree(), b.degree())
    }
}

/// Compares exponent vectors whose position `i` ranks above position `i-1`.
pub(crate) fn compare(kind: OrderKind, a: &[u32], b: &[u32], da: u64, db: u64) -> Ordering {
    let lex = || {
        for i in (0..a.len()).rev() {
            match a[i].cmp(&b[i]) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    };
    match kind {
        OrderKind::Lex => lex(),
        OrderKind::Deglex => da.cmp(&db).then_with(lex),
        OrderKind::Degrevlex => da.cmp(&db).then_with(|| {
            for i in 0..a.len() {
                match b[i].cmp(&a[i]) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        }),
    }
}
