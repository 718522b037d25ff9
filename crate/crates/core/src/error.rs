use thiserror::Error;

use crate::monomial::Variable;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid simplicial complex: {0}")]
    InvalidComplex(String),

    #[error("generator {0} is not squarefree")]
    NotSquarefree(String),

    #[error("variable {0} is out of range for combinatorial operations (index must be < 64)")]
    VariableOutOfRange(Variable),

    #[error("{0} is not a facet of the complex")]
    NotAFacet(String),

    #[error("apex {0} is already a vertex of the complex")]
    ApexIsVertex(Variable),

    #[error("complex must be pure of dimension 1, found {0}")]
    NotOneDimensional(String),

    #[error("matrix must be square, found {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix entry ({row}, {col}) out of range")]
    MatrixIndex { row: usize, col: usize },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("coefficient {coeff} is not defined modulo {p}")]
    BadReduction { coeff: String, p: u64 },

    #[error("family parameter n = {0} is too small (n >= 6 required)")]
    FamilyTooSmall(usize),

    #[error("cycle length {0} is too small (n >= 3 required)")]
    CycleTooSmall(usize),

    #[error("invalid Schmitt-Vogel partition: {0}")]
    InvalidPartition(String),

    #[error("SCI hypothesis violated: base has {found} elements but height is {height}")]
    SciHypothesis { found: usize, height: usize },

    #[error("complex is not unmixed")]
    NotUnmixed,

    #[error("construction is vacuous for the zero ideal")]
    ZeroIdeal,

    #[error("term {term} of base element {element} lies outside the facet prime")]
    Undecomposable { element: String, term: String },

    #[error("{what} is not contained in the target ideal: term {term}")]
    NotInIdeal { what: String, term: String },

    #[error("base witness does not generate the ideal up to radical: {0}")]
    BaseNotVerified(String),

    #[error("postcondition failed: {0}")]
    Postcondition(String),

    #[error("witness target must be a squarefree monomial ideal")]
    TargetNotSquarefree,

    #[error("{0}")]
    Io(String),

    #[error("{0}")]
    Json(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
