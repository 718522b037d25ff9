//! Arithmetical-rank witnesses for Stanley-Reisner ideals.
//!
//! The crate builds explicit polynomial families that generate a squarefree
//! monomial ideal up to radical and checks every such claim independently
//! with an exact Gröbner engine:
//!
//! * [`monomial`] - variables, monomials and monomial ideals,
//! * [`simplicial`] - simplicial complexes and the Stanley-Reisner correspondence,
//! * [`polyring`] - exact sparse polynomials, the squaring substitution and
//!   symbolic determinants,
//! * [`witness`] - Schmitt-Vogel sums, the cone lift, the `I_n` family and the
//!   `C`-matrix example,
//! * [`groebner`] - Buchberger's algorithm, radical membership and ara
//!   certificates,
//! * [`cli`] - the `ara` command line front end.

pub mod cli;
pub mod error;
pub mod groebner;
pub mod monomial;
pub mod polyring;
pub mod simplicial;
pub mod witness;

pub use error::{Error, Result};
pub use monomial::{Monomial, MonomialIdeal, Variable};
pub use polyring::{FieldSpec, PolyMatrix, Polynomial};
pub use simplicial::{MinimalPrime, SimplicialComplex};
