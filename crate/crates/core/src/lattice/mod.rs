//! Lattice realisation on an `L × L` torus: parent theory, hopping synthesis,
//! condensed stabilizer sets and their logical content.

pub mod code;
pub mod geometry;
pub mod hopping;
pub mod logical;

use thiserror::Error;

use crate::arith::ArithError;
use crate::condense::CondenseError;

#[derive(Debug, Error, PartialEq)]
pub enum LatticeError {
    #[error("no hopping pattern found: {0}")]
    NoPatternFound(String),
    #[error("local operator {0} commutes with every stabilizer but is not one")]
    NonMaximal(String),
    #[error("lattice size {0} is below the minimum of 2")]
    InvalidSize(usize),
    #[error(transparent)]
    Condense(#[from] CondenseError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}
