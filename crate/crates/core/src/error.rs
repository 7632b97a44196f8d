use thiserror::Error;

use crate::perm::Permutation;
use crate::rcgraph::{Graph, Place};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),

    #[error("{0} is not a {1}-shuffle")]
    NotAShuffle(Permutation, usize),

    #[error("partition has {parts} parts, more than r = {r}")]
    TooManyParts { parts: usize, r: usize },

    #[error("crossing {0} lies outside the staircase of size {1}")]
    OutsideStaircase(Place, usize),

    #[error("{0} is not contained in S_{1}")]
    NotInSymmetricGroup(Permutation, usize),

    #[error("place {0} already holds a crossing")]
    Occupied(Place),

    #[error("strands {0} and {1} already cross")]
    StrandsAlreadyCross(usize, usize),

    #[error("removing the crossing of strands {0} and {1} does not lower the length by one")]
    NotRemovable(usize, usize),

    #[error("graph {0} is not an rc-graph")]
    NotReduced(Graph),

    #[error("not an r-Bruhat package: {0}")]
    NotAPackage(String),

    #[error("E(w, T) is not row and column strict")]
    NotStrict,

    #[error("shape is not a hook")]
    NotAHook,

    #[error("unsupported case: {0}")]
    Unsupported(String),

    #[error("internal invariant failure: {0}")]
    Invariant(String),
}

/// Coarse classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Input,
    Precondition,
    Internal,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Malformed(_) | Error::NotAPermutation(_) => ErrorClass::Input,
            Error::Invariant(_) => ErrorClass::Internal,
            _ => ErrorClass::Precondition,
        }
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
