use thiserror::Error;

use crate::relation::Flavor;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("incidence matrix is not {n}x{n}")]
    BadShape { n: usize },
    #[error("order is not reflexive at {0}")]
    NotReflexive(usize),
    #[error("order is not antisymmetric: {0} <= {1} and {1} <= {0}")]
    NotAntisymmetric(usize, usize),
    #[error("order is not transitive: {0} <= {1} <= {2} but not {0} <= {2}")]
    NotTransitive(usize, usize, usize),
    #[error("{{{0}, {1}}} has no least upper bound")]
    NotJoinSemilattice(usize, usize),
    #[error("not a median semilattice: {0}")]
    NotMedian(String),
    #[error("not graded: cover {0} << {1} breaks the rank function")]
    NotGraded(usize, usize),
    #[error("meet undefined: {0} and {1} have no common lower bound")]
    MeetUndefined(usize, usize),
    #[error("size limit exceeded: {what} = {got} > {limit}")]
    SizeLimit {
        what: &'static str,
        got: usize,
        limit: usize,
    },
    #[error("operation requires {expected}, got {got:?}")]
    WrongFlavor { expected: &'static str, got: Option<Flavor> },
    #[error("bad profile: {0}")]
    BadProfile(String),
    #[error("bad input: {0}")]
    BadInput(String),
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
}

impl Error {
    pub(crate) fn size(what: &'static str, got: usize, limit: usize) -> Self {
        Error::SizeLimit { what, got, limit }
    }
}
