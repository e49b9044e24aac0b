use thiserror::Error;

/// Errors raised by the library.
///
/// `Infeasible` is kept distinct from every other variant: it means a
/// configured cap refused the computation, not that the answer is negative.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid modulus {0}: every cyclic factor must have order at least 2")]
    BadModulus(u64),
    #[error("group order overflows the supported range")]
    OrderOverflow,
    #[error("element {coords:?} does not belong to a group with moduli {moduli:?}")]
    NotAnElement { coords: Vec<u64>, moduli: Vec<u32> },
    #[error("group mismatch: expected moduli {expected:?}, got {actual:?}")]
    GroupMismatch { expected: Vec<u32>, actual: Vec<u32> },
    #[error("vertex {vertex} out of range for a graph on {order} vertices")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("connection set is not closed under inverses")]
    AsymmetricSet,
    #[error(
        "connection set is symmetric (S = S^-1); the hat construction needs a genuinely directed \
         Cayley digraph, otherwise Cay(G;S) is already an undirected graph"
    )]
    SymmetricSet,
    #[error("parameter n = {0} is too small: n must be at least 3")]
    SmallN(u64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("degree mismatch: permutations on {0} and {1} points")]
    DegreeMismatch(usize, usize),
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("map is not an automorphism: {0}")]
    NotAnAutomorphism(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("infeasible: {what} ({actual} exceeds cap {cap})")]
    Infeasible { what: String, cap: u128, actual: u128 },
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn infeasible(what: impl Into<String>, cap: u128, actual: u128) -> Self {
        Error::Infeasible { what: what.into(), cap, actual }
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, Error::Infeasible { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
