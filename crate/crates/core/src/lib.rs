pub mod bitset;
pub mod canon;
pub mod cayley;
pub mod ci;
pub mod digraph;
pub mod error;
pub mod formats;
pub mod group;
pub mod hat;
pub mod lemma;
pub mod limits;
pub mod perm;

pub use error::{Error, Result};
pub use group::{ConnectionSet, FiniteAbelianGroup, GroupAutomorphism, GroupElement};
pub use limits::Limits;
