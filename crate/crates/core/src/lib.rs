//! Exact computational group theory for locating bounded-index nilpotent
//! subgroups inside finite groups, in particular finite subgroups of the
//! semilinear groups `GL(n, K) ⋊ Aut(K)`.

pub mod error;
pub mod field;
pub mod format;
pub mod group;
pub mod jordan;
pub mod linear;
pub mod nilpotent;
pub mod witness;

pub use error::{Error, Result};
