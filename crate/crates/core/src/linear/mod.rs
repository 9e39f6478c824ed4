//! Exact matrices, semilinear elements and eigenspace decompositions.

pub mod eigen;
pub mod linalg;
mod matrix;
mod semilinear;

pub use eigen::{act, eigenspace_permutation_action, simultaneous_eigenspaces, EigenDecomposition, EigenspaceAction, Eigenspace};
pub use matrix::ExactMatrix;
pub use semilinear::SemilinearElement;
