//! Exact scalar fields: cyclotomic fields `Q(ζ_m)`, rational function fields
//! `Q(ζ_m)(t)` and their automorphisms.

mod aut;
mod cyclotomic;
mod parse;
mod ratfunc;
mod scalar;

pub use aut::{FieldAut, Mobius};
pub use cyclotomic::{cyclotomic_polynomial, totient, Cyclotomic};
pub use parse::{parse_cyclotomic, parse_scalar};
pub use ratfunc::{Poly, RatFunc};
pub use scalar::Scalar;
