//! Finite groups by full enumeration.

mod bits;
mod element;
mod finite;
mod homomorphism;
mod ops;
mod search;

pub(crate) use bits::Bits;
pub use element::{Ambient, CosetElement, GroupElement, HeisenbergElement, Permutation, TupleElement, Twist};
pub use finite::{FiniteGroup, DEFAULT_MAX_ORDER};
pub use homomorphism::Homomorphism;
pub use ops::{center, centralizer, commutator_subgroup, intersection, join, quotient};
pub(crate) use ops::{centralizer_of_indices, commutator_bits};
pub(crate) use search::{for_each_automorphism, minimal_generating_indices, subgroup_walk};
pub use search::{
    automorphism_group, automorphism_group_with, is_characteristic, min_generator_count, minimal_generating_set,
    subgroups_of_index, subgroups_of_index_by_action, subgroups_of_index_direct, CosetActionCensus, SearchLimits,
};
