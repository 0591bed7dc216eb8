//! Permutations, permutation groups, and double cosets.

mod chain;
mod coset;
mod group;
mod perm;

pub use coset::{decompose_double_cosets, double_coset, ConnectionSet};
pub use group::{PermutationGroup, DEFAULT_ENUMERATION_CAP};
pub use perm::Permutation;
