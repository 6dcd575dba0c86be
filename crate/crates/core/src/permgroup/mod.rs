//! Exact permutation groups of small degree stored as full element sets.

mod group;
mod lattice;
mod perm;
mod transitive;

pub use group::{
    core, coset_action, count_fixed_cosets, fixed_cosets, generate, intermediate_subgroups, left_cosets, Coset,
    CosetAction, Intermediate, PermutationGroup,
};
pub use lattice::{all_subgroups, subgroup_lattice, SubgroupLattice, SubgroupList, MAX_GROUP_ORDER};
pub use perm::{CycleType, Parity, Permutation};
pub use transitive::{
    cycle_type_ambiguities, identify_transitive_label, reference_group, s6_groups_with_222, s6_transitive_classes,
    transitive_labels, TransitiveLabel,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("not a subgroup of the ambient group")]
    NotASubgroup,
    #[error("{0} is not an element of the group")]
    NotAnElement(String),
    #[error("group of order {order} exceeds the supported bound {max}")]
    GroupTooLarge { order: usize, max: usize },
    #[error("group is not transitive")]
    NotTransitive,
    #[error("unsupported degree {0}; only 4 and 6 are catalogued")]
    UnsupportedDegree(usize),
    #[error("unknown transitive label {0:?}")]
    UnknownLabel(String),
}

pub fn cycle_type(p: &Permutation) -> CycleType {
    p.cycle_type()
}
