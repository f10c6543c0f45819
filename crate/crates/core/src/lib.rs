//! Normal coverings of symmetric groups: cycle-type calculus, component
//! membership, special metacyclic coverage, bound functions and exact
//! minimal-cover search with checkable certificates.

pub mod arith;
pub mod basic_set;
pub mod bounds;
pub mod certify;
pub mod component;
pub mod error;
pub mod metacyclic;
pub mod partition;
pub mod perm;
pub mod report;
pub mod rules;
pub mod search;

pub use component::{block_assignment, BlockAssignment, Component, ComponentPool, SporadicGroup};
pub use error::{Error, Result};
pub use partition::{
    cut_isolating, enumerate_partitions, for_each_partition, is_even_type, partition_count,
    subset_sums, type_order, type_power, Cut, Partition, SumSet,
};
