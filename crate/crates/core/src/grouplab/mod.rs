//! Partial sums in abelian groups: nice sets, orderings, exhaustive sweeps
//! and the reduction `ℤ^m → ℤ → ℤ_p` with ordering lifts.

pub mod group;
pub mod ordering;
pub mod reduction;
pub mod set;
pub mod sweep;
pub mod syntax;

use thiserror::Error;

use crate::nullstellensatz::NullError;

pub use group::{AbelianGroup, Cyclic, Free, GroupSpec, Integers, Variant};
pub use ordering::{find_ordering, find_ordering_within, partial_sums, verify_for_set, verify_ordering, Ordering, SearchBudget};
pub use reduction::{cmpp_reduce, embed_to_z, lift_ordering, order_in_free_group, reduce_mod_prime, Embedding, ReductionTrace};
pub use set::{delta_set, upsilon, NiceSet};
pub use sweep::{nullstellensatz_consistency, sweep, ConsistencyReport, SweepBudget, SweepReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("not a nice set: {0}")]
    NotNice(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("kernel meets Υ(A) at {0}")]
    KernelMeetsUpsilon(String),
    #[error("integer overflow: {0}")]
    Overflow(String),
    #[error("no valid ordering of {0}")]
    NoOrdering(String),
    #[error(transparent)]
    Null(#[from] NullError),
}
