//! Combinatorial-Nullstellensatz coefficients of the ordering polynomials.
//!
//! `g_k = ∏_{a<b} (x_b - x_a)(x_a + ... + x_b)` vanishes exactly when an
//! ordering of `(x_1, ..., x_k)` has two equal partial sums, `F_k` is
//! `g_k / (x_1 + ... + x_k)` and `f_{k+1}` adds a leading zero sum. The
//! families a, c, e and d are coefficients of near-top-degree monomials of
//! these polynomials.

pub mod certificate;
pub mod extract;
pub mod families;
pub mod pipeline;
pub mod relations;
pub mod target;

use num_bigint::BigInt;
use thiserror::Error;

use crate::polycore::PolyError;

pub use certificate::{certify, Certificate, Conjecture};
pub use extract::{CoefficientRecord, CoefficientStore, ExtractConfig, Extractor, Method, RunMeta};
pub use families::{build_big_g, build_f, build_f_capped, build_g};
pub use pipeline::{target_coefficient, PipelineResult};
pub use relations::{
    a_table, d_relation_check, row_sum_check, sign_relation_check, symmetry_report, ATable, RelationReport, SymmetryReport,
};
pub use target::{cap_profile_for, Family, TargetSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NullError {
    #[error("invalid target: {0}")]
    InvalidTarget(String),
    #[error("{target} is beyond the naive expansion bound k <= {bound}")]
    NaiveTooLarge { target: TargetSpec, bound: usize },
    #[error("no relation derives {0}")]
    NoRelation(TargetSpec),
    #[error("conflicting values for {target}: {first} vs {second}")]
    Inconsistent { target: TargetSpec, first: BigInt, second: BigInt },
    #[error("no nonzero coefficient")]
    NoNonzeroCoefficient,
    #[error("gcd {0} is too large to factor")]
    GcdTooLarge(BigInt),
    #[error("coefficient store: {0}")]
    Store(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}
