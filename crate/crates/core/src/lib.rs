//! Degree-capped polynomial arithmetic, combinatorial-Nullstellensatz
//! coefficient extraction, and partial-sum orderings in abelian groups.

pub mod arith;
pub mod clock;
pub mod grouplab;
pub mod nullstellensatz;
pub mod polycore;
