//! Exact tools for linear equations `a₁x₁ + ⋯ + aₙxₙ = 1` whose unknowns
//! lie in a finitely generated subgroup of (ℚ*)ⁿ, and for covering their
//! solution sets by proper linear subspaces.

pub mod arith;
pub mod lattice;
pub mod cover;
pub mod equation;
pub mod degeneracy;
pub mod lower_bound;
pub mod random;
