//! Counterexample tuple families for strong n-conjecture variants: exact
//! membership verification against the tuple universes A(n), B(n), R(n) and
//! U(F,n), exact qualities, certified quality lower bounds, tuple family
//! generators, symbolic identity checks and a small exhaustive search.

pub mod arith;
pub mod constructions;
pub mod polyident;
pub mod quality;
pub mod records;
pub mod search;

pub use arith::{FactorBudget, FactoredInteger};
pub use quality::{ForbiddenSet, Tuple, Universe};
