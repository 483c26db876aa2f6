//! Cylindrical algebraic decomposition truth-table invariant for lists of
//! quantifier-free formulae, using equational constraints to reduce the
//! projection.

pub mod check;
pub mod dump;
pub mod engine;
pub mod formula;
pub mod poly;
pub mod problem;
pub mod projection;
pub mod realalg;
