//! Command line support for the `sylow-core` library: the group expression
//! language, evaluation, and batched verification with JSON reports.

pub mod eval;
pub mod expr;
pub mod suite;
