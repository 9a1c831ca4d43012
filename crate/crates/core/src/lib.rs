//! Sylow subgroups of the finite classical groups at desk scale.
//!
//! The crate builds small classical groups (GL, SL, Sp, U, O and their
//! derived/projective relatives) over explicit finite fields, extracts true
//! Sylow subgroups by brute force, constructs the structural models claimed
//! for those Sylow subgroups, and decides isomorphism exactly.
//!
//! Everything here is pure computation; the crate is `no_std` and only needs
//! `alloc`. IO, timing and the command line live in the companion `sylow`
//! crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod catalog;
pub mod classical;
mod error;
pub mod field;
pub mod group;
pub mod iso;
pub mod matrix;
pub mod sylow;
pub mod verify;

pub use error::{Error, Result};

/// Size limits shared by every construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of elements any single enumerated group may have.
    pub elements: usize,
    /// Largest group order handed to the isomorphism search.
    pub iso_order: usize,
    /// Largest generating set the isomorphism search will backtrack over.
    pub iso_generators: usize,
    /// Maximum number of partial maps examined by one isomorphism search.
    pub iso_nodes: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            elements: 1 << 21,
            iso_order: 100_000,
            iso_generators: 6,
            iso_nodes: 2_000_000,
        }
    }
}
