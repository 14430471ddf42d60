//! Parity quasicomplexes over groups, the nonabelian bar resolution and
//! Schreier extension theory, with exhaustive checkers for the identities
//! relating them.
//!
//! Everything is finite or free: groups are Cayley tables ([`fingroup`]),
//! free groups are reduced words ([`freeword`]), and each identity is decided
//! by exact comparison of normal forms.

pub mod bar;
pub mod fingroup;
pub mod freeword;
pub mod pqc;
pub mod schreier;
pub mod verdict;

pub use verdict::Verdict;
