//! Reversible logic over arbitrary finite alphabets.
//!
//! A gate is a bijection of `A^n` for a finite alphabet `A` of size `q`,
//! stored as an explicit image table over radix-encoded words. On top of
//! that representation this crate provides:
//!
//! - the gate algebra: wire permutations, rewiring, parallel application,
//!   generalized composition, extensions, and controlled permutations
//!   ([`algebra`]);
//! - weight vectors, conservativity and parity classes ([`word`], [`perm`],
//!   [`weight`]);
//! - a stabilizer-chain engine for exact group order, membership, and
//!   factorization into generators ([`groups`]);
//! - the rewrite graphs whose connected components drive the
//!   control-universality arguments ([`hypergraphs`]);
//! - explicit circuit constructions such as the eight-gate controlled
//!   3-word-cycle and the controlled-rotation decompositions
//!   ([`constructions`]);
//! - breadth-first and meet-in-the-middle search with exhaustive
//!   lower-bound certificates ([`search`]);
//! - a circuit data model with a line-oriented text format ([`circuit`]).

pub mod algebra;
pub mod circuit;
pub mod constructions;
mod error;
pub mod groups;
pub mod hypergraphs;
pub mod partition;
pub mod perm;
pub mod search;
#[cfg(test)]
pub(crate) mod testutil;
pub mod weight;
pub mod word;

pub use error::Error;
pub use partition::ComponentPartition;
pub use perm::{GatePerm, Parity};
pub use weight::WeightVector;
pub use word::{Alphabet, Word};

/// Shorthand for results with the crate error type.
pub type Result<T> = std::result::Result<T, Error>;

/// Soft cap on table degree `q^n`: tables above this are refused with
/// [`Error::DegreeTooLarge`] instead of attempting the allocation.
pub const MAX_DEGREE: usize = 1 << 24;
