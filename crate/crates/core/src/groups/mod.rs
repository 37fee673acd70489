//! Permutation-group engine over `A^n`: stabilizer chains for exact order,
//! membership, and factorization; target-class orders; and the
//! parity-sequence homomorphism that obstructs finite generation of the
//! conservative gates.

mod chain;
mod conserved;
mod parity;
mod target;

pub use chain::StabilizerChain;
pub use conserved::check_conserved_quantity;
pub use parity::{
    find_unreachable_conservative, parity_sequence, parity_sequence_on, parity_span,
    ParitySequence,
};
pub use target::{generates, target_order, Classifier, TargetClass};
