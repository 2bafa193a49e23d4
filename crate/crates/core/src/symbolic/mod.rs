//! Bi-infinite symbol sequences and their cylinder sets.

mod alphabet;
mod cylinder;
mod identities;
mod sequence;
pub mod universal;

pub use alphabet::{Alphabet, Word, Words};
pub use cylinder::CylinderSet;
pub use identities::{nesting_check, similarity_identity_check};
pub use sequence::{periodic_point, BiSequence, Tail, ToggleMask};
pub use universal::{locate_block, make_universal_sequence};
