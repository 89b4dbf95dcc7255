//! Skew-line configurations: spindle permutations, linking matrices up to
//! switching, and the invariants, searches and enumerations built on them.

pub mod canon;
pub mod detect;
mod dsu;
pub mod enumerate;
pub mod error;
pub mod euler;
pub mod isotopy;
pub mod linking;
pub mod perm;
pub mod surface;

pub use canon::{canon, equivalent, spindle_equivalent, CanonKey, CanonicalForm};
pub use error::{Error, Result};
pub use linking::{CharPoly, Chirality, LinkMatrix, Triples};
pub use perm::{CyclicBlock, Move, Perm, SignedPerm};
