//! Reversible and reversible-complementary linear codes over GF(4).
//!
//! A linear code `C ⊆ F4^n` is *reversible* when it is closed under reversing
//! coordinates, and *reversible-complementary* when it additionally contains
//! the all-ones vector; under the DNA map A→0, T→1, C→α, G→α² these are the
//! codes closed under reversal and under Watson-Crick complementation.
//!
//! The crate builds every such code of a given isomorphism type as a socle
//! extension, counts them exactly, bounds their minimum distance, and checks
//! all of it against a brute-force search over the subspace lattice.

pub mod counter;
pub mod distance;
pub mod dna;
pub mod enumerator;
pub mod error;
pub mod gf4;
pub mod oracle;
pub mod qbinom;
pub mod reverse;
pub mod subspace;
pub mod text;
pub mod vector;

pub use error::{Error, Result};
pub use gf4::Gf4;
pub use qbinom::{gaussian_binomial, BigCount};
pub use reverse::{IsoType, ReverseSpace, ReversibleCode};
pub use subspace::Subspace;
pub use vector::GfVector;
