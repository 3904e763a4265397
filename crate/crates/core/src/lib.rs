//! Verifiable multi-stage secret sharing with any-order recovery.
//!
//! A dealer hands each participant one binary share and publishes, per
//! secret, an inhomogeneous linear recursion whose first term is the secret
//! and whose later terms are masked by Ajtai's function applied to the
//! shares. Any `t_i` participants recover secret `i` independently of the
//! others, either by interpolating the recursion's general term or by
//! running the recursion backwards from consecutive indices.
//!
//! Modules:
//! - [`field`]: prime-field arithmetic, linear solver, Lagrange at zero.
//! - [`ilr`]: the generic recursion engine.
//! - [`ajtai`]: Ajtai's function, share sampling, commitments.
//! - [`scheme`]: the four schemes end to end.
//! - [`bulletin`]: versioned JSON file formats.

pub mod ajtai;
pub mod bulletin;
pub mod error;
pub mod field;
pub mod ilr;
pub mod scheme;

pub use ajtai::{Commitment, Share};
pub use error::{Error, Result};
pub use field::{FieldMatrix, FieldPrime, FieldVec, Residue, Solution, MERSENNE_61};
pub use ilr::{IlrSequence, IlrSpec};
pub use scheme::{Bulletin, IndexedTerms, SchemeParams, SecretSet, Setup, Variant};

/// The seedable generator used throughout the crate.
pub type DealerRng = rand_chacha::ChaCha20Rng;
