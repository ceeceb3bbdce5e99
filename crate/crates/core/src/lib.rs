//! Prime-reciprocal (d-) sequences and the generators built from them.
//!
//! - [`numtheory`]: modular exponentiation, factoring, multiplicative order.
//! - [`dseq`]: digits of 1/p in any base; binary bits via `(2^i mod p) mod 2`.
//! - [`rational`]: periodic patterns as reduced fractions `a/N` and back.
//! - [`combine`]: XOR and splicing of several binary d-sequences.
//! - [`rng`]: the recursive power-exponent generator over two moduli.
//! - [`analysis`]: balance, autocorrelation and window-based position recovery.
//! - [`cli`]: the `recip` command-line tool.

pub mod analysis;
pub mod cli;
pub mod combine;
pub mod dseq;
pub mod error;
pub mod numtheory;
pub mod rational;
pub mod rng;
pub mod sequence;

pub use dseq::DSeqSpec;
pub use error::{Error, Result};
pub use rational::RationalSeq;
pub use rng::{RngConfig, ValidatedConfig};
pub use sequence::DigitSequence;
