//! Linear complexity of binary sequences with period `2^n`.
//!
//! This crate is `no_std` (it needs `alloc`) and holds everything that is a pure
//! function of its inputs:
//!
//! * [`sequence`]: one period of a `2^n`-periodic binary sequence, packed into words.
//! * [`lc`]: the Games-Chan algorithm, an independent root-multiplicity oracle and the
//!   closed forms for weight-2 and weight-4 sequences.
//! * [`kerror`]: exact k-error linear complexity by exhaustive error-pattern search.
//! * [`counting`]: closed-form counting functions for the k-error linear complexity
//!   distribution, in exact big-integer arithmetic.
//! * [`census`]: per-shard tallies used to check those counting functions by enumeration.
//!
//! Threading, file formats and the command line live in the `lcforge` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod census;
pub mod counting;
mod error;
pub mod kerror;
pub mod lc;
pub mod sequence;

pub use census::{CensusMode, CensusQuery, SequenceClass};
pub use counting::{BigCount, LDecomposition, LKind, Subcase};
pub use error::Error;
pub use kerror::{ErrorPattern, KErrorResult};
pub use lc::{games_chan_lc, lc_by_minimal_polynomial, lc_pair, lc_quad};
pub use sequence::{PeriodicSequence, SupportSet};

/// Largest exponent accepted by single-sequence operations (period `2^20`).
pub const MAX_EXPONENT: u32 = 20;

/// Largest exponent accepted by census-grade operations (period `2^5`).
pub const MAX_CENSUS_EXPONENT: u32 = 5;

pub type Result<T, E = Error> = core::result::Result<T, E>;
