//! Exponential-time exact searches for tiny strings, and brute-force
//! reference implementations the fast measures are tested against.

pub mod bms;
pub mod brute;
pub mod lsearch;

use thiserror::Error;

pub use bms::{smallest_bms, BmsPhrase, BmsSource, BmsWitness, DEFAULT_BMS_LIMIT};
pub use brute::{brute_bwt, brute_substrings};
pub use lsearch::{bounded_smallest_lsystem, LBudget};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExactError {
    #[error("string of length {len} is over the exact-search limit of {limit}")]
    TooLong { len: usize, limit: usize },
    #[error("search exceeded the cap of {cap} nodes")]
    NodeCapExceeded { cap: u64 },
}
