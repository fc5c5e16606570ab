//! Evaluation of compiled systems: full expansion, sliced expansion
//! without materializing intermediate levels, and fixed-point prefixes.

pub mod length;
pub mod lsys;
pub mod nu;

pub use lsys::{expand_full, extract, fixed_point_prefix, generate, DEFAULT_EXPAND_GUARD};
pub use nu::{nu_generate, resolve_extraction, NuEvaluator};

use thiserror::Error;

fn about(len: &u64, saturated: &bool) -> String {
    if *saturated {
        format!("at least {len}")
    } else {
        format!("{len}")
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("expansion has more than {guard} symbols")]
    ExpansionTooLarge { guard: u64 },
    #[error(
        "prefix of length {requested} requested but the expansion has {} symbols",
        about(.available, .saturated)
    )]
    PrefixBeyondExpansion { requested: u64, available: u64, saturated: bool },
    #[error(
        "slice [{from}:{to}] of '{sym}' at level {level} out of range: expansion has {} symbols",
        about(.available, .saturated)
    )]
    SliceBeyondExpansion { sym: char, level: u64, from: u64, to: u64, available: u64, saturated: bool },
    #[error("invalid slice [{from}:{to}]: positions are 1-based with from <= to")]
    BadSlice { from: u64, to: u64 },
    #[error("axiom does not rewrite to an extension of itself; no fixed point to take a prefix of")]
    NotProlongable,
    #[error("expansion growth stalled below the requested prefix length {requested}")]
    GrowthStalled { requested: u64 },
    #[error("length table would need {needed} entries, above the cap of {cap}")]
    TableTooLarge { needed: u64, cap: u64 },
}
