//! repetilab: a workbench for string repetitiveness measures and
//! Lindenmayer-style compressed string representations.
//!
//! The crate has three layers:
//!
//! * [`model`] and [`engine`] define deterministic context-free
//!   Lindenmayer systems with codings (and their extension with
//!   extraction tokens) as lossless representations of a single string,
//!   together with evaluators that produce prefixes and slices of the
//!   represented string without materializing whole derivation levels.
//! * [`measures`] computes repetitiveness measures of plain strings:
//!   the substring complexity profile and its maximization `delta`,
//!   Burrows-Wheeler runs, run-length encoding, and three greedy
//!   Lempel-Ziv parse variants.
//! * [`exact`] holds brute-force oracles for small inputs: the exact
//!   smallest bidirectional macro scheme and a bounded enumeration of
//!   smallest Lindenmayer representations.
//!
//! [`families`] builds the parametric string and system families used
//! by the experiment harness ([`experiment`]) and the self-check suite
//! ([`verify`]).

pub mod engine;
pub mod exact;
pub mod experiment;
pub mod families;
pub mod measures;
pub mod model;
pub mod report;
pub mod verify;

pub use model::alphabet::{Alphabet, SymbolId};
pub use model::lsystem::{LSystem, Violation};
pub use model::nusystem::{NuSystem, NuToken};
