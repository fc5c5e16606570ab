//! The computable repetitiveness measures: substring complexity and
//! its maximum ratio delta, Burrows-Wheeler run counts, and the three
//! greedy Lempel-Ziv parsing variants (self-overlapping, non-
//! overlapping, and end-aligned).

pub mod bwt;
pub mod complexity;
pub mod lz;
pub mod sa;

pub use bwt::{bwt_rotations, bwt_sentinel, inverse_bwt_sentinel, r_measure, rle_runs, BwtMode};
pub use complexity::{delta, substring_complexity, ComplexityProfile};
pub use lz::{lz76, lz_end, lz_no, Parse, Phrase, Source};
pub use sa::{lcp_array, sorted_rotations, suffix_array};
