use std::collections::HashSet;

use crate::measures::ComplexityProfile;

/// Substring counts by direct set enumeration; the oracle the suffix
/// array implementation is checked against.
pub fn brute_substrings<S: Ord + Copy + std::hash::Hash>(w: &[S]) -> ComplexityProfile {
    assert!(!w.is_empty());
    let counts = (1..=w.len())
        .map(|k| w.windows(k).collect::<HashSet<_>>().len() as u64)
        .collect();
    ComplexityProfile::from_counts(counts)
}

/// Transform by materializing and sorting every rotation.
pub fn brute_bwt<S: Ord + Copy>(w: &[S]) -> Vec<S> {
    assert!(!w.is_empty());
    let n = w.len();
    let mut rots: Vec<Vec<S>> = (0..n)
        .map(|s| (0..n).map(|t| w[(s + t) % n]).collect())
        .collect();
    rots.sort();
    rots.into_iter().map(|r| r[n - 1]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{bwt_rotations, substring_complexity};

    #[test]
    fn profiles_of_tiny_strings() {
        assert_eq!(brute_substrings(b"abab").counts(), &[2, 2, 2, 1]);
        assert_eq!(brute_substrings(b"aaaa").counts(), &[1, 1, 1, 1]);
        assert_eq!(brute_substrings(b"a").counts(), &[1]);
    }

    #[test]
    fn transforms_of_tiny_strings() {
        assert_eq!(brute_bwt(b"abab"), b"bbaa");
        assert_eq!(brute_bwt(b"aaa"), b"aaa");
        assert_eq!(brute_bwt(b"ab"), b"ba");
    }

    #[test]
    fn agrees_with_the_fast_implementations() {
        for w in [&b"abracadabra"[..], b"mississippi", b"tobeornottobe"] {
            assert_eq!(brute_substrings(w), substring_complexity(w));
            assert_eq!(brute_bwt(w), bwt_rotations(w));
        }
    }
}
