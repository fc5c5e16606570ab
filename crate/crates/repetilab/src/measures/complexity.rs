use num_rational::Ratio;

use super::sa::{lcp_array, suffix_array};

/// Distinct-substring counts of one string: `count(k)` is the number
/// of distinct length-k substrings, k = 1..=n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexityProfile {
    counts: Vec<u64>,
}

impl ComplexityProfile {
    pub fn from_counts(counts: Vec<u64>) -> Self {
        assert!(!counts.is_empty(), "a profile covers at least k = 1");
        ComplexityProfile { counts }
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn count(&self, k: usize) -> u64 {
        self.counts[k - 1]
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// max over k of count(k) / k, as an exact rational.
    pub fn delta(&self) -> Ratio<u64> {
        self.counts
            .iter()
            .zip(1u64..)
            .map(|(&p, k)| Ratio::new(p, k))
            .max()
            .expect("nonempty profile")
    }
}

/// Substring complexity via the suffix and lcp arrays: there are
/// n-k+1 length-k windows, and a window is a duplicate of an earlier
/// one exactly when some adjacent suffix pair shares a prefix of
/// length >= k, so count(k) = (n-k+1) - #{t : lcp[t] >= k}.
pub fn substring_complexity<S: Ord>(w: &[S]) -> ComplexityProfile {
    let n = w.len();
    assert!(n >= 1, "complexity of an empty string is undefined");
    let sa = suffix_array(w);
    let lcp = lcp_array(w, &sa);
    let mut hist = vec![0u64; n + 1];
    for &l in &lcp[1..] {
        hist[l as usize] += 1;
    }
    let mut counts = vec![0u64; n];
    let mut pairs_at_least = 0u64;
    for k in (1..=n).rev() {
        pairs_at_least += hist[k];
        counts[k - 1] = (n - k + 1) as u64 - pairs_at_least;
    }
    ComplexityProfile { counts }
}

/// The repetitiveness lower bound: max over k of the distinct
/// length-k substring count divided by k.
pub fn delta<S: Ord>(w: &[S]) -> Ratio<u64> {
    substring_complexity(w).delta()
}
