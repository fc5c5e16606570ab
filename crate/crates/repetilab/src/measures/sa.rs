//! Suffix sorting by prefix doubling with counting sorts, O(n log n).

/// Stable counting sort of `items` by `key`, keys in `0..buckets`.
fn csort(items: &[u32], buckets: usize, key: impl Fn(u32) -> u32) -> Vec<u32> {
    let mut count = vec![0u32; buckets + 1];
    for &i in items {
        count[key(i) as usize + 1] += 1;
    }
    for b in 1..=buckets {
        count[b] += count[b - 1];
    }
    let mut out = vec![0u32; items.len()];
    for &i in items {
        let b = key(i) as usize;
        out[count[b] as usize] = i;
        count[b] += 1;
    }
    out
}

/// Positions ordered by symbol, with ranks densified: returns
/// `(order, rank)` where equal symbols share a rank.
fn initial_ranks<S: Ord>(w: &[S]) -> (Vec<u32>, Vec<u32>) {
    let n = w.len();
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.sort_by(|&a, &b| w[a as usize].cmp(&w[b as usize]));
    let mut rank = vec![0u32; n];
    for t in 1..n {
        rank[order[t] as usize] = rank[order[t - 1] as usize]
            + (w[order[t] as usize] != w[order[t - 1] as usize]) as u32;
    }
    (order, rank)
}

/// Suffix array: positions (0-based) of the suffixes in sorted order.
pub fn suffix_array<S: Ord>(w: &[S]) -> Vec<u32> {
    let n = w.len();
    if n <= 1 {
        return (0..n as u32).collect();
    }
    let (mut sa, mut rank) = initial_ranks(w);
    let mut k = 1usize;
    while (rank[sa[n - 1] as usize] as usize) < n - 1 {
        // order by the second half of each 2k-prefix: suffixes too
        // short to have one come first, the rest inherit sa's order
        let mut order = Vec::with_capacity(n);
        order.extend((n - k..n).map(|i| i as u32));
        order.extend(sa.iter().copied().filter(|&j| j as usize >= k).map(|j| j - k as u32));
        let buckets = rank[sa[n - 1] as usize] as usize + 1;
        sa = csort(&order, buckets, |i| rank[i as usize]);
        // densify ranks over the (first, second) key pairs
        let key = |i: u32| -> (u32, u32) {
            let i = i as usize;
            (rank[i], if i + k < n { rank[i + k] + 1 } else { 0 })
        };
        let mut next = vec![0u32; n];
        for t in 1..n {
            next[sa[t] as usize] =
                next[sa[t - 1] as usize] + (key(sa[t]) != key(sa[t - 1])) as u32;
        }
        rank = next;
        k *= 2;
    }
    sa
}

/// Longest-common-prefix array: `lcp[t]` is the lcp of the suffixes at
/// `sa[t-1]` and `sa[t]`, with `lcp[0] = 0` (Kasai's algorithm).
pub fn lcp_array<S: Eq>(w: &[S], sa: &[u32]) -> Vec<u32> {
    let n = w.len();
    let mut rank = vec![0u32; n];
    for (t, &i) in sa.iter().enumerate() {
        rank[i as usize] = t as u32;
    }
    let mut lcp = vec![0u32; n];
    let mut h = 0usize;
    for i in 0..n {
        let t = rank[i] as usize;
        if t == 0 {
            h = 0;
            continue;
        }
        let j = sa[t - 1] as usize;
        while i + h < n && j + h < n && w[i + h] == w[j + h] {
            h += 1;
        }
        lcp[t] = h as u32;
        h = h.saturating_sub(1);
    }
    lcp
}

/// Positions of the cyclic rotations in sorted order; equal rotations
/// keep an arbitrary relative order.
pub fn sorted_rotations<S: Ord>(w: &[S]) -> Vec<u32> {
    let n = w.len();
    if n <= 1 {
        return (0..n as u32).collect();
    }
    let (mut sa, mut rank) = initial_ranks(w);
    let mut k = 1usize;
    while k < n && (rank[sa[n - 1] as usize] as usize) < n - 1 {
        let buckets = rank[sa[n - 1] as usize] as usize + 1;
        let by_second = csort(&sa, buckets, |i| rank[(i as usize + k) % n]);
        sa = csort(&by_second, buckets, |i| rank[i as usize]);
        let key = |i: u32| -> (u32, u32) {
            let i = i as usize;
            (rank[i], rank[(i + k) % n])
        };
        let mut next = vec![0u32; n];
        for t in 1..n {
            next[sa[t] as usize] =
                next[sa[t - 1] as usize] + (key(sa[t]) != key(sa[t - 1])) as u32;
        }
        rank = next;
        k *= 2;
    }
    sa
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_sa(w: &[u8]) -> Vec<u32> {
        let mut sa: Vec<u32> = (0..w.len() as u32).collect();
        sa.sort_by_key(|&i| &w[i as usize..]);
        sa
    }

    fn naive_rotations(w: &[u8]) -> Vec<Vec<u8>> {
        let n = w.len();
        let mut rots: Vec<Vec<u8>> = (0..n)
            .map(|s| (0..n).map(|t| w[(s + t) % n]).collect())
            .collect();
        rots.sort();
        rots
    }

    #[test]
    fn matches_naive_on_classics() {
        for w in ["banana", "mississippi", "abracadabra", "aaaa", "abab", "a", "ab", "ba"] {
            assert_eq!(suffix_array(w.as_bytes()), naive_sa(w.as_bytes()), "{w}");
        }
    }

    #[test]
    fn matches_naive_on_all_short_binary_strings() {
        for len in 1..=10usize {
            for bits in 0..(1u32 << len) {
                let w: Vec<u8> = (0..len).map(|i| ((bits >> i) & 1) as u8).collect();
                assert_eq!(suffix_array(&w), naive_sa(&w));
            }
        }
    }

    #[test]
    fn lcp_matches_direct_comparison() {
        for w in ["banana", "aabaabaa", "abababab", "a"] {
            let w = w.as_bytes();
            let sa = suffix_array(w);
            let lcp = lcp_array(w, &sa);
            for t in 1..w.len() {
                let a = &w[sa[t - 1] as usize..];
                let b = &w[sa[t] as usize..];
                let direct = a.iter().zip(b).take_while(|(x, y)| x == y).count();
                assert_eq!(lcp[t] as usize, direct);
            }
            assert_eq!(lcp[0], 0);
        }
    }

    #[test]
    fn rotation_order_matches_naive_sort() {
        for len in 1..=8usize {
            for bits in 0..(1u32 << len) {
                let w: Vec<u8> = (0..len).map(|i| ((bits >> i) & 1) as u8).collect();
                let order = sorted_rotations(&w);
                let rots: Vec<Vec<u8>> = order
                    .iter()
                    .map(|&s| (0..len).map(|t| w[(s as usize + t) % len]).collect())
                    .collect();
                assert_eq!(rots, naive_rotations(&w));
            }
        }
    }
}
