use super::sa::{sorted_rotations, suffix_array};

/// How the Burrows-Wheeler transform handles the end of the string:
/// sorting the n cyclic rotations as they are, or appending a unique
/// terminator smaller than every symbol first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum BwtMode {
    #[default]
    Rotations,
    Sentinel,
}

impl std::fmt::Display for BwtMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BwtMode::Rotations => write!(f, "rotations"),
            BwtMode::Sentinel => write!(f, "sentinel"),
        }
    }
}

/// Last symbols of the sorted cyclic rotations.
pub fn bwt_rotations<S: Ord + Copy>(w: &[S]) -> Vec<S> {
    assert!(!w.is_empty(), "transform of an empty string is undefined");
    let n = w.len();
    sorted_rotations(w)
        .into_iter()
        .map(|s| w[(s as usize + n - 1) % n])
        .collect()
}

/// Transform of w with a terminator appended; `None` is the
/// terminator, ordered below every symbol by `Option`'s ordering.
pub fn bwt_sentinel<S: Ord + Copy>(w: &[S]) -> Vec<Option<S>> {
    assert!(!w.is_empty(), "transform of an empty string is undefined");
    let t: Vec<Option<S>> = w.iter().map(|&c| Some(c)).chain([None]).collect();
    let m = t.len();
    suffix_array(&t)
        .into_iter()
        .map(|s| t[(s as usize + m - 1) % m])
        .collect()
}

/// Inverts `bwt_sentinel` output back to the original string.
pub fn inverse_bwt_sentinel<S: Ord + Copy>(bwt: &[Option<S>]) -> Vec<S> {
    let m = bwt.len();
    assert!(m >= 1);
    // lf[i]: the row whose rotation is row i shifted one to the right,
    // found by matching the i-th occurrence of bwt[i] in the first
    // column (the stably sorted bwt)
    let mut order: Vec<u32> = (0..m as u32).collect();
    order.sort_by(|&a, &b| bwt[a as usize].cmp(&bwt[b as usize]));
    let mut lf = vec![0u32; m];
    for (pos, &i) in order.iter().enumerate() {
        lf[i as usize] = pos as u32;
    }
    // row 0 starts with the terminator, so it is the rotation that
    // puts the original string's last symbol in the last column;
    // walking lf reads the string right to left
    let mut out = Vec::with_capacity(m - 1);
    let mut row = 0u32;
    for _ in 0..m - 1 {
        let c = bwt[row as usize].expect("terminator seen once");
        out.push(c);
        row = lf[row as usize];
    }
    debug_assert!(bwt[row as usize].is_none());
    out.reverse();
    out
}

/// Number of maximal runs of equal symbols.
pub fn rle_runs<S: PartialEq>(x: &[S]) -> u64 {
    assert!(!x.is_empty(), "runs of an empty sequence are undefined");
    1 + x.windows(2).filter(|p| p[0] != p[1]).count() as u64
}

/// Runs in the transform: r(w) = |rle(BWT(w))|.
pub fn r_measure<S: Ord + Copy>(w: &[S], mode: BwtMode) -> u64 {
    match mode {
        BwtMode::Rotations => rle_runs(&bwt_rotations(w)),
        BwtMode::Sentinel => rle_runs(&bwt_sentinel(w)),
    }
}
