use super::sa::suffix_array;

/// Where one phrase of a parse copies its content from. Positions are
/// 1-based text positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source<S> {
    /// One explicit symbol.
    Literal(S),
    /// Copy of the phrase-length substring starting at `from`, which is
    /// strictly before the phrase and may overlap it.
    Copy { from: u64 },
    /// Copy of the `copy_len` symbols ending at text position `end` (a
    /// previous phrase boundary), plus one explicit trailing symbol
    /// unless the copy exhausts the string.
    BoundaryCopy { end: u64, copy_len: u64, trailing: Option<S> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Phrase<S> {
    pub start: u64,
    pub len: u64,
    pub source: Source<S>,
}

/// A factorization of a string into consecutive nonempty phrases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parse<S> {
    phrases: Vec<Phrase<S>>,
}

impl<S: Copy + Eq> Parse<S> {
    pub fn phrases(&self) -> &[Phrase<S>] {
        &self.phrases
    }

    /// Number of phrases: the measure the parse defines.
    pub fn len(&self) -> u64 {
        self.phrases.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.phrases.is_empty()
    }

    /// Replays every phrase from its source. A decodable parse of w
    /// returns w exactly; this is the correctness check for the
    /// parsers and for search-found factorizations.
    pub fn reconstruct(&self) -> Vec<S> {
        let mut out: Vec<S> = Vec::new();
        for ph in &self.phrases {
            debug_assert_eq!(ph.start as usize, out.len() + 1);
            match ph.source {
                Source::Literal(c) => {
                    debug_assert_eq!(ph.len, 1);
                    out.push(c);
                }
                Source::Copy { from } => {
                    // symbol-by-symbol so a self-overlapping copy sees
                    // the symbols it has already produced
                    let s = (from - 1) as usize;
                    for t in 0..ph.len as usize {
                        let c = out[s + t];
                        out.push(c);
                    }
                }
                Source::BoundaryCopy { end, copy_len, trailing } => {
                    let s = (end - copy_len) as usize;
                    for t in 0..copy_len as usize {
                        let c = out[s + t];
                        out.push(c);
                    }
                    if let Some(c) = trailing {
                        out.push(c);
                    }
                }
            }
        }
        out
    }
}

/// Greedy left-to-right parse where each phrase is the longest prefix
/// of the remainder occurring at some strictly earlier position, with
/// overlap into the phrase itself allowed; a symbol never seen before
/// becomes a literal phrase.
///
/// The longest earlier match for the suffix at i is found among the
/// two suffixes nearest in suffix-array order that start before i
/// (every other earlier suffix shares a shorter prefix), located by a
/// previous/next-smaller-value scan over the array.
pub fn lz76<S: Ord + Copy>(w: &[S]) -> Parse<S> {
    let n = w.len();
    assert!(n >= 1, "parse of an empty string is undefined");
    let sa = suffix_array(w);
    let mut rank = vec![0u32; n];
    for (t, &i) in sa.iter().enumerate() {
        rank[i as usize] = t as u32;
    }
    const NONE: u32 = u32::MAX;
    let mut psv = vec![NONE; n];
    let mut nsv = vec![NONE; n];
    let mut stack: Vec<u32> = Vec::new();
    for t in 0..n {
        while let Some(&top) = stack.last() {
            if sa[top as usize] > sa[t] {
                nsv[top as usize] = sa[t];
                stack.pop();
            } else {
                break;
            }
        }
        psv[t] = stack.last().map_or(NONE, |&top| sa[top as usize]);
        stack.push(t as u32);
    }

    let match_len = |i: usize, j: u32| -> usize {
        if j == NONE {
            return 0;
        }
        let j = j as usize;
        w[i..].iter().zip(&w[j..]).take_while(|(a, b)| a == b).count()
    };

    let mut phrases = Vec::new();
    let mut i = 0usize;
    while i < n {
        let t = rank[i] as usize;
        let (cand_a, cand_b) = (psv[t], nsv[t]);
        let (la, lb) = (match_len(i, cand_a), match_len(i, cand_b));
        let (len, from) = if la >= lb { (la, cand_a) } else { (lb, cand_b) };
        if len == 0 {
            phrases.push(Phrase { start: i as u64 + 1, len: 1, source: Source::Literal(w[i]) });
            i += 1;
        } else {
            phrases.push(Phrase {
                start: i as u64 + 1,
                len: len as u64,
                source: Source::Copy { from: from as u64 + 1 },
            });
            i += len;
        }
    }
    Parse { phrases }
}

/// Longest prefix of `pattern` occurring as a substring of a streamed
/// text: Knuth-Morris-Pratt failure links, reporting the best state
/// reached and where, or the state at chosen checkpoints.
struct PrefixMatcher<'p, S> {
    pattern: &'p [S],
    fail: Vec<u32>,
    state: usize,
}

impl<'p, S: Eq> PrefixMatcher<'p, S> {
    fn new(pattern: &'p [S]) -> Self {
        let m = pattern.len();
        let mut fail = vec![0u32; m.max(1)];
        let mut k = 0usize;
        for q in 1..m {
            while k > 0 && pattern[k] != pattern[q] {
                k = fail[k - 1] as usize;
            }
            if pattern[k] == pattern[q] {
                k += 1;
            }
            fail[q] = k as u32;
        }
        PrefixMatcher { pattern, fail, state: 0 }
    }

    /// Feeds one symbol; returns the new state, the length of the
    /// longest pattern prefix ending here (capped at the full length).
    fn feed(&mut self, c: &S) -> usize {
        let m = self.pattern.len();
        if m == 0 {
            return 0;
        }
        if self.state == m {
            self.state = self.fail[m - 1] as usize;
        }
        while self.state > 0 && self.pattern[self.state] != *c {
            self.state = self.fail[self.state - 1] as usize;
        }
        if self.pattern[self.state] == *c {
            self.state += 1;
        }
        self.state
    }
}

/// Greedy parse where each phrase is the longest prefix of the
/// remainder with a copy lying entirely inside the already-parsed
/// prefix (the source ends before the phrase starts).
pub fn lz_no<S: Ord + Copy>(w: &[S]) -> Parse<S> {
    let n = w.len();
    assert!(n >= 1, "parse of an empty string is undefined");
    let mut phrases = Vec::new();
    let mut i = 0usize;
    while i < n {
        // longest prefix of w[i..] that is a substring of w[..i]
        let mut matcher = PrefixMatcher::new(&w[i..]);
        let mut best = 0usize;
        let mut best_end = 0usize;
        for (e, c) in w[..i].iter().enumerate() {
            let got = matcher.feed(c);
            if got > best {
                best = got;
                best_end = e + 1;
            }
        }
        if best == 0 {
            phrases.push(Phrase { start: i as u64 + 1, len: 1, source: Source::Literal(w[i]) });
            i += 1;
        } else {
            let from = (best_end - best) as u64 + 1;
            phrases.push(Phrase {
                start: i as u64 + 1,
                len: best as u64,
                source: Source::Copy { from },
            });
            i += best;
        }
    }
    Parse { phrases }
}

/// Greedy parse where each phrase is one explicit symbol appended to
/// the longest prefix of the remainder having a copy that ends exactly
/// at an earlier phrase boundary; the final phrase may omit the
/// explicit symbol when the copy reaches the end of the string.
pub fn lz_end<S: Ord + Copy>(w: &[S]) -> Parse<S> {
    let n = w.len();
    assert!(n >= 1, "parse of an empty string is undefined");
    let mut phrases: Vec<Phrase<S>> = Vec::new();
    let mut boundaries: Vec<usize> = Vec::new(); // prefix lengths of closed phrases
    let mut i = 0usize;
    while i < n {
        // for each earlier boundary b, the longest prefix of w[i..]
        // with a copy ending at b is the matcher state after w[..b]
        let mut matcher = PrefixMatcher::new(&w[i..]);
        let mut best = 0usize;
        let mut best_boundary = 0usize;
        let mut next = boundaries.iter().copied().peekable();
        for (e, c) in w[..i].iter().enumerate() {
            let got = matcher.feed(c);
            while next.peek() == Some(&(e + 1)) {
                next.next();
                if got > best {
                    best = got;
                    best_boundary = e + 1;
                }
            }
        }
        if best == 0 {
            phrases.push(Phrase { start: i as u64 + 1, len: 1, source: Source::Literal(w[i]) });
            i += 1;
        } else {
            let trailing = if i + best < n { Some(w[i + best]) } else { None };
            let len = best + usize::from(trailing.is_some());
            phrases.push(Phrase {
                start: i as u64 + 1,
                len: len as u64,
                source: Source::BoundaryCopy {
                    end: best_boundary as u64,
                    copy_len: best as u64,
                    trailing,
                },
            });
            i += len;
        }
        boundaries.push(i);
    }
    Parse { phrases }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lens<S: Copy + Eq>(p: &Parse<S>) -> Vec<u64> {
        p.phrases().iter().map(|ph| ph.len).collect()
    }

    fn all_binary(len: usize) -> impl Iterator<Item = Vec<u8>> {
        (0..(1u32 << len)).map(move |bits| (0..len).map(|i| ((bits >> i) & 1) as u8).collect())
    }

    #[test]
    fn lz76_of_tiny_strings() {
        assert_eq!(lens(&lz76(b"ab")), [1, 1]);
        assert_eq!(lens(&lz76(b"aaaa")), [1, 3]);
        assert_eq!(lens(&lz76(b"abab")), [1, 1, 2]);
        assert_eq!(lz76(b"aaaa").len(), 2);
        assert_eq!(lz76(b"abab").len(), 3);
    }

    #[test]
    fn lz76_overlap_copies_from_inside_the_phrase() {
        let p = lz76(b"aaaa");
        assert_eq!(p.phrases()[1].source, Source::Copy { from: 1 });
        assert_eq!(p.reconstruct(), b"aaaa");
    }

    #[test]
    fn lz_no_of_tiny_strings() {
        assert_eq!(lens(&lz_no(b"aaaa")), [1, 1, 2]);
        assert_eq!(lens(&lz_no(b"ab")), [1, 1]);
        assert_eq!(lens(&lz_no(b"aaaaaaaa")), [1, 1, 2, 4]);
        assert_eq!(lz_no(b"aaaa").len(), 3);
    }

    #[test]
    fn lz_end_of_tiny_strings() {
        assert_eq!(lz_end(b"ab").len(), 2);
        assert_eq!(lens(&lz_end(b"aaaa")), [1, 2, 1]);
        assert_eq!(lz_end(b"abab").len(), 3);
        // last phrase of aaaa copies [a] ending at boundary 1, no trailing
        let p = lz_end(b"aaaa");
        assert_eq!(
            p.phrases()[2].source,
            Source::BoundaryCopy { end: 1, copy_len: 1, trailing: None }
        );
    }

    #[test]
    fn parses_reconstruct_their_input() {
        for w in [
            &b"abracadabra"[..],
            b"mississippi",
            b"aaaaaaaaaaaaaaaa",
            b"abcabcabcabcx",
            b"a",
        ] {
            assert_eq!(lz76(w).reconstruct(), w);
            assert_eq!(lz_no(w).reconstruct(), w);
            assert_eq!(lz_end(w).reconstruct(), w);
        }
        for w in all_binary(11) {
            assert_eq!(lz76(&w).reconstruct(), w);
            assert_eq!(lz_no(&w).reconstruct(), w);
            assert_eq!(lz_end(&w).reconstruct(), w);
        }
    }

    #[test]
    fn lz76_never_beats_lz_no() {
        for w in all_binary(12) {
            assert!(lz76(&w).len() <= lz_no(&w).len(), "{w:?}");
        }
    }

    #[test]
    fn lz76_matches_naive_greedy() {
        // reference: at each position try every earlier start directly
        fn naive(w: &[u8]) -> Vec<u64> {
            let n = w.len();
            let mut lens = Vec::new();
            let mut i = 0;
            while i < n {
                let mut best = 0;
                for j in 0..i {
                    let l = w[i..].iter().zip(&w[j..]).take_while(|(a, b)| a == b).count();
                    best = best.max(l);
                }
                let step = best.max(1);
                lens.push(step as u64);
                i += step;
            }
            lens
        }
        for w in all_binary(12).step_by(5) {
            assert_eq!(lens(&lz76(&w)), naive(&w), "{w:?}");
        }
        assert_eq!(lens(&lz76(b"abaababaabaab")), naive(b"abaababaabaab"));
    }
}
