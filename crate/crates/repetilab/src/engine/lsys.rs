use crate::model::alphabet::SymbolId;
use crate::model::lsystem::LSystem;

use super::length::LengthTable;
use super::EvalError;

/// Default ceiling on the number of symbols `expand_full` will build.
pub const DEFAULT_EXPAND_GUARD: u64 = 10_000_000;

/// Materializes the coded expansion at the system's level.
///
/// The length of every intermediate level is checked against `guard`
/// before it is built, so the call either returns the whole expansion
/// or fails without allocating a partial one.
pub fn expand_full(sys: &LSystem, guard: u64) -> Result<Vec<SymbolId>, EvalError> {
    let too_big = EvalError::ExpansionTooLarge { guard };
    if sys.axiom().len() as u64 > guard {
        return Err(too_big);
    }
    let mut cur = sys.axiom().to_vec();
    for _ in 0..sys.level() {
        let next_len: u64 = cur
            .iter()
            .fold(0u64, |acc, &a| acc.saturating_add(sys.rule(a).len() as u64));
        if next_len > guard {
            return Err(too_big);
        }
        let mut next = Vec::with_capacity(next_len as usize);
        for &a in &cur {
            next.extend_from_slice(sys.rule(a));
        }
        cur = next;
    }
    for s in &mut cur {
        *s = sys.code(*s);
    }
    Ok(cur)
}

/// Walks the derivation tree of `start` at `top_level`, emitting the
/// coded leaves in positions `skip+1 ..= skip+take` without touching
/// any other subtree. The table must have levels up to `top_level`
/// ensured and a cap exceeding `skip + take`, so that a saturated
/// subtree length can never be mistaken for one that fits the skip.
fn descend(
    sys: &LSystem,
    table: &LengthTable,
    start: &[SymbolId],
    top_level: u64,
    skip: u64,
    take: u64,
    out: &mut Vec<SymbolId>,
) {
    debug_assert!(skip.saturating_add(take) < table.cap());
    let mut stack: Vec<(SymbolId, u64)> = start.iter().rev().map(|&a| (a, top_level)).collect();
    let mut skip = skip;
    let mut left = take;
    while let Some((a, t)) = stack.pop() {
        if left == 0 {
            break;
        }
        let len = table.len(a, t);
        if skip >= len {
            skip -= len;
            continue;
        }
        if t == 0 {
            out.push(sys.code(a));
            left -= 1;
        } else {
            for &b in sys.rule(a).iter().rev() {
                stack.push((b, t - 1));
            }
        }
    }
}

/// The string the system denotes: the length-n prefix of the coded
/// expansion at the system's level.
pub fn generate(sys: &LSystem) -> Result<Vec<SymbolId>, EvalError> {
    let n = sys.length();
    let mut table = LengthTable::for_lsystem(sys, n + 1);
    table.ensure_level(sys.level())?;
    let total = table.seq_len(sys.axiom().iter().copied(), sys.level());
    if total < n {
        return Err(EvalError::PrefixBeyondExpansion {
            requested: n,
            available: total,
            saturated: false,
        });
    }
    let mut out = Vec::with_capacity(n as usize);
    descend(sys, &table, sys.axiom(), sys.level(), 0, n, &mut out);
    Ok(out)
}

/// The coded slice `[from:to]` (1-based, inclusive) of `sym` rewritten
/// `level` times, independent of the system's own level and length.
pub fn extract(
    sys: &LSystem,
    sym: SymbolId,
    level: u64,
    from: u64,
    to: u64,
) -> Result<Vec<SymbolId>, EvalError> {
    if from == 0 || from > to {
        return Err(EvalError::BadSlice { from, to });
    }
    let mut table = LengthTable::for_lsystem(sys, to + 1);
    table.ensure_level(level)?;
    let len = table.len(sym, level);
    if len < to {
        return Err(EvalError::SliceBeyondExpansion {
            sym: sys.alphabet().char_of(sym),
            level,
            from,
            to,
            available: len,
            saturated: len == table.cap(),
        });
    }
    let take = to - from + 1;
    let mut out = Vec::with_capacity(take as usize);
    descend(sys, &table, &[sym], level, from - 1, take, &mut out);
    Ok(out)
}

/// The length-m prefix of the fixed point the axiom converges to.
///
/// Requires the axiom to be a single symbol `a` with a rule `a -> a x`,
/// `x` nonempty; then every level's expansion extends the previous one
/// and the prefix is well defined. The level is raised until the
/// expansion covers `m`; if `m` levels do not suffice the growth has
/// stalled (some level added no symbols under the prefix) and no later
/// level can help.
pub fn fixed_point_prefix(sys: &LSystem, m: u64) -> Result<Vec<SymbolId>, EvalError> {
    assert!(m >= 1, "prefix length must be positive");
    if sys.classify().prolongable.is_none() {
        return Err(EvalError::NotProlongable);
    }
    let a = sys.axiom()[0];
    let mut table = LengthTable::for_lsystem(sys, m + 1);
    let mut level = 0;
    loop {
        table.ensure_level(level)?;
        if table.len(a, level) >= m {
            break;
        }
        if level == m {
            return Err(EvalError::GrowthStalled { requested: m });
        }
        level += 1;
    }
    let mut out = Vec::with_capacity(m as usize);
    descend(sys, &table, &[a], level, 0, m, &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::lsystem::LSystemDoc;

    fn compile(
        alphabet: &[char],
        rules: &[(char, &str)],
        coding: Option<&[(char, char)]>,
        axiom: &str,
        level: u64,
        length: u64,
    ) -> LSystem {
        LSystemDoc {
            alphabet: alphabet.to_vec(),
            rules: rules.iter().map(|&(c, r)| (c, r.to_string())).collect(),
            coding: coding.map(|m| m.to_vec()),
            axiom: axiom.to_string(),
            level,
            length,
        }
        .compile()
        .unwrap()
    }

    fn ladder(level: u64, length: u64) -> LSystem {
        compile(
            &['a', 'b', 'c'],
            &[('a', "a"), ('b', "ab"), ('c', "cb")],
            None,
            "c",
            level,
            length,
        )
    }

    fn render(sys: &LSystem, s: &[SymbolId]) -> String {
        sys.alphabet().render(s)
    }

    #[test]
    fn expand_full_small_levels() {
        let sys = ladder(1, 2);
        let w = expand_full(&sys, DEFAULT_EXPAND_GUARD).unwrap();
        assert_eq!(render(&sys, &w), "cb");
        let sys = ladder(3, 7);
        let w = expand_full(&sys, DEFAULT_EXPAND_GUARD).unwrap();
        assert_eq!(render(&sys, &w), "cbabaab");
    }

    #[test]
    fn expand_full_applies_coding() {
        let sys = compile(
            &['0', '1'],
            &[('0', "00"), ('1', "11")],
            Some(&[('0', '0'), ('1', '0')]),
            "01",
            2,
            8,
        );
        let w = expand_full(&sys, DEFAULT_EXPAND_GUARD).unwrap();
        assert_eq!(render(&sys, &w), "00000000");
    }

    #[test]
    fn expand_full_guard_rejects_before_building() {
        let sys = compile(&['0'], &[('0', "00")], None, "0", 40, 1 << 40);
        assert_eq!(
            expand_full(&sys, 1 << 20),
            Err(EvalError::ExpansionTooLarge { guard: 1 << 20 })
        );
    }

    #[test]
    fn generate_takes_the_declared_prefix() {
        let sys = ladder(3, 6);
        assert_eq!(render(&sys, &generate(&sys).unwrap()), "cbabaa");
        let sys = ladder(1, 1);
        assert_eq!(render(&sys, &generate(&sys).unwrap()), "c");
        let zeros = compile(&['0', '1'], &[('0', "0"), ('1', "01")], None, "1", 4, 5);
        assert_eq!(render(&zeros, &generate(&zeros).unwrap()), "00001");
    }

    #[test]
    fn generate_rejects_length_past_expansion() {
        let sys = ladder(3, 8);
        assert_eq!(
            generate(&sys),
            Err(EvalError::PrefixBeyondExpansion {
                requested: 8,
                available: 7,
                saturated: false
            })
        );
    }

    #[test]
    fn generate_matches_expand_full_prefix() {
        for (level, length) in [(1u64, 2u64), (2, 4), (3, 7), (4, 11), (5, 16)] {
            let sys = ladder(level, length);
            let full = expand_full(&sys, DEFAULT_EXPAND_GUARD).unwrap();
            for n in 1..=length {
                if level > n * n {
                    continue;
                }
                let sys_n = ladder(level, n);
                assert_eq!(generate(&sys_n).unwrap(), full[..n as usize]);
            }
        }
    }

    #[test]
    fn extract_takes_inner_slices() {
        let sys = ladder(3, 7);
        let c = sys.alphabet().id_of('c').unwrap();
        // phi^3(c) = cbabaab
        assert_eq!(render(&sys, &extract(&sys, c, 3, 2, 4).unwrap()), "bab");
        assert_eq!(render(&sys, &extract(&sys, c, 3, 7, 7).unwrap()), "b");
        assert_eq!(render(&sys, &extract(&sys, c, 0, 1, 1).unwrap()), "c");
        // level above the system's own level is fine
        assert_eq!(render(&sys, &extract(&sys, c, 4, 1, 11).unwrap()), "cbabaabaaab");
    }

    #[test]
    fn extract_deep_in_a_huge_expansion() {
        // 1 -> 21 keeps pushing a 2 to the front; 2 is coded to 0.
        let sys = compile(
            &['0', '1', '2'],
            &[('0', "00"), ('1', "21"), ('2', "2")],
            None,
            "0",
            1,
            2,
        );
        let zero = sys.alphabet().id_of('0').unwrap();
        let one = sys.alphabet().id_of('1').unwrap();
        let pos = 1u64 << 40;
        assert_eq!(render(&sys, &extract(&sys, zero, 40, pos, pos).unwrap()), "0");
        assert_eq!(render(&sys, &extract(&sys, one, 40, 1, 5).unwrap()), "22222");
        assert_eq!(render(&sys, &extract(&sys, one, 40, 39, 41).unwrap()), "221");
    }

    #[test]
    fn extract_checks_bounds() {
        let sys = ladder(3, 7);
        let c = sys.alphabet().id_of('c').unwrap();
        assert_eq!(extract(&sys, c, 1, 0, 1), Err(EvalError::BadSlice { from: 0, to: 1 }));
        assert_eq!(extract(&sys, c, 1, 3, 2), Err(EvalError::BadSlice { from: 3, to: 2 }));
        assert_eq!(
            extract(&sys, c, 1, 1, 3),
            Err(EvalError::SliceBeyondExpansion {
                sym: 'c',
                level: 1,
                from: 1,
                to: 3,
                available: 2,
                saturated: false
            })
        );
    }

    #[test]
    fn fixed_point_prefix_extends_forever() {
        let sys = ladder(3, 7);
        assert_eq!(render(&sys, &fixed_point_prefix(&sys, 7).unwrap()), "cbabaab");
        assert_eq!(render(&sys, &fixed_point_prefix(&sys, 1).unwrap()), "c");
        assert_eq!(
            render(&sys, &fixed_point_prefix(&sys, 16).unwrap()),
            "cbabaabaaabaaaab"
        );
        let ab = compile(&['a', 'b'], &[('a', "ab"), ('b', "b")], None, "a", 1, 2);
        assert_eq!(render(&ab, &fixed_point_prefix(&ab, 4).unwrap()), "abbb");
    }

    #[test]
    fn fixed_point_prefix_needs_a_prolongable_axiom() {
        let sys = compile(&['0', '1'], &[('0', "00"), ('1', "11")], None, "01", 1, 2);
        assert_eq!(fixed_point_prefix(&sys, 4), Err(EvalError::NotProlongable));
    }
}
