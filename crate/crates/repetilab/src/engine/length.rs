use crate::model::alphabet::SymbolId;
use crate::model::lsystem::LSystem;
use crate::model::nusystem::{NuSystem, NuToken};

use super::EvalError;

/// Upper bound on `symbols * levels` entries a table may hold.
pub const TABLE_ENTRY_CAP: u64 = 1 << 23;

#[derive(Clone, Copy, Debug)]
enum Child {
    Sym(SymbolId),
    Fixed(u64),
}

/// Expansion lengths per symbol and level, saturating at a cap.
///
/// Entry `(a, t)` is the length of `a` rewritten `t` times, except that
/// any value at or above the cap is stored as the cap itself. With a
/// cap of `m + 1`, comparisons against positions up to `m` stay exact:
/// a saturated subtree is always long enough to contain the remainder
/// of a sliced walk, so saturation can never misroute it.
pub struct LengthTable {
    cap: u64,
    children: Vec<Vec<Child>>,
    levels: Vec<Vec<u64>>,
}

impl LengthTable {
    pub fn for_lsystem(sys: &LSystem, cap: u64) -> Self {
        let children = sys
            .rules()
            .iter()
            .map(|r| r.iter().map(|&s| Child::Sym(s)).collect())
            .collect();
        Self::new(children, cap)
    }

    pub fn for_nusystem(sys: &NuSystem, cap: u64) -> Self {
        let children = sys
            .alphabet()
            .ids()
            .map(|a| {
                sys.rule(a)
                    .iter()
                    .map(|t| match *t {
                        NuToken::Plain(s) => Child::Sym(s),
                        NuToken::Extract { from, to, .. } => Child::Fixed(to - from + 1),
                    })
                    .collect()
            })
            .collect();
        Self::new(children, cap)
    }

    fn new(children: Vec<Vec<Child>>, cap: u64) -> Self {
        assert!(cap >= 1, "cap must be positive");
        let sigma = children.len();
        LengthTable { cap, children, levels: vec![vec![1; sigma]] }
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    /// Extends the table so lengths up to `level` are available.
    pub fn ensure_level(&mut self, level: u64) -> Result<(), EvalError> {
        let sigma = self.children.len() as u64;
        let needed = sigma.saturating_mul(level.saturating_add(1));
        if needed > TABLE_ENTRY_CAP {
            return Err(EvalError::TableTooLarge { needed, cap: TABLE_ENTRY_CAP });
        }
        while (self.levels.len() as u64) <= level {
            let prev = self.levels.last().expect("level 0 present");
            let next: Vec<u64> = self
                .children
                .iter()
                .map(|rule| {
                    let mut total = 0u64;
                    for child in rule {
                        let add = match *child {
                            Child::Sym(s) => prev[s.idx()],
                            Child::Fixed(k) => k,
                        };
                        total = total.saturating_add(add);
                        if total >= self.cap {
                            return self.cap;
                        }
                    }
                    total
                })
                .collect();
            self.levels.push(next);
        }
        Ok(())
    }

    /// Length of `sym` after `level` rewriting steps, saturated at the
    /// cap. The level must have been ensured.
    pub fn len(&self, sym: SymbolId, level: u64) -> u64 {
        self.levels[level as usize][sym.idx()]
    }

    /// Saturating total length of a sequence of symbols at one level.
    pub fn seq_len(&self, syms: impl IntoIterator<Item = SymbolId>, level: u64) -> u64 {
        let mut total = 0u64;
        for s in syms {
            total = total.saturating_add(self.len(s, level));
            if total >= self.cap {
                return self.cap;
            }
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::lsystem::LSystemDoc;

    fn ladder() -> LSystem {
        LSystemDoc {
            alphabet: vec!['a', 'b', 'c'],
            rules: vec![('a', "a".into()), ('b', "ab".into()), ('c', "cb".into())],
            coding: None,
            axiom: "c".into(),
            level: 3,
            length: 6,
        }
        .compile()
        .unwrap()
    }

    #[test]
    fn unsaturated_lengths_are_exact() {
        let sys = ladder();
        let mut t = LengthTable::for_lsystem(&sys, u64::MAX);
        t.ensure_level(4).unwrap();
        let c = sys.alphabet().id_of('c').unwrap();
        // |phi^t(c)| = 1 + t(t+1)/2
        for level in 0..=4u64 {
            assert_eq!(t.len(c, level), 1 + level * (level + 1) / 2);
        }
    }

    #[test]
    fn saturation_clamps_at_cap() {
        let doc = LSystemDoc {
            alphabet: vec!['0'],
            rules: vec![('0', "00".into())],
            coding: None,
            axiom: "0".into(),
            level: 80,
            length: u64::MAX,
        };
        let sys = doc.compile().unwrap();
        let mut t = LengthTable::for_lsystem(&sys, 1 << 20);
        t.ensure_level(80).unwrap();
        let zero = SymbolId(0);
        assert_eq!(t.len(zero, 10), 1 << 10);
        assert_eq!(t.len(zero, 20), 1 << 20);
        assert_eq!(t.len(zero, 21), 1 << 20);
        assert_eq!(t.len(zero, 80), 1 << 20);
    }

    #[test]
    fn entry_cap_is_enforced() {
        let sys = ladder();
        let mut t = LengthTable::for_lsystem(&sys, u64::MAX);
        assert!(matches!(
            t.ensure_level(TABLE_ENTRY_CAP),
            Err(EvalError::TableTooLarge { .. })
        ));
    }
}
