use std::collections::HashMap;
use std::rc::Rc;

use crate::model::alphabet::SymbolId;
use crate::model::nusystem::{NuSystem, NuToken};

use super::length::LengthTable;
use super::EvalError;

/// Evaluates a system with extraction tokens, memoizing the content of
/// each distinct token so one shared between rules, or repeated in the
/// axiom, is resolved only once. Validation guarantees the extraction
/// dependencies are acyclic, so the recursive resolution terminates.
pub struct NuEvaluator<'a> {
    sys: &'a NuSystem,
    table: LengthTable,
    memo: HashMap<(SymbolId, u64, u64, u64), Rc<Vec<SymbolId>>>,
}

impl<'a> NuEvaluator<'a> {
    pub fn new(sys: &'a NuSystem) -> Self {
        Self::with_cap(sys, sys.length() + 1)
    }

    /// A table cap above every position the evaluation will compare
    /// against keeps saturated lengths from misrouting a sliced walk.
    pub fn with_cap(sys: &'a NuSystem, cap: u64) -> Self {
        NuEvaluator { sys, table: LengthTable::for_nusystem(sys, cap), memo: HashMap::new() }
    }

    /// The string the system denotes: the length-n prefix of the coded
    /// expansion of the axiom at the system's level.
    pub fn generate(&mut self) -> Result<Vec<SymbolId>, EvalError> {
        let n = self.sys.length();
        let d = self.sys.level();
        self.table.ensure_level(d)?;
        let mut total = 0u64;
        for tok in self.sys.axiom() {
            total = total.saturating_add(self.token_len(tok, d));
            if total >= self.table.cap() {
                break;
            }
        }
        if total < n {
            return Err(EvalError::PrefixBeyondExpansion {
                requested: n,
                available: total,
                saturated: false,
            });
        }
        let mut out = Vec::with_capacity(n as usize);
        self.walk(self.sys.axiom(), d, 0, n, &mut out)?;
        Ok(out)
    }

    /// Content of the token `sym(level)[from:to]`: the slice of the
    /// coded expansion of `sym` after `level` steps.
    pub fn resolve(
        &mut self,
        sym: SymbolId,
        level: u64,
        from: u64,
        to: u64,
    ) -> Result<Rc<Vec<SymbolId>>, EvalError> {
        if from == 0 || from > to {
            return Err(EvalError::BadSlice { from, to });
        }
        let key = (sym, level, from, to);
        if let Some(content) = self.memo.get(&key) {
            return Ok(content.clone());
        }
        self.table.ensure_level(level)?;
        let len = self.table.len(sym, level);
        if len < to {
            return Err(EvalError::SliceBeyondExpansion {
                sym: self.sys.alphabet().char_of(sym),
                level,
                from,
                to,
                available: len,
                saturated: len == self.table.cap(),
            });
        }
        let start = [NuToken::Plain(sym)];
        let mut out = Vec::with_capacity((to - from + 1) as usize);
        self.walk(&start, level, from - 1, to - from + 1, &mut out)?;
        let content = Rc::new(out);
        self.memo.insert(key, content.clone());
        Ok(content)
    }

    fn token_len(&self, tok: &NuToken, level: u64) -> u64 {
        match *tok {
            NuToken::Plain(a) => self.table.len(a, level),
            NuToken::Extract { from, to, .. } => to - from + 1,
        }
    }

    /// Token-tree walk emitting coded leaves `skip+1 ..= skip+take`.
    /// Plain tokens at level 0 are coded symbols; extraction tokens are
    /// inert and emit their resolved content at any level.
    fn walk(
        &mut self,
        start: &[NuToken],
        top_level: u64,
        skip: u64,
        take: u64,
        out: &mut Vec<SymbolId>,
    ) -> Result<(), EvalError> {
        debug_assert!(skip.saturating_add(take) < self.table.cap());
        let sys = self.sys;
        let mut stack: Vec<(&NuToken, u64)> =
            start.iter().rev().map(|t| (t, top_level)).collect();
        let mut skip = skip;
        let mut left = take;
        while let Some((tok, t)) = stack.pop() {
            if left == 0 {
                break;
            }
            let len = self.token_len(tok, t);
            if skip >= len {
                skip -= len;
                continue;
            }
            match *tok {
                NuToken::Plain(a) => {
                    if t == 0 {
                        out.push(sys.code(a));
                        left -= 1;
                    } else {
                        for child in sys.rule(a).iter().rev() {
                            stack.push((child, t - 1));
                        }
                    }
                }
                NuToken::Extract { sym, level, from, to } => {
                    let content = self.resolve(sym, level, from, to)?;
                    let want = (len - skip).min(left);
                    out.extend_from_slice(&content[skip as usize..(skip + want) as usize]);
                    skip = 0;
                    left -= want;
                }
            }
        }
        Ok(())
    }
}

/// The string a system with extraction tokens denotes.
pub fn nu_generate(sys: &NuSystem) -> Result<Vec<SymbolId>, EvalError> {
    NuEvaluator::new(sys).generate()
}

/// Resolves one extraction against a system's rules, independent of
/// the system's own level and length.
pub fn resolve_extraction(
    sys: &NuSystem,
    sym: SymbolId,
    level: u64,
    from: u64,
    to: u64,
) -> Result<Vec<SymbolId>, EvalError> {
    let cap = sys.length().max(to).saturating_add(1);
    let mut ev = NuEvaluator::with_cap(sys, cap);
    let content = ev.resolve(sym, level, from, to)?;
    Ok(content.to_vec())
}
