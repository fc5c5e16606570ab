use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::model::alphabet::{Alphabet, SymbolId};

/// Description of a rewriting system as written by a user: a totally
/// ordered alphabet of single-scalar symbols, one rule per symbol, an
/// optional output coding (identity when omitted), an axiom, the number
/// of rewriting steps `level`, and the represented prefix `length`.
///
/// A document is unchecked; [`LSystemDoc::validate`] reports every
/// violation and [`LSystemDoc::compile`] produces a typed [`LSystem`]
/// only when none exist.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LSystemDoc {
    pub alphabet: Vec<char>,
    pub rules: Vec<(char, String)>,
    pub coding: Option<Vec<(char, char)>>,
    pub axiom: String,
    pub level: u64,
    pub length: u64,
}

/// A single well-formedness defect of a system description.
/// Violations are data for the caller, not failures.
#[derive(thiserror::Error, Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    #[error("alphabet is empty")]
    EmptyAlphabet,
    #[error("duplicate alphabet symbol '{0}'")]
    DuplicateSymbol(char),
    #[error("no rule for symbol '{0}'")]
    MissingRule(char),
    #[error("more than one rule for symbol '{0}'")]
    DuplicateRule(char),
    #[error("rule for '{0}' which is not in the alphabet")]
    RuleForUnknownSymbol(char),
    #[error("empty right-hand side for '{0}': every symbol must rewrite to at least one symbol")]
    EmptyRule(char),
    #[error("rule for '{rule}' uses unknown symbol '{sym}'")]
    RuleSymbolUnknown { rule: char, sym: char },
    #[error("axiom is empty")]
    EmptyAxiom,
    #[error("unknown axiom symbol '{0}'")]
    AxiomSymbolUnknown(char),
    #[error("coding misses symbol '{0}'")]
    CodingMissing(char),
    #[error("coding entry for '{0}' which is not in the alphabet")]
    CodingForUnknownSymbol(char),
    #[error("more than one coding entry for '{0}'")]
    DuplicateCoding(char),
    #[error("coding maps '{symbol}' to unknown symbol '{target}'")]
    CodingTargetUnknown { symbol: char, target: char },
    #[error("length must be at least 1")]
    ZeroLength,
    #[error("level {level} exceeds length squared ({length}^2)")]
    LevelExceedsLengthSquared { level: u64, length: u64 },
    #[error("extraction {token} has an invalid slice: indexes are 1-based and from <= to")]
    ExtractBadSlice { token: String },
    #[error("extraction {token} reaches past the declared length {bound}")]
    ExtractIndexTooLarge { token: String, bound: u64 },
    #[error("extraction {token} uses a level above the declared length {bound}")]
    ExtractLevelTooLarge { token: String, bound: u64 },
    #[error("extraction cycle: {}", path.join(" -> "))]
    ExtractionCycle { path: Vec<String> },
}

impl LSystemDoc {
    /// Collects every violation; an empty list means the document
    /// describes a valid system.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        for &c in &self.alphabet {
            if !seen.insert(c) {
                out.push(Violation::DuplicateSymbol(c));
            }
        }
        if self.alphabet.is_empty() {
            out.push(Violation::EmptyAlphabet);
        }

        let mut rule_of: HashMap<char, &str> = HashMap::new();
        for (sym, rhs) in &self.rules {
            if !seen.contains(sym) {
                out.push(Violation::RuleForUnknownSymbol(*sym));
                continue;
            }
            if rule_of.insert(*sym, rhs).is_some() {
                out.push(Violation::DuplicateRule(*sym));
            }
        }
        for &c in &self.alphabet {
            match rule_of.get(&c) {
                None => out.push(Violation::MissingRule(c)),
                Some(rhs) => {
                    if rhs.is_empty() {
                        out.push(Violation::EmptyRule(c));
                    }
                    for s in rhs.chars() {
                        if !seen.contains(&s) {
                            out.push(Violation::RuleSymbolUnknown { rule: c, sym: s });
                        }
                    }
                }
            }
        }

        if self.axiom.is_empty() {
            out.push(Violation::EmptyAxiom);
        }
        for s in self.axiom.chars() {
            if !seen.contains(&s) {
                out.push(Violation::AxiomSymbolUnknown(s));
            }
        }

        if let Some(coding) = &self.coding {
            let mut coded = HashSet::new();
            for (src, dst) in coding {
                if !seen.contains(src) {
                    out.push(Violation::CodingForUnknownSymbol(*src));
                    continue;
                }
                if !coded.insert(*src) {
                    out.push(Violation::DuplicateCoding(*src));
                }
                if !seen.contains(dst) {
                    out.push(Violation::CodingTargetUnknown { symbol: *src, target: *dst });
                }
            }
            for &c in &self.alphabet {
                if !coded.contains(&c) {
                    out.push(Violation::CodingMissing(c));
                }
            }
        }

        if self.length == 0 {
            out.push(Violation::ZeroLength);
        } else if self.level > self.length.saturating_mul(self.length) {
            out.push(Violation::LevelExceedsLengthSquared {
                level: self.level,
                length: self.length,
            });
        }
        out
    }

    pub fn compile(&self) -> Result<LSystem, Vec<Violation>> {
        let violations = self.validate();
        if !violations.is_empty() {
            return Err(violations);
        }
        let alphabet = Alphabet::new(self.alphabet.iter().copied()).expect("validated");
        let rule_of: HashMap<char, &String> = self.rules.iter().map(|(c, r)| (*c, r)).collect();
        let rules = self
            .alphabet
            .iter()
            .map(|c| alphabet.encode(rule_of[c]).expect("validated"))
            .collect();
        let coding = match &self.coding {
            None => alphabet.ids().collect(),
            Some(entries) => {
                let map: HashMap<char, char> = entries.iter().copied().collect();
                self.alphabet
                    .iter()
                    .map(|c| alphabet.id_of(map[c]).expect("validated"))
                    .collect()
            }
        };
        let axiom = alphabet.encode(&self.axiom).expect("validated");
        Ok(LSystem {
            alphabet,
            rules,
            coding,
            axiom,
            level: self.level,
            length: self.length,
        })
    }
}

/// A validated rewriting system. The represented string is the prefix
/// of the stated `length` of the coded image of the axiom rewritten
/// `level` times.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LSystem {
    alphabet: Alphabet,
    rules: Vec<Vec<SymbolId>>,
    coding: Vec<SymbolId>,
    axiom: Vec<SymbolId>,
    level: u64,
    length: u64,
}

impl LSystem {
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rule(&self, s: SymbolId) -> &[SymbolId] {
        &self.rules[s.idx()]
    }

    pub fn rules(&self) -> &[Vec<SymbolId>] {
        &self.rules
    }

    pub fn code(&self, s: SymbolId) -> SymbolId {
        self.coding[s.idx()]
    }

    pub fn coding(&self) -> &[SymbolId] {
        &self.coding
    }

    pub fn axiom(&self) -> &[SymbolId] {
        &self.axiom
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn length(&self) -> u64 {
        self.length
    }

    /// Widest right-hand side.
    pub fn width(&self) -> usize {
        self.rules.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Representation size: total rule length, plus axiom length, plus
    /// one word per symbol for the coding table, plus two words for the
    /// level and the length.
    pub fn size(&self) -> u64 {
        let rule_total: u64 = self.rules.iter().map(|r| r.len() as u64).sum();
        rule_total + self.axiom.len() as u64 + self.alphabet.len() as u64 + 2
    }

    pub fn classify(&self) -> VariantClasses {
        let expanding = self.rules.iter().all(|r| r.len() >= 2);
        let uniform = expanding && self.rules.iter().all(|r| r.len() == self.rules[0].len());
        let prolongable = match self.axiom.as_slice() {
            &[a] => {
                let r = self.rule(a);
                if r.len() >= 2 && r[0] == a {
                    Some(self.alphabet.char_of(a))
                } else {
                    None
                }
            }
            _ => None,
        };
        let identity_coding = self.alphabet.ids().all(|s| self.code(s) == s);
        VariantClasses {
            expanding,
            uniform,
            prolongable,
            identity_coding,
            class_lm: prolongable.is_some(),
            class_ld: identity_coding,
            class_le: expanding,
            class_lu: uniform,
            class_lp: prolongable.is_some() && identity_coding,
            class_la: prolongable.is_some() && uniform,
        }
    }

    pub fn to_doc(&self) -> LSystemDoc {
        LSystemDoc {
            alphabet: self.alphabet.chars().to_vec(),
            rules: self
                .alphabet
                .chars()
                .iter()
                .zip(&self.rules)
                .map(|(&c, r)| (c, self.alphabet.render(r)))
                .collect(),
            coding: Some(
                self.alphabet
                    .chars()
                    .iter()
                    .zip(&self.coding)
                    .map(|(&c, &t)| (c, self.alphabet.char_of(t)))
                    .collect(),
            ),
            axiom: self.alphabet.render(&self.axiom),
            level: self.level,
            length: self.length,
        }
    }
}

/// Structural traits of a system and the representation classes they
/// induce. `class_lm` marks prolongable systems, `class_ld` identity
/// codings, `class_le` expanding rules, `class_lu` uniform rules,
/// `class_lp` prolongable with identity coding, and `class_la`
/// prolongable with uniform rules.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VariantClasses {
    pub expanding: bool,
    pub uniform: bool,
    pub prolongable: Option<char>,
    pub identity_coding: bool,
    pub class_lm: bool,
    pub class_ld: bool,
    pub class_le: bool,
    pub class_lu: bool,
    pub class_lp: bool,
    pub class_la: bool,
}

impl fmt::Display for VariantClasses {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.expanding {
            parts.push("expanding".into());
        }
        if self.uniform {
            parts.push("uniform".into());
        }
        if let Some(w) = self.prolongable {
            parts.push(format!("prolongable({w})"));
        }
        if self.identity_coding {
            parts.push("identity-coding".into());
        }
        for (flag, label) in [
            (self.class_lm, "\u{2113}_m"),
            (self.class_ld, "\u{2113}_d"),
            (self.class_le, "\u{2113}_e"),
            (self.class_lu, "\u{2113}_u"),
            (self.class_lp, "\u{2113}_p"),
            (self.class_la, "\u{2113}_a"),
        ] {
            if flag {
                parts.push(label.into());
            }
        }
        write!(f, "{}", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn ladder_doc(level: u64, length: u64) -> LSystemDoc {
        LSystemDoc {
            alphabet: vec!['a', 'b', 'c'],
            rules: vec![
                ('a', "a".into()),
                ('b', "ab".into()),
                ('c', "cb".into()),
            ],
            coding: None,
            axiom: "c".into(),
            level,
            length,
        }
    }

    #[test]
    fn ladder_size_is_11() {
        let sys = ladder_doc(3, 6).compile().unwrap();
        assert_eq!(sys.size(), 11);
    }

    #[test]
    fn unary_system_size_is_5() {
        let doc = LSystemDoc {
            alphabet: vec!['x'],
            rules: vec![('x', "x".into())],
            coding: None,
            axiom: "x".into(),
            level: 0,
            length: 1,
        };
        assert_eq!(doc.compile().unwrap().size(), 5);
    }

    #[test]
    fn doubling_axiom_system_size_is_8() {
        // {0,1}, 0 -> 0, 1 -> 01, axiom 1
        let doc = LSystemDoc {
            alphabet: vec!['0', '1'],
            rules: vec![('0', "0".into()), ('1', "01".into())],
            coding: None,
            axiom: "1".into(),
            level: 4,
            length: 5,
        };
        assert_eq!(doc.compile().unwrap().size(), 8);
    }

    #[test]
    fn valid_doc_has_no_violations() {
        assert!(ladder_doc(3, 6).validate().is_empty());
    }

    #[test]
    fn empty_rule_is_flagged() {
        let mut doc = ladder_doc(3, 6);
        doc.rules[1].1 = String::new();
        assert_eq!(doc.validate(), vec![Violation::EmptyRule('b')]);
    }

    #[test]
    fn unknown_axiom_symbol_is_flagged() {
        let mut doc = ladder_doc(3, 6);
        doc.axiom = "cz".into();
        assert_eq!(doc.validate(), vec![Violation::AxiomSymbolUnknown('z')]);
    }

    #[test]
    fn level_above_length_squared_is_flagged() {
        let mut doc = ladder_doc(50, 6);
        assert_eq!(
            doc.validate(),
            vec![Violation::LevelExceedsLengthSquared { level: 50, length: 6 }]
        );
        doc.level = 36;
        assert!(doc.validate().is_empty());
    }

    #[test]
    fn missing_rule_and_coding_defects_are_flagged() {
        let doc = LSystemDoc {
            alphabet: vec!['a', 'b'],
            rules: vec![('a', "ab".into())],
            coding: Some(vec![('a', 'b'), ('a', 'a')]),
            axiom: "a".into(),
            level: 1,
            length: 2,
        };
        let v = doc.validate();
        assert!(v.contains(&Violation::MissingRule('b')));
        assert!(v.contains(&Violation::DuplicateCoding('a')));
        assert!(v.contains(&Violation::CodingMissing('b')));
    }

    #[test]
    fn classify_ladder() {
        let c = ladder_doc(3, 6).compile().unwrap().classify();
        assert_eq!(c.prolongable, Some('c'));
        assert!(c.identity_coding && c.class_lm && c.class_ld && c.class_lp);
        assert!(!c.expanding && !c.uniform && !c.class_le && !c.class_lu && !c.class_la);
        assert_eq!(
            c.to_string(),
            "prolongable(c) identity-coding \u{2113}_m \u{2113}_d \u{2113}_p"
        );
    }

    #[test]
    fn classify_uniform_doubling() {
        let doc = LSystemDoc {
            alphabet: vec!['0', '1'],
            rules: vec![('0', "00".into()), ('1', "11".into())],
            coding: None,
            axiom: "01".into(),
            level: 2,
            length: 5,
        };
        let c = doc.compile().unwrap().classify();
        assert!(c.expanding && c.uniform && c.class_le && c.class_lu);
        assert_eq!(c.prolongable, None);
        assert!(!c.class_lm && !c.class_lp && !c.class_la);
    }

    #[test]
    fn classify_unary_rule_blocks_expanding() {
        let c = ladder_doc(3, 6).compile().unwrap().classify();
        assert!(!c.expanding);
    }

    #[test]
    fn prolongable_requires_axiom_first() {
        // axiom b with rule b -> ab starts with a, not b
        let doc = LSystemDoc {
            alphabet: vec!['a', 'b'],
            rules: vec![('a', "a".into()), ('b', "ab".into())],
            coding: None,
            axiom: "b".into(),
            level: 1,
            length: 2,
        };
        assert_eq!(doc.compile().unwrap().classify().prolongable, None);
    }

    #[test]
    fn doc_round_trip() {
        let sys = ladder_doc(3, 6).compile().unwrap();
        let doc = sys.to_doc();
        assert_eq!(doc.compile().unwrap(), sys);
    }
}
