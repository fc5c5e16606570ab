use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::model::alphabet::{Alphabet, SymbolId};
use crate::model::lsystem::{LSystem, LSystemDoc, Violation};

/// One token of a rule or axiom in an extraction-token system: either a
/// plain symbol or an extraction `a(k)[i:j]` denoting the slice `[i..j]`
/// (1-based, inclusive) of the coded string obtained by rewriting `a`
/// for `k` steps. An extraction resolves to an inert, already coded
/// sequence: later rewriting steps copy it verbatim.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NuToken {
    Plain(SymbolId),
    Extract { sym: SymbolId, level: u64, from: u64, to: u64 },
}

impl NuToken {
    /// Representation weight: plain symbols count 1, extractions 4.
    pub fn weight(&self) -> u64 {
        match self {
            NuToken::Plain(_) => 1,
            NuToken::Extract { .. } => 4,
        }
    }
}

/// Doc-level token, before symbols are resolved against the alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NuTokenDoc {
    Plain(char),
    Extract { sym: char, level: u64, from: u64, to: u64 },
}

impl fmt::Display for NuTokenDoc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NuTokenDoc::Plain(c) => write!(f, "{c}"),
            NuTokenDoc::Extract { sym, level, from, to } => {
                write!(f, "{sym}({level})[{from}:{to}]")
            }
        }
    }
}

fn token_weight_doc(t: &NuTokenDoc) -> u64 {
    match t {
        NuTokenDoc::Plain(_) => 1,
        NuTokenDoc::Extract { .. } => 4,
    }
}

/// Unchecked description of an extraction-token system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NuSystemDoc {
    pub alphabet: Vec<char>,
    pub rules: Vec<(char, Vec<NuTokenDoc>)>,
    pub coding: Option<Vec<(char, char)>>,
    pub axiom: Vec<NuTokenDoc>,
    pub level: u64,
    pub length: u64,
}

impl NuSystemDoc {
    /// Collects every violation, including extraction dependency cycles.
    /// The cycle check runs only once the rest of the document is sound,
    /// since it needs resolvable symbols and total rules.
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

        let mut rule_of: HashMap<char, &Vec<NuTokenDoc>> = HashMap::new();
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
                    for t in rhs.iter() {
                        self.check_token(t, Some(c), &seen, &mut out);
                    }
                }
            }
        }

        if self.axiom.is_empty() {
            out.push(Violation::EmptyAxiom);
        }
        for t in &self.axiom {
            self.check_token(t, None, &seen, &mut out);
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

        if out.is_empty() {
            let graph = ExtractionGraph::build(self);
            if let Some(path) = graph.find_cycle() {
                out.push(Violation::ExtractionCycle {
                    path: path.iter().map(|t| t.to_string()).collect(),
                });
            }
        }
        out
    }

    fn check_token(
        &self,
        t: &NuTokenDoc,
        rule: Option<char>,
        seen: &HashSet<char>,
        out: &mut Vec<Violation>,
    ) {
        match *t {
            NuTokenDoc::Plain(s) => {
                if !seen.contains(&s) {
                    match rule {
                        Some(r) => out.push(Violation::RuleSymbolUnknown { rule: r, sym: s }),
                        None => out.push(Violation::AxiomSymbolUnknown(s)),
                    }
                }
            }
            NuTokenDoc::Extract { sym, level, from, to } => {
                if !seen.contains(&sym) {
                    match rule {
                        Some(r) => out.push(Violation::RuleSymbolUnknown { rule: r, sym }),
                        None => out.push(Violation::AxiomSymbolUnknown(sym)),
                    }
                }
                if from == 0 || from > to {
                    out.push(Violation::ExtractBadSlice { token: t.to_string() });
                }
                if to > self.length {
                    out.push(Violation::ExtractIndexTooLarge {
                        token: t.to_string(),
                        bound: self.length,
                    });
                }
                if level > self.length {
                    out.push(Violation::ExtractLevelTooLarge {
                        token: t.to_string(),
                        bound: self.length,
                    });
                }
            }
        }
    }

    pub fn compile(&self) -> Result<NuSystem, Vec<Violation>> {
        let violations = self.validate();
        if !violations.is_empty() {
            return Err(violations);
        }
        let alphabet = Alphabet::new(self.alphabet.iter().copied()).expect("validated");
        let encode_tokens = |tokens: &[NuTokenDoc]| -> Vec<NuToken> {
            tokens
                .iter()
                .map(|t| match *t {
                    NuTokenDoc::Plain(c) => NuToken::Plain(alphabet.id_of(c).expect("validated")),
                    NuTokenDoc::Extract { sym, level, from, to } => NuToken::Extract {
                        sym: alphabet.id_of(sym).expect("validated"),
                        level,
                        from,
                        to,
                    },
                })
                .collect()
        };
        let rule_of: HashMap<char, &Vec<NuTokenDoc>> =
            self.rules.iter().map(|(c, r)| (*c, r)).collect();
        let rules = self
            .alphabet
            .iter()
            .map(|c| encode_tokens(rule_of[c]))
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
        let axiom = encode_tokens(&self.axiom);
        Ok(NuSystem {
            alphabet,
            rules,
            coding,
            axiom,
            level: self.level,
            length: self.length,
        })
    }

    /// Representation size: token weights over all rules plus the axiom,
    /// plus one word per symbol and two words for level and length.
    pub fn size(&self) -> u64 {
        let rule_total: u64 = self
            .rules
            .iter()
            .flat_map(|(_, r)| r.iter())
            .map(token_weight_doc)
            .sum();
        let axiom_total: u64 = self.axiom.iter().map(token_weight_doc).sum();
        rule_total + axiom_total + self.alphabet.len() as u64 + 2
    }

    /// Views a plain system as an extraction-free one.
    pub fn from_lsystem(doc: &LSystemDoc) -> Self {
        let plain = |s: &str| s.chars().map(NuTokenDoc::Plain).collect();
        NuSystemDoc {
            alphabet: doc.alphabet.clone(),
            rules: doc.rules.iter().map(|(c, r)| (*c, plain(r))).collect(),
            coding: doc.coding.clone(),
            axiom: plain(&doc.axiom),
            level: doc.level,
            length: doc.length,
        }
    }
}

/// A validated extraction-token system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NuSystem {
    alphabet: Alphabet,
    rules: Vec<Vec<NuToken>>,
    coding: Vec<SymbolId>,
    axiom: Vec<NuToken>,
    level: u64,
    length: u64,
}

impl NuSystem {
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rule(&self, s: SymbolId) -> &[NuToken] {
        &self.rules[s.idx()]
    }

    pub fn code(&self, s: SymbolId) -> SymbolId {
        self.coding[s.idx()]
    }

    pub fn axiom(&self) -> &[NuToken] {
        &self.axiom
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn length(&self) -> u64 {
        self.length
    }

    pub fn size(&self) -> u64 {
        let rule_total: u64 = self
            .rules
            .iter()
            .flat_map(|r| r.iter())
            .map(NuToken::weight)
            .sum();
        let axiom_total: u64 = self.axiom.iter().map(NuToken::weight).sum();
        rule_total + axiom_total + self.alphabet.len() as u64 + 2
    }

    pub fn token_doc(&self, t: &NuToken) -> NuTokenDoc {
        match *t {
            NuToken::Plain(s) => NuTokenDoc::Plain(self.alphabet.char_of(s)),
            NuToken::Extract { sym, level, from, to } => NuTokenDoc::Extract {
                sym: self.alphabet.char_of(sym),
                level,
                from,
                to,
            },
        }
    }

    pub fn to_doc(&self) -> NuSystemDoc {
        NuSystemDoc {
            alphabet: self.alphabet.chars().to_vec(),
            rules: self
                .alphabet
                .chars()
                .iter()
                .zip(&self.rules)
                .map(|(&c, r)| (c, r.iter().map(|t| self.token_doc(t)).collect()))
                .collect(),
            coding: Some(
                self.alphabet
                    .chars()
                    .iter()
                    .zip(&self.coding)
                    .map(|(&c, &t)| (c, self.alphabet.char_of(t)))
                    .collect(),
            ),
            axiom: self.axiom.iter().map(|t| self.token_doc(t)).collect(),
            level: self.level,
            length: self.length,
        }
    }

    pub fn is_extract_free(&self) -> bool {
        self.rules
            .iter()
            .flat_map(|r| r.iter())
            .chain(self.axiom.iter())
            .all(|t| matches!(t, NuToken::Plain(_)))
    }

    /// The equivalent plain system, when no extraction token occurs.
    pub fn as_lsystem(&self) -> Option<LSystem> {
        if !self.is_extract_free() {
            return None;
        }
        let plain = |tokens: &[NuToken]| -> String {
            tokens
                .iter()
                .map(|t| match t {
                    NuToken::Plain(s) => self.alphabet.char_of(*s),
                    NuToken::Extract { .. } => unreachable!(),
                })
                .collect()
        };
        let doc = LSystemDoc {
            alphabet: self.alphabet.chars().to_vec(),
            rules: self
                .alphabet
                .chars()
                .iter()
                .zip(&self.rules)
                .map(|(&c, r)| (c, plain(r)))
                .collect(),
            coding: Some(
                self.alphabet
                    .chars()
                    .iter()
                    .zip(&self.coding)
                    .map(|(&c, &t)| (c, self.alphabet.char_of(t)))
                    .collect(),
            ),
            axiom: plain(&self.axiom),
            level: self.level,
            length: self.length,
        };
        doc.compile().ok()
    }
}

/// Dependency graph of the distinct extraction tokens of a system.
/// Token `u` depends on token `v` when resolving `u` can reach a symbol
/// whose rule contains `v` in fewer than `u`'s level rewriting steps,
/// so `v` must resolve first. Resolution is well-defined exactly when
/// this graph is acyclic.
pub struct ExtractionGraph {
    nodes: Vec<NuTokenDoc>,
    edges: Vec<Vec<usize>>,
}

impl ExtractionGraph {
    /// Builds the graph for a document whose symbols and rules are
    /// already known to be resolvable.
    pub fn build(doc: &NuSystemDoc) -> Self {
        let rule_of: HashMap<char, &Vec<NuTokenDoc>> =
            doc.rules.iter().map(|(c, r)| (*c, r)).collect();
        let mut nodes: Vec<NuTokenDoc> = Vec::new();
        let mut node_id: HashMap<(char, u64, u64, u64), usize> = HashMap::new();
        let mut add_node = |t: &NuTokenDoc, nodes: &mut Vec<NuTokenDoc>| {
            if let NuTokenDoc::Extract { sym, level, from, to } = *t {
                node_id.entry((sym, level, from, to)).or_insert_with(|| {
                    nodes.push(*t);
                    nodes.len() - 1
                });
            }
        };
        for (_, rhs) in &doc.rules {
            for t in rhs {
                add_node(t, &mut nodes);
            }
        }
        for t in &doc.axiom {
            add_node(t, &mut nodes);
        }

        // extracts_in_rule[c] and plains_in_rule[c] drive the reachability walk
        let mut edges = vec![Vec::new(); nodes.len()];
        for (idx, node) in nodes.iter().enumerate() {
            let (sym, level) = match *node {
                NuTokenDoc::Extract { sym, level, .. } => (sym, level),
                NuTokenDoc::Plain(_) => unreachable!(),
            };
            let mut targets: HashSet<usize> = HashSet::new();
            let mut cum: HashSet<char> = HashSet::new();
            cum.insert(sym);
            let mut frontier = vec![sym];
            let mut step = 0u64;
            while step < level && !frontier.is_empty() {
                let mut next = Vec::new();
                for b in frontier {
                    let Some(rhs) = rule_of.get(&b) else { continue };
                    for t in rhs.iter() {
                        match *t {
                            NuTokenDoc::Plain(p) => {
                                if cum.insert(p) {
                                    next.push(p);
                                }
                            }
                            NuTokenDoc::Extract { sym, level, from, to } => {
                                if let Some(&v) = node_id.get(&(sym, level, from, to)) {
                                    targets.insert(v);
                                }
                            }
                        }
                    }
                }
                frontier = next;
                step += 1;
            }
            let mut targets: Vec<usize> = targets.into_iter().collect();
            targets.sort_unstable();
            edges[idx] = targets;
        }
        ExtractionGraph { nodes, edges }
    }

    pub fn nodes(&self) -> &[NuTokenDoc] {
        &self.nodes
    }

    pub fn edges(&self, node: usize) -> &[usize] {
        &self.edges[node]
    }

    /// First cycle found, as the token path around the loop.
    pub fn find_cycle(&self) -> Option<Vec<NuTokenDoc>> {
        const WHITE: u8 = 0;
        const GRAY: u8 = 1;
        const BLACK: u8 = 2;
        let n = self.nodes.len();
        let mut color = vec![WHITE; n];
        for root in 0..n {
            if color[root] != WHITE {
                continue;
            }
            // iterative DFS keeping the gray path explicit
            let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
            color[root] = GRAY;
            let mut path = vec![root];
            while let Some(frame) = stack.last_mut() {
                let node = frame.0;
                if frame.1 < self.edges[node].len() {
                    let child = self.edges[node][frame.1];
                    frame.1 += 1;
                    match color[child] {
                        WHITE => {
                            color[child] = GRAY;
                            stack.push((child, 0));
                            path.push(child);
                        }
                        GRAY => {
                            let start = path.iter().position(|&x| x == child).expect("gray on path");
                            return Some(path[start..].iter().map(|&i| self.nodes[i]).collect());
                        }
                        _ => {}
                    }
                } else {
                    color[node] = BLACK;
                    stack.pop();
                    path.pop();
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plain(s: &str) -> Vec<NuTokenDoc> {
        s.chars().map(NuTokenDoc::Plain).collect()
    }

    fn doubling_extract_doc() -> NuSystemDoc {
        // axiom "0(8)[1:3] 1" over {0,1} with 0 -> 00, 1 -> 1
        NuSystemDoc {
            alphabet: vec!['0', '1'],
            rules: vec![('0', plain("00")), ('1', plain("1"))],
            coding: None,
            axiom: vec![
                NuTokenDoc::Extract { sym: '0', level: 8, from: 1, to: 3 },
                NuTokenDoc::Plain('1'),
            ],
            level: 1,
            length: 8,
        }
    }

    #[test]
    fn token_weights_add_up() {
        let doc = doubling_extract_doc();
        assert_eq!(doc.size(), (2 + 1) + (4 + 1) + 2 + 2);
        assert!(doc.validate().is_empty());
        assert_eq!(doc.compile().unwrap().size(), 12);
    }

    #[test]
    fn extract_free_size_matches_plain_system() {
        let doc = NuSystemDoc {
            alphabet: vec!['a', 'b'],
            rules: vec![('a', plain("ab")), ('b', plain("b"))],
            coding: None,
            axiom: plain("a"),
            level: 2,
            length: 3,
        };
        let nu = doc.compile().unwrap();
        assert!(nu.is_extract_free());
        let plain_sys = nu.as_lsystem().unwrap();
        assert_eq!(nu.size(), plain_sys.size());
    }

    #[test]
    fn slice_and_level_bounds_are_checked() {
        let mut doc = doubling_extract_doc();
        doc.axiom[0] = NuTokenDoc::Extract { sym: '0', level: 9, from: 3, to: 2 };
        let v = doc.validate();
        assert!(v.contains(&Violation::ExtractBadSlice { token: "0(9)[3:2]".into() }));
        assert!(v.contains(&Violation::ExtractLevelTooLarge {
            token: "0(9)[3:2]".into(),
            bound: 8
        }));

        doc.axiom[0] = NuTokenDoc::Extract { sym: '0', level: 8, from: 1, to: 9 };
        let v = doc.validate();
        assert_eq!(
            v,
            vec![Violation::ExtractIndexTooLarge { token: "0(8)[1:9]".into(), bound: 8 }]
        );
    }

    #[test]
    fn self_referential_extraction_is_a_cycle() {
        let doc = NuSystemDoc {
            alphabet: vec!['a'],
            rules: vec![(
                'a',
                vec![NuTokenDoc::Extract { sym: 'a', level: 2, from: 1, to: 1 }],
            )],
            coding: None,
            axiom: plain("a"),
            level: 1,
            length: 4,
        };
        let v = doc.validate();
        assert_eq!(v.len(), 1);
        assert!(matches!(&v[0], Violation::ExtractionCycle { path } if path == &vec!["a(2)[1:1]".to_string()]));
    }

    #[test]
    fn mutual_extractions_are_a_cycle_with_witness() {
        let doc = NuSystemDoc {
            alphabet: vec!['a', 'b'],
            rules: vec![
                ('a', vec![NuTokenDoc::Extract { sym: 'b', level: 3, from: 1, to: 2 }]),
                ('b', vec![NuTokenDoc::Extract { sym: 'a', level: 3, from: 1, to: 2 }]),
            ],
            coding: None,
            axiom: plain("a"),
            level: 1,
            length: 4,
        };
        let v = doc.validate();
        assert_eq!(v.len(), 1);
        match &v[0] {
            Violation::ExtractionCycle { path } => {
                assert_eq!(path.len(), 2);
                assert!(path.contains(&"b(3)[1:2]".to_string()));
                assert!(path.contains(&"a(3)[1:2]".to_string()));
            }
            other => panic!("expected cycle, got {other:?}"),
        }
    }

    #[test]
    fn acyclic_chain_of_extractions_passes() {
        // a's extraction reaches b's rule, whose extraction reaches only plain symbols
        let doc = NuSystemDoc {
            alphabet: vec!['a', 'b', 'c'],
            rules: vec![
                ('a', plain("ab")),
                ('b', vec![NuTokenDoc::Extract { sym: 'c', level: 2, from: 1, to: 1 }]),
                ('c', plain("cc")),
            ],
            coding: None,
            axiom: vec![NuTokenDoc::Extract { sym: 'a', level: 3, from: 1, to: 4 }],
            level: 1,
            length: 4,
        };
        assert!(doc.validate().is_empty());
    }

    #[test]
    fn level_zero_extraction_has_no_dependencies() {
        let doc = NuSystemDoc {
            alphabet: vec!['a'],
            rules: vec![(
                'a',
                vec![NuTokenDoc::Extract { sym: 'a', level: 0, from: 1, to: 1 }],
            )],
            coding: None,
            axiom: plain("a"),
            level: 1,
            length: 4,
        };
        assert!(doc.validate().is_empty());
    }

    #[test]
    fn doc_round_trip() {
        let nu = doubling_extract_doc().compile().unwrap();
        assert_eq!(nu.to_doc().compile().unwrap(), nu);
    }
}
