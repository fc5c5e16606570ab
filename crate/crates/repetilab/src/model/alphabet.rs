use std::collections::HashMap;
use std::fmt;

/// Index of a symbol in its [`Alphabet`]. Symbols are compared by index,
/// which coincides with declaration order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SymbolId(pub u32);

impl SymbolId {
    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

/// Ordered set of symbols, each rendered as one Unicode scalar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    chars: Vec<char>,
    index: HashMap<char, SymbolId>,
}

/// Problems found while building an alphabet.
#[derive(thiserror::Error, Debug, PartialEq, Eq)]
pub enum AlphabetError {
    #[error("alphabet is empty")]
    Empty,
    #[error("duplicate symbol '{0}'")]
    Duplicate(char),
}

impl Alphabet {
    pub fn new(chars: impl IntoIterator<Item = char>) -> Result<Self, AlphabetError> {
        let chars: Vec<char> = chars.into_iter().collect();
        if chars.is_empty() {
            return Err(AlphabetError::Empty);
        }
        let mut index = HashMap::with_capacity(chars.len());
        for (i, &c) in chars.iter().enumerate() {
            if index.insert(c, SymbolId(i as u32)).is_some() {
                return Err(AlphabetError::Duplicate(c));
            }
        }
        Ok(Alphabet { chars, index })
    }

    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    pub fn id_of(&self, c: char) -> Option<SymbolId> {
        self.index.get(&c).copied()
    }

    pub fn char_of(&self, id: SymbolId) -> char {
        self.chars[id.idx()]
    }

    pub fn chars(&self) -> &[char] {
        &self.chars
    }

    pub fn ids(&self) -> impl Iterator<Item = SymbolId> {
        (0..self.chars.len() as u32).map(SymbolId)
    }

    /// Maps a string to symbol ids; `None` if any scalar is unknown.
    pub fn encode(&self, s: &str) -> Option<Vec<SymbolId>> {
        s.chars().map(|c| self.id_of(c)).collect()
    }

    pub fn render(&self, ids: &[SymbolId]) -> String {
        ids.iter().map(|&id| self.char_of(id)).collect()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.chars.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_follow_declaration_order() {
        let a = Alphabet::new("abc".chars()).unwrap();
        assert_eq!(a.id_of('a'), Some(SymbolId(0)));
        assert_eq!(a.id_of('c'), Some(SymbolId(2)));
        assert_eq!(a.char_of(SymbolId(1)), 'b');
        assert_eq!(a.id_of('z'), None);
    }

    #[test]
    fn rejects_duplicates_and_empty() {
        assert_eq!(Alphabet::new("aba".chars()), Err(AlphabetError::Duplicate('a')));
        assert_eq!(Alphabet::new("".chars()), Err(AlphabetError::Empty));
    }

    #[test]
    fn encode_render_round_trip() {
        let a = Alphabet::new("01".chars()).unwrap();
        let ids = a.encode("0110").unwrap();
        assert_eq!(a.render(&ids), "0110");
        assert_eq!(a.encode("012"), None);
    }
}
