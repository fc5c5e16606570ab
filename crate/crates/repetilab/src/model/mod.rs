//! System descriptions: alphabets, rule tables, codings, and the two
//! system kinds (plain rewriting systems and extraction-token systems),
//! plus their JSON wire format.

pub mod alphabet;
pub mod json;
pub mod lsystem;
pub mod nusystem;

pub use alphabet::{Alphabet, AlphabetError, SymbolId};
pub use lsystem::{LSystem, LSystemDoc, VariantClasses, Violation};
pub use nusystem::{NuSystem, NuSystemDoc, NuToken, NuTokenDoc};
