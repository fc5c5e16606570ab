//! JSON wire format for system descriptions.
//!
//! A document is one object whose `kind` selects the flavor:
//!
//! ```json
//! {"kind":"lsystem","alphabet":["a","b","c"],"rules":{"a":"a","b":"ab","c":"cb"},
//!  "coding":{"a":"a","b":"b","c":"c"},"axiom":"c","level":3,"length":6}
//! ```
//!
//! `kind:"nusystem"` uses token arrays for rule and axiom values, where
//! a token is either a plain-symbol string or an extraction object
//! `{"ext":{"sym":"0","level":16,"from":1,"to":5}}`. A plain string of
//! several scalars is accepted as shorthand for consecutive plain
//! tokens; the serializer always writes one scalar per token. `coding`
//! may be omitted and then defaults to the identity. Unknown fields are
//! rejected everywhere.

use serde_json::{Map, Value};

use crate::model::lsystem::{LSystem, LSystemDoc};
use crate::model::nusystem::{NuSystem, NuSystemDoc, NuTokenDoc};

#[derive(thiserror::Error, Debug)]
pub enum JsonError {
    #[error("invalid JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("the document must be a JSON object")]
    NotAnObject,
    #[error("missing field \"{0}\"")]
    MissingField(&'static str),
    #[error("unknown field \"{0}\"")]
    UnknownField(String),
    #[error("field \"{field}\" must be {expected}")]
    WrongType { field: &'static str, expected: &'static str },
    #[error("\"{0}\" is not a single-scalar symbol")]
    BadSymbol(String),
    #[error("unsupported kind \"{0}\": expected \"lsystem\" or \"nusystem\"")]
    UnknownKind(String),
    #[error("bad token in \"{field}\": {reason}")]
    BadToken { field: &'static str, reason: String },
}

/// Either flavor of system description, as parsed from JSON.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnySystemDoc {
    L(LSystemDoc),
    Nu(NuSystemDoc),
}

pub fn parse_system(text: &str) -> Result<AnySystemDoc, JsonError> {
    let value: Value = serde_json::from_str(text)?;
    let obj = value.as_object().ok_or(JsonError::NotAnObject)?;
    let kind = obj
        .get("kind")
        .ok_or(JsonError::MissingField("kind"))?
        .as_str()
        .ok_or(JsonError::WrongType { field: "kind", expected: "a string" })?;
    match kind {
        "lsystem" => Ok(AnySystemDoc::L(parse_lsystem(obj)?)),
        "nusystem" => Ok(AnySystemDoc::Nu(parse_nusystem(obj)?)),
        other => Err(JsonError::UnknownKind(other.to_string())),
    }
}

fn check_fields(obj: &Map<String, Value>, allowed: &[&str]) -> Result<(), JsonError> {
    for key in obj.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(JsonError::UnknownField(key.clone()));
        }
    }
    Ok(())
}

fn one_scalar(s: &str) -> Result<char, JsonError> {
    let mut it = s.chars();
    match (it.next(), it.next()) {
        (Some(c), None) => Ok(c),
        _ => Err(JsonError::BadSymbol(s.to_string())),
    }
}

fn get_u64(obj: &Map<String, Value>, field: &'static str) -> Result<u64, JsonError> {
    obj.get(field)
        .ok_or(JsonError::MissingField(field))?
        .as_u64()
        .ok_or(JsonError::WrongType { field, expected: "a non-negative integer" })
}

fn get_alphabet(obj: &Map<String, Value>) -> Result<Vec<char>, JsonError> {
    let arr = obj
        .get("alphabet")
        .ok_or(JsonError::MissingField("alphabet"))?
        .as_array()
        .ok_or(JsonError::WrongType { field: "alphabet", expected: "an array of symbols" })?;
    arr.iter()
        .map(|v| {
            v.as_str()
                .ok_or(JsonError::WrongType { field: "alphabet", expected: "an array of symbols" })
                .and_then(one_scalar)
        })
        .collect()
}

fn get_coding(obj: &Map<String, Value>) -> Result<Option<Vec<(char, char)>>, JsonError> {
    let Some(value) = obj.get("coding") else {
        return Ok(None);
    };
    let map = value
        .as_object()
        .ok_or(JsonError::WrongType { field: "coding", expected: "an object" })?;
    let mut out = Vec::with_capacity(map.len());
    for (k, v) in map {
        let src = one_scalar(k)?;
        let dst = v
            .as_str()
            .ok_or(JsonError::WrongType { field: "coding", expected: "an object of symbols" })
            .and_then(one_scalar)?;
        out.push((src, dst));
    }
    Ok(Some(out))
}

fn parse_lsystem(obj: &Map<String, Value>) -> Result<LSystemDoc, JsonError> {
    check_fields(obj, &["kind", "alphabet", "rules", "coding", "axiom", "level", "length"])?;
    let alphabet = get_alphabet(obj)?;
    let rules_obj = obj
        .get("rules")
        .ok_or(JsonError::MissingField("rules"))?
        .as_object()
        .ok_or(JsonError::WrongType { field: "rules", expected: "an object" })?;
    let mut rules = Vec::with_capacity(rules_obj.len());
    for (k, v) in rules_obj {
        let sym = one_scalar(k)?;
        let rhs = v
            .as_str()
            .ok_or(JsonError::WrongType { field: "rules", expected: "an object of strings" })?;
        rules.push((sym, rhs.to_string()));
    }
    let axiom = obj
        .get("axiom")
        .ok_or(JsonError::MissingField("axiom"))?
        .as_str()
        .ok_or(JsonError::WrongType { field: "axiom", expected: "a string" })?
        .to_string();
    Ok(LSystemDoc {
        alphabet,
        rules,
        coding: get_coding(obj)?,
        axiom,
        level: get_u64(obj, "level")?,
        length: get_u64(obj, "length")?,
    })
}

fn parse_tokens(value: &Value, field: &'static str) -> Result<Vec<NuTokenDoc>, JsonError> {
    let arr = value
        .as_array()
        .ok_or(JsonError::WrongType { field, expected: "an array of tokens" })?;
    let mut out = Vec::with_capacity(arr.len());
    for item in arr {
        match item {
            Value::String(s) => {
                if s.is_empty() {
                    return Err(JsonError::BadToken {
                        field,
                        reason: "empty string".to_string(),
                    });
                }
                out.extend(s.chars().map(NuTokenDoc::Plain));
            }
            Value::Object(o) => {
                check_fields(o, &["ext"]).map_err(|e| JsonError::BadToken {
                    field,
                    reason: e.to_string(),
                })?;
                let ext = o
                    .get("ext")
                    .ok_or(JsonError::BadToken {
                        field,
                        reason: "object token must have an \"ext\" field".to_string(),
                    })?
                    .as_object()
                    .ok_or(JsonError::BadToken {
                        field,
                        reason: "\"ext\" must be an object".to_string(),
                    })?;
                check_fields(ext, &["sym", "level", "from", "to"]).map_err(|e| {
                    JsonError::BadToken { field, reason: e.to_string() }
                })?;
                let sym = ext
                    .get("sym")
                    .and_then(Value::as_str)
                    .ok_or(JsonError::BadToken {
                        field,
                        reason: "\"sym\" must be a symbol string".to_string(),
                    })
                    .and_then(|s| {
                        one_scalar(s).map_err(|e| JsonError::BadToken {
                            field,
                            reason: e.to_string(),
                        })
                    })?;
                let num = |name: &'static str| -> Result<u64, JsonError> {
                    ext.get(name).and_then(Value::as_u64).ok_or(JsonError::BadToken {
                        field,
                        reason: format!("\"{name}\" must be a non-negative integer"),
                    })
                };
                out.push(NuTokenDoc::Extract {
                    sym,
                    level: num("level")?,
                    from: num("from")?,
                    to: num("to")?,
                });
            }
            other => {
                return Err(JsonError::BadToken {
                    field,
                    reason: format!("unexpected token value {other}"),
                })
            }
        }
    }
    Ok(out)
}

fn parse_nusystem(obj: &Map<String, Value>) -> Result<NuSystemDoc, JsonError> {
    check_fields(obj, &["kind", "alphabet", "rules", "coding", "axiom", "level", "length"])?;
    let alphabet = get_alphabet(obj)?;
    let rules_obj = obj
        .get("rules")
        .ok_or(JsonError::MissingField("rules"))?
        .as_object()
        .ok_or(JsonError::WrongType { field: "rules", expected: "an object" })?;
    let mut rules = Vec::with_capacity(rules_obj.len());
    for (k, v) in rules_obj {
        rules.push((one_scalar(k)?, parse_tokens(v, "rules")?));
    }
    let axiom = parse_tokens(
        obj.get("axiom").ok_or(JsonError::MissingField("axiom"))?,
        "axiom",
    )?;
    Ok(NuSystemDoc {
        alphabet,
        rules,
        coding: get_coding(obj)?,
        axiom,
        level: get_u64(obj, "level")?,
        length: get_u64(obj, "length")?,
    })
}

fn coding_value(coding: &Option<Vec<(char, char)>>, alphabet: &[char]) -> Value {
    let mut map = Map::new();
    match coding {
        Some(entries) => {
            for (src, dst) in entries {
                map.insert(src.to_string(), Value::String(dst.to_string()));
            }
        }
        None => {
            for &c in alphabet {
                map.insert(c.to_string(), Value::String(c.to_string()));
            }
        }
    }
    Value::Object(map)
}

/// Compact single-line JSON with fields in a fixed order.
pub fn lsystem_doc_to_json(doc: &LSystemDoc) -> String {
    let mut root = Map::new();
    root.insert("kind".into(), Value::String("lsystem".into()));
    root.insert(
        "alphabet".into(),
        Value::Array(doc.alphabet.iter().map(|c| Value::String(c.to_string())).collect()),
    );
    let mut rules = Map::new();
    for (sym, rhs) in &doc.rules {
        rules.insert(sym.to_string(), Value::String(rhs.clone()));
    }
    root.insert("rules".into(), Value::Object(rules));
    root.insert("coding".into(), coding_value(&doc.coding, &doc.alphabet));
    root.insert("axiom".into(), Value::String(doc.axiom.clone()));
    root.insert("level".into(), Value::from(doc.level));
    root.insert("length".into(), Value::from(doc.length));
    Value::Object(root).to_string()
}

fn token_value(t: &NuTokenDoc) -> Value {
    match *t {
        NuTokenDoc::Plain(c) => Value::String(c.to_string()),
        NuTokenDoc::Extract { sym, level, from, to } => {
            let mut ext = Map::new();
            ext.insert("sym".into(), Value::String(sym.to_string()));
            ext.insert("level".into(), Value::from(level));
            ext.insert("from".into(), Value::from(from));
            ext.insert("to".into(), Value::from(to));
            let mut wrap = Map::new();
            wrap.insert("ext".into(), Value::Object(ext));
            Value::Object(wrap)
        }
    }
}

pub fn nusystem_doc_to_json(doc: &NuSystemDoc) -> String {
    let mut root = Map::new();
    root.insert("kind".into(), Value::String("nusystem".into()));
    root.insert(
        "alphabet".into(),
        Value::Array(doc.alphabet.iter().map(|c| Value::String(c.to_string())).collect()),
    );
    let mut rules = Map::new();
    for (sym, rhs) in &doc.rules {
        rules.insert(sym.to_string(), Value::Array(rhs.iter().map(token_value).collect()));
    }
    root.insert("rules".into(), Value::Object(rules));
    root.insert("coding".into(), coding_value(&doc.coding, &doc.alphabet));
    root.insert(
        "axiom".into(),
        Value::Array(doc.axiom.iter().map(token_value).collect()),
    );
    root.insert("level".into(), Value::from(doc.level));
    root.insert("length".into(), Value::from(doc.length));
    Value::Object(root).to_string()
}

pub fn lsystem_to_json(sys: &LSystem) -> String {
    lsystem_doc_to_json(&sys.to_doc())
}

pub fn nusystem_to_json(sys: &NuSystem) -> String {
    nusystem_doc_to_json(&sys.to_doc())
}

#[cfg(test)]
mod tests {
    use super::*;

    const LADDER_JSON: &str = r#"{"kind":"lsystem","alphabet":["a","b","c"],"rules":{"a":"a","b":"ab","c":"cb"},"coding":{"a":"a","b":"b","c":"c"},"axiom":"c","level":3,"length":6}"#;

    #[test]
    fn parses_and_reserializes_bit_exact() {
        let AnySystemDoc::L(doc) = parse_system(LADDER_JSON).unwrap() else {
            panic!("wrong kind")
        };
        assert_eq!(doc.alphabet, vec!['a', 'b', 'c']);
        assert_eq!(doc.level, 3);
        assert_eq!(doc.length, 6);
        assert!(doc.validate().is_empty());
        assert_eq!(lsystem_doc_to_json(&doc), LADDER_JSON);
        let sys = doc.compile().unwrap();
        assert_eq!(lsystem_to_json(&sys), LADDER_JSON);
    }

    #[test]
    fn omitted_coding_defaults_to_identity() {
        let without = r#"{"kind":"lsystem","alphabet":["a","b","c"],"rules":{"a":"a","b":"ab","c":"cb"},"axiom":"c","level":3,"length":6}"#;
        let AnySystemDoc::L(doc) = parse_system(without).unwrap() else {
            panic!("wrong kind")
        };
        let sys = doc.compile().unwrap();
        assert!(sys.classify().identity_coding);
        // canonical form always spells the coding out
        assert_eq!(lsystem_to_json(&sys), LADDER_JSON);
    }

    #[test]
    fn rejects_unknown_fields() {
        let with_extra = r#"{"kind":"lsystem","alphabet":["a"],"rules":{"a":"a"},"axiom":"a","level":0,"length":1,"comment":"hi"}"#;
        assert!(matches!(
            parse_system(with_extra),
            Err(JsonError::UnknownField(f)) if f == "comment"
        ));
    }

    #[test]
    fn rejects_unknown_kind_and_bad_scalars() {
        assert!(matches!(
            parse_system(r#"{"kind":"dol"}"#),
            Err(JsonError::UnknownKind(k)) if k == "dol"
        ));
        let two_scalar = r#"{"kind":"lsystem","alphabet":["ab"],"rules":{"ab":"ab"},"axiom":"ab","level":0,"length":2}"#;
        assert!(matches!(parse_system(two_scalar), Err(JsonError::BadSymbol(_))));
    }

    #[test]
    fn nusystem_tokens_round_trip() {
        let text = r#"{"kind":"nusystem","alphabet":["0","1"],"rules":{"0":["0","0"],"1":["1"]},"coding":{"0":"0","1":"1"},"axiom":[{"ext":{"sym":"0","level":16,"from":1,"to":5}},"1"],"level":1,"length":16}"#;
        let AnySystemDoc::Nu(doc) = parse_system(text).unwrap() else {
            panic!("wrong kind")
        };
        assert_eq!(
            doc.axiom[0],
            NuTokenDoc::Extract { sym: '0', level: 16, from: 1, to: 5 }
        );
        assert!(doc.validate().is_empty());
        assert_eq!(nusystem_doc_to_json(&doc), text);
        assert_eq!(nusystem_to_json(&doc.compile().unwrap()), text);
    }

    #[test]
    fn nusystem_multichar_string_means_consecutive_plains() {
        let text = r#"{"kind":"nusystem","alphabet":["0","1"],"rules":{"0":["00"],"1":["1"]},"axiom":["1"],"level":1,"length":4}"#;
        let AnySystemDoc::Nu(doc) = parse_system(text).unwrap() else {
            panic!("wrong kind")
        };
        assert_eq!(doc.rules[0].1, vec![NuTokenDoc::Plain('0'), NuTokenDoc::Plain('0')]);
    }

    #[test]
    fn nusystem_rejects_extra_ext_fields() {
        let text = r#"{"kind":"nusystem","alphabet":["0"],"rules":{"0":["0"]},"axiom":[{"ext":{"sym":"0","level":1,"from":1,"to":1,"step":2}}],"level":1,"length":4}"#;
        assert!(matches!(parse_system(text), Err(JsonError::BadToken { .. })));
    }

    #[test]
    fn level_must_be_an_integer() {
        let text = r#"{"kind":"lsystem","alphabet":["a"],"rules":{"a":"a"},"axiom":"a","level":1.5,"length":1}"#;
        assert!(matches!(
            parse_system(text),
            Err(JsonError::WrongType { field: "level", .. })
        ));
    }
}
