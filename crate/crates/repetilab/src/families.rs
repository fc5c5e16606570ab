//! Named string families and the small systems that generate them.
//!
//! Every builder here exists because some measure behaves distinctively
//! on its output: the increasing-runs family keeps system size constant
//! while delta grows like sqrt(n), the power-of-two mark strings keep
//! BWT runs near log n, and the gap-encoding systems compress a whole
//! mark string into O(log n) extraction tokens. Each builder is paired
//! (in its tests) with a direct positional constructor that never touches
//! the rewriting engine.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::engine::{self, EvalError};
use crate::model::{LSystem, LSystemDoc, NuSystem, NuSystemDoc, NuTokenDoc};

#[derive(thiserror::Error, Clone, Debug, PartialEq, Eq)]
pub enum FamilyError {
    #[error("mark {k} may move at most {limit} positions here, got {shift}")]
    ShiftOutOfRange { k: usize, shift: u64, limit: u64 },
    #[error("expected one shift per mark ({expected}), got {got}")]
    ShiftCount { expected: usize, got: usize },
    #[error(
        "square-root system needs floor(sqrt(n)) > 2 and floor(n/floor(sqrt(n))) > 1; n = {n} has neither margin"
    )]
    SqrtDomain { n: u64 },
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("family {family}: {detail}")]
    BadParam { family: String, detail: String },
    #[error(transparent)]
    Eval(#[from] EvalError),
}

fn ladder_doc(level: u64, length: u64) -> LSystemDoc {
    LSystemDoc {
        alphabet: vec!['a', 'b', 'c'],
        rules: vec![('a', "a".into()), ('b', "ab".into()), ('c', "cb".into())],
        coding: None,
        axiom: "c".into(),
        level,
        length,
    }
}

/// The constant-size system whose level-t expansion is
/// `c b a b aa b aaa ...`: each step appends one more `a` to the last
/// run. With level d+1 the denoted string has length 1 + d + d(d+1)/2,
/// one short of the full expansion.
pub fn increasing_runs_system(d: u64) -> LSystem {
    assert!(d >= 1, "need at least one rewriting step");
    ladder_doc(d + 1, 1 + d + d * (d + 1) / 2)
        .compile()
        .expect("shape is fixed and well formed")
}

/// Prefix of the infinite string the increasing-runs system converges to.
pub fn increasing_runs_prefix(n: u64) -> Result<String, EvalError> {
    let sys = increasing_runs_system(1);
    let ids = engine::fixed_point_prefix(&sys, n)?;
    Ok(sys.alphabet().render(&ids))
}

/// Number of marks a length-n mark string carries: one per power of two
/// up to n.
pub fn pow2_mark_count(n: u64) -> usize {
    assert!(n >= 1);
    (64 - n.leading_zeros()) as usize
}

/// All-zero shift vector of the right length for `pow2_marks_string(n, _)`.
pub fn zero_shifts(n: u64) -> Vec<u64> {
    vec![0; pow2_mark_count(n)]
}

/// Binary string of length n with a one for every power of two: the k-th
/// mark starts at position 2^(k-1) and moves `shifts[k-1]` positions
/// forward. Shifts stay strictly below 2^(k-1) and inside the string, so
/// marks can neither collide nor reorder.
pub fn pow2_marks_string(n: u64, shifts: &[u64]) -> Result<String, FamilyError> {
    assert!(n >= 2, "mark strings start at length 2");
    let count = pow2_mark_count(n);
    if shifts.len() != count {
        return Err(FamilyError::ShiftCount { expected: count, got: shifts.len() });
    }
    let mut w = vec![b'0'; n as usize];
    for (i, &shift) in shifts.iter().enumerate() {
        let base = 1u64 << i;
        let limit = (base - 1).min(n - base);
        if shift > limit {
            return Err(FamilyError::ShiftOutOfRange { k: i + 1, shift, limit });
        }
        w[(base + shift - 1) as usize] = b'1';
    }
    Ok(String::from_utf8(w).expect("ascii"))
}

/// A shift vector drawn uniformly within the per-mark bounds,
/// reproducible from the seed.
pub fn random_mark_shifts(n: u64, seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..pow2_mark_count(n))
        .map(|i| {
            let base = 1u64 << i;
            let limit = (base - 1).min(n - base);
            rng.gen_range(0..=limit)
        })
        .collect()
}

/// `0^n` followed by the length-n mark string. The padding drags every
/// copy source across the midpoint, which is what stresses parsers whose
/// sources must end at phrase boundaries.
pub fn prefixed_pow2_marks(n: u64, shifts: &[u64]) -> Result<String, FamilyError> {
    let marks = pow2_marks_string(n, shifts)?;
    let mut w = String::with_capacity(2 * n as usize);
    for _ in 0..n {
        w.push('0');
    }
    w.push_str(&marks);
    Ok(w)
}

/// Constant-size system for `0^n 1`: the axiom `1` swallows one more
/// leading zero per level.
pub fn zeros_one_system(n: u64) -> LSystem {
    assert!(n >= 1);
    LSystemDoc {
        alphabet: vec!['0', '1'],
        rules: vec![('0', "0".into()), ('1', "01".into())],
        coding: None,
        axiom: "1".into(),
        level: n,
        length: n + 1,
    }
    .compile()
    .expect("shape is fixed and well formed")
}

/// Uniform doubling system for `0^(2^n) 1`, cut out of the expansion of
/// `01` one symbol past the zeros.
pub fn uniform_pow2_system(n: u64) -> LSystem {
    assert!((1..=62).contains(&n), "length 2^n + 1 must fit in u64");
    LSystemDoc {
        alphabet: vec!['0', '1'],
        rules: vec![('0', "00".into()), ('1', "11".into())],
        coding: None,
        axiom: "01".into(),
        level: n,
        length: (1u64 << n) + 1,
    }
    .compile()
    .expect("shape is fixed and well formed")
}

/// System of size about 4*sqrt(n) for `0^n 1`. Writing n = k*r + j with
/// r = floor(sqrt(n)), three levels lay out k blocks of r zeros plus a
/// tail; every symbol except `1` codes to `0`. Needs r > 2 and k > 1 for
/// the rule bodies to be well formed (every n >= 9 qualifies).
pub fn sqrt_size_system(n: u64) -> Result<LSystem, FamilyError> {
    let r = n.isqrt();
    if r <= 2 || n / r <= 1 {
        return Err(FamilyError::SqrtDomain { n });
    }
    let k = n / r;
    let j = n - k * r;
    let mut b_rule = "c".repeat((k - 1) as usize);
    b_rule.push('d');
    let mut d_rule = "0".repeat((r - 3 + j) as usize);
    d_rule.push('1');
    Ok(LSystemDoc {
        alphabet: vec!['a', 'b', 'c', 'd', '0', '1'],
        rules: vec![
            ('a', "ab".into()),
            ('b', b_rule),
            ('c', "0".repeat((r - 1) as usize)),
            ('d', d_rule),
            ('0', "0".into()),
            ('1', "1".into()),
        ],
        coding: Some(vec![
            ('a', '0'),
            ('b', '0'),
            ('c', '0'),
            ('d', '0'),
            ('0', '0'),
            ('1', '1'),
        ]),
        axiom: "a".into(),
        level: 3,
        length: n + 1,
    }
    .compile()
    .expect("shape checked above"))
}

/// System for `0^n 1 0^(2^n)`: the `2`s tick off n steps on the left
/// while the zeros double on the right, and the coding folds the ticks
/// into zeros. Its one length-1 rule keeps the system out of the
/// all-rules-expanding class no matter how large the output grows.
pub fn long_tail_system(n: u64) -> LSystem {
    assert!((1..=62).contains(&n), "length 2^n + n + 1 must fit in u64");
    LSystemDoc {
        alphabet: vec!['0', '1', '2'],
        rules: vec![('0', "00".into()), ('1', "21".into()), ('2', "2".into())],
        coding: Some(vec![('0', '0'), ('1', '1'), ('2', '0')]),
        axiom: "10".into(),
        level: n,
        length: (1u64 << n) + n + 1,
    }
    .compile()
    .expect("shape is fixed and well formed")
}

/// Encodes a binary string x as an extraction-token system of size
/// linear in the number of ones: each maximal zero run becomes one
/// extraction into the doubling rule `0 -> 00`, and a final token
/// appends the length-|x| prefix of the increasing-runs fixed point,
/// so the system denotes x followed by that prefix (length 2|x|).
pub fn gap_encoding_nu(x: &str) -> NuSystem {
    assert!(!x.is_empty(), "need a nonempty string");
    assert!(x.bytes().all(|b| b == b'0' || b == b'1'), "binary input only");
    let m = x.len() as u64;
    let mut axiom = Vec::new();
    let mut gap = 0u64;
    for b in x.bytes() {
        if b == b'0' {
            gap += 1;
        } else {
            if gap > 0 {
                axiom.push(NuTokenDoc::Extract { sym: '0', level: m, from: 1, to: gap });
                gap = 0;
            }
            axiom.push(NuTokenDoc::Plain('1'));
        }
    }
    if gap > 0 {
        axiom.push(NuTokenDoc::Extract { sym: '0', level: m, from: 1, to: gap });
    }
    axiom.push(NuTokenDoc::Extract { sym: 'c', level: m, from: 1, to: m });
    let plain = |s: &str| s.chars().map(NuTokenDoc::Plain).collect::<Vec<_>>();
    NuSystemDoc {
        alphabet: vec!['0', '1', 'a', 'b', 'c'],
        rules: vec![
            ('0', plain("00")),
            ('1', plain("1")),
            ('a', plain("a")),
            ('b', plain("ab")),
            ('c', plain("cb")),
        ],
        coding: None,
        axiom,
        level: 1,
        length: 2 * m,
    }
    .compile()
    .expect("construction satisfies every bound")
}

/// One item a family hands to the harness: a finished string, or a
/// system still to be run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyItem {
    Str(String),
    Sys(LSystem),
    Nu(NuSystem),
}

impl FamilyItem {
    pub fn kind(&self) -> &'static str {
        match self {
            FamilyItem::Str(_) => "string",
            FamilyItem::Sys(_) => "system",
            FamilyItem::Nu(_) => "nu-system",
        }
    }
}

pub const FAMILY_NAMES: [&str; 8] = [
    "increasing-runs",
    "pow2-marks",
    "prefixed-pow2-marks",
    "zeros-one",
    "uniform-pow2",
    "sqrt-size",
    "long-tail",
    "gap-encoding",
];

fn parse_value(tok: &str) -> Result<u64, String> {
    if let Some(exp) = tok.strip_prefix("2^") {
        let e: u32 = exp.parse().map_err(|_| format!("bad exponent in {tok:?}"))?;
        if e > 63 {
            return Err(format!("2^{e} does not fit in u64"));
        }
        Ok(1u64 << e)
    } else {
        tok.parse().map_err(|_| format!("bad integer {tok:?}"))
    }
}

/// Parses a parameter value list: a single value (`12`, `2^10`), an
/// inclusive arithmetic range (`1..50`), or a geometric range of powers
/// (`2^4..2^12`, doubling).
pub fn parse_param_values(s: &str) -> Result<Vec<u64>, String> {
    match s.split_once("..") {
        None => Ok(vec![parse_value(s)?]),
        Some((lo, hi)) => {
            if lo.starts_with("2^") != hi.starts_with("2^") {
                return Err(format!("range {s:?} mixes plain and 2^ endpoints"));
            }
            let (lo_v, hi_v) = (parse_value(lo)?, parse_value(hi)?);
            if lo_v > hi_v {
                return Err(format!("empty range {s:?}"));
            }
            if lo.starts_with("2^") {
                Ok(std::iter::successors(Some(lo_v), |v| v.checked_mul(2))
                    .take_while(|&v| v <= hi_v)
                    .collect())
            } else {
                Ok((lo_v..=hi_v).collect())
            }
        }
    }
}

struct FamilySpec {
    name: &'static str,
    param: &'static str,
    takes_seed: bool,
}

fn family_spec(name: &str) -> Result<FamilySpec, FamilyError> {
    let (param, takes_seed) = match name {
        "increasing-runs" => ("d", false),
        "pow2-marks" | "prefixed-pow2-marks" | "gap-encoding" => ("n", true),
        "zeros-one" | "uniform-pow2" | "sqrt-size" | "long-tail" => ("n", false),
        _ => return Err(FamilyError::UnknownFamily(name.to_string())),
    };
    let name = FAMILY_NAMES
        .iter()
        .find(|&&f| f == name)
        .expect("matched above");
    Ok(FamilySpec { name, param, takes_seed })
}

/// Instantiates a family over a parameter list, labelling each item so
/// downstream tables can cite their source. Mark-string families accept
/// an optional `seed` for random shifts; without one the shifts are
/// zero.
pub fn family_iter(
    name: &str,
    params: &BTreeMap<String, String>,
) -> Result<Vec<(String, FamilyItem)>, FamilyError> {
    let spec = family_spec(name)?;
    let bad = |detail: String| FamilyError::BadParam { family: spec.name.to_string(), detail };
    let mut seed = None;
    for key in params.keys() {
        match key.as_str() {
            "seed" if spec.takes_seed => {
                let raw = &params["seed"];
                seed = Some(raw.parse::<u64>().map_err(|_| bad(format!("bad seed {raw:?}")))?);
            }
            k if k == spec.param => {}
            other => return Err(bad(format!("unexpected parameter {other:?}"))),
        }
    }
    let values = params
        .get(spec.param)
        .ok_or_else(|| bad(format!("missing parameter {:?}", spec.param)))
        .and_then(|raw| parse_param_values(raw).map_err(bad))?;

    let mut items = Vec::with_capacity(values.len());
    for &v in &values {
        let label = match seed {
            Some(s) => format!("{}({}={v},seed={s})", spec.name, spec.param),
            None => format!("{}({}={v})", spec.name, spec.param),
        };
        let shifts = |v: u64| match seed {
            Some(s) => random_mark_shifts(v, s),
            None => zero_shifts(v),
        };
        let item = match spec.name {
            "increasing-runs" => {
                if v == 0 {
                    return Err(bad("d starts at 1".into()));
                }
                FamilyItem::Sys(increasing_runs_system(v))
            }
            "pow2-marks" => {
                if v < 2 {
                    return Err(bad("n starts at 2".into()));
                }
                FamilyItem::Str(pow2_marks_string(v, &shifts(v))?)
            }
            "prefixed-pow2-marks" => {
                if v < 2 {
                    return Err(bad("n starts at 2".into()));
                }
                FamilyItem::Str(prefixed_pow2_marks(v, &shifts(v))?)
            }
            "zeros-one" => {
                if v == 0 {
                    return Err(bad("n starts at 1".into()));
                }
                FamilyItem::Sys(zeros_one_system(v))
            }
            "uniform-pow2" => {
                if !(1..=62).contains(&v) {
                    return Err(bad("n must be within 1..=62".into()));
                }
                FamilyItem::Sys(uniform_pow2_system(v))
            }
            "sqrt-size" => FamilyItem::Sys(sqrt_size_system(v)?),
            "long-tail" => {
                if !(1..=62).contains(&v) {
                    return Err(bad("n must be within 1..=62".into()));
                }
                FamilyItem::Sys(long_tail_system(v))
            }
            "gap-encoding" => {
                if v < 2 {
                    return Err(bad("n starts at 2".into()));
                }
                FamilyItem::Nu(gap_encoding_nu(&pow2_marks_string(v, &shifts(v))?))
            }
            _ => unreachable!(),
        };
        items.push((label, item));
    }
    Ok(items)
}
