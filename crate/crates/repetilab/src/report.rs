//! Measured rows and the tables that carry them to CSV or JSON.

use num_rational::Ratio;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::exact::{smallest_bms, ExactError};
use crate::measures::{delta, lz76, lz_end, lz_no, r_measure, rle_runs, BwtMode};

/// Every repetitiveness measure of one string, labelled by where the
/// string came from. `b` is present only when the brute-force search was
/// requested and feasible; `witness_size` only when the string was
/// produced by a system whose size is a compressibility witness.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasureReport {
    pub source: String,
    pub n: u64,
    pub delta: Ratio<u64>,
    pub r: u64,
    pub z: u64,
    pub z_no: u64,
    pub z_e: u64,
    pub runs_w: u64,
    pub b: Option<u64>,
    pub witness_size: Option<u64>,
}

impl MeasureReport {
    /// Computes every always-on measure of `w`.
    pub fn compute(source: &str, w: &[u8], mode: BwtMode) -> Self {
        assert!(!w.is_empty(), "measures are defined for nonempty strings");
        MeasureReport {
            source: source.to_string(),
            n: w.len() as u64,
            delta: delta(w),
            r: r_measure(w, mode),
            z: lz76(w).len(),
            z_no: lz_no(w).len(),
            z_e: lz_end(w).len(),
            runs_w: rle_runs(w),
            b: None,
            witness_size: None,
        }
    }

    /// Adds the brute-forced smallest-macro-scheme size; feasible only
    /// for very short strings.
    pub fn with_b(mut self, w: &[u8], limit: usize) -> Result<Self, ExactError> {
        self.b = Some(smallest_bms(w, limit)?.b());
        Ok(self)
    }

    pub fn with_witness_size(mut self, size: u64) -> Self {
        self.witness_size = Some(size);
        self
    }

    pub const COLUMNS: [&'static str; 12] = [
        "source", "n", "delta_num", "delta_den", "delta", "r", "z", "z_no", "z_e", "runs_w",
        "b", "witness_size",
    ];

    pub fn row(&self) -> Vec<Value> {
        vec![
            json!(self.source),
            json!(self.n),
            json!(*self.delta.numer()),
            json!(*self.delta.denom()),
            json!(self.delta.to_f64().expect("small rational")),
            json!(self.r),
            json!(self.z),
            json!(self.z_no),
            json!(self.z_e),
            json!(self.runs_w),
            self.b.map_or(Value::Null, |b| json!(b)),
            self.witness_size.map_or(Value::Null, |s| json!(s)),
        ]
    }
}

/// A small result table: comment lines (provenance: tool version, seed,
/// BWT mode), a header, and rows of JSON scalars. One representation,
/// rendered either as commented CSV or as a JSON document.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub comments: Vec<String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(columns: impl IntoIterator<Item = impl Into<String>>) -> Self {
        Table {
            comments: Vec::new(),
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn comment(&mut self, line: impl Into<String>) {
        self.comments.push(line.into());
    }

    pub fn push(&mut self, row: Vec<Value>) {
        assert_eq!(row.len(), self.columns.len(), "ragged row");
        self.rows.push(row);
    }

    pub fn from_reports(reports: &[MeasureReport], mode: BwtMode) -> Self {
        let mut t = Table::new(MeasureReport::COLUMNS);
        t.comment(format!("bwt-mode: {mode}"));
        for rep in reports {
            t.push(rep.row());
        }
        t
    }

    /// CSV with `#`-prefixed comment lines before the header.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for c in &self.comments {
            out.push_str("# ");
            out.push_str(c);
            out.push('\n');
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(csv_cell).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// JSON document with the same content: comments, then one object
    /// per row keyed by column.
    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                Value::Object(
                    self.columns
                        .iter()
                        .map(String::clone)
                        .zip(row.iter().cloned())
                        .collect(),
                )
            })
            .collect();
        let doc = json!({ "comments": self.comments, "rows": rows });
        let mut text = serde_json::to_string_pretty(&doc).expect("table serializes");
        text.push('\n');
        text
    }
}

fn csv_cell(v: &Value) -> String {
    let raw = match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    if raw.contains(',') || raw.contains('"') || raw.contains('\n') {
        format!("\"{}\"", raw.replace('"', "\"\""))
    } else {
        raw
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::DEFAULT_BMS_LIMIT;

    #[test]
    fn measures_of_a_known_string() {
        let rep = MeasureReport::compute("test", b"abab", BwtMode::Rotations);
        assert_eq!(rep.n, 4);
        assert_eq!(rep.delta, Ratio::new(2, 1));
        assert_eq!(rep.r, 2); // bbaa
        assert_eq!(rep.z, 3);
        assert_eq!(rep.z_e, 3);
        assert_eq!(rep.runs_w, 4);
        assert_eq!(rep.b, None);
        let rep = rep.with_b(b"abab", DEFAULT_BMS_LIMIT).unwrap();
        assert_eq!(rep.b, Some(3));
    }

    #[test]
    fn csv_escapes_and_orders_columns() {
        let rep = MeasureReport::compute("x(n=1,seed=2)", b"aa", BwtMode::Rotations);
        let t = Table::from_reports(&[rep], BwtMode::Rotations);
        let csv = t.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("# bwt-mode: rotations"));
        assert_eq!(
            lines.next(),
            Some("source,n,delta_num,delta_den,delta,r,z,z_no,z_e,runs_w,b,witness_size")
        );
        assert_eq!(lines.next(), Some("\"x(n=1,seed=2)\",2,1,1,1.0,1,2,2,2,1,,"));
    }

    #[test]
    fn json_mirrors_the_rows() {
        let rep = MeasureReport::compute("w", b"ab", BwtMode::Sentinel)
            .with_witness_size(8);
        let t = Table::from_reports(&[rep], BwtMode::Sentinel);
        let doc: Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(doc["rows"][0]["source"], json!("w"));
        assert_eq!(doc["rows"][0]["r"], json!(3));
        assert_eq!(doc["rows"][0]["b"], Value::Null);
        assert_eq!(doc["rows"][0]["witness_size"], json!(8));
        assert_eq!(doc["comments"][0], json!("bwt-mode: sentinel"));
    }
}
