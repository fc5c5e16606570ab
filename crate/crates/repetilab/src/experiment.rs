//! Growth-table experiments: each one sweeps a parameter grid over a
//! family, measures every cell, and emits a table whose final ratio
//! column should hover near a constant when the claimed growth rate is
//! right (delta against sqrt(n), the log-governed measures against
//! log2(n)).
//!
//! Cells run concurrently up to a configured width. Every cell is
//! seeded from (experiment seed, cell index), so row content does not
//! depend on scheduling; a cell that fails or exceeds its time budget
//! becomes an error row and the sweep continues.

use std::sync::mpsc::{self, RecvTimeoutError};
use std::thread;
use std::time::Duration;

use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::engine;
use crate::families::{
    self, gap_encoding_nu, increasing_runs_system, pow2_marks_string, prefixed_pow2_marks,
    random_mark_shifts, FamilyItem,
};
use crate::measures::{delta, lz76, lz_end, r_measure, BwtMode};
use crate::report::{MeasureReport, Table};

pub const EXPERIMENT_NAMES: [&str; 5] = [
    "delta-vs-sqrtn",
    "runs-vs-logn",
    "lzend-vs-logn",
    "encoding-size",
    "aggregate",
];

#[derive(thiserror::Error, Clone, Debug, PartialEq, Eq)]
pub enum ExperimentError {
    #[error("unknown experiment {0:?}")]
    Unknown(String),
}

#[derive(Clone, Debug)]
pub struct ExperimentSpec {
    pub name: String,
    pub values: Vec<u64>,
    pub seed: u64,
    pub jobs: usize,
    pub timeout: Duration,
    pub mode: BwtMode,
}

impl ExperimentSpec {
    pub fn new(name: &str) -> Result<Self, ExperimentError> {
        Ok(ExperimentSpec {
            name: name.to_string(),
            values: default_values(name)?,
            seed: 0,
            jobs: 1,
            timeout: Duration::from_secs(60),
            mode: BwtMode::Rotations,
        })
    }
}

/// The grid an experiment sweeps when none is given. Geometric grids
/// make logarithmic growth show up as equal steps.
pub fn default_values(name: &str) -> Result<Vec<u64>, ExperimentError> {
    let geometric = |lo: u32, hi: u32| (lo..=hi).map(|e| 1u64 << e).collect();
    match name {
        "delta-vs-sqrtn" => Ok(geometric(4, 10)),
        "runs-vs-logn" | "lzend-vs-logn" => Ok(geometric(8, 16)),
        "encoding-size" => Ok(geometric(4, 12)),
        "aggregate" => Ok(vec![]),
        _ => Err(ExperimentError::Unknown(name.to_string())),
    }
}

fn columns(name: &str) -> Result<Vec<&'static str>, ExperimentError> {
    match name {
        "delta-vs-sqrtn" => {
            Ok(vec!["source", "d", "n", "delta_num", "delta_den", "delta", "delta_over_sqrt_n"])
        }
        "runs-vs-logn" => Ok(vec!["source", "n", "r", "r_over_log2_n"]),
        "lzend-vs-logn" => Ok(vec!["source", "n", "len", "z_e", "ze_over_log2_n"]),
        "encoding-size" => Ok(vec![
            "source", "n", "len", "nu_size", "delta_num", "delta_den", "delta", "z", "r",
        ]),
        "aggregate" => Ok(MeasureReport::COLUMNS.to_vec()),
        _ => Err(ExperimentError::Unknown(name.to_string())),
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

fn cell_seed(seed: u64, idx: usize) -> u64 {
    splitmix64(seed ^ splitmix64(idx as u64))
}

fn render(sys: &crate::model::LSystem) -> Result<Vec<u8>, String> {
    let ids = engine::generate(sys).map_err(|e| e.to_string())?;
    Ok(sys.alphabet().render(&ids).into_bytes())
}

fn ratio_f64(r: num_rational::Ratio<u64>) -> f64 {
    r.to_f64().expect("small rational")
}

fn delta_vs_sqrtn_cell(d: u64) -> CellResult {
    let sys = increasing_runs_system(d);
    let w = render(&sys)?;
    let dl = delta(&w);
    let n = w.len() as u64;
    Ok(vec![
        json!(format!("increasing-runs(d={d})")),
        json!(d),
        json!(n),
        json!(*dl.numer()),
        json!(*dl.denom()),
        json!(ratio_f64(dl)),
        json!(ratio_f64(dl) / (n as f64).sqrt()),
    ])
}

fn runs_vs_logn_cell(n: u64, seed: u64, mode: BwtMode) -> CellResult {
    let shifts = random_mark_shifts(n, seed);
    let w = pow2_marks_string(n, &shifts).map_err(|e| e.to_string())?;
    let r = r_measure(w.as_bytes(), mode);
    Ok(vec![
        json!(format!("pow2-marks(n={n},seed={seed})")),
        json!(n),
        json!(r),
        json!(r as f64 / (n as f64).log2()),
    ])
}

fn lzend_vs_logn_cell(n: u64, seed: u64) -> CellResult {
    let shifts = random_mark_shifts(n, seed);
    let w = prefixed_pow2_marks(n, &shifts).map_err(|e| e.to_string())?;
    let ze = lz_end(w.as_bytes()).len();
    Ok(vec![
        json!(format!("prefixed-pow2-marks(n={n},seed={seed})")),
        json!(n),
        json!(w.len()),
        json!(ze),
        json!(ze as f64 / (n as f64).log2()),
    ])
}

fn encoding_size_cell(n: u64, seed: u64, mode: BwtMode) -> CellResult {
    let shifts = random_mark_shifts(n, seed);
    let x = pow2_marks_string(n, &shifts).map_err(|e| e.to_string())?;
    let sys = gap_encoding_nu(&x);
    let ids = engine::nu_generate(&sys).map_err(|e| e.to_string())?;
    let w = sys.alphabet().render(&ids).into_bytes();
    let dl = delta(&w);
    Ok(vec![
        json!(format!("gap-encoding(n={n},seed={seed})")),
        json!(n),
        json!(w.len()),
        json!(sys.size()),
        json!(*dl.numer()),
        json!(*dl.denom()),
        json!(ratio_f64(dl)),
        json!(lz76(&w).len()),
        json!(r_measure(&w, mode)),
    ])
}

/// The cross-family table: one fully measured row per family at a
/// representative size, witness sizes included where a system produced
/// the string.
fn aggregate_cells(mode: BwtMode) -> Vec<Box<CellFn>> {
    let entries: Vec<(&str, &str, u64)> = vec![
        ("increasing-runs", "d", 64),
        ("pow2-marks", "n", 1024),
        ("prefixed-pow2-marks", "n", 1024),
        ("zeros-one", "n", 256),
        ("uniform-pow2", "n", 10),
        ("sqrt-size", "n", 1024),
        ("long-tail", "n", 12),
        ("gap-encoding", "n", 1024),
    ];
    entries
        .into_iter()
        .map(|(family, key, v)| {
            let cell: Box<CellFn> = Box::new(move || {
                let params = [(key.to_string(), v.to_string())].into_iter().collect();
                let items = families::family_iter(family, &params).map_err(|e| e.to_string())?;
                let (label, item) = items.into_iter().next().ok_or("empty family")?;
                let (w, witness) = match item {
                    FamilyItem::Str(s) => (s.into_bytes(), None),
                    FamilyItem::Sys(sys) => (render(&sys)?, Some(sys.size())),
                    FamilyItem::Nu(sys) => {
                        let ids = engine::nu_generate(&sys).map_err(|e| e.to_string())?;
                        (sys.alphabet().render(&ids).into_bytes(), Some(sys.size()))
                    }
                };
                let mut rep = MeasureReport::compute(&label, &w, mode);
                rep.witness_size = witness;
                Ok(rep.row())
            });
            cell
        })
        .collect()
}

type CellResult = Result<Vec<Value>, String>;
type CellFn = dyn FnOnce() -> CellResult + Send;

/// Runs every cell, at most `jobs` at a time, giving each roughly
/// `timeout` of wall clock. Results keep cell order. A cell that
/// panics, errors, or times out yields `Err(message)`; a timed-out
/// cell's thread is abandoned, not cancelled.
fn run_cells(
    cells: Vec<Box<CellFn>>,
    jobs: usize,
    timeout: Duration,
) -> Vec<CellResult> {
    assert!(jobs >= 1);
    let mut results: Vec<Option<CellResult>> = Vec::new();
    results.resize_with(cells.len(), || None);
    let mut queue: Vec<(usize, Box<CellFn>)> = cells.into_iter().enumerate().collect();
    while !queue.is_empty() {
        let batch: Vec<(usize, Box<CellFn>)> =
            queue.drain(..queue.len().min(jobs)).collect();
        let waiting: Vec<(usize, mpsc::Receiver<CellResult>)> = batch
            .into_iter()
            .map(|(idx, cell)| {
                let (tx, rx) = mpsc::channel();
                thread::spawn(move || {
                    let _ = tx.send(cell());
                });
                (idx, rx)
            })
            .collect();
        for (idx, rx) in waiting {
            results[idx] = Some(match rx.recv_timeout(timeout) {
                Ok(res) => res,
                Err(RecvTimeoutError::Timeout) => {
                    Err(format!("timed out after {}s", timeout.as_secs_f64()))
                }
                Err(RecvTimeoutError::Disconnected) => Err("cell panicked".to_string()),
            });
        }
    }
    results.into_iter().map(|r| r.expect("all cells ran")).collect()
}

/// Sweeps the experiment's grid and renders the outcome table. The
/// header comments record everything needed to reproduce the run.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<Table, ExperimentError> {
    let mut cols = columns(&spec.name)?;
    cols.push("error");
    let mut table = Table::new(cols);
    table.comment(format!("tool: repetilab {}", env!("CARGO_PKG_VERSION")));
    table.comment(format!("experiment: {}", spec.name));
    table.comment(format!("seed: {}", spec.seed));
    table.comment(format!("bwt-mode: {}", spec.mode));

    let cells: Vec<Box<CellFn>> = if spec.name == "aggregate" {
        aggregate_cells(spec.mode)
    } else {
        spec.values
            .iter()
            .enumerate()
            .map(|(idx, &v)| {
                let name = spec.name.clone();
                let seed = cell_seed(spec.seed, idx);
                let mode = spec.mode;
                let cell: Box<CellFn> = Box::new(move || match name.as_str() {
                    "delta-vs-sqrtn" => delta_vs_sqrtn_cell(v),
                    "runs-vs-logn" => runs_vs_logn_cell(v, seed, mode),
                    "lzend-vs-logn" => lzend_vs_logn_cell(v, seed),
                    "encoding-size" => encoding_size_cell(v, seed, mode),
                    other => Err(format!("unknown experiment {other:?}")),
                });
                cell
            })
            .collect()
    };

    let width = table.columns.len();
    let labels: Vec<String> = if spec.name == "aggregate" {
        vec![String::new(); 8]
    } else {
        spec.values.iter().map(|v| format!("{}({v})", spec.name)).collect()
    };
    for (idx, outcome) in run_cells(cells, spec.jobs, spec.timeout).into_iter().enumerate() {
        match outcome {
            Ok(mut row) => {
                row.push(Value::Null);
                table.push(row);
            }
            Err(msg) => {
                let mut row = vec![Value::Null; width];
                row[0] = json!(labels[idx]);
                row[width - 1] = json!(msg);
                table.push(row);
            }
        }
    }
    Ok(table)
}
