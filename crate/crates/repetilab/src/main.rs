use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use repetilab::engine::{
    expand_full, extract, fixed_point_prefix, generate, nu_generate, resolve_extraction,
    EvalError, DEFAULT_EXPAND_GUARD,
};
use repetilab::exact::{
    bounded_smallest_lsystem, smallest_bms, BmsSource, ExactError, LBudget, DEFAULT_BMS_LIMIT,
};
use repetilab::experiment::{run_experiment, ExperimentSpec, EXPERIMENT_NAMES};
use repetilab::families::{family_iter, parse_param_values, FamilyItem, FAMILY_NAMES};
use repetilab::measures::BwtMode;
use repetilab::model::json::{lsystem_doc_to_json, nusystem_doc_to_json, parse_system, AnySystemDoc};
use repetilab::model::{LSystem, NuSystem};
use repetilab::report::{MeasureReport, Table};
use repetilab::verify;

#[derive(Parser)]
#[command(
    name = "repetilab",
    version,
    about = "Workbench for repetitiveness measures and rewriting-system string representations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Table output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write output to this file instead of standard output
    #[arg(long, short = 'o', global = true)]
    output: Option<PathBuf>,
    /// Seed for everything randomized
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Concurrent cells in experiments (default: available cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Per-cell timeout in seconds for experiments
    #[arg(long, global = true, default_value_t = 60)]
    timeout: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BwtModeArg {
    Rotations,
    Sentinel,
}

impl From<BwtModeArg> for BwtMode {
    fn from(m: BwtModeArg) -> Self {
        match m {
            BwtModeArg::Rotations => BwtMode::Rotations,
            BwtModeArg::Sentinel => BwtMode::Sentinel,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the string a system denotes, or a slice of an expansion
    Expand(ExpandArgs),
    /// Check a system description, printing every violation found
    Validate {
        /// JSON system description
        #[arg(long)]
        system: PathBuf,
    },
    /// Compute repetitiveness measures, one table row per string
    Measure(MeasureArgs),
    /// Print members of a named string or system family
    Family(FamilyArgs),
    /// Exhaustive smallest-witness searches on short strings
    Bruteforce(BruteforceArgs),
    /// Print the structural classes a rewriting system falls into
    Classify {
        /// JSON system description
        #[arg(long)]
        system: PathBuf,
    },
    /// Run a growth-table experiment over a parameter grid
    Experiment(ExperimentArgs),
    /// Run the self-check suite
    Verify {
        /// quick runs the first six checks on reduced grids
        #[arg(long, value_enum, default_value_t = LevelArg::Quick)]
        level: LevelArg,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
}

#[derive(Args)]
struct ExpandArgs {
    /// JSON system description
    #[arg(long)]
    system: PathBuf,
    /// Print the first M symbols of the fixed point instead
    #[arg(long, value_name = "M")]
    prefix: Option<u64>,
    /// Print one symbol's expansion slice: SYM,LEVEL,FROM,TO (1-based)
    #[arg(long, value_name = "SYM,LEVEL,FROM,TO")]
    slice: Option<String>,
    /// Print the whole final-level expansion, not the denoted prefix
    #[arg(long)]
    full: bool,
    /// Escape symbols outside printable ASCII
    #[arg(long)]
    hex: bool,
    /// Abort expansions longer than this many symbols
    #[arg(long, default_value_t = DEFAULT_EXPAND_GUARD)]
    guard: u64,
}

#[derive(Args)]
struct MeasureArgs {
    /// Read the subject string from a file
    #[arg(long, conflicts_with_all = ["text", "family"])]
    input: Option<PathBuf>,
    /// Subject string given inline
    #[arg(long, conflicts_with = "family")]
    text: Option<String>,
    /// Family spec NAME:K=V,... (for example pow2-marks:n=2^8,seed=7)
    #[arg(long)]
    family: Option<String>,
    /// Comma list out of delta,r,z,zno,ze,runs,b (default: all but b)
    #[arg(long)]
    measures: Option<String>,
    /// BWT definition behind the r column
    #[arg(long, value_enum, default_value_t = BwtModeArg::Rotations)]
    bwt_mode: BwtModeArg,
    /// Longest input the exhaustive search behind b accepts
    #[arg(long, default_value_t = DEFAULT_BMS_LIMIT)]
    b_limit: usize,
}

#[derive(Args)]
struct FamilyArgs {
    /// Family name
    #[arg(long)]
    name: String,
    /// Family parameter K=V; V may be a range like 1..50 or 2^4..2^12
    #[arg(long = "param", value_name = "K=V")]
    params: Vec<String>,
    /// Print denoted strings or system descriptions
    #[arg(long, value_enum, default_value_t = Emit::String)]
    emit: Emit,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    String,
    System,
}

#[derive(Args)]
struct BruteforceArgs {
    /// Which witness to search for
    #[arg(long, value_enum)]
    what: What,
    /// Read the subject string from a file
    #[arg(long, conflicts_with = "text")]
    input: Option<PathBuf>,
    /// Subject string given inline
    #[arg(long)]
    text: Option<String>,
    /// Budget overrides K=V: limit (bms); sigma, size, level, nodes (lsystem)
    #[arg(long)]
    budget: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum What {
    /// Smallest bidirectional copy scheme, exact
    Bms,
    /// Smallest in-budget rewriting system, exact within its class
    Lsystem,
}

#[derive(Args)]
struct ExperimentArgs {
    /// Experiment name
    #[arg(long)]
    name: String,
    /// Override the parameter grid, for example 2^4..2^10 or 1..50
    #[arg(long)]
    values: Option<String>,
    /// BWT definition used wherever r is computed
    #[arg(long, value_enum, default_value_t = BwtModeArg::Rotations)]
    bwt_mode: BwtModeArg,
}

/// A command failure: what to print on standard error and the exit
/// code. Code 1 means the subject failed a check, 2 a usage problem,
/// 3 a resource cap.
struct Failure {
    code: u8,
    message: Option<String>,
}

impl Failure {
    fn failed(msg: impl Into<String>) -> Self {
        Failure { code: 1, message: Some(msg.into()) }
    }

    fn silent(code: u8) -> Self {
        Failure { code, message: None }
    }

    fn usage(msg: impl Into<String>) -> Self {
        Failure { code: 2, message: Some(msg.into()) }
    }

    fn resource(msg: impl Into<String>) -> Self {
        Failure { code: 3, message: Some(msg.into()) }
    }
}

fn eval_failure(e: EvalError) -> Failure {
    match e {
        EvalError::ExpansionTooLarge { .. } | EvalError::TableTooLarge { .. } => {
            Failure::resource(e.to_string())
        }
        EvalError::BadSlice { .. } => Failure::usage(e.to_string()),
        _ => Failure::failed(e.to_string()),
    }
}

fn exact_failure(e: ExactError) -> Failure {
    Failure::resource(e.to_string())
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => {}
        Err(f) => {
            if let Some(msg) = f.message {
                eprintln!("error: {msg}");
            }
            std::process::exit(f.code as i32);
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Expand(args) => cmd_expand(&cli, args),
        Command::Validate { system } => cmd_validate(&cli, system),
        Command::Measure(args) => cmd_measure(&cli, args),
        Command::Family(args) => cmd_family(&cli, args),
        Command::Bruteforce(args) => cmd_bruteforce(&cli, args),
        Command::Classify { system } => cmd_classify(&cli, system),
        Command::Experiment(args) => cmd_experiment(&cli, args),
        Command::Verify { level } => cmd_verify(&cli, *level),
    }
}

fn write_out(cli: &Cli, text: &str) -> Result<(), Failure> {
    match &cli.output {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_to_string(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

fn load_system(path: &PathBuf) -> Result<AnySystemDoc, Failure> {
    let text = read_to_string(path)?;
    parse_system(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn compile_lsystem(doc: &repetilab::model::LSystemDoc) -> Result<LSystem, Failure> {
    doc.compile().map_err(|vs| {
        Failure::failed(
            vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("\n"),
        )
    })
}

fn compile_nusystem(doc: &repetilab::model::NuSystemDoc) -> Result<NuSystem, Failure> {
    doc.compile().map_err(|vs| {
        Failure::failed(
            vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("\n"),
        )
    })
}

fn printable(s: &str, hex: bool) -> String {
    if !hex {
        return s.to_string();
    }
    s.chars()
        .map(|c| {
            if (' '..='~').contains(&c) {
                c.to_string()
            } else {
                c.escape_unicode().to_string()
            }
        })
        .collect()
}

fn parse_slice(spec: &str) -> Result<(char, u64, u64, u64), Failure> {
    let parts: Vec<&str> = spec.split(',').collect();
    let bad = || Failure::usage(format!("slice {spec:?} is not SYM,LEVEL,FROM,TO"));
    if parts.len() != 4 {
        return Err(bad());
    }
    let mut chars = parts[0].chars();
    let sym = match (chars.next(), chars.next()) {
        (Some(c), None) => c,
        _ => return Err(bad()),
    };
    let nums: Vec<u64> = parts[1..]
        .iter()
        .map(|p| p.parse::<u64>())
        .collect::<Result<_, _>>()
        .map_err(|_| bad())?;
    Ok((sym, nums[0], nums[1], nums[2]))
}

fn cmd_expand(cli: &Cli, args: &ExpandArgs) -> Result<(), Failure> {
    if args.prefix.is_some() as u8 + args.slice.is_some() as u8 + args.full as u8 > 1 {
        return Err(Failure::usage("choose at most one of --prefix, --slice, --full"));
    }
    let rendered = match load_system(&args.system)? {
        AnySystemDoc::L(doc) => {
            let sys = compile_lsystem(&doc)?;
            let ids = if let Some((sym, level, from, to)) = args.slice.as_deref().map(parse_slice).transpose()? {
                let id = sys
                    .alphabet()
                    .id_of(sym)
                    .ok_or_else(|| Failure::usage(format!("symbol {sym:?} is not in the alphabet")))?;
                extract(&sys, id, level, from, to).map_err(eval_failure)?
            } else if let Some(m) = args.prefix {
                fixed_point_prefix(&sys, m).map_err(eval_failure)?
            } else if args.full {
                expand_full(&sys, args.guard).map_err(eval_failure)?
            } else {
                generate(&sys).map_err(eval_failure)?
            };
            sys.alphabet().render(&ids)
        }
        AnySystemDoc::Nu(doc) => {
            let sys = compile_nusystem(&doc)?;
            if args.prefix.is_some() {
                return Err(Failure::usage(
                    "--prefix needs a fixed point; extraction systems denote one finite string",
                ));
            }
            let ids = if let Some((sym, level, from, to)) = args.slice.as_deref().map(parse_slice).transpose()? {
                let id = sys
                    .alphabet()
                    .id_of(sym)
                    .ok_or_else(|| Failure::usage(format!("symbol {sym:?} is not in the alphabet")))?;
                resolve_extraction(&sys, id, level, from, to).map_err(eval_failure)?
            } else {
                nu_generate(&sys).map_err(eval_failure)?
            };
            sys.alphabet().render(&ids)
        }
    };
    write_out(cli, &format!("{}\n", printable(&rendered, args.hex)))
}

fn cmd_validate(cli: &Cli, path: &PathBuf) -> Result<(), Failure> {
    let violations = match load_system(path)? {
        AnySystemDoc::L(doc) => doc.validate(),
        AnySystemDoc::Nu(doc) => doc.validate(),
    };
    if violations.is_empty() {
        write_out(cli, "ok\n")?;
        Ok(())
    } else {
        let mut lines = String::new();
        for v in &violations {
            lines.push_str(&format!("{v}\n"));
        }
        write_out(cli, &lines)?;
        Err(Failure::silent(1))
    }
}

const MEASURE_NAMES: [(&str, &[&str]); 7] = [
    ("delta", &["delta_num", "delta_den", "delta"]),
    ("r", &["r"]),
    ("z", &["z"]),
    ("zno", &["z_no"]),
    ("ze", &["z_e"]),
    ("runs", &["runs_w"]),
    ("b", &["b"]),
];

fn parse_measure_list(list: Option<&str>) -> Result<Vec<&'static str>, Failure> {
    let Some(list) = list else {
        return Ok(MEASURE_NAMES[..6].iter().map(|(n, _)| *n).collect());
    };
    let mut picked = Vec::new();
    for tok in list.split(',') {
        let tok = tok.trim();
        let known = MEASURE_NAMES
            .iter()
            .map(|(n, _)| *n)
            .find(|n| *n == tok)
            .ok_or_else(|| {
                Failure::usage(format!(
                    "unknown measure {tok:?}; choose from {}",
                    MEASURE_NAMES.map(|(n, _)| n).join(", ")
                ))
            })?;
        if !picked.contains(&known) {
            picked.push(known);
        }
    }
    Ok(picked)
}

/// Splits NAME:K=V,... into the family name and its parameter map.
fn parse_family_spec(spec: &str) -> Result<(String, BTreeMap<String, String>), Failure> {
    let (name, rest) = match spec.split_once(':') {
        Some((n, r)) => (n, Some(r)),
        None => (spec, None),
    };
    let mut params = BTreeMap::new();
    if let Some(rest) = rest {
        for pair in rest.split(',') {
            let (k, v) = pair
                .split_once('=')
                .ok_or_else(|| Failure::usage(format!("family parameter {pair:?} is not K=V")))?;
            params.insert(k.trim().to_string(), v.trim().to_string());
        }
    }
    Ok((name.to_string(), params))
}

/// Resolves one family item to the string it denotes, plus the
/// representation size when a system produced it.
fn item_string(item: &FamilyItem) -> Result<(String, Option<u64>), Failure> {
    match item {
        FamilyItem::Str(s) => Ok((s.clone(), None)),
        FamilyItem::Sys(sys) => {
            let ids = generate(sys).map_err(eval_failure)?;
            Ok((sys.alphabet().render(&ids), Some(sys.size())))
        }
        FamilyItem::Nu(sys) => {
            let ids = nu_generate(sys).map_err(eval_failure)?;
            Ok((sys.alphabet().render(&ids), Some(sys.size())))
        }
    }
}

fn cmd_measure(cli: &Cli, args: &MeasureArgs) -> Result<(), Failure> {
    let picked = parse_measure_list(args.measures.as_deref())?;
    let mode: BwtMode = args.bwt_mode.into();

    let mut subjects: Vec<(String, String, Option<u64>)> = Vec::new();
    if let Some(text) = &args.text {
        subjects.push(("text".into(), text.clone(), None));
    } else if let Some(path) = &args.input {
        let raw = read_to_string(path)?;
        let trimmed = raw.strip_suffix('\n').unwrap_or(&raw);
        let trimmed = trimmed.strip_suffix('\r').unwrap_or(trimmed);
        let label = path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        subjects.push((label, trimmed.to_string(), None));
    } else if let Some(spec) = &args.family {
        let (name, params) = parse_family_spec(spec)?;
        let items = family_iter(&name, &params).map_err(|e| Failure::usage(e.to_string()))?;
        for (label, item) in items {
            let (s, size) = item_string(&item)?;
            subjects.push((label, s, size));
        }
    } else {
        return Err(Failure::usage("give a subject: --text, --input, or --family"));
    }

    let mut reports = Vec::new();
    for (label, s, size) in &subjects {
        if s.is_empty() {
            return Err(Failure::usage(format!("{label}: cannot measure the empty string")));
        }
        let mut report = MeasureReport::compute(label, s.as_bytes(), mode);
        if picked.contains(&"b") {
            report = report.with_b(s.as_bytes(), args.b_limit).map_err(exact_failure)?;
        }
        if let Some(size) = size {
            report = report.with_witness_size(*size);
        }
        reports.push(report);
    }

    let mut table = Table::from_reports(&reports, mode);
    blank_unpicked(&mut table, &picked);
    emit_table(cli, &table)
}

/// Clears the columns of measures that were not asked for.
fn blank_unpicked(table: &mut Table, picked: &[&str]) {
    let mut drop_cols: Vec<usize> = Vec::new();
    for (name, cols) in MEASURE_NAMES {
        if picked.contains(&name) {
            continue;
        }
        for col in cols {
            if let Some(i) = table.columns.iter().position(|c| c == col) {
                drop_cols.push(i);
            }
        }
    }
    for row in &mut table.rows {
        for &i in &drop_cols {
            row[i] = Value::Null;
        }
    }
}

fn emit_table(cli: &Cli, table: &Table) -> Result<(), Failure> {
    let text = match cli.format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    };
    write_out(cli, &text)
}

fn cmd_family(cli: &Cli, args: &FamilyArgs) -> Result<(), Failure> {
    let mut params = BTreeMap::new();
    for pair in &args.params {
        let (k, v) = pair
            .split_once('=')
            .ok_or_else(|| Failure::usage(format!("parameter {pair:?} is not K=V")))?;
        params.insert(k.trim().to_string(), v.trim().to_string());
    }
    let items = family_iter(&args.name, &params).map_err(|e| {
        Failure::usage(format!("{e}; known families: {}", FAMILY_NAMES.join(", ")))
    })?;

    match args.emit {
        Emit::String => {
            let mut out = String::new();
            for (_, item) in &items {
                let (s, _) = item_string(item)?;
                out.push_str(&s);
                out.push('\n');
            }
            write_out(cli, &out)
        }
        Emit::System => {
            let mut docs = Vec::new();
            for (label, item) in &items {
                let text = match item {
                    FamilyItem::Str(_) => {
                        return Err(Failure::usage(format!(
                            "{}: this family builds plain strings; use --emit string",
                            args.name
                        )))
                    }
                    FamilyItem::Sys(sys) => lsystem_doc_to_json(&sys.to_doc()),
                    FamilyItem::Nu(sys) => nusystem_doc_to_json(&sys.to_doc()),
                };
                let doc: Value = serde_json::from_str(&text).expect("serializer output");
                docs.push((label, doc));
            }
            let text = if docs.len() == 1 {
                format!("{:#}\n", docs[0].1)
            } else {
                let all: Vec<Value> = docs
                    .into_iter()
                    .map(|(label, doc)| json!({ "label": label, "system": doc }))
                    .collect();
                format!("{:#}\n", Value::Array(all))
            };
            write_out(cli, &text)
        }
    }
}

fn subject_text(args: &BruteforceArgs) -> Result<String, Failure> {
    if let Some(text) = &args.text {
        Ok(text.clone())
    } else if let Some(path) = &args.input {
        let raw = read_to_string(path)?;
        let t = raw.strip_suffix('\n').unwrap_or(&raw);
        Ok(t.strip_suffix('\r').unwrap_or(t).to_string())
    } else {
        Err(Failure::usage("give a subject: --text or --input"))
    }
}

fn parse_budget(spec: Option<&str>) -> Result<BTreeMap<String, u64>, Failure> {
    let mut map = BTreeMap::new();
    if let Some(spec) = spec {
        for pair in spec.split(',') {
            let (k, v) = pair
                .split_once('=')
                .ok_or_else(|| Failure::usage(format!("budget entry {pair:?} is not K=V")))?;
            let v: u64 = v
                .trim()
                .parse()
                .map_err(|_| Failure::usage(format!("budget value in {pair:?} is not a number")))?;
            map.insert(k.trim().to_string(), v);
        }
    }
    Ok(map)
}

fn cmd_bruteforce(cli: &Cli, args: &BruteforceArgs) -> Result<(), Failure> {
    let w = subject_text(args)?;
    if w.is_empty() {
        return Err(Failure::usage("cannot search witnesses for the empty string"));
    }
    let mut budget = parse_budget(args.budget.as_deref())?;
    let value = match args.what {
        What::Bms => {
            let limit = budget.remove("limit").unwrap_or(DEFAULT_BMS_LIMIT as u64) as usize;
            reject_leftover_budget(&budget, &["limit"])?;
            let chars: Vec<char> = w.chars().collect();
            let witness = smallest_bms(&chars, limit).map_err(exact_failure)?;
            let phrases: Vec<Value> = witness
                .phrases
                .iter()
                .map(|p| match p.source {
                    BmsSource::Explicit(c) => json!({
                        "start": p.start, "len": p.len, "explicit": c.to_string(),
                    }),
                    BmsSource::Copy { from } => json!({
                        "start": p.start, "len": p.len, "copy_from": from,
                    }),
                })
                .collect();
            json!({ "input": w, "b": witness.b(), "phrases": phrases })
        }
        What::Lsystem => {
            let mut b = LBudget::for_input(&w);
            if let Some(v) = budget.remove("sigma") {
                b.sigma_max = v as usize;
            }
            if let Some(v) = budget.remove("size") {
                b.size_max = v;
            }
            if let Some(v) = budget.remove("level") {
                b.d_max = v;
            }
            if let Some(v) = budget.remove("nodes") {
                b.node_cap = v;
            }
            reject_leftover_budget(&budget, &["sigma", "size", "level", "nodes"])?;
            match bounded_smallest_lsystem(&w, &b).map_err(exact_failure)? {
                Some((sys, size)) => {
                    let doc: Value = serde_json::from_str(&lsystem_doc_to_json(&sys.to_doc()))
                        .expect("serializer output");
                    json!({ "input": w, "found": true, "size": size, "system": doc })
                }
                None => json!({ "input": w, "found": false }),
            }
        }
    };
    write_out(cli, &format!("{value:#}\n"))
}

fn reject_leftover_budget(budget: &BTreeMap<String, u64>, known: &[&str]) -> Result<(), Failure> {
    if let Some(k) = budget.keys().next() {
        return Err(Failure::usage(format!(
            "unknown budget key {k:?}; this search takes {}",
            known.join(", ")
        )));
    }
    Ok(())
}

fn cmd_classify(cli: &Cli, path: &PathBuf) -> Result<(), Failure> {
    match load_system(path)? {
        AnySystemDoc::L(doc) => {
            let sys = compile_lsystem(&doc)?;
            write_out(cli, &format!("{}\n", sys.classify()))
        }
        AnySystemDoc::Nu(_) => Err(Failure::usage(
            "classification applies to rewriting systems without extraction tokens",
        )),
    }
}

fn cmd_experiment(cli: &Cli, args: &ExperimentArgs) -> Result<(), Failure> {
    let mut spec = ExperimentSpec::new(&args.name).map_err(|e| {
        Failure::usage(format!("{e}; known experiments: {}", EXPERIMENT_NAMES.join(", ")))
    })?;
    if let Some(values) = &args.values {
        if spec.values.is_empty() {
            return Err(Failure::usage(format!(
                "{} runs a fixed set of cells and takes no --values",
                args.name
            )));
        }
        spec.values = parse_param_values(values).map_err(Failure::usage)?;
    }
    spec.seed = cli.seed;
    spec.jobs = cli
        .jobs
        .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
        .max(1);
    spec.timeout = std::time::Duration::from_secs(cli.timeout);
    spec.mode = args.bwt_mode.into();
    let table = run_experiment(&spec).map_err(|e| Failure::usage(e.to_string()))?;
    emit_table(cli, &table)
}

fn cmd_verify(cli: &Cli, level: LevelArg) -> Result<(), Failure> {
    let level = match level {
        LevelArg::Quick => verify::Level::Quick,
        LevelArg::Full => verify::Level::Full,
    };
    let reports = verify::run(level, cli.seed);
    let all_pass = reports.iter().all(|r| r.pass);
    let text = match cli.format {
        Format::Csv => {
            let mut out = String::new();
            for r in &reports {
                out.push_str(&format!(
                    "{} {} ({:.2}s) {} :: {}\n",
                    r.id,
                    if r.pass { "pass" } else { "FAIL" },
                    r.seconds,
                    r.title,
                    r.detail
                ));
            }
            out.push_str(&format!(
                "{}\n",
                if all_pass { "all checks passed" } else { "SOME CHECKS FAILED" }
            ));
            out
        }
        Format::Json => {
            let rows: Vec<Value> = reports
                .iter()
                .map(|r| {
                    json!({
                        "id": r.id, "title": r.title, "pass": r.pass,
                        "seconds": r.seconds, "detail": r.detail,
                    })
                })
                .collect();
            format!("{:#}\n", json!({ "pass": all_pass, "checks": rows }))
        }
    };
    write_out(cli, &text)?;
    if all_pass {
        Ok(())
    } else {
        Err(Failure::silent(1))
    }
}
