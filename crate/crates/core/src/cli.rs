//! Command-line front end.
//!
//! Settings come from flags, then an optional `key = value` config file,
//! then built-in defaults. The output directory additionally falls back to
//! `$SPARSE_ARRAY_OUT` before the current directory.
//!
//! Exit status: 0 success, 1 failed reproduction gate or other error,
//! 2 usage or configuration error, 3 solver did not converge (outputs are
//! still written), 4 I/O failure.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use nalgebra::DMatrix;
use serde_json::json;

use crate::array_model::{array_factor_symmetric, AngleGrid, SymmetricArray};
use crate::error::Error;
use crate::metrics;
use crate::reference::{load_fixture, ReferenceFixture};
use crate::report::{report_json, round_floats};
use crate::synthesis::{build_dictionary, synthesize, L1Method, PositionGrid, SynthesisParams, SynthesisReport};
use crate::table;
use crate::theory;

pub const OUT_DIR_ENV: &str = "SPARSE_ARRAY_OUT";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NOT_CONVERGED: i32 = 3;
pub const EXIT_IO: i32 = 4;

/// Keys accepted in a config file. Dashes and underscores are interchangeable.
pub const CONFIG_KEYS: [&str; 18] = [
    "target",
    "candidate",
    "x_max",
    "step",
    "samples",
    "epsilon",
    "threshold",
    "merge_gap",
    "out",
    "format",
    "method",
    "max_iterations",
    "convergence_tol",
    "penalty",
    "seed",
    "floor_db",
    "k",
    "matrix",
];

#[derive(Debug, Parser)]
#[command(name = "sparse-array", version, about = "Sparse linear array synthesis by L1 recovery")]
struct Cli {
    /// Flat `key = value` settings file; flags take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum CommandKind {
    Synthesize,
    Evaluate,
    Rip,
    Compare,
    ReproExample1,
    ReproExample2,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Synthesize a sparse array for a target and write report and tables.
    Synthesize(Opts),
    /// Measure a candidate element table against a target pattern.
    Evaluate(Opts),
    /// Restricted isometry constant and coherence of a dictionary or matrix file.
    Rip(Opts),
    /// Synthesize and tabulate the result beside the published comparison columns.
    Compare(Opts),
    /// 20-element Chebyshev example with default settings and pass/fail gates.
    #[command(name = "repro-example1")]
    ReproExample1(Opts),
    /// 29-element Taylor-Kaiser example with default settings and pass/fail gates.
    #[command(name = "repro-example2")]
    ReproExample2(Opts),
}

#[derive(Debug, Clone, Default, Args)]
struct Opts {
    /// Built-in fixture name or element-table CSV path.
    #[arg(long)]
    target: Option<String>,
    /// Candidate element table (evaluate).
    #[arg(long)]
    candidate: Option<String>,
    /// Half-aperture in wavelengths.
    #[arg(long = "x-max")]
    x_max: Option<f64>,
    /// Candidate position pitch in wavelengths.
    #[arg(long)]
    step: Option<f64>,
    /// Pattern samples over u in [0, 1].
    #[arg(long)]
    samples: Option<usize>,
    /// Residual ball radius relative to the target norm.
    #[arg(long)]
    epsilon: Option<f64>,
    /// Relative coefficient threshold for element extraction.
    #[arg(long)]
    threshold: Option<f64>,
    /// Merge survivors at most this many grid steps apart.
    #[arg(long = "merge-gap")]
    merge_gap: Option<usize>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Comma-separated output formats: json, csv.
    #[arg(long)]
    format: Option<String>,
    /// L1 solver: active-set or admm.
    #[arg(long)]
    method: Option<String>,
    #[arg(long = "max-iterations")]
    max_iterations: Option<usize>,
    /// Sparsity level for rip.
    #[arg(long)]
    k: Option<usize>,
    /// Whitespace- or comma-separated real matrix file for rip.
    #[arg(long)]
    matrix: Option<PathBuf>,
    /// Normalize matrix columns before rip.
    #[arg(long)]
    normalize: bool,
    /// Comparison floor in dB.
    #[arg(long = "floor-db", allow_hyphen_values = true)]
    floor_db: Option<f64>,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Lib(Error),
    NotConverged,
    Gates,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::NotConverged => EXIT_NOT_CONVERGED,
            Failure::Gates => EXIT_FAILURE,
            Failure::Lib(e) => match e.root() {
                Error::Io { .. } => EXIT_IO,
                Error::InvalidParameter { .. } | Error::UnknownFixture(_) | Error::Parse { .. } => {
                    EXIT_USAGE
                }
                _ => EXIT_FAILURE,
            },
        }
    }
}

/// Output formats selected by `--format`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Formats {
    pub json: bool,
    pub csv: bool,
}

impl FromStr for Formats {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut f = Formats { json: false, csv: false };
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            match part {
                "json" => f.json = true,
                "csv" => f.csv = true,
                other => return Err(format!("unknown format `{other}` (expected json, csv)")),
            }
        }
        if !f.json && !f.csv {
            return Err("no format selected".into());
        }
        Ok(f)
    }
}

/// Fully resolved settings for one invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub target: Option<String>,
    pub candidate: Option<String>,
    pub params: SynthesisParams,
    pub output_dir: PathBuf,
    /// Whether the output directory was chosen explicitly rather than defaulted.
    pub output_explicit: bool,
    pub formats: Formats,
    pub k: usize,
    pub matrix: Option<PathBuf>,
    pub normalize: bool,
}

/// Parses a flat `key = value` file. `#` starts a comment.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>, String> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(format!("line {}: expected `key = value`, found `{line}`", i + 1));
        };
        let key = key.trim().replace('-', "_");
        if !CONFIG_KEYS.contains(&key.as_str()) {
            return Err(format!("line {}: unknown config key `{key}`", i + 1));
        }
        map.insert(key, value.trim().to_string());
    }
    Ok(map)
}

fn from_file<T: FromStr>(file: &BTreeMap<String, String>, key: &str) -> Result<Option<T>, Failure>
where
    T::Err: std::fmt::Display,
{
    match file.get(key) {
        None => Ok(None),
        Some(v) => v
            .parse()
            .map(Some)
            .map_err(|e| Failure::Usage(format!("config key `{key}`: bad value `{v}`: {e}"))),
    }
}

fn resolve(opts: Opts, config: Option<&Path>) -> Result<RunConfig, Failure> {
    let file = match config {
        None => BTreeMap::new(),
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::Lib(Error::io(path, e)))?;
            parse_config_text(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?
        }
    };
    let mut params = SynthesisParams::default();
    macro_rules! pick {
        ($flag:expr, $key:literal, $default:expr) => {
            match $flag {
                Some(v) => v,
                None => from_file(&file, $key)?.unwrap_or($default),
            }
        };
    }
    params.x_max = pick!(opts.x_max, "x_max", params.x_max);
    params.step = pick!(opts.step, "step", params.step);
    params.samples = pick!(opts.samples, "samples", params.samples);
    params.solver.epsilon = pick!(opts.epsilon, "epsilon", params.solver.epsilon);
    params.solver.max_iterations = pick!(opts.max_iterations, "max_iterations", params.solver.max_iterations);
    params.solver.convergence_tol = from_file(&file, "convergence_tol")?.unwrap_or(params.solver.convergence_tol);
    params.solver.penalty = from_file(&file, "penalty")?.unwrap_or(params.solver.penalty);
    params.solver.seed = from_file(&file, "seed")?.unwrap_or(params.solver.seed);
    params.extraction.threshold_rel = pick!(opts.threshold, "threshold", params.extraction.threshold_rel);
    params.extraction.merge_gap = pick!(opts.merge_gap, "merge_gap", params.extraction.merge_gap);
    params.floor_db = pick!(opts.floor_db, "floor_db", params.floor_db);

    let method: Option<String> = match opts.method {
        Some(m) => Some(m),
        None => from_file(&file, "method")?,
    };
    if let Some(m) = method {
        params.solver.method = m
            .parse::<L1Method>()
            .map_err(|_| Failure::Usage(format!("`method`: unknown solver `{m}` (expected active-set, admm)")))?;
    }

    let formats: Formats = match opts.format {
        Some(f) => f.parse().map_err(|e| Failure::Usage(format!("`format`: {e}")))?,
        None => from_file(&file, "format")?.unwrap_or(Formats { json: true, csv: true }),
    };

    let explicit_out: Option<PathBuf> = match opts.out {
        Some(p) => Some(p),
        None => from_file(&file, "out")?,
    };
    let output_explicit = explicit_out.is_some();
    let output_dir = explicit_out
        .or_else(|| std::env::var_os(OUT_DIR_ENV).filter(|v| !v.is_empty()).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."));

    let target: Option<String> = match opts.target {
        Some(t) => Some(t),
        None => from_file(&file, "target")?,
    };
    let candidate: Option<String> = match opts.candidate {
        Some(t) => Some(t),
        None => from_file(&file, "candidate")?,
    };
    let matrix: Option<PathBuf> = match opts.matrix {
        Some(p) => Some(p),
        None => from_file(&file, "matrix")?,
    };
    let k = pick!(opts.k, "k", 2usize);

    if !(params.x_max > params.step && params.step > 0.0) {
        return Err(Failure::Usage(format!(
            "`x_max` ({}) must exceed `step` ({}) and `step` must be positive",
            params.x_max, params.step
        )));
    }
    if params.samples < 2 {
        return Err(Failure::Usage(format!("`samples` ({}) must be at least 2", params.samples)));
    }
    params
        .solver
        .validate()
        .map_err(|e| Failure::Usage(e.to_string()))?;

    Ok(RunConfig {
        target,
        candidate,
        params,
        output_dir,
        output_explicit,
        formats,
        k,
        matrix,
        normalize: opts.normalize,
    })
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(stderr, "{text}")
            } else {
                write!(stdout, "{text}")
            };
            return code;
        }
    };
    let (kind, opts) = match cli.command {
        Command::Synthesize(o) => (CommandKind::Synthesize, o),
        Command::Evaluate(o) => (CommandKind::Evaluate, o),
        Command::Rip(o) => (CommandKind::Rip, o),
        Command::Compare(o) => (CommandKind::Compare, o),
        Command::ReproExample1(o) => (CommandKind::ReproExample1, o),
        Command::ReproExample2(o) => (CommandKind::ReproExample2, o),
    };
    let result = resolve(opts, cli.config.as_deref()).and_then(|cfg| dispatch(kind, &cfg, stdout));
    match result {
        Ok(()) => EXIT_OK,
        Err(failure) => {
            match &failure {
                Failure::Usage(msg) => {
                    let _ = writeln!(stderr, "error: {msg}");
                }
                Failure::Lib(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                }
                Failure::NotConverged => {
                    let _ = writeln!(stderr, "error: solver did not converge; outputs were written with converged = false");
                }
                Failure::Gates => {
                    let _ = writeln!(stderr, "error: one or more reproduction gates failed");
                }
            }
            failure.code()
        }
    }
}

fn dispatch(kind: CommandKind, cfg: &RunConfig, out: &mut dyn Write) -> Result<(), Failure> {
    match kind {
        CommandKind::Synthesize => cmd_synthesize(cfg, out),
        CommandKind::Evaluate => cmd_evaluate(cfg, out),
        CommandKind::Rip => cmd_rip(cfg, out),
        CommandKind::Compare => cmd_compare(cfg, out),
        CommandKind::ReproExample1 => cmd_repro(cfg, &EXAMPLE1, out),
        CommandKind::ReproExample2 => cmd_repro(cfg, &EXAMPLE2, out),
    }
}

fn required_target(cfg: &RunConfig) -> Result<ReferenceFixture, Failure> {
    let name = cfg
        .target
        .as_deref()
        .ok_or_else(|| Failure::Usage("`target` is required (flag --target or config key)".into()))?;
    Ok(load_fixture(name)?)
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Failure + '_ {
    move |e| Failure::Lib(Error::io(path, e))
}

/// Writes `report.json`, `elements.csv`, `pattern_target.csv` and
/// `pattern_synthesized.csv` as selected by `formats`.
pub fn write_outputs(
    dir: &Path,
    formats: Formats,
    report: &SynthesisReport,
    target_label: &str,
) -> crate::error::Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut written = Vec::new();
    if formats.json {
        let path = dir.join("report.json");
        fs::write(&path, report_json(report, target_label)).map_err(|e| Error::io(&path, e))?;
        written.push(path);
    }
    if formats.csv {
        let path = dir.join("elements.csv");
        table::write_element_table(&path, &report.sparse_array)?;
        written.push(path);
        let path = dir.join("pattern_target.csv");
        table::write_pattern_table(&path, &report.target_pattern)?;
        written.push(path);
        let path = dir.join("pattern_synthesized.csv");
        table::write_pattern_table(&path, &report.synthesized_pattern)?;
        written.push(path);
    }
    Ok(written)
}

fn summary(report: &SynthesisReport, label: &str) -> String {
    let d = &report.diagnostics;
    let m = &report.metrics;
    let mut s = String::new();
    let _ = writeln!(s, "target            {label} ({} elements)", report.n_uniform);
    let _ = writeln!(
        s,
        "grid              {} columns, {} samples",
        report.columns, report.params.samples
    );
    let _ = writeln!(
        s,
        "solver            {:?}, converged = {}, {} iterations, relative residual {:.3e}",
        d.method, d.converged, d.iterations_used, d.relative_residual
    );
    let _ = writeln!(
        s,
        "elements          {} physical (reduction {:.2}%)",
        report.n_sparse, report.reduction_percent
    );
    let target_sll = report
        .target_sidelobe_db
        .map(|v| format!("{v:.2} dB"))
        .unwrap_or_else(|| "n/a".into());
    let _ = writeln!(
        s,
        "peak sidelobe     {:.2} dB (target {target_sll})",
        m.peak_sidelobe_db
    );
    let _ = writeln!(
        s,
        "deviation         max {:.3} dB, rms {:.3} dB above {} dB",
        m.max_dev_db, m.rmse_db, report.params.floor_db
    );
    let _ = writeln!(
        s,
        "l1 vs l2          {} vs {} coefficients above {:e} of max",
        report.contrast.l1_surviving, report.contrast.l2_surviving, report.contrast.threshold_rel
    );
    s
}

fn print_written(out: &mut dyn Write, written: &[PathBuf]) -> Result<(), Failure> {
    for p in written {
        writeln!(out, "wrote {}", p.display()).map_err(io_err(Path::new("<stdout>")))?;
    }
    Ok(())
}

fn cmd_synthesize(cfg: &RunConfig, out: &mut dyn Write) -> Result<(), Failure> {
    let fixture = required_target(cfg)?;
    let report = synthesize(&fixture.array, &cfg.params)?;
    let written = write_outputs(&cfg.output_dir, cfg.formats, &report, &fixture.name)?;
    write!(out, "{}", summary(&report, &fixture.name)).map_err(io_err(Path::new("<stdout>")))?;
    print_written(out, &written)?;
    if report.diagnostics.converged {
        Ok(())
    } else {
        Err(Failure::NotConverged)
    }
}

fn cmd_evaluate(cfg: &RunConfig, out: &mut dyn Write) -> Result<(), Failure> {
    let target = required_target(cfg)?;
    let cand_name = cfg
        .candidate
        .as_deref()
        .ok_or_else(|| Failure::Usage("`candidate` is required for evaluate".into()))?;
    let candidate = load_fixture(cand_name)?;
    let grid = AngleGrid::half_space(cfg.params.samples)?;
    let tp = array_factor_symmetric(&target.array, &grid)?;
    let cp = array_factor_symmetric(&candidate.array, &grid)?;
    let m = metrics::pattern_metrics(&tp, &cp, cfg.params.floor_db)?;
    let n_uniform = target.array.element_count();
    let n_sparse = candidate.array.element_count();
    let reduction = metrics::element_reduction(n_uniform, n_sparse).ok();
    let value = round_floats(json!({
        "target": target.name,
        "candidate": candidate.name,
        "samples": cfg.params.samples,
        "floor_db": cfg.params.floor_db,
        "n_uniform": n_uniform,
        "n_sparse": n_sparse,
        "reduction_percent": reduction,
        "target_sidelobe_db": metrics::peak_sidelobe_level(&tp).ok(),
        "peak_sidelobe_db": if m.peak_sidelobe_db.is_finite() { Some(m.peak_sidelobe_db) } else { None },
        "main_lobe_peak_u": m.main_lobe_peak_u,
        "rmse_db": m.rmse_db,
        "max_dev_db": m.max_dev_db,
        "n_lobes": m.n_lobes,
    }));
    let text = serde_json::to_string_pretty(&value).expect("JSON values always serialize") + "\n";
    out.write_all(text.as_bytes()).map_err(io_err(Path::new("<stdout>")))?;
    if cfg.output_explicit && cfg.formats.json {
        fs::create_dir_all(&cfg.output_dir).map_err(io_err(&cfg.output_dir))?;
        let path = cfg.output_dir.join("evaluation.json");
        fs::write(&path, text).map_err(io_err(&path))?;
    }
    Ok(())
}

/// Reads a real matrix: one row per line, entries separated by commas or
/// whitespace, `#` comments allowed.
pub fn read_matrix(path: &Path) -> crate::error::Result<DMatrix<f64>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let parse_err = |line: usize, message: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        message,
    };
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<f64>().map_err(|_| parse_err(i + 1, format!("bad number `{t}`"))))
            .collect::<crate::error::Result<Vec<f64>>>()?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(parse_err(
                    i + 1,
                    format!("expected {} entries, found {}", first.len(), row.len()),
                ));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(parse_err(1, "no matrix rows".into()));
    }
    let (m, n) = (rows.len(), rows[0].len());
    Ok(DMatrix::from_fn(m, n, |r, c| rows[r][c]))
}

fn cmd_rip(cfg: &RunConfig, out: &mut dyn Write) -> Result<(), Failure> {
    let (source, mut matrix) = match &cfg.matrix {
        Some(path) => (path.display().to_string(), read_matrix(path)?),
        None => {
            let pos = PositionGrid::new(cfg.params.x_max, cfg.params.step)?;
            let grid = AngleGrid::half_space(cfg.params.samples)?;
            let dict = build_dictionary(&pos, &grid)?;
            (
                format!(
                    "dictionary x_max = {}, step = {}, samples = {}",
                    cfg.params.x_max, cfg.params.step, cfg.params.samples
                ),
                dict.matrix().clone(),
            )
        }
    };
    if cfg.normalize {
        for mut col in matrix.column_iter_mut() {
            let n = col.norm();
            if n == 0.0 {
                return Err(Failure::Lib(Error::param("matrix", "cannot normalize a zero column")));
            }
            col /= n;
        }
    }
    let rip = theory::restricted_isometry_constant(&matrix, cfg.k)?;
    let coherence = theory::mutual_coherence(&matrix)?;
    let (m, n) = matrix.shape();
    let bound = match theory::sparsity_bound_holds(cfg.k, m, n, 1.0) {
        Ok(b) => json!({"c": 1.0, "holds": b.holds, "bound": b.bound, "margin": b.margin}),
        Err(e) => json!({"c": 1.0, "error": e.to_string()}),
    };
    let value = round_floats(json!({
        "source": source,
        "rows": m,
        "columns": n,
        "normalized": cfg.normalize,
        "rip": rip,
        "mutual_coherence": coherence,
        "sparsity_bound": bound,
    }));
    let text = serde_json::to_string_pretty(&value).expect("JSON values always serialize") + "\n";
    out.write_all(text.as_bytes()).map_err(io_err(Path::new("<stdout>")))?;
    if cfg.output_explicit && cfg.formats.json {
        fs::create_dir_all(&cfg.output_dir).map_err(io_err(&cfg.output_dir))?;
        let path = cfg.output_dir.join("rip.json");
        fs::write(&path, text).map_err(io_err(&path))?;
    }
    Ok(())
}

/// Side-by-side element table against published comparison columns.
pub fn comparison_table(ours: &SymmetricArray, columns: &[(&str, &SymmetricArray)]) -> String {
    let mut s = String::new();
    let _ = write!(s, "{:>3}  {:>20}", "#", "synthesized");
    for (name, _) in columns {
        let _ = write!(s, "  {name:>20}");
    }
    s.push('\n');
    let rows = columns
        .iter()
        .map(|(_, a)| a.half_elements().len())
        .chain([ours.half_elements().len()])
        .max()
        .unwrap_or(0);
    let cell = |a: &SymmetricArray, i: usize| match a.half_elements().get(i) {
        Some(e) => format!("{:>9.4} {:>10.5}", e.position, e.excitation),
        None => format!("{:>20}", "-"),
    };
    for i in 0..rows {
        let _ = write!(s, "{:>3}  {}", i + 1, cell(ours, i));
        for (_, a) in columns {
            let _ = write!(s, "  {}", cell(a, i));
        }
        s.push('\n');
    }
    s
}

/// For each published element, the distance to the nearest synthesized one.
pub fn positional_agreement(ours: &SymmetricArray, published: &SymmetricArray) -> Vec<f64> {
    let mine = ours.positions();
    published
        .positions()
        .iter()
        .map(|p| mine.iter().map(|q| (p - q).abs()).fold(f64::INFINITY, f64::min))
        .collect()
}

fn comparison_columns(target_name: &str) -> Option<[&'static str; 2]> {
    match target_name {
        "chebyshev20_table1" => Some(["matrix_pencil_table1_ref2", "compressive_table1_published"]),
        "taylor_kaiser_table2_ref1" => Some(["matrix_pencil_table2_ref2", "compressive_table2_published"]),
        _ => None,
    }
}

fn compare_text(report: &SynthesisReport, target_name: &str) -> Result<String, Failure> {
    let names = comparison_columns(target_name).ok_or_else(|| {
        Failure::Usage(format!(
            "no comparison columns for target `{target_name}` (use chebyshev20_table1 or taylor_kaiser_table2_ref1)"
        ))
    })?;
    let fixtures = names
        .iter()
        .map(|n| load_fixture(n))
        .collect::<crate::error::Result<Vec<_>>>()?;
    let cols: Vec<(&str, &SymmetricArray)> = fixtures.iter().map(|f| (f.name.as_str(), &f.array)).collect();
    let mut s = String::from("half-array elements (position in wavelengths, excitation)\n");
    s.push_str(&comparison_table(&report.sparse_array, &cols));
    let published = &fixtures[1].array;
    let gaps = positional_agreement(&report.sparse_array, published);
    let within = gaps.iter().filter(|&&g| g <= 0.2 + 1e-12).count();
    let worst = gaps.iter().cloned().fold(0.0, f64::max);
    let _ = writeln!(
        s,
        "positional agreement with {}: {within}/{} published elements within 0.2 wavelengths (worst {worst:.3}); informative only",
        fixtures[1].name,
        gaps.len()
    );
    let _ = writeln!(
        s,
        "physical elements: synthesized {}, {} {}, {} {}",
        report.n_sparse,
        fixtures[0].name,
        fixtures[0].array.element_count(),
        fixtures[1].name,
        fixtures[1].array.element_count()
    );
    Ok(s)
}

fn cmd_compare(cfg: &RunConfig, out: &mut dyn Write) -> Result<(), Failure> {
    let fixture = required_target(cfg)?;
    if comparison_columns(&fixture.name).is_none() {
        return Err(Failure::Usage(format!(
            "no comparison columns for target `{}` (use chebyshev20_table1 or taylor_kaiser_table2_ref1)",
            fixture.name
        )));
    }
    let report = synthesize(&fixture.array, &cfg.params)?;
    let text = compare_text(&report, &fixture.name)?;
    out.write_all(text.as_bytes()).map_err(io_err(Path::new("<stdout>")))?;
    if cfg.output_explicit {
        let written = write_outputs(&cfg.output_dir, cfg.formats, &report, &fixture.name)?;
        print_written(out, &written)?;
    }
    Ok(())
}

/// Pass/fail thresholds for one reproduction command.
#[derive(Debug, Clone, Copy)]
pub struct ReproSpec {
    pub name: &'static str,
    pub target: &'static str,
    pub max_elements: usize,
    pub published_elements: usize,
    pub min_reduction_percent: f64,
    pub max_dev_db: f64,
    /// Upper limit on the synthesized peak sidelobe, when gated.
    pub max_sidelobe_db: Option<f64>,
    pub max_runtime_s: f64,
}

pub const EXAMPLE1: ReproSpec = ReproSpec {
    name: "repro-example1",
    target: "chebyshev20_table1",
    max_elements: 14,
    published_elements: 12,
    min_reduction_percent: 30.0,
    max_dev_db: 3.0,
    max_sidelobe_db: Some(-27.0),
    max_runtime_s: 30.0,
};

pub const EXAMPLE2: ReproSpec = ReproSpec {
    name: "repro-example2",
    target: "taylor_kaiser_table2_ref1",
    max_elements: 20,
    published_elements: 18,
    min_reduction_percent: 31.0,
    max_dev_db: 3.0,
    max_sidelobe_db: None,
    max_runtime_s: 30.0,
};

#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Evaluates the reproduction gates of `spec` on a finished run.
pub fn repro_gates(spec: &ReproSpec, report: &SynthesisReport, runtime_s: f64) -> Vec<Gate> {
    let m = &report.metrics;
    let mut gates = vec![
        Gate {
            name: "elements",
            passed: report.n_sparse <= spec.max_elements,
            detail: format!(
                "{} physical elements <= {} (published {})",
                report.n_sparse, spec.max_elements, spec.published_elements
            ),
        },
        Gate {
            name: "reduction",
            passed: report.reduction_percent >= spec.min_reduction_percent,
            detail: format!(
                "{:.2}% >= {}% of {} elements",
                report.reduction_percent, spec.min_reduction_percent, report.n_uniform
            ),
        },
        Gate {
            name: "deviation",
            passed: m.max_dev_db <= spec.max_dev_db,
            detail: format!(
                "max {:.3} dB <= {} dB above {} dB floor",
                m.max_dev_db, spec.max_dev_db, report.params.floor_db
            ),
        },
    ];
    if let Some(limit) = spec.max_sidelobe_db {
        gates.push(Gate {
            name: "sidelobe",
            passed: m.peak_sidelobe_db <= limit,
            detail: format!("{:.2} dB <= {limit} dB", m.peak_sidelobe_db),
        });
    }
    gates.push(Gate {
        name: "runtime",
        passed: runtime_s <= spec.max_runtime_s,
        detail: format!("{runtime_s:.2} s <= {} s", spec.max_runtime_s),
    });
    gates
}

fn cmd_repro(cfg: &RunConfig, spec: &ReproSpec, out: &mut dyn Write) -> Result<(), Failure> {
    if let Some(t) = &cfg.target {
        if t != spec.target {
            return Err(Failure::Usage(format!(
                "`target`: {} always uses {}, got `{t}`",
                spec.name, spec.target
            )));
        }
    }
    let fixture = load_fixture(spec.target)?;
    let start = Instant::now();
    let report = synthesize(&fixture.array, &cfg.params)?;
    let elapsed = start.elapsed().as_secs_f64();
    let written = write_outputs(&cfg.output_dir, cfg.formats, &report, &fixture.name)?;

    let mut s = summary(&report, &fixture.name);
    s.push('\n');
    s.push_str(&compare_text(&report, &fixture.name)?);
    s.push('\n');
    let gates = repro_gates(spec, &report, elapsed);
    for g in &gates {
        let _ = writeln!(s, "{}  {:<10} {}", if g.passed { "PASS" } else { "FAIL" }, g.name, g.detail);
    }
    out.write_all(s.as_bytes()).map_err(io_err(Path::new("<stdout>")))?;
    print_written(out, &written)?;

    if !report.diagnostics.converged {
        return Err(Failure::NotConverged);
    }
    if gates.iter().all(|g| g.passed) {
        Ok(())
    } else {
        Err(Failure::Gates)
    }
}
