//! Command-line front end: α sweeps as CSV, the cloning-step EoF table,
//! inseparability intervals and single-state analysis.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::bell::{self, bmax, bmax_numeric, chsh_value, correlation_matrix, planar_pi4_config};
use crate::cloning::{iterate, Scheme};
use crate::entanglement::{concurrence, entanglement_of_formation, eof_from_concurrence};
use crate::error::{Error, Result};
use crate::linalg::hermitian_eig;
use crate::separability::{entanglement_interval, ppt_verdict, DEFAULT_PPT_TOL};
use crate::states::{bell_state, density_from_pure, singlet, BellKind, DensityMatrix};

pub const CSV_HEADER: &str = "alpha,chsh_pi4,bmax,eof,min_pt_eig";
pub const DEFAULT_GRID: usize = 201;
/// Allowed gap between closed-form and searched maximal CHSH values.
pub const BMAX_CHECK_TOL: f64 = 1e-6;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_BAD_STATE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    Pure,
    Local,
    Nonlocal,
}

impl From<SchemeArg> for Scheme {
    fn from(s: SchemeArg) -> Self {
        match s {
            SchemeArg::Pure => Scheme::Pure,
            SchemeArg::Local => Scheme::Local,
            SchemeArg::Nonlocal => Scheme::NonLocal,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "entclone",
    version,
    about = "Entanglement surviving universal quantum cloning"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate CHSH, maximal CHSH, EoF and the PT minimum over an α grid (CSV).
    Sweep(SweepArgs),
    /// EoF of the singlet after successive non-local cloning steps.
    Table1(Table1Args),
    /// α² range over which a scheme's clone of |Ψ⁻(α)⟩ stays entangled.
    Interval(IntervalArgs),
    /// Report on a density matrix read from a JSON file.
    Analyze(AnalyzeArgs),
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum, default_value = "pure")]
    pub scheme: SchemeArg,
    /// Number of grid points over [0, 1], endpoints included.
    #[arg(long, default_value_t = DEFAULT_GRID)]
    pub grid: usize,
    /// Extra cloning steps after the first.
    #[arg(long, default_value_t = 0)]
    pub iterations: usize,
    /// Evaluate a single α instead of the grid.
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Cross-check the closed-form maximal CHSH value by direct search.
    #[arg(long)]
    pub validate_bmax: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct Table1Args {
    #[arg(long, default_value_t = 3)]
    pub steps: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct IntervalArgs {
    #[arg(long, value_enum)]
    pub scheme: SchemeArg,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub validate_bmax: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// Parameters of an α sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub scheme: Scheme,
    pub grid_points: usize,
    pub iterations: usize,
    pub alpha: Option<f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            scheme: Scheme::Pure,
            grid_points: DEFAULT_GRID,
            iterations: 0,
            alpha: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.grid_points < 2 {
            return Err(Error::OutOfRange {
                name: "grid",
                value: self.grid_points as f64,
                range: ">= 2",
            });
        }
        if self.scheme == Scheme::Pure && self.iterations > 0 {
            return Err(Error::OutOfRange {
                name: "iterations",
                value: self.iterations as f64,
                range: "0 for the pure scheme",
            });
        }
        if let Some(a) = self.alpha {
            if !(0.0..=1.0).contains(&a) {
                return Err(Error::OutOfRange {
                    name: "alpha",
                    value: a,
                    range: "[0, 1]",
                });
            }
        }
        Ok(())
    }

    pub fn alphas(&self) -> Vec<f64> {
        match self.alpha {
            Some(a) => vec![a],
            None => {
                let last = (self.grid_points - 1) as f64;
                (0..self.grid_points).map(|i| i as f64 / last).collect()
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub alpha: f64,
    pub chsh_pi4: f64,
    pub bmax: f64,
    pub eof: f64,
    pub min_pt_eig: f64,
}

/// The state a sweep evaluates at α: |Ψ⁻(α)⟩ after the scheme and any extra
/// cloning steps.
pub fn prepared_state(cfg: &RunConfig, alpha: f64) -> Result<DensityMatrix> {
    let input = density_from_pure(&bell_state(BellKind::PsiMinus, alpha)?);
    let once = cfg.scheme.apply(&input)?;
    match cfg.scheme.cloner() {
        Some(cloner) if cfg.iterations > 0 => {
            Ok(iterate(&once, cloner, cfg.iterations)?.last().clone())
        }
        _ => Ok(once),
    }
}

pub fn evaluate_row(alpha: f64, rho: &DensityMatrix) -> Result<SweepRow> {
    Ok(SweepRow {
        alpha,
        chsh_pi4: chsh_value(rho, &planar_pi4_config())?,
        bmax: bmax(rho)?,
        eof: entanglement_of_formation(rho)?,
        min_pt_eig: ppt_verdict(rho, DEFAULT_PPT_TOL)?.min_pt_eigenvalue,
    })
}

/// Rows in ascending α. Points are evaluated in parallel.
pub fn sweep(cfg: &RunConfig) -> Result<Vec<SweepRow>> {
    cfg.validate()?;
    cfg.alphas()
        .into_par_iter()
        .map(|alpha| evaluate_row(alpha, &prepared_state(cfg, alpha)?))
        .collect()
}

/// Largest |closed form − searched| maximal CHSH value over the sweep.
pub fn bmax_check(cfg: &RunConfig, seed: u64) -> Result<f64> {
    cfg.validate()?;
    let gaps: Result<Vec<f64>> = cfg
        .alphas()
        .into_par_iter()
        .map(|alpha| {
            let rho = prepared_state(cfg, alpha)?;
            Ok((bmax(&rho)? - bmax_numeric(&rho, bell::DEFAULT_RESTARTS, seed)?).abs())
        })
        .collect();
    Ok(gaps?.into_iter().fold(0.0, f64::max))
}

/// `%.9g`-style formatting: 9 significant digits, trailing zeros trimmed.
pub fn fmt_sig9(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.8e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let trim = |s: String| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    };
    if !(-4..9).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim(mantissa.to_string()), sign, exp.abs())
    } else {
        let decimals = (8 - exp).max(0) as usize;
        trim(format!("{:.*}", decimals, x))
    }
}

pub fn format_csv(rows: &[SweepRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let fields = [r.alpha, r.chsh_pi4, r.bmax, r.eof, r.min_pt_eig].map(fmt_sig9);
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

/// EoF of the singlet after 0..=steps non-local cloning steps.
pub fn table1(steps: usize) -> Result<Vec<f64>> {
    let seq = iterate(
        &density_from_pure(&singlet()),
        crate::cloning::CloneScheme::NonLocal,
        steps,
    )?;
    seq.states.iter().map(entanglement_of_formation).collect()
}

pub fn format_table1(values: &[f64]) -> String {
    let mut out = String::from("steps  eof\n");
    for (n, e) in values.iter().enumerate() {
        let _ = writeln!(out, "{n:<6} {}", fixed6(*e));
    }
    out
}

fn fixed6(x: f64) -> String {
    let s = format!("{x:.6}");
    if s.trim_start_matches('-')
        .chars()
        .all(|ch| ch == '0' || ch == '.')
    {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

pub fn format_interval(low: f64, high: f64) -> String {
    format!("[{}, {}]\n", fixed6(low), fixed6(high))
}

/// Human-readable report on one state.
pub fn analyze(rho: &DensityMatrix, bmax_seed: Option<u64>) -> Result<String> {
    let m = rho.matrix();
    let eig = hermitian_eig(m)?;
    let verdict = ppt_verdict(rho, DEFAULT_PPT_TOL)?;
    let t = correlation_matrix(rho)?;
    let cr = concurrence(rho)?;
    let b = bmax(rho)?;
    let mut out = String::new();
    let _ = writeln!(out, "trace        {}", fixed6(m.trace().re));
    let ev: Vec<String> = eig.eigenvalues.iter().map(|x| fixed6(*x)).collect();
    let _ = writeln!(out, "eigenvalues  {}", ev.join(" "));
    let _ = writeln!(out, "min_pt_eig   {}", fixed6(verdict.min_pt_eigenvalue));
    let _ = writeln!(
        out,
        "verdict      {}",
        if verdict.entangled {
            "entangled"
        } else {
            "separable"
        }
    );
    for (i, row) in t.0.iter().enumerate() {
        let label = if i == 0 { "T" } else { "" };
        let cells: Vec<String> = row.iter().map(|x| format!("{:>9}", fixed6(*x))).collect();
        let _ = writeln!(out, "{label:<12} {}", cells.join(" "));
    }
    let _ = writeln!(out, "bmax         {}", fixed6(b));
    if let Some(seed) = bmax_seed {
        let searched = bmax_numeric(rho, bell::DEFAULT_RESTARTS, seed)?;
        let _ = writeln!(out, "bmax_numeric {}", fixed6(searched));
    }
    let _ = writeln!(
        out,
        "chsh_pi4     {}",
        fixed6(chsh_value(rho, &planar_pi4_config())?)
    );
    let _ = writeln!(out, "concurrence  {}", fixed6(cr.concurrence));
    let _ = writeln!(
        out,
        "eof          {}",
        fixed6(eof_from_concurrence(cr.concurrence))
    );
    Ok(out)
}

fn emit(text: &str, out: Option<&PathBuf>) -> std::io::Result<()> {
    match out {
        Some(path) => fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match cli.command {
        Command::Sweep(a) => run_sweep(a),
        Command::Table1(a) => run_table1(a),
        Command::Interval(a) => run_interval(a),
        Command::Analyze(a) => run_analyze(a),
    }
}

fn fail(code: i32, msg: impl std::fmt::Display) -> i32 {
    eprintln!("error: {msg}");
    code
}

fn run_sweep(a: SweepArgs) -> i32 {
    let cfg = RunConfig {
        scheme: a.scheme.into(),
        grid_points: a.grid,
        iterations: a.iterations,
        alpha: a.alpha,
    };
    if let Err(e) = cfg.validate() {
        return fail(EXIT_USAGE, e);
    }
    let rows = match sweep(&cfg) {
        Ok(rows) => rows,
        Err(e) => return fail(EXIT_USAGE, e),
    };
    if let Err(e) = emit(&format_csv(&rows), a.out.as_ref()) {
        return fail(EXIT_USAGE, e);
    }
    if a.validate_bmax {
        match bmax_check(&cfg, a.seed) {
            Ok(gap) if gap <= BMAX_CHECK_TOL => {
                eprintln!("bmax check passed: max |closed form - search| = {gap:e}");
            }
            Ok(gap) => return fail(
                EXIT_USAGE,
                format!(
                    "bmax check failed: max |closed form - search| = {gap:e} > {BMAX_CHECK_TOL:e}"
                ),
            ),
            Err(e) => return fail(EXIT_USAGE, e),
        }
    }
    EXIT_OK
}

fn run_table1(a: Table1Args) -> i32 {
    if a.steps < 1 {
        return fail(EXIT_USAGE, "--steps must be at least 1");
    }
    match table1(a.steps) {
        Ok(values) => match emit(&format_table1(&values), a.out.as_ref()) {
            Ok(()) => EXIT_OK,
            Err(e) => fail(EXIT_USAGE, e),
        },
        Err(e) => fail(EXIT_USAGE, e),
    }
}

fn run_interval(a: IntervalArgs) -> i32 {
    if a.scheme == SchemeArg::Pure {
        return fail(EXIT_USAGE, "--scheme must be local or nonlocal");
    }
    match entanglement_interval(a.scheme.into(), a.tol) {
        Ok(iv) => match emit(&format_interval(iv.low, iv.high), None) {
            Ok(()) => EXIT_OK,
            Err(e) => fail(EXIT_USAGE, e),
        },
        Err(e) => fail(EXIT_USAGE, e),
    }
}

fn run_analyze(a: AnalyzeArgs) -> i32 {
    let text = match fs::read_to_string(&a.input) {
        Ok(t) => t,
        Err(e) => return fail(EXIT_BAD_STATE, format!("{}: {e}", a.input.display())),
    };
    let rho = match DensityMatrix::from_json(&text) {
        Ok(rho) => rho,
        Err(e) => return fail(EXIT_BAD_STATE, format!("{}: {}", error_name(&e), e)),
    };
    if !rho.is_two_qubit() {
        return fail(
            EXIT_BAD_STATE,
            Error::BadDimension {
                expected: "4".into(),
                found: rho.dim(),
            },
        );
    }
    let seed = a.validate_bmax.then_some(a.seed);
    match analyze(&rho, seed).and_then(|r| emit(&r, None).map_err(|e| Error::Parse(e.to_string())))
    {
        Ok(()) => EXIT_OK,
        Err(e) => fail(EXIT_BAD_STATE, e),
    }
}

/// Variant name of a validation failure, as printed by `analyze`.
pub fn error_name(e: &Error) -> &'static str {
    match e {
        Error::NotHermitian { .. } => "NotHermitian",
        Error::BadTrace { .. } => "BadTrace",
        Error::NotPsd { .. } => "NotPsd",
        Error::NotNormalized { .. } => "NotNormalized",
        Error::BadDimension { .. } => "BadDimension",
        Error::NoConvergence { .. } => "NoConvergence",
        Error::OutOfRange { .. } => "OutOfRange",
        Error::NonFinite { .. } => "NonFinite",
        Error::NotXShape { .. } => "NotXShape",
        Error::RemixMismatch { .. } => "RemixMismatch",
        Error::Parse(_) => "Parse",
    }
}
