//! Command-line front end: κ sweeps of the branch curves, regime tables,
//! radial profiles and the verification run.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use buckspec_core::dispersion::{alpha_root, lambda_from_alpha, ModeIndex};
use buckspec_core::eigenmodes::{radial_derivative, radial_eval, radial_profile, EigenMode};
use buckspec_core::nodal::{classify_regime, count_zeros, regime_boundaries, Boundary, NodalReport, Regime};
use buckspec_core::verify::{CheckResult, Level, Suite};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Core(#[from] buckspec_core::Error),
    #[error("{0} verification checks failed")]
    Verification(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use buckspec_core::Error as E;
        match self {
            CliError::Verification(_) => 1,
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Core(E::InvalidMode(_) | E::UnsupportedBranch(_) | E::UnsupportedAngularDegree { .. }) => 2,
            CliError::Core(_) | CliError::Json(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(CliError::Usage(msg.into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum LevelArg {
    #[default]
    Fast,
    Full,
}

#[derive(Parser, Debug)]
#[command(name = "buckspec", version, about = "Clamped buckling spectrum on the unit ball")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sample α_{k,ℓ}(κ) for a set of branches on a κ grid.
    SweepAlpha(SweepArgs),
    /// Regime intervals of the first eigenvalue up to --kappa-max.
    RegimeTable(RegimeArgs),
    /// Radial profile r, R, R' of one eigenmode.
    Profile(ProfileArgs),
    /// Run the numerical checks.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Default)]
pub struct SweepArgs {
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub kappa_min: Option<f64>,
    #[arg(long)]
    pub kappa_max: Option<f64>,
    #[arg(long)]
    pub points: Option<usize>,
    /// Comma-separated k:l pairs, e.g. 0:1,1:1,0:-1
    #[arg(long, allow_hyphen_values = true)]
    pub branches: Option<String>,
    #[arg(long)]
    pub dim: Option<u32>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Geometric κ spacing.
    #[arg(long)]
    pub log_grid: bool,
    /// Also emit λ = α² + κ²/α² per branch.
    #[arg(long)]
    pub lambda: bool,
}

#[derive(Args, Debug, Default)]
pub struct RegimeArgs {
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub kappa_max: Option<f64>,
    #[arg(long)]
    pub dim: Option<u32>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Default)]
pub struct ProfileArgs {
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    pub ell: Option<i32>,
    #[arg(long)]
    pub kappa: Option<f64>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub dim: Option<u32>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Default)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "fast")]
    pub level: LevelArg,
}

/// Flat `key = value` file; keys are the long flag names, with `-` or `_`.
#[derive(Debug, Default)]
pub struct ConfigFile(BTreeMap<String, String>);

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return usage(format!("config line {}: expected key=value", i + 1));
            };
            map.insert(k.trim().replace('_', "-"), v.trim().to_string());
        }
        Ok(Self(map))
    }

    pub fn load(path: Option<&Path>) -> Result<Self> {
        match path {
            Some(p) => Self::parse(&fs::read_to_string(p)?),
            None => Ok(Self::default()),
        }
    }

    fn reject_unknown(&self, known: &[&str]) -> Result<()> {
        match self.0.keys().find(|k| !known.contains(&k.as_str())) {
            Some(k) => usage(format!("unknown config key '{k}'")),
            None => Ok(()),
        }
    }

    fn get<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>> {
        match self.0.get(key) {
            None => Ok(None),
            Some(v) => v.parse().map(Some).or_else(|_| usage(format!("bad value '{v}' for {key}"))),
        }
    }

    fn flag(&self, key: &str) -> Result<bool> {
        match self.0.get(key).map(String::as_str) {
            None | Some("false") => Ok(false),
            Some("true") => Ok(true),
            Some(v) => usage(format!("bad value '{v}' for {key}")),
        }
    }

    fn format(&self) -> Result<Option<Format>> {
        match self.0.get("format").map(String::as_str) {
            None => Ok(None),
            Some("csv") => Ok(Some(Format::Csv)),
            Some("json") => Ok(Some(Format::Json)),
            Some(v) => usage(format!("bad format '{v}'")),
        }
    }
}

fn pick<T>(flag: Option<T>, file: Option<T>, default: T) -> T {
    flag.or(file).unwrap_or(default)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub kappa_min: f64,
    pub kappa_max: f64,
    pub points: usize,
    pub branches: Vec<(u32, i32)>,
    pub dim: u32,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub log_grid: bool,
    pub lambda: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            kappa_min: 0.01,
            kappa_max: 140.0,
            points: 100,
            branches: vec![(0, 1)],
            dim: 2,
            format: Format::Csv,
            out: None,
            log_grid: false,
            lambda: false,
        }
    }
}

pub fn parse_branches(s: &str) -> Result<Vec<(u32, i32)>> {
    s.split(',')
        .map(|item| {
            let item = item.trim();
            let (k, l) = item.split_once(':').ok_or_else(|| CliError::Usage(format!("branch '{item}' is not k:l")))?;
            match (k.trim().parse(), l.trim().parse()) {
                (Ok(k), Ok(l)) => Ok((k, l)),
                _ => usage(format!("branch '{item}' is not k:l")),
            }
        })
        .collect()
}

impl SweepConfig {
    pub fn from_args(args: &SweepArgs) -> Result<Self> {
        let file = ConfigFile::load(args.config.as_deref())?;
        file.reject_unknown(&[
            "kappa-min",
            "kappa-max",
            "points",
            "branches",
            "dim",
            "format",
            "out",
            "log-grid",
            "lambda",
        ])?;
        let d = Self::default();
        let branches = match args.branches.clone().or(file.get("branches")?) {
            Some(s) => parse_branches(&s)?,
            None => d.branches,
        };
        let cfg = Self {
            kappa_min: pick(args.kappa_min, file.get("kappa-min")?, d.kappa_min),
            kappa_max: pick(args.kappa_max, file.get("kappa-max")?, d.kappa_max),
            points: pick(args.points, file.get("points")?, d.points),
            branches,
            dim: pick(args.dim, file.get("dim")?, d.dim),
            format: pick(args.format, file.format()?, d.format),
            out: args.out.clone().or(file.get("out")?),
            log_grid: args.log_grid || file.flag("log-grid")?,
            lambda: args.lambda || file.flag("lambda")?,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.kappa_min.is_finite() && self.kappa_max.is_finite()) || !(self.kappa_min < self.kappa_max) {
            return usage("need finite kappa-min < kappa-max");
        }
        if self.kappa_min < 0.0 {
            return usage("kappa-min must be >= 0");
        }
        if self.points < 2 {
            return usage("points must be >= 2");
        }
        if self.branches.is_empty() {
            return usage("no branches given");
        }
        if self.log_grid && self.kappa_min <= 0.0 {
            return usage("log grid needs kappa-min > 0");
        }
        for &(k, ell) in &self.branches {
            ModeIndex::new(k, ell, self.dim)?;
            if ell == 0 {
                return usage(format!("branch {k}:0 is not an eigenvalue branch"));
            }
            if ell < 0 && self.kappa_min <= 0.0 {
                return usage(format!("branch {k}:{ell} needs kappa-min > 0"));
            }
        }
        Ok(())
    }

    pub fn grid(&self) -> Vec<f64> {
        let n = self.points;
        let t = |i: usize| i as f64 / (n - 1) as f64;
        let mut g: Vec<f64> = if self.log_grid {
            let (a, b) = (self.kappa_min.ln(), self.kappa_max.ln());
            (0..n).map(|i| (a + (b - a) * t(i)).exp()).collect()
        } else {
            (0..n).map(|i| self.kappa_min + (self.kappa_max - self.kappa_min) * t(i)).collect()
        };
        g[0] = self.kappa_min;
        g[n - 1] = self.kappa_max;
        g
    }
}

/// Round to 9 significant digits.
pub fn sig9(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.8e}").parse().expect("formatted float parses")
}

/// CSV text for a value already rounded by [`sig9`]; exponent form
/// outside [1e-4, 1e15).
pub fn csv_number(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || (1e-4..1e15).contains(&a) || !x.is_finite() {
        x.to_string()
    } else {
        format!("{x:e}")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveRecord {
    pub kappa: f64,
    pub alpha: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lambda: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sweep {
    pub dim: u32,
    pub branches: Vec<String>,
    pub records: Vec<CurveRecord>,
}

fn branch_key(k: u32, ell: i32) -> String {
    format!("{k}_{ell}")
}

/// Sets up the rayon pool from BUCKSPEC_THREADS (unset or 0: automatic).
fn thread_pool() -> Result<rayon::ThreadPool> {
    let threads = match std::env::var("BUCKSPEC_THREADS") {
        Ok(v) => v.trim().parse::<usize>().or_else(|_| usage(format!("BUCKSPEC_THREADS='{v}' is not a count")))?,
        Err(_) => 0,
    };
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().map_err(|e| CliError::Usage(e.to_string()))
}

pub fn sweep_alpha(cfg: &SweepConfig) -> Result<Sweep> {
    cfg.validate()?;
    let modes = cfg
        .branches
        .iter()
        .map(|&(k, ell)| ModeIndex::new(k, ell, cfg.dim))
        .collect::<buckspec_core::Result<Vec<_>>>()?;
    let grid = cfg.grid();
    let records = thread_pool()?.install(|| {
        grid.par_iter()
            .map(|&kappa| {
                let alpha = modes
                    .iter()
                    .map(|&m| alpha_root(m, kappa).map(|r| r.alpha))
                    .collect::<buckspec_core::Result<Vec<_>>>()?;
                let lambda = if cfg.lambda {
                    alpha.iter().map(|&a| sig9(lambda_from_alpha(a, kappa))).collect()
                } else {
                    Vec::new()
                };
                Ok(CurveRecord { kappa: sig9(kappa), alpha: alpha.into_iter().map(sig9).collect(), lambda })
            })
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(Sweep { dim: cfg.dim, branches: cfg.branches.iter().map(|&(k, l)| branch_key(k, l)).collect(), records })
}

pub fn sweep_csv(sweep: &Sweep) -> String {
    let mut out = String::from("kappa");
    for b in &sweep.branches {
        out.push_str(&format!(",alpha_{b}"));
    }
    let with_lambda = sweep.records.first().is_some_and(|r| !r.lambda.is_empty());
    if with_lambda {
        for b in &sweep.branches {
            out.push_str(&format!(",lambda_{b}"));
        }
    }
    out.push('\n');
    for r in &sweep.records {
        out.push_str(&csv_number(r.kappa));
        for &v in r.alpha.iter().chain(&r.lambda) {
            out.push(',');
            out.push_str(&csv_number(v));
        }
        out.push('\n');
    }
    out
}

pub fn cmd_sweep_alpha(cfg: &SweepConfig) -> Result<String> {
    let sweep = sweep_alpha(cfg)?;
    let text = match cfg.format {
        Format::Csv => sweep_csv(&sweep),
        Format::Json => to_json(&sweep)?,
    };
    emit(cfg.out.as_deref(), &text)?;
    Ok(text)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryRecord {
    pub kappa: f64,
    pub label: String,
    pub regime: Regime,
    pub multiplicity: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegimeInterval {
    pub kappa_lower: f64,
    pub kappa_upper: f64,
    pub lower: Option<BoundaryRecord>,
    pub upper: Option<BoundaryRecord>,
    pub regime: Regime,
    pub multiplicity: Option<usize>,
    pub nodal_regions: Option<usize>,
    pub attaining: Vec<String>,
    pub eigenspace: String,
}

fn boundary_record(b: &Boundary, dim: u32) -> Result<BoundaryRecord> {
    let at = classify_regime(b.kappa, dim)?;
    Ok(BoundaryRecord {
        kappa: sig9(b.kappa),
        label: b.label.clone(),
        regime: at.regime,
        multiplicity: at.multiplicity,
    })
}

/// Regime intervals on (0, kappa_max]; an interval's upper end is either a
/// crossing product or kappa_max itself.
pub fn regime_table(kappa_max: f64, dim: u32) -> Result<Vec<RegimeInterval>> {
    if !(kappa_max > 0.0) || !kappa_max.is_finite() {
        return usage("kappa-max must be > 0");
    }
    if dim < 2 {
        return usage("dim must be >= 2");
    }
    let bounds: Vec<Boundary> =
        regime_boundaries(kappa_max, dim)?.into_iter().filter(|b| b.kappa <= kappa_max).collect();
    let mut out = Vec::with_capacity(bounds.len() + 1);
    let mut lower: Option<&Boundary> = None;
    for i in 0..=bounds.len() {
        let upper = bounds.get(i);
        let lo = lower.map_or(0.0, |b| b.kappa);
        let hi = upper.map_or(kappa_max, |b| b.kappa);
        if hi <= lo {
            lower = upper;
            continue;
        }
        let report = classify_regime(0.5 * (lo + hi), dim)?;
        out.push(RegimeInterval {
            kappa_lower: sig9(lo),
            kappa_upper: sig9(hi),
            lower: lower.map(|b| boundary_record(b, dim)).transpose()?,
            upper: upper.map(|b| boundary_record(b, dim)).transpose()?,
            regime: report.regime,
            multiplicity: report.multiplicity,
            nodal_regions: report.nodal_regions,
            attaining: report.attaining.iter().map(|m| m.to_string()).collect(),
            eigenspace: report.eigenspace,
        });
        lower = upper;
    }
    Ok(out)
}

/// The crossing products the table splits at.
pub fn table_boundaries(table: &[RegimeInterval]) -> Vec<&BoundaryRecord> {
    table.iter().filter_map(|i| i.upper.as_ref()).collect()
}

pub fn cmd_regime_table(kappa_max: f64, dim: u32, out: Option<&Path>) -> Result<Vec<RegimeInterval>> {
    let table = regime_table(kappa_max, dim)?;
    emit(out, &to_json(&table)?)?;
    Ok(table)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProfileRow {
    pub r: f64,
    #[serde(rename = "R")]
    pub value: f64,
    #[serde(rename = "R_prime")]
    pub derivative: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroSidecar {
    pub mode: String,
    pub kappa: f64,
    pub alpha: f64,
    pub lambda: f64,
    pub zeros: Vec<f64>,
    pub slopes: Vec<f64>,
    pub count: usize,
    pub predicted_count: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Profile {
    pub rows: Vec<ProfileRow>,
    pub nodal: ZeroSidecar,
}

pub fn profile(k: u32, ell: i32, kappa: f64, samples: usize, dim: u32) -> Result<Profile> {
    if samples < 2 {
        return usage("samples must be >= 2");
    }
    if !(kappa >= 0.0) || !kappa.is_finite() {
        return usage("kappa must be >= 0");
    }
    let mode = ModeIndex::new(k, ell, dim)?;
    let em = EigenMode::new(mode, kappa)?;
    let rows = (0..samples)
        .map(|i| {
            let r = if i + 1 == samples { 1.0 } else { i as f64 / (samples - 1) as f64 };
            Ok(ProfileRow {
                r: sig9(r),
                value: sig9(radial_eval(&em, r)?),
                derivative: sig9(radial_derivative(&em, r)?),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let report: NodalReport = count_zeros(&radial_profile(&em, samples)?)?;
    let nodal = ZeroSidecar {
        mode: mode.to_string(),
        kappa: sig9(kappa),
        alpha: sig9(em.alpha),
        lambda: sig9(em.lambda),
        zeros: report.zero_locations.iter().copied().map(sig9).collect(),
        slopes: report.slopes.iter().copied().map(sig9).collect(),
        count: report.count,
        predicted_count: report.predicted_count,
    };
    Ok(Profile { rows, nodal })
}

pub fn profile_csv(p: &Profile) -> String {
    let mut out = String::from("r,R,R_prime\n");
    for row in &p.rows {
        out.push_str(&format!("{},{},{}\n", csv_number(row.r), csv_number(row.value), csv_number(row.derivative)));
    }
    out
}

/// `<out>.zeros.json`
pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".zeros.json");
    PathBuf::from(s)
}

pub fn cmd_profile(
    k: u32,
    ell: i32,
    kappa: f64,
    samples: usize,
    dim: u32,
    format: Format,
    out: Option<&Path>,
) -> Result<Profile> {
    let p = profile(k, ell, kappa, samples, dim)?;
    let text = match format {
        Format::Csv => profile_csv(&p),
        Format::Json => to_json(&p)?,
    };
    emit(out, &text)?;
    if let Some(path) = out {
        fs::write(sidecar_path(path), to_json(&p.nodal)?)?;
    }
    Ok(p)
}

pub fn cmd_verify(level: Level) -> Vec<CheckResult> {
    Suite::new(level).run()
}

pub fn verify_report(results: &[CheckResult]) -> String {
    let mut out = String::new();
    for r in results {
        let tag = if r.passed { "PASS" } else { "FAIL" };
        out.push_str(&format!("{tag} {:<55} {:>7.3}s  {}\n", r.name, r.seconds, r.detail));
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    out.push_str(&format!("{} checks, {} failed\n", results.len(), failed));
    out
}

/// Exit status for a verification run: 0 iff every check passed.
pub fn verify_status(results: &[CheckResult]) -> Result<()> {
    match results.iter().filter(|r| !r.passed).count() {
        0 => Ok(()),
        n => Err(CliError::Verification(n)),
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::SweepAlpha(args) => {
            cmd_sweep_alpha(&SweepConfig::from_args(&args)?)?;
        }
        Command::RegimeTable(args) => {
            let file = ConfigFile::load(args.config.as_deref())?;
            file.reject_unknown(&["kappa-max", "dim", "out"])?;
            let kappa_max = pick(args.kappa_max, file.get("kappa-max")?, 140.0);
            let dim = pick(args.dim, file.get("dim")?, 2);
            let out: Option<PathBuf> = args.out.or(file.get("out")?);
            cmd_regime_table(kappa_max, dim, out.as_deref())?;
        }
        Command::Profile(args) => {
            let file = ConfigFile::load(args.config.as_deref())?;
            file.reject_unknown(&["k", "ell", "kappa", "samples", "dim", "format", "out"])?;
            let out: Option<PathBuf> = args.out.or(file.get("out")?);
            cmd_profile(
                pick(args.k, file.get("k")?, 0),
                pick(args.ell, file.get("ell")?, 1),
                pick(args.kappa, file.get("kappa")?, 1.0),
                pick(args.samples, file.get("samples")?, 101),
                pick(args.dim, file.get("dim")?, 2),
                pick(args.format, file.format()?, Format::Csv),
                out.as_deref(),
            )?;
        }
        Command::Verify(args) => {
            let level = match args.level {
                LevelArg::Fast => Level::Fast,
                LevelArg::Full => Level::Full,
            };
            let results = cmd_verify(level);
            print!("{}", verify_report(&results));
            verify_status(&results)?;
        }
    }
    Ok(())
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("buckspec: {e}");
            e.exit_code()
        }
    }
}
