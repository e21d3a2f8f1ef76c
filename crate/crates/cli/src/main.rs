//! `orbitwave`: classification queries, admissibility reports, transforms,
//! wavelet-package demos and self-tests, with JSON reports on stdout.

mod admissibility;
mod classify;
mod config;
mod defaults;
mod haar;
mod package;
mod report;
mod selftest;
mod transform;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use config::JobConfig;
use report::{classify_failure, Report, EXIT_INVALID, EXIT_OK};

#[derive(Parser, Debug)]
#[command(name = "orbitwave", version, about = "Continuous wavelet transforms for matrix-group dilations")]
struct Cli {
    /// JSON job file; unknown keys are rejected.
    #[arg(long, global = true, value_name = "JSON")]
    config: Option<PathBuf>,
    /// Directory for output files; the report is also written there as report.json.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, global = true, value_name = "K")]
    threads: Option<usize>,
    /// Seed for every random choice a command makes.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(untagged)]
enum Command {
    /// Orbit of a frequency point under the Lorentz or GL(n) action.
    Classify(ClassifyArgs),
    /// Left-invariance defect of a Haar chart.
    HaarCheck(HaarArgs),
    /// Admissibility constant of a wavelet over a group chart.
    Admissibility(AdmissibilityArgs),
    /// Wavelet transform of a signal file.
    Transform(TransformArgs),
    /// Inverse transform of a coefficient dump.
    Reconstruct(ReconstructArgs),
    /// Builds the two-branch package on O3 and reconstructs a test mixture.
    PackageDemo(PackageArgs),
    /// Built-in invariant checks.
    Selftest(SelftestArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Classify(_) => "classify",
            Command::HaarCheck(_) => "haar-check",
            Command::Admissibility(_) => "admissibility",
            Command::Transform(_) => "transform",
            Command::Reconstruct(_) => "reconstruct",
            Command::PackageDemo(_) => "package-demo",
            Command::Selftest(_) => "selftest",
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// `R⁺SO₀(1,n)` acting on `R^{1+n}`.
    Lorentz,
    /// `GL(n)` acting on symmetric matrices by `X ↦ gXgᵗ`.
    Symm,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupArg {
    Dilation,
    Axb,
    RplusBoost,
    Na,
    FullLorentz,
}

impl From<GroupArg> for orbitwave_core::GroupId {
    fn from(g: GroupArg) -> Self {
        use orbitwave_core::GroupId;
        match g {
            GroupArg::Dilation => GroupId::Dilation,
            GroupArg::Axb => GroupId::AxB,
            GroupArg::RplusBoost => GroupId::RplusBoost,
            GroupArg::Na => GroupId::Na,
            GroupArg::FullLorentz => GroupId::FullLorentz,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
pub enum OrbitArg {
    #[value(name = "O1")]
    O1,
    #[value(name = "O2")]
    O2,
    #[value(name = "O3")]
    O3,
    #[value(name = "O31")]
    O31,
    #[value(name = "O32")]
    O32,
    #[value(name = "positive")]
    Positive,
    #[value(name = "negative")]
    Negative,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FormArg {
    Bump,
    Indicator,
}

#[derive(Args, Debug, Serialize)]
pub struct ClassifyArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    /// Lorentz: boost dimension (points have n+1 coordinates). Symm: matrix size.
    #[arg(long)]
    pub n: usize,
    /// Comma-separated coordinates; Symm points list the upper triangle row by row.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub point: Vec<f64>,
    /// Absolute tolerance (β for Lorentz, eigenvalues for Symm).
    #[arg(long)]
    pub tol: Option<f64>,
}

/// Wavelet choice shared by the commands that need one.
#[derive(Args, Debug, Serialize)]
pub struct WaveletArgs {
    /// Orbit carrying the wavelet's spectrum (defaults by dimension).
    #[arg(long, value_enum, ignore_case = true)]
    pub orbit: Option<OrbitArg>,
    /// Centre of the spectral ball, comma-separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub center: Option<Vec<f64>>,
    #[arg(long)]
    pub radius: Option<f64>,
    #[arg(long, value_enum)]
    pub form: Option<FormArg>,
}

#[derive(Args, Debug, Serialize)]
pub struct HaarArgs {
    #[arg(long, value_enum)]
    pub group: GroupArg,
    /// Nodes per chart axis.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Extra density factor `e^{tilt·t}` on the boost axis (0 is the true density).
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub tilt: f64,
}

#[derive(Args, Debug, Serialize)]
pub struct AdmissibilityArgs {
    #[arg(long, value_enum)]
    pub group: GroupArg,
    /// Lorentz groups: boost dimension (signals on R^{n+1}). Dilation: space dimension.
    #[arg(long)]
    pub n: Option<usize>,
    #[command(flatten)]
    pub wavelet: WaveletArgs,
    /// Nodes per chart axis, one value or one per axis.
    #[arg(long, value_delimiter = ',')]
    pub samples: Option<Vec<usize>>,
}

#[derive(Args, Debug, Serialize)]
pub struct TransformArgs {
    /// Signal file (.csv, or raw with a .json sidecar).
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Group of the chart (defaults: dilation in 1-D, rplus-boost in 2-D, na in 3-D).
    #[arg(long, value_enum)]
    pub group: Option<GroupArg>,
    #[command(flatten)]
    pub wavelet: WaveletArgs,
    #[arg(long, value_delimiter = ',')]
    pub samples: Option<Vec<usize>>,
}

#[derive(Args, Debug, Serialize)]
pub struct ReconstructArgs {
    /// Coefficient dump stem (`<stem>.json` + `<stem>.f64`).
    #[arg(long)]
    pub coeffs: Option<PathBuf>,
    /// Wavelet file written by `transform` (defaults to wavelet.json next to the dump).
    #[arg(long)]
    pub wavelet: Option<PathBuf>,
    /// Signal to compare the reconstruction with.
    #[arg(long)]
    pub reference: Option<PathBuf>,
    /// Output file name inside --out (extension .csv selects CSV, otherwise raw).
    #[arg(long, default_value = "reconstructed.csv")]
    pub output_name: String,
}

#[derive(Args, Debug, Serialize)]
pub struct PackageArgs {
    /// Nodes per axis of the NA chart.
    #[arg(long)]
    pub chart_samples: Option<usize>,
    /// Spatial samples per axis.
    #[arg(long, default_value_t = 64)]
    pub grid_samples: usize,
    /// Spatial half-width of the cube.
    #[arg(long, default_value_t = 60.0)]
    pub half_width: f64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Quick,
    Full,
}

#[derive(Args, Debug, Serialize)]
pub struct SelftestArgs {
    #[arg(long, value_enum, default_value_t = Level::Quick)]
    pub level: Level,
}

/// Resolved global settings plus the optional job file.
pub struct Job {
    pub config: JobConfig,
    pub out: Option<PathBuf>,
    pub seed: u64,
}

impl Job {
    /// The output directory, created on first use.
    pub fn out_dir(&self) -> Result<&Path> {
        let dir = self.out.as_deref().context("this command writes files; pass --out <dir>")?;
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        Ok(dir)
    }
}

/// Progress goes to stderr so stdout stays a single JSON document.
pub fn progress(msg: impl AsRef<str>) {
    eprintln!("orbitwave: {}", msg.as_ref());
}

fn setup(cli: &Cli) -> Result<Job> {
    let config = match &cli.config {
        Some(path) => JobConfig::load(path)?,
        None => JobConfig::default(),
    };
    if let Some(expected) = &config.command {
        if expected != cli.command.name() {
            bail!("config was written for `{expected}`, not `{}`", cli.command.name());
        }
    }
    let threads = cli.threads.or(config.threads);
    if threads == Some(0) {
        bail!("--threads must be positive");
    }
    if let Some(k) = threads {
        rayon::ThreadPoolBuilder::new().num_threads(k).build_global().context("starting the worker pool")?;
    }
    let out = cli.out.clone().or_else(|| config.output.clone());
    let seed = cli.seed.or(config.seed).unwrap_or(0);
    Ok(Job { config, out, seed })
}

fn dispatch(job: &Job, command: &Command, report: &mut Report) -> Result<()> {
    match command {
        Command::Classify(a) => classify::run(job, a, report),
        Command::HaarCheck(a) => haar::run(job, a, report),
        Command::Admissibility(a) => admissibility::run(job, a, report),
        Command::Transform(a) => transform::run_transform(job, a, report),
        Command::Reconstruct(a) => transform::run_reconstruct(job, a, report),
        Command::PackageDemo(a) => package::run(job, a, report),
        Command::Selftest(a) => selftest::run(job, a, report),
    }
}

fn emit(report: serde_json::Value, out: Option<&Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(&report)?;
    // a closed stdout (e.g. piped into `head`) is not worth a panic
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    if let Some(dir) = out {
        fs::create_dir_all(dir)?;
        fs::write(dir.join("report.json"), format!("{text}\n"))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            let report = Report::new("", json!({ "argv": std::env::args().skip(1).collect::<Vec<_>>() }));
            let _ = emit(report.finish("invalid", Some(e.kind().to_string())), None);
            return ExitCode::from(EXIT_INVALID as u8);
        }
    };
    let mut report = Report::new(
        cli.command.name(),
        json!({
            "args": &cli.command,
            "config": cli.config,
            "out": cli.out,
            "threads": cli.threads,
            "seed": cli.seed,
        }),
    );
    let mut out = cli.out.clone();
    let outcome = setup(&cli).and_then(|job| {
        out.clone_from(&job.out);
        report.set("settings", json!({ "seed": job.seed, "threads": rayon::current_num_threads(), "config": job.config }));
        dispatch(&job, &cli.command, &mut report)
    });
    let (value, code) = match outcome {
        Ok(()) => (report.finish("ok", None), EXIT_OK),
        Err(e) => {
            let (status, code) = classify_failure(&e);
            eprintln!("orbitwave: {e:#}");
            (report.finish(status, Some(format!("{e:#}"))), code)
        }
    };
    if let Err(e) = emit(value, out.as_deref()) {
        eprintln!("orbitwave: writing the report failed: {e:#}");
        return ExitCode::from(EXIT_INVALID as u8);
    }
    ExitCode::from(code as u8)
}
