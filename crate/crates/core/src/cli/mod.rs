//! Command-line front end: `analytic`, `simulate`, `sweep`, `gof` and
//! `replay`.

mod manifest;

use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

pub use manifest::{execute, replay, Command, ModelName, RunManifest};

use crate::analysis::{DEFAULT_CEILING, DEFAULT_CONFIDENCE};
use crate::config::{ExperimentConfig, MomentumGrid};
use crate::error::{Error, Result};

#[derive(Debug, Parser)]
#[command(
    name = "whichway",
    version,
    about = "Polarization-tagged double-slit simulator"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,

    /// Worker threads for sampling (defaults to all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Tabulate the closed-form profiles over a window of fringe phase.
    Analytic(AnalyticArgs),
    /// Simulate photon detections and estimate the path fluctuation per bin.
    Simulate(SimulateArgs),
    /// Repeat the simulation for several rotation angles.
    Sweep(SweepArgs),
    /// Chi-square test of simulated counts against the coherent model.
    Gof(GofArgs),
    /// Re-run a manifest written by an earlier command.
    Replay(ReplayArgs),
}

#[derive(Debug, Clone, Args)]
pub struct PhysicsArgs {
    /// JSON file with ExperimentConfig fields; flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Slit separation.
    #[arg(long = "d")]
    pub slit_separation: Option<f64>,
    /// Single-slit width.
    #[arg(long = "a")]
    pub envelope_width: Option<f64>,
    #[arg(long)]
    pub hbar: Option<f64>,
    /// Points in the momentum tabulation grid.
    #[arg(long)]
    pub grid_points: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
    /// Also render an SVG plot.
    #[arg(long)]
    pub svg: bool,
}

#[derive(Debug, Clone, Args)]
pub struct AnalyticArgs {
    #[command(flatten)]
    pub physics: PhysicsArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    #[arg(long)]
    pub theta: Option<f64>,
    /// Fringe-phase window `lo,hi`; accepts multiples of pi such as `-pi,pi`.
    #[arg(long, value_parser = parse_window, default_value = "-pi,pi", allow_hyphen_values = true)]
    pub window: [f64; 2],
    #[arg(long, default_value_t = 1001)]
    pub points: usize,
    #[arg(long, default_value_t = DEFAULT_CEILING)]
    pub ceiling: f64,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[arg(long, default_value_t = 10_000_000)]
    pub n_photons: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub bins: usize,
    /// Binning window in fringe phase; must span whole periods.
    #[arg(long, value_parser = parse_window, default_value = "-pi,pi", allow_hyphen_values = true)]
    pub window: [f64; 2],
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub physics: PhysicsArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    #[command(flatten)]
    pub run: RunArgs,
    #[arg(long)]
    pub theta: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_CONFIDENCE)]
    pub confidence: f64,
    /// Normalize by θ² instead of sin²θ.
    #[arg(long)]
    pub paper_literal: bool,
    #[arg(long, default_value_t = DEFAULT_CEILING)]
    pub ceiling: f64,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub physics: PhysicsArgs,
    #[command(flatten)]
    pub run: RunArgs,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
    /// Comma-separated rotation angles.
    #[arg(long, value_delimiter = ',', default_value = "0.2,0.05,0.01")]
    pub theta: Vec<f64>,
    #[arg(long)]
    pub paper_literal: bool,
}

#[derive(Debug, Clone, Args)]
pub struct GofArgs {
    #[command(flatten)]
    pub physics: PhysicsArgs,
    #[command(flatten)]
    pub run: RunArgs,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
    #[arg(long)]
    pub theta: Option<f64>,
    /// Polarization model used to generate the counts.
    #[arg(long, value_enum, default_value_t = ModelName::Coherent)]
    pub model: ModelName,
}

#[derive(Debug, Clone, Args)]
pub struct ReplayArgs {
    pub manifest: PathBuf,
    /// Defaults to the manifest's directory.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

/// Parse `lo,hi` where each side is a number or a multiple of pi
/// (`pi`, `-pi`, `2pi`, `-3*pi`, `π`).
pub fn parse_window(s: &str) -> std::result::Result<[f64; 2], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [lo, hi] = parts.as_slice() else {
        return Err(format!("expected `lo,hi`, got `{s}`"));
    };
    let lo = parse_phase(lo)?;
    let hi = parse_phase(hi)?;
    if lo >= hi {
        return Err(format!("window [{lo}, {hi}] is empty"));
    }
    Ok([lo, hi])
}

fn parse_phase(s: &str) -> std::result::Result<f64, String> {
    let stripped = s.strip_suffix("pi").or_else(|| s.strip_suffix('π'));
    match stripped {
        Some(coef) => {
            let coef = coef.trim().trim_end_matches('*').trim();
            let k = match coef {
                "" | "+" => 1.0,
                "-" => -1.0,
                c => c
                    .parse::<f64>()
                    .map_err(|e| format!("bad phase `{s}`: {e}"))?,
            };
            Ok(k * PI)
        }
        None => s
            .parse::<f64>()
            .map_err(|e| format!("bad phase `{s}`: {e}")),
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    theta: Option<f64>,
    slit_separation: Option<f64>,
    envelope_width: Option<f64>,
    hbar: Option<f64>,
    p_grid: Option<MomentumGrid>,
}

/// Merge the optional config file with command-line overrides.
pub fn resolve_config(physics: &PhysicsArgs, theta: Option<f64>) -> Result<ExperimentConfig> {
    let file = match &physics.config {
        Some(path) => {
            let text = fs::read_to_string(path)?;
            serde_json::from_str::<ConfigFile>(&text)
                .map_err(|e| Error::InvalidConfig(format!("{}: {e}", path.display())))?
        }
        None => ConfigFile::default(),
    };
    let defaults = ExperimentConfig::default();
    let theta = theta.or(file.theta).unwrap_or(defaults.theta);
    let d = physics
        .slit_separation
        .or(file.slit_separation)
        .unwrap_or(defaults.slit_separation);
    let a = physics
        .envelope_width
        .or(file.envelope_width)
        .unwrap_or(d * defaults.envelope_width / defaults.slit_separation);
    let hbar = physics.hbar.or(file.hbar).unwrap_or(defaults.hbar);
    let mut config = ExperimentConfig::physical(theta, d, a, hbar)?;

    let physics_overridden = physics.slit_separation.is_some()
        || physics.envelope_width.is_some()
        || physics.hbar.is_some();
    if let (Some(grid), false) = (file.p_grid, physics_overridden) {
        config.p_grid = grid;
    }
    if let Some(n) = physics.grid_points {
        config.p_grid.n_points = n;
    }
    config.validate()?;
    Ok(config)
}

/// Turn parsed arguments into a command, its configuration and output
/// directory.
pub fn plan(command: &CliCommand) -> Result<(Command, ExperimentConfig, PathBuf)> {
    Ok(match command {
        CliCommand::Analytic(a) => (
            Command::Analytic {
                window: a.window,
                n_points: a.points,
                ceiling: a.ceiling,
                svg: a.output.svg,
            },
            resolve_config(&a.physics, a.theta)?,
            a.output.out_dir.clone(),
        ),
        CliCommand::Simulate(s) => (
            Command::Simulate {
                n_photons: s.run.n_photons,
                seed: s.run.seed,
                bins: s.run.bins,
                window: s.run.window,
                confidence: s.confidence,
                paper_literal: s.paper_literal,
                ceiling: s.ceiling,
                svg: s.output.svg,
            },
            resolve_config(&s.physics, s.theta)?,
            s.output.out_dir.clone(),
        ),
        CliCommand::Sweep(s) => {
            if s.theta.is_empty() {
                return Err(Error::Usage("--theta needs at least one angle".into()));
            }
            (
                Command::Sweep {
                    thetas: s.theta.clone(),
                    n_photons: s.run.n_photons,
                    seed: s.run.seed,
                    bins: s.run.bins,
                    window: s.run.window,
                    paper_literal: s.paper_literal,
                },
                resolve_config(&s.physics, s.theta.first().copied())?,
                s.out_dir.clone(),
            )
        }
        CliCommand::Gof(g) => (
            Command::Gof {
                n_photons: g.run.n_photons,
                seed: g.run.seed,
                bins: g.run.bins,
                window: g.run.window,
                model: g.model,
            },
            resolve_config(&g.physics, g.theta)?,
            g.out_dir.clone(),
        ),
        CliCommand::Replay(_) => return Err(Error::Usage("replay has no plan".into())),
    })
}

fn run_inner(cli: &Cli) -> Result<RunManifest> {
    if let CliCommand::Replay(r) = &cli.command {
        let manifest = RunManifest::load(&r.manifest)?;
        let out_dir = r
            .out_dir
            .clone()
            .or_else(|| r.manifest.parent().map(Path::to_path_buf))
            .unwrap_or_else(|| PathBuf::from("."));
        return replay(&manifest, &out_dir);
    }
    let (command, config, out_dir) = plan(&cli.command)?;
    execute(&command, &config, &out_dir)
}

/// Execute parsed arguments, honouring `--threads`.
pub fn run(cli: &Cli) -> Result<RunManifest> {
    match cli.threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Usage(e.to_string()))?;
            pool.install(|| run_inner(cli))
        }
        None => run_inner(cli),
    }
}
