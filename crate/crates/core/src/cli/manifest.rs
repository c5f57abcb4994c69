use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::analysis::{
    analytic_profile, bin_reference, estimate_path_fluctuation_with, fluctuation_csv,
    goodness_of_fit_with_reference, profile_csv, sweep_csv, theta_sweep_with, EstimateOptions,
    GoodnessOfFit, IntervalMethod, Normalization, SweepReport,
};
use crate::config::{Binning, ExperimentConfig};
use crate::counts::BinnedCounts;
use crate::error::{Error, Result};
use crate::plot::fluctuation_svg;
use crate::sampler::{Experiment, PolarizationModel};

/// Points used for the analytic curve drawn under simulated estimates.
const OVERLAY_POINTS: usize = 1001;

/// Vertical range of rendered plots.
const PLOT_Y_MAX: f64 = 4.0;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum ModelName {
    #[default]
    Coherent,
    Mixture,
}

impl From<ModelName> for PolarizationModel {
    fn from(m: ModelName) -> Self {
        match m {
            ModelName::Coherent => PolarizationModel::Coherent,
            ModelName::Mixture => PolarizationModel::Mixture,
        }
    }
}

/// A fully specified command; together with the configuration it determines
/// every output byte.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum Command {
    Analytic {
        window: [f64; 2],
        n_points: usize,
        ceiling: f64,
        svg: bool,
    },
    Simulate {
        n_photons: u64,
        seed: u64,
        bins: usize,
        window: [f64; 2],
        confidence: f64,
        paper_literal: bool,
        ceiling: f64,
        svg: bool,
    },
    Sweep {
        thetas: Vec<f64>,
        n_photons: u64,
        seed: u64,
        bins: usize,
        window: [f64; 2],
        paper_literal: bool,
    },
    Gof {
        n_photons: u64,
        seed: u64,
        bins: usize,
        window: [f64; 2],
        model: ModelName,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Analytic { .. } => "analytic",
            Command::Simulate { .. } => "simulate",
            Command::Sweep { .. } => "sweep",
            Command::Gof { .. } => "gof",
        }
    }

    fn seed(&self) -> Option<u64> {
        match self {
            Command::Analytic { .. } => None,
            Command::Simulate { seed, .. }
            | Command::Sweep { seed, .. }
            | Command::Gof { seed, .. } => Some(*seed),
        }
    }

    fn n_photons(&self) -> Option<u64> {
        match self {
            Command::Analytic { .. } => None,
            Command::Simulate { n_photons, .. }
            | Command::Sweep { n_photons, .. }
            | Command::Gof { n_photons, .. } => Some(*n_photons),
        }
    }
}

/// Record written next to every set of outputs. Replaying it reproduces the
/// outputs byte for byte.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: Command,
    pub config: ExperimentConfig,
    pub seed: Option<u64>,
    pub n_photons: Option<u64>,
    /// Output files, relative to the manifest's directory.
    pub outputs: Vec<String>,
}

impl RunManifest {
    pub fn file_name(&self) -> String {
        format!("{}.manifest.json", self.command.name())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
    }
}

#[derive(Serialize)]
struct GofReport<'a> {
    model: ModelName,
    theta: f64,
    n_photons: u64,
    seed: u64,
    result: &'a GoodnessOfFit,
    counts: &'a BinnedCounts,
}

fn pretty<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// Run `command` against `config`, writing its outputs and manifest into
/// `out_dir`.
pub fn execute(
    command: &Command,
    config: &ExperimentConfig,
    out_dir: &Path,
) -> Result<RunManifest> {
    config.validate()?;
    let mut files: Vec<(String, String)> = Vec::new();
    match command {
        Command::Analytic {
            window,
            n_points,
            ceiling,
            svg,
        } => {
            let rows = analytic_profile(config, window[0], window[1], *n_points, *ceiling)?;
            files.push(("analytic.csv".into(), profile_csv(&rows)?));
            if *svg {
                files.push((
                    "analytic.svg".into(),
                    fluctuation_svg(&rows, None, PLOT_Y_MAX),
                ));
            }
        }
        Command::Simulate {
            n_photons,
            seed,
            bins,
            window,
            confidence,
            paper_literal,
            ceiling,
            svg,
        } => {
            let binning = Binning::new(window[0], window[1], *bins)?;
            let counts = Experiment::new(config.clone())?.run(*n_photons, *seed, &binning)?;
            files.push(("counts.csv".into(), counts.to_csv()?));
            files.push(("counts.json".into(), counts.to_json(config)?));
            if config.theta > 0.0 {
                let options = EstimateOptions {
                    confidence: *confidence,
                    normalization: normalization(*paper_literal),
                    method: IntervalMethod::Wilson,
                    ceiling: *ceiling,
                };
                let estimates = estimate_path_fluctuation_with(&counts, &options)?;
                files.push(("fluctuation.csv".into(), fluctuation_csv(&estimates)?));
                if *svg {
                    let rows =
                        analytic_profile(config, window[0], window[1], OVERLAY_POINTS, *ceiling)?;
                    files.push((
                        "simulate.svg".into(),
                        fluctuation_svg(&rows, Some(&estimates), PLOT_Y_MAX),
                    ));
                }
            }
        }
        Command::Sweep {
            thetas,
            n_photons,
            seed,
            bins,
            window,
            paper_literal,
        } => {
            let binning = Binning::new(window[0], window[1], *bins)?;
            let rows = theta_sweep_with(
                config,
                thetas,
                *n_photons,
                *seed,
                &binning,
                normalization(*paper_literal),
            )?;
            files.push(("sweep.csv".into(), sweep_csv(&rows)?));
            files.push((
                "sweep.json".into(),
                pretty(&SweepReport::new(rows, *n_photons, *seed))?,
            ));
        }
        Command::Gof {
            n_photons,
            seed,
            bins,
            window,
            model,
        } => {
            let binning = Binning::new(window[0], window[1], *bins)?;
            let counts = Experiment::new(config.clone())?.run_model(
                (*model).into(),
                *n_photons,
                *seed,
                &binning,
            )?;
            let reference = bin_reference(config, &binning)?;
            let result = goodness_of_fit_with_reference(&counts, &reference)?;
            files.push((
                "gof.json".into(),
                pretty(&GofReport {
                    model: *model,
                    theta: config.theta,
                    n_photons: *n_photons,
                    seed: *seed,
                    result: &result,
                    counts: &counts,
                })?,
            ));
        }
    }

    fs::create_dir_all(out_dir)?;
    for (name, body) in &files {
        fs::write(out_dir.join(name), body)?;
    }
    let manifest = RunManifest {
        tool: env!("CARGO_PKG_NAME").into(),
        version: env!("CARGO_PKG_VERSION").into(),
        command: command.clone(),
        config: config.clone(),
        seed: command.seed(),
        n_photons: command.n_photons(),
        outputs: files.into_iter().map(|(name, _)| name).collect(),
    };
    fs::write(out_dir.join(manifest.file_name()), pretty(&manifest)?)?;
    Ok(manifest)
}

/// Re-run a manifest into `out_dir`.
pub fn replay(manifest: &RunManifest, out_dir: &Path) -> Result<RunManifest> {
    if manifest.tool != env!("CARGO_PKG_NAME") {
        return Err(Error::Usage(format!(
            "manifest was written by {}",
            manifest.tool
        )));
    }
    execute(&manifest.command, &manifest.config, out_dir)
}

fn normalization(paper_literal: bool) -> Normalization {
    if paper_literal {
        Normalization::PaperLiteral
    } else {
        Normalization::SinSquared
    }
}
