use std::f64::consts::PI;

use serde::Serialize;

use super::fluctuation::{estimate_path_fluctuation_with, EstimateOptions, Normalization};
use crate::analytic::path_fluctuation_at_phase;
use crate::config::{Binning, ExperimentConfig};
use crate::counts::finish_csv;
use crate::error::{Error, Result};
use crate::sampler::Experiment;

/// Relative errors are taken against `max(analytic, floor)` so that bins at
/// the bright fringe, where the analytic value is zero, stay finite.
pub const RELATIVE_ERROR_FLOOR: f64 = 1e-3;

/// Bins with `|x|` up to this enter the convergence summary.
pub const SUMMARY_MAX_PHASE: f64 = 2.0 * PI / 3.0;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThetaSweepRow {
    pub theta: f64,
    pub bin_center: f64,
    pub eps2_hat: f64,
    /// Closed-form fluctuation at the bin center.
    pub analytic: f64,
    pub relative_error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepSummary {
    pub theta: f64,
    pub median_relative_error: f64,
    pub bins: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepReport {
    pub n_photons: u64,
    pub seed: u64,
    pub max_abs_phase: f64,
    pub summaries: Vec<SweepSummary>,
    /// Median error falls strictly as `theta` decreases.
    pub monotone: bool,
    pub rows: Vec<ThetaSweepRow>,
}

pub fn theta_sweep(
    base: &ExperimentConfig,
    thetas: &[f64],
    n_photons: u64,
    seed: u64,
) -> Result<Vec<ThetaSweepRow>> {
    theta_sweep_with(
        base,
        thetas,
        n_photons,
        seed,
        &Binning::default(),
        Normalization::default(),
    )
}

/// Simulate each angle with the same seed and compare the per-bin estimate
/// with the closed-form profile. Rows follow the input angle order.
pub fn theta_sweep_with(
    base: &ExperimentConfig,
    thetas: &[f64],
    n_photons: u64,
    seed: u64,
    binning: &Binning,
    normalization: Normalization,
) -> Result<Vec<ThetaSweepRow>> {
    if thetas.is_empty() {
        return Err(Error::Usage("theta sweep needs at least one angle".into()));
    }
    if let Some(&bad) = thetas.iter().find(|t| !(**t > 0.0)) {
        return Err(Error::InvalidTheta(bad));
    }
    let options = EstimateOptions {
        normalization,
        ..EstimateOptions::default()
    };
    let mut rows = Vec::new();
    for &theta in thetas {
        let experiment = Experiment::new(base.with_theta(theta)?)?;
        let counts = experiment.run(n_photons, seed, binning)?;
        for est in estimate_path_fluctuation_with(&counts, &options)? {
            let Some(eps2_hat) = est.eps2_hat else {
                continue;
            };
            let analytic = path_fluctuation_at_phase(est.bin_center);
            rows.push(ThetaSweepRow {
                theta,
                bin_center: est.bin_center,
                eps2_hat,
                analytic,
                relative_error: (eps2_hat - analytic).abs() / analytic.max(RELATIVE_ERROR_FLOOR),
            });
        }
    }
    Ok(rows)
}

/// Median relative error per angle over bins with `|x| ≤ max_abs_phase`.
pub fn summarize_sweep(rows: &[ThetaSweepRow], max_abs_phase: f64) -> Vec<SweepSummary> {
    let mut thetas: Vec<f64> = Vec::new();
    for r in rows {
        if !thetas.contains(&r.theta) {
            thetas.push(r.theta);
        }
    }
    thetas
        .into_iter()
        .map(|theta| {
            let mut errs: Vec<f64> = rows
                .iter()
                .filter(|r| r.theta == theta && r.bin_center.abs() <= max_abs_phase)
                .map(|r| r.relative_error)
                .collect();
            SweepSummary {
                theta,
                median_relative_error: median(&mut errs),
                bins: errs.len(),
            }
        })
        .collect()
}

fn median(v: &mut [f64]) -> f64 {
    if v.is_empty() {
        return f64::NAN;
    }
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        0.5 * (v[m - 1] + v[m])
    }
}

impl SweepReport {
    pub fn new(rows: Vec<ThetaSweepRow>, n_photons: u64, seed: u64) -> Self {
        let summaries = summarize_sweep(&rows, SUMMARY_MAX_PHASE);
        let mut by_theta = summaries.clone();
        by_theta.sort_by(|a, b| b.theta.total_cmp(&a.theta));
        let monotone = by_theta
            .windows(2)
            .all(|w| w[1].median_relative_error < w[0].median_relative_error);
        Self {
            n_photons,
            seed,
            max_abs_phase: SUMMARY_MAX_PHASE,
            summaries,
            monotone,
            rows,
        }
    }
}

/// CSV with columns `theta,bin_center,eps2_hat,analytic,relative_error`.
pub fn sweep_csv(rows: &[ThetaSweepRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    finish_csv(w)
}
