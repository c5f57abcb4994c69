use serde::{Deserialize, Serialize};

use super::interval::{estimate_pv_with, IntervalMethod};
use crate::analytic::path_fluctuation_at_phase;
use crate::counts::{finish_csv, BinnedCounts};
use crate::error::{Error, Result};

/// Bins whose analytic fluctuation exceeds this are flagged as near-singular.
pub const DEFAULT_CEILING: f64 = 1e3;

pub const DEFAULT_CONFIDENCE: f64 = 0.99;

/// Divisor turning a `V` fraction into a normalized path fluctuation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    /// Divide by `sin²θ`, the exact `V` probability of the incoherent mixture.
    #[default]
    SinSquared,
    /// Divide by `θ²`.
    PaperLiteral,
}

impl Normalization {
    pub fn divisor(self, theta: f64) -> f64 {
        match self {
            Normalization::SinSquared => theta.sin().powi(2),
            Normalization::PaperLiteral => theta * theta,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BinFlag {
    Ok,
    NearSingular,
    Empty,
}

/// Estimated path fluctuation in one bin.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FluctuationEstimate {
    pub bin_center: f64,
    /// `None` for empty bins.
    pub eps2_hat: Option<f64>,
    pub ci_low: Option<f64>,
    pub ci_high: Option<f64>,
    pub n_total: u64,
    pub n_v: u64,
    /// Closed-form fluctuation at the bin center.
    pub analytic: f64,
    pub flag: BinFlag,
}

impl FluctuationEstimate {
    pub fn covers(&self, value: f64) -> bool {
        matches!((self.ci_low, self.ci_high), (Some(lo), Some(hi)) if lo <= value && value <= hi)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EstimateOptions {
    pub confidence: f64,
    pub normalization: Normalization,
    pub method: IntervalMethod,
    pub ceiling: f64,
}

impl Default for EstimateOptions {
    fn default() -> Self {
        Self {
            confidence: DEFAULT_CONFIDENCE,
            normalization: Normalization::default(),
            method: IntervalMethod::default(),
            ceiling: DEFAULT_CEILING,
        }
    }
}

pub fn estimate_path_fluctuation(
    counts: &BinnedCounts,
    confidence: f64,
) -> Result<Vec<FluctuationEstimate>> {
    estimate_path_fluctuation_with(
        counts,
        &EstimateOptions {
            confidence,
            ..EstimateOptions::default()
        },
    )
}

/// Per-bin `ε̂² = (n_V / n_total) / divisor(θ)` with the proportion's
/// confidence interval scaled the same way.
pub fn estimate_path_fluctuation_with(
    counts: &BinnedCounts,
    options: &EstimateOptions,
) -> Result<Vec<FluctuationEstimate>> {
    if !(counts.theta > 0.0) {
        return Err(Error::InvalidTheta(counts.theta));
    }
    counts.check_invariants()?;
    let divisor = options.normalization.divisor(counts.theta);
    (0..counts.n_bins())
        .map(|i| {
            let center = counts.bin_center(i);
            let analytic = path_fluctuation_at_phase(center);
            let mut est = FluctuationEstimate {
                bin_center: center,
                eps2_hat: None,
                ci_low: None,
                ci_high: None,
                n_total: counts.n_total[i],
                n_v: counts.n_v[i],
                analytic,
                flag: if analytic > options.ceiling {
                    BinFlag::NearSingular
                } else {
                    BinFlag::Ok
                },
            };
            match estimate_pv_with(
                counts.n_v[i],
                counts.n_total[i],
                options.confidence,
                options.method,
            ) {
                Ok(pv) => {
                    est.eps2_hat = Some(pv.p_hat / divisor);
                    est.ci_low = Some(pv.ci_low / divisor);
                    est.ci_high = Some(pv.ci_high / divisor);
                }
                Err(Error::EmptyBin) => est.flag = BinFlag::Empty,
                Err(e) => return Err(e),
            }
            Ok(est)
        })
        .collect()
}

/// CSV with columns `center,eps2_hat,ci_low,ci_high,analytic,flag`.
pub fn fluctuation_csv(estimates: &[FluctuationEstimate]) -> Result<String> {
    #[derive(Serialize)]
    struct Row {
        center: f64,
        eps2_hat: Option<f64>,
        ci_low: Option<f64>,
        ci_high: Option<f64>,
        analytic: f64,
        flag: BinFlag,
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    for e in estimates {
        w.serialize(Row {
            center: e.bin_center,
            eps2_hat: e.eps2_hat,
            ci_low: e.ci_low,
            ci_high: e.ci_high,
            analytic: e.analytic,
            flag: e.flag,
        })?;
    }
    finish_csv(w)
}
