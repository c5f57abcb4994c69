use serde::{Deserialize, Serialize};

use crate::analytic::{conditional_v_at_phase, fringe_pattern, path_fluctuation_at_phase};
use crate::config::ExperimentConfig;
use crate::counts::finish_csv;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileFlag {
    Ok,
    /// Finite value above the ceiling; `eps2` holds the ceiling.
    Clamped,
    /// Exact dark fringe; `eps2` holds the ceiling.
    Divergent,
}

/// One sample of the closed-form profiles at fringe phase `x`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnalyticRow {
    pub x: f64,
    /// Fringe factor `1 + cos x` of the undisturbed pattern.
    pub pattern: f64,
    /// Path fluctuation, clamped at the ceiling.
    pub eps2: f64,
    /// `P(V|x)`; `None` where it is undefined.
    pub p_v: Option<f64>,
    pub flag: ProfileFlag,
}

/// Tabulate pattern, path fluctuation and conditional `V` probability on
/// `n_points` evenly spaced phases from `lo` to `hi` inclusive.
pub fn analytic_profile(
    config: &ExperimentConfig,
    lo: f64,
    hi: f64,
    n_points: usize,
    ceiling: f64,
) -> Result<Vec<AnalyticRow>> {
    config.validate()?;
    if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
        return Err(Error::InvalidWindow(format!("[{lo}, {hi}] is empty")));
    }
    if n_points < 2 {
        return Err(Error::Usage(format!(
            "need at least 2 points, got {n_points}"
        )));
    }
    if !(ceiling > 0.0) {
        return Err(Error::Usage(format!(
            "ceiling must be positive, got {ceiling}"
        )));
    }
    let step = (hi - lo) / (n_points - 1) as f64;
    Ok((0..n_points)
        .map(|i| {
            let x = if i + 1 == n_points {
                hi
            } else {
                lo + step * i as f64
            };
            let eps2 = path_fluctuation_at_phase(x);
            let flag = if eps2.is_infinite() {
                ProfileFlag::Divergent
            } else if eps2 > ceiling {
                ProfileFlag::Clamped
            } else {
                ProfileFlag::Ok
            };
            AnalyticRow {
                x,
                pattern: fringe_pattern(x),
                eps2: eps2.min(ceiling),
                p_v: conditional_v_at_phase(x, config.theta).ok(),
                flag,
            }
        })
        .collect())
}

/// CSV with columns `x,pattern,eps2,p_v,flag`.
pub fn profile_csv(rows: &[AnalyticRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    finish_csv(w)
}
