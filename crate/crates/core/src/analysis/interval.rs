use serde::{Deserialize, Serialize};
use statrs::distribution::{Beta, ContinuousCDF, Normal};

use crate::error::{Error, Result};

/// Confidence interval construction for a binomial proportion.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IntervalMethod {
    #[default]
    Wilson,
    ClopperPearson,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProportionEstimate {
    pub p_hat: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

/// `n_v / n_total` with its Wilson score interval.
pub fn estimate_pv(n_v: u64, n_total: u64, confidence: f64) -> Result<ProportionEstimate> {
    estimate_pv_with(n_v, n_total, confidence, IntervalMethod::Wilson)
}

pub fn estimate_pv_with(
    n_v: u64,
    n_total: u64,
    confidence: f64,
    method: IntervalMethod,
) -> Result<ProportionEstimate> {
    if n_total == 0 {
        return Err(Error::EmptyBin);
    }
    if !(confidence > 0.0 && confidence < 1.0) {
        return Err(Error::Usage(format!(
            "confidence must lie in (0, 1), got {confidence}"
        )));
    }
    if n_v > n_total {
        return Err(Error::Usage(format!(
            "{n_v} successes out of {n_total} trials"
        )));
    }
    let n = n_total as f64;
    let p_hat = n_v as f64 / n;
    let (lo, hi) = match method {
        IntervalMethod::Wilson => wilson(p_hat, n, confidence),
        IntervalMethod::ClopperPearson => clopper_pearson(n_v, n_total, confidence),
    };
    Ok(ProportionEstimate {
        p_hat,
        ci_low: lo.clamp(0.0, p_hat),
        ci_high: hi.clamp(p_hat, 1.0),
    })
}

fn two_sided_z(confidence: f64) -> f64 {
    Normal::standard().inverse_cdf(1.0 - 0.5 * (1.0 - confidence))
}

fn wilson(p_hat: f64, n: f64, confidence: f64) -> (f64, f64) {
    let z = two_sided_z(confidence);
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p_hat + z2 / (2.0 * n)) / denom;
    let half = z / denom * (p_hat * (1.0 - p_hat) / n + z2 / (4.0 * n * n)).sqrt();
    (center - half, center + half)
}

fn clopper_pearson(k: u64, n: u64, confidence: f64) -> (f64, f64) {
    let alpha = 1.0 - confidence;
    let (kf, nf) = (k as f64, n as f64);
    let lo = if k == 0 {
        0.0
    } else {
        Beta::new(kf, nf - kf + 1.0)
            .expect("positive shape parameters")
            .inverse_cdf(0.5 * alpha)
    };
    let hi = if k == n {
        1.0
    } else {
        Beta::new(kf + 1.0, nf - kf)
            .expect("positive shape parameters")
            .inverse_cdf(1.0 - 0.5 * alpha)
    };
    (lo, hi)
}
