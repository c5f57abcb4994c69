use num_complex::Complex64;
use serde::Serialize;

use crate::analytic::HalfPhase;
use crate::config::ExperimentConfig;
use crate::error::{Error, Result};

/// Weak values of the two path projectors for an unrotated photon
/// post-selected on screen momentum `p`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WeakValuePair {
    pub w1: Complex64,
    pub w2: Complex64,
}

impl WeakValuePair {
    /// `|w1 − w2|²`, equal to the path fluctuation `tan²(x/2)`.
    pub fn difference_sq(&self) -> f64 {
        (self.w1 - self.w2).norm_sqr()
    }
}

/// `w1 = 1/2 + (i/2) tan(x/2)`, `w2 = 1 − w1` at fringe phase `x`.
pub fn weak_value_at_phase(x: f64) -> Result<WeakValuePair> {
    let half = HalfPhase::new(x);
    if half.cos2 == 0.0 {
        return Err(Error::PostSelectionSingular { phase: x });
    }
    let t = if half.sin2 == 0.0 {
        0.0
    } else {
        (0.5 * x).tan()
    };
    let w1 = Complex64::new(0.5, 0.5 * t);
    Ok(WeakValuePair {
        w1,
        w2: Complex64::new(1.0, 0.0) - w1,
    })
}

pub fn weak_value_path(p: f64, config: &ExperimentConfig) -> Result<WeakValuePair> {
    weak_value_at_phase(config.phase(p))
}
