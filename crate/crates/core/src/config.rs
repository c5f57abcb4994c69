//! Physical parameters, the momentum grid, and the fringe-phase binning.
//!
//! Positions on the screen are handled as transverse momentum `p`; the
//! dimensionless fringe phase is `x = d·p/ħ`, so bright fringes sit at
//! `x = 2πk` and dark fringes at `x = (2k+1)π`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Rotation angle above which the small-angle identifications `δφ² ≈ P(V)`
/// and `δφ² ≈ θ² tan²(x/2)` are flagged.
pub const SMALL_ANGLE_LIMIT: f64 = 0.1;

/// Default number of tabulation points for the momentum grid.
pub const DEFAULT_GRID_POINTS: usize = (1 << 21) + 1;

/// Probability mass the default grid is allowed to leave in the tails.
const DEFAULT_TAIL_TARGET: f64 = 5e-4;

/// Uniform grid over transverse momentum used for tabulation and sampling.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentumGrid {
    pub p_min: f64,
    pub p_max: f64,
    pub n_points: usize,
}

impl MomentumGrid {
    pub fn new(p_min: f64, p_max: f64, n_points: usize) -> Result<Self> {
        let grid = Self {
            p_min,
            p_max,
            n_points,
        };
        grid.validate()?;
        Ok(grid)
    }

    pub fn symmetric(p_max: f64, n_points: usize) -> Result<Self> {
        Self::new(-p_max, p_max, n_points)
    }

    /// Symmetric grid wide enough that the sinc² tails beyond it carry less
    /// than 5e-4 of the detection probability. The edge is rounded out to a
    /// dark fringe so that the grid holds a whole number of fringe periods.
    pub fn covering(slit_separation: f64, envelope_width: f64, hbar: f64) -> Self {
        // two-sided tail of C² sinc²(a p / 2ħ) beyond |p| = P is 2ħ / (π a P)
        let p_needed = 2.0 * hbar / (PI * envelope_width * DEFAULT_TAIL_TARGET);
        let x_needed = slit_separation * p_needed / hbar;
        let k = ((x_needed / PI - 1.0) / 2.0).ceil().max(0.0);
        let x_max = (2.0 * k + 1.0) * PI;
        let p_max = x_max * hbar / slit_separation;
        Self {
            p_min: -p_max,
            p_max,
            n_points: DEFAULT_GRID_POINTS,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.p_min.is_finite() && self.p_max.is_finite()) || self.p_min >= self.p_max {
            return Err(Error::InvalidConfig(format!(
                "momentum grid needs p_min < p_max, got [{}, {}]",
                self.p_min, self.p_max
            )));
        }
        if self.n_points < 2 {
            return Err(Error::InvalidConfig(format!(
                "momentum grid needs at least 2 points, got {}",
                self.n_points
            )));
        }
        Ok(())
    }

    pub fn n_cells(&self) -> usize {
        self.n_points - 1
    }

    pub fn spacing(&self) -> f64 {
        (self.p_max - self.p_min) / self.n_cells() as f64
    }

    pub fn point(&self, i: usize) -> f64 {
        if i == self.n_cells() {
            self.p_max
        } else {
            self.p_min + self.spacing() * i as f64
        }
    }

    pub fn contains(&self, p: f64) -> bool {
        p >= self.p_min && p <= self.p_max
    }
}

/// Parameters of the polarization-tagged double-slit experiment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    /// Rotation applied as `+theta` in slit 1 and `-theta` in slit 2 (radians).
    pub theta: f64,
    /// Slit separation `d`.
    pub slit_separation: f64,
    /// Single-slit width `a` entering the sinc envelope.
    pub envelope_width: f64,
    pub hbar: f64,
    pub p_grid: MomentumGrid,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self::physical(0.05, 1.0, 0.25, 1.0).expect("default configuration is valid")
    }
}

impl ExperimentConfig {
    /// Dimensionless configuration (`d = ħ = 1`, `a = d/4`) at the given angle.
    pub fn new(theta: f64) -> Result<Self> {
        Self::physical(theta, 1.0, 0.25, 1.0)
    }

    /// Configuration in physical units with the default covering grid.
    pub fn physical(
        theta: f64,
        slit_separation: f64,
        envelope_width: f64,
        hbar: f64,
    ) -> Result<Self> {
        let mut config = Self {
            theta,
            slit_separation,
            envelope_width,
            hbar,
            p_grid: MomentumGrid {
                p_min: -1.0,
                p_max: 1.0,
                n_points: 2,
            },
        };
        config.validate_physics()?;
        config.p_grid = MomentumGrid::covering(slit_separation, envelope_width, hbar);
        Ok(config)
    }

    pub fn with_theta(&self, theta: f64) -> Result<Self> {
        let config = Self {
            theta,
            ..self.clone()
        };
        config.validate()?;
        Ok(config)
    }

    pub fn with_grid(&self, p_grid: MomentumGrid) -> Result<Self> {
        let config = Self {
            p_grid,
            ..self.clone()
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        self.validate_physics()?;
        self.p_grid.validate()
    }

    fn validate_physics(&self) -> Result<()> {
        validate_theta(self.theta)?;
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::InvalidConfig(format!(
                    "{name} must be positive and finite, got {v}"
                )))
            }
        };
        positive("slit_separation", self.slit_separation)?;
        positive("envelope_width", self.envelope_width)?;
        positive("hbar", self.hbar)?;
        if self.envelope_width > self.slit_separation {
            return Err(Error::InvalidConfig(format!(
                "envelope_width {} exceeds slit_separation {}",
                self.envelope_width, self.slit_separation
            )));
        }
        Ok(())
    }

    /// Fringe phase `x = d·p/ħ`.
    #[inline]
    pub fn phase(&self, p: f64) -> f64 {
        self.slit_separation * p / self.hbar
    }

    /// Momentum at fringe phase `x`.
    #[inline]
    pub fn momentum(&self, x: f64) -> f64 {
        x * self.hbar / self.slit_separation
    }

    /// Normalization `C` of the envelope `f(p) = C·sinc(a p / 2ħ)`.
    ///
    /// For `a ≤ d` the `cos(d p / ħ)` term integrates to zero against the
    /// sinc² envelope, so the screen density integrates to `C²·2πħ/a` at
    /// every `theta`.
    pub fn normalization(&self) -> f64 {
        (self.envelope_width / (2.0 * PI * self.hbar)).sqrt()
    }

    pub fn is_small_angle(&self) -> bool {
        self.theta <= SMALL_ANGLE_LIMIT
    }
}

pub(crate) fn validate_theta(theta: f64) -> Result<()> {
    if theta.is_finite() && (0.0..PI / 2.0).contains(&theta) {
        Ok(())
    } else {
        Err(Error::InvalidTheta(theta))
    }
}

/// Uniform bins in fringe phase over a window spanning whole fringe periods.
///
/// Photons are folded into the window modulo its width, so every detected
/// photon lands in exactly one bin. Bins are right-closed, `(left, right]`,
/// with the window's left edge belonging to the first bin.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Binning {
    pub lo: f64,
    pub hi: f64,
    pub n_bins: usize,
}

impl Default for Binning {
    fn default() -> Self {
        Self {
            lo: -PI,
            hi: PI,
            n_bins: 100,
        }
    }
}

impl Binning {
    pub fn new(lo: f64, hi: f64, n_bins: usize) -> Result<Self> {
        if n_bins < 2 {
            return Err(Error::InvalidConfig(format!(
                "need at least 2 bins, got {n_bins}"
            )));
        }
        if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
            return Err(Error::InvalidWindow(format!("[{lo}, {hi}] is empty")));
        }
        let periods = (hi - lo) / (2.0 * PI);
        if periods.round() < 1.0 || (periods - periods.round()).abs() > 1e-9 * periods.max(1.0) {
            return Err(Error::InvalidWindow(format!(
                "[{lo}, {hi}] must span a whole number of fringe periods (2π)"
            )));
        }
        Ok(Self { lo, hi, n_bins })
    }

    pub fn with_bins(n_bins: usize) -> Result<Self> {
        Self::new(-PI, PI, n_bins)
    }

    /// Rebuild from stored edges, checking that they are uniform.
    pub fn from_edges(edges: &[f64]) -> Result<Self> {
        if edges.len() < 3 {
            return Err(Error::IncompatibleBinning("fewer than two bins".into()));
        }
        let binning = Self::new(edges[0], edges[edges.len() - 1], edges.len() - 1)?;
        let tol = 1e-9 * binning.bin_width();
        if binning
            .edges()
            .iter()
            .zip(edges)
            .any(|(a, b)| (a - b).abs() > tol)
        {
            return Err(Error::IncompatibleBinning(
                "bin edges are not uniform".into(),
            ));
        }
        Ok(binning)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn bin_width(&self) -> f64 {
        self.width() / self.n_bins as f64
    }

    pub fn edges(&self) -> Vec<f64> {
        (0..=self.n_bins).map(|i| self.edge(i)).collect()
    }

    pub fn edge(&self, i: usize) -> f64 {
        if i == self.n_bins {
            self.hi
        } else {
            self.lo + self.bin_width() * i as f64
        }
    }

    pub fn center(&self, i: usize) -> f64 {
        self.lo + self.bin_width() * (i as f64 + 0.5)
    }

    /// Fold `x` into `(lo, hi]` by whole window widths.
    pub fn fold(&self, x: f64) -> f64 {
        let w = self.width();
        let t = (x - self.lo).rem_euclid(w);
        if t == 0.0 && x != self.lo {
            self.hi
        } else {
            self.lo + t
        }
    }

    /// Bin index of fringe phase `x` after folding.
    pub fn index_of(&self, x: f64) -> usize {
        let w = self.width();
        let mut t = (x - self.lo).rem_euclid(w);
        if t == 0.0 && x != self.lo {
            t = w;
        }
        let k = (t / self.bin_width()).ceil() as usize;
        k.saturating_sub(1).min(self.n_bins - 1)
    }
}
