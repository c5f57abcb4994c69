//! Monte Carlo photon detections.
//!
//! Momenta are drawn by inverse transform from a tabulated CDF of the
//! detection density; each photon's polarization is then a Bernoulli draw
//! with the conditional `V` probability at its fringe phase.

use std::ops::Range;

use rand::Rng;
use rayon::prelude::*;

use crate::analytic::{conditional_v_at_phase, density_closed_form, Polarization};
use crate::config::{Binning, ExperimentConfig, MomentumGrid};
use crate::counts::{merge_counts, BinnedCounts};
use crate::error::{Error, Result};
use crate::quad::gl4;
use crate::rng::{PhotonStreams, PHOTONS_PER_STREAM};

/// Largest probability the grid may leave outside its range.
pub const MAX_TAIL_MASS: f64 = 1e-3;

/// Cells per guide-table entry.
const GUIDE_STRIDE: usize = 8;

/// Piecewise-linear CDF of the detection density over a momentum grid.
#[derive(Clone, Debug)]
pub struct CdfTable {
    grid: MomentumGrid,
    cdf: Vec<f64>,
    guide: Vec<u32>,
    grid_mass: f64,
}

impl CdfTable {
    pub fn grid(&self) -> &MomentumGrid {
        &self.grid
    }

    /// CDF values at the grid points; starts at 0 and ends at exactly 1.
    pub fn values(&self) -> &[f64] {
        &self.cdf
    }

    /// Probability carried by the grid range before renormalization.
    pub fn grid_mass(&self) -> f64 {
        self.grid_mass
    }

    pub fn tail_mass(&self) -> f64 {
        (1.0 - self.grid_mass).max(0.0)
    }

    /// Tabulated CDF at `p`, interpolated linearly inside a cell.
    pub fn cdf_at(&self, p: f64) -> f64 {
        if p <= self.grid.p_min {
            return 0.0;
        }
        if p >= self.grid.p_max {
            return 1.0;
        }
        let h = self.grid.spacing();
        let t = (p - self.grid.p_min) / h;
        let i = (t.floor() as usize).min(self.grid.n_cells() - 1);
        let frac = t - i as f64;
        self.cdf[i] + frac * (self.cdf[i + 1] - self.cdf[i])
    }

    /// Inverse of [`cdf_at`](Self::cdf_at) for `u` in `[0, 1)`.
    #[inline]
    pub fn quantile(&self, u: f64) -> f64 {
        let n_cells = self.grid.n_cells();
        let g = self.guide.len();
        let j = ((u * g as f64) as usize).min(g - 1);
        let mut i = self.guide[j] as usize;
        while i + 1 < n_cells && self.cdf[i + 1] <= u {
            i += 1;
        }
        let (lo, hi) = (self.cdf[i], self.cdf[i + 1]);
        let t = if hi > lo {
            ((u - lo) / (hi - lo)).clamp(0.0, 1.0)
        } else {
            0.0
        };
        let p = self.grid.point(i) + self.grid.spacing() * t;
        p.min(self.grid.p_max)
    }
}

/// Tabulate the detection-density CDF on the configuration's grid.
///
/// Cell masses use four-point Gauss–Legendre quadrature. Fails if the grid
/// leaves more than [`MAX_TAIL_MASS`] of the probability outside its range.
pub fn build_cdf(config: &ExperimentConfig) -> Result<CdfTable> {
    config.validate()?;
    let grid = config.p_grid.clone();
    let n_cells = grid.n_cells();
    if n_cells > u32::MAX as usize {
        return Err(Error::InvalidConfig("momentum grid is too large".into()));
    }
    let masses: Vec<f64> = (0..n_cells)
        .into_par_iter()
        .map(|i| {
            gl4(
                |p| density_closed_form(p, config),
                grid.point(i),
                grid.point(i + 1),
            )
        })
        .collect();

    let mut cdf = Vec::with_capacity(n_cells + 1);
    let mut acc = 0.0;
    cdf.push(0.0);
    for m in &masses {
        acc += m;
        cdf.push(acc);
    }
    let grid_mass = acc;
    let tail = 1.0 - grid_mass;
    if !(grid_mass > 0.0) || tail > MAX_TAIL_MASS {
        return Err(Error::InsufficientCoverage { tail });
    }
    for v in &mut cdf {
        *v /= grid_mass;
    }
    cdf[n_cells] = 1.0;

    let g = (n_cells / GUIDE_STRIDE).max(1);
    let mut guide = Vec::with_capacity(g);
    let mut i = 0usize;
    for j in 0..g {
        let level = j as f64 / g as f64;
        while i + 1 < n_cells && cdf[i + 1] <= level {
            i += 1;
        }
        guide.push(i as u32);
    }

    Ok(CdfTable {
        grid,
        cdf,
        guide,
        grid_mass,
    })
}

/// One inverse-transform momentum draw.
pub fn sample_momentum<R: Rng + ?Sized>(cdf: &CdfTable, rng: &mut R) -> f64 {
    cdf.quantile(rng.random::<f64>())
}

/// Polarization of a photon detected at `p`.
pub fn sample_polarization<R: Rng + ?Sized>(
    p: f64,
    config: &ExperimentConfig,
    rng: &mut R,
) -> Result<Polarization> {
    let p_v = conditional_v_at_phase(config.phase(p), config.theta)?;
    Ok(if rng.random::<f64>() < p_v {
        Polarization::V
    } else {
        Polarization::H
    })
}

/// A single detected photon.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhotonEvent {
    pub p: f64,
    pub pol: Polarization,
}

/// How detected photons acquire their polarization.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PolarizationModel {
    /// Interference-conditioned `P(V|x)` from the coherent screen state.
    #[default]
    Coherent,
    /// Incoherent mixture of `±θ` rotations: `V` with probability `sin²θ`
    /// regardless of where the photon lands.
    Mixture,
}

/// A configuration together with its tabulated CDF, ready to simulate runs.
#[derive(Clone, Debug)]
pub struct Experiment {
    config: ExperimentConfig,
    cdf: CdfTable,
}

impl Experiment {
    pub fn new(config: ExperimentConfig) -> Result<Self> {
        let cdf = build_cdf(&config)?;
        Ok(Self { config, cdf })
    }

    pub fn config(&self) -> &ExperimentConfig {
        &self.config
    }

    pub fn cdf(&self) -> &CdfTable {
        &self.cdf
    }

    /// Same momentum table, different rotation angle. The density's
    /// dependence on `theta` requires a fresh table, so this rebuilds it.
    pub fn with_theta(&self, theta: f64) -> Result<Self> {
        Self::new(self.config.with_theta(theta)?)
    }

    pub fn run(&self, n_photons: u64, seed: u64, binning: &Binning) -> Result<BinnedCounts> {
        self.run_model(PolarizationModel::Coherent, n_photons, seed, binning)
    }

    /// Simulate `n_photons` detections, spreading streams over the current
    /// rayon pool. The result depends only on the arguments.
    pub fn run_model(
        &self,
        model: PolarizationModel,
        n_photons: u64,
        seed: u64,
        binning: &Binning,
    ) -> Result<BinnedCounts> {
        if n_photons == 0 {
            return Err(Error::Usage("n_photons must be at least 1".into()));
        }
        let n_streams = PhotonStreams::streams_for(n_photons);
        let empty = || BinnedCounts::empty(binning, self.config.theta, seed);
        (0..n_streams)
            .into_par_iter()
            .map(|s| {
                let start = s * PHOTONS_PER_STREAM;
                let end = (start + PHOTONS_PER_STREAM).min(n_photons);
                self.run_range(model, seed, binning, start..end)
            })
            .try_reduce(empty, |a, b| merge_counts(&a, &b))
    }

    /// Count photons with global indices in `photons`.
    pub fn run_range(
        &self,
        model: PolarizationModel,
        seed: u64,
        binning: &Binning,
        photons: Range<u64>,
    ) -> Result<BinnedCounts> {
        let mut counts = BinnedCounts::empty(binning, self.config.theta, seed);
        let theta = self.config.theta;
        let mixture_v = theta.sin().powi(2);
        self.for_each_draw(seed, photons, |p, u_pol| {
            let x = self.config.phase(p);
            let p_v = match model {
                PolarizationModel::Coherent => conditional_v_at_phase(x, theta)?,
                PolarizationModel::Mixture => mixture_v,
            };
            counts.record(binning.index_of(x), u_pol < p_v);
            Ok(())
        })?;
        Ok(counts)
    }

    /// Individual coherent-model events for photons in `photons`.
    pub fn events(&self, seed: u64, photons: Range<u64>) -> Result<Vec<PhotonEvent>> {
        let mut out = Vec::with_capacity((photons.end - photons.start) as usize);
        self.for_each_draw(seed, photons, |p, u_pol| {
            let p_v = conditional_v_at_phase(self.config.phase(p), self.config.theta)?;
            let pol = if u_pol < p_v {
                Polarization::V
            } else {
                Polarization::H
            };
            out.push(PhotonEvent { p, pol });
            Ok(())
        })?;
        Ok(out)
    }

    fn for_each_draw(
        &self,
        seed: u64,
        photons: Range<u64>,
        mut f: impl FnMut(f64, f64) -> Result<()>,
    ) -> Result<()> {
        let streams = PhotonStreams::new(seed);
        let mut i = photons.start;
        while i < photons.end {
            let mut rng = streams.at_photon(i);
            let stream_end = (i / PHOTONS_PER_STREAM + 1) * PHOTONS_PER_STREAM;
            let end = stream_end.min(photons.end);
            for _ in i..end {
                let p = sample_momentum(&self.cdf, &mut rng);
                let u_pol = rng.random::<f64>();
                f(p, u_pol)?;
            }
            i = end;
        }
        Ok(())
    }
}

/// Simulate a run over the default window `[−π, π]` with `n_bins` bins.
pub fn run_experiment(
    config: &ExperimentConfig,
    n_photons: u64,
    seed: u64,
    n_bins: usize,
) -> Result<BinnedCounts> {
    let binning = Binning::with_bins(n_bins)?;
    Experiment::new(config.clone())?.run(n_photons, seed, &binning)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn small_config(theta: f64) -> ExperimentConfig {
        let base = ExperimentConfig::new(theta).unwrap();
        let grid = MomentumGrid {
            n_points: (1 << 16) + 1,
            ..base.p_grid.clone()
        };
        base.with_grid(grid).unwrap()
    }

    #[test]
    fn cdf_is_monotone_and_symmetric() {
        let cdf = build_cdf(&small_config(0.0)).unwrap();
        let v = cdf.values();
        assert_eq!(v[0], 0.0);
        assert_eq!(*v.last().unwrap(), 1.0);
        assert!(v.windows(2).all(|w| w[0] <= w[1]));
        assert!((cdf.cdf_at(0.0) - 0.5).abs() < 1e-6);
        assert!(cdf.tail_mass() < MAX_TAIL_MASS);
    }

    #[test]
    fn narrow_grid_is_rejected() {
        let c = ExperimentConfig::new(0.05).unwrap();
        let c = c
            .with_grid(MomentumGrid::symmetric(200.0, 10_001).unwrap())
            .unwrap();
        assert!(matches!(
            build_cdf(&c),
            Err(Error::InsufficientCoverage { .. })
        ));
    }

    #[test]
    fn quantile_inverts_cdf() {
        let cdf = build_cdf(&small_config(0.3)).unwrap();
        for k in 1..1000 {
            let u = k as f64 / 1000.0;
            let p = cdf.quantile(u);
            assert!((cdf.cdf_at(p) - u).abs() < 1e-9, "u={u}");
        }
        let median = cdf.quantile(0.5);
        assert!(median.abs() <= cdf.grid().spacing());
        assert_eq!(cdf.quantile(0.0), cdf.grid().p_min);
    }

    #[test]
    fn polarization_draws() {
        let c = ExperimentConfig::new(0.2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            assert_eq!(
                sample_polarization(0.0, &c, &mut rng).unwrap(),
                Polarization::H
            );
            assert_eq!(
                sample_polarization(c.momentum(PI), &c, &mut rng).unwrap(),
                Polarization::V
            );
        }
        let c0 = ExperimentConfig::new(0.0).unwrap();
        assert!(sample_polarization(c0.momentum(PI), &c0, &mut rng).is_err());

        // θ = π/4 at x = π/2: fair coin, 3σ = 0.0047 at 1e5 draws
        let c = ExperimentConfig::new(PI / 4.0).unwrap();
        let p = c.momentum(PI / 2.0);
        let n = 100_000;
        let v = (0..n)
            .filter(|_| sample_polarization(p, &c, &mut rng).unwrap() == Polarization::V)
            .count();
        assert!((v as f64 / n as f64 - 0.5).abs() < 0.005);
    }

    #[test]
    fn fixed_seed_is_reproducible() {
        let e = Experiment::new(small_config(0.05)).unwrap();
        let a = e.events(3, 0..1000).unwrap();
        let b = e.events(3, 0..1000).unwrap();
        assert_eq!(a, b);
        let tail = e.events(3, 500..1000).unwrap();
        assert_eq!(&a[500..], &tail[..]);
        assert_ne!(a, e.events(4, 0..1000).unwrap());
    }

    #[test]
    fn no_rotation_no_vertical() {
        let e = Experiment::new(small_config(0.0)).unwrap();
        let counts = e.run(200_000, 1, &Binning::default()).unwrap();
        assert_eq!(counts.total_v(), 0);
        assert_eq!(counts.n_photons, 200_000);
        counts.check_invariants().unwrap();
    }

    #[test]
    fn split_runs_merge_to_whole() {
        let e = Experiment::new(small_config(0.1)).unwrap();
        let b = Binning::with_bins(20).unwrap();
        let whole = e.run(150_000, 11, &b).unwrap();
        let m = PolarizationModel::Coherent;
        let first = e.run_range(m, 11, &b, 0..70_001).unwrap();
        let second = e.run_range(m, 11, &b, 70_001..150_000).unwrap();
        assert_eq!(merge_counts(&first, &second).unwrap(), whole);
        assert!(matches!(e.run(0, 1, &b), Err(Error::Usage(_))));
    }
}
