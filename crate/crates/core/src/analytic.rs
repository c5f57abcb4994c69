//! Closed-form model of the polarization-tagged double slit.
//!
//! A horizontally polarized photon passes two slits; slit 1 rotates its
//! polarization by `+θ`, slit 2 by `−θ`. Interference on the screen turns
//! the sign of the rotation into an elliptical polarization whose `V`
//! component grows from zero at the bright fringes to one at the dark
//! fringes. Everything here is a pure function of its arguments.

use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::config::{validate_theta, ExperimentConfig, SMALL_ANGLE_LIMIT};
use crate::error::{Error, Result};

/// Complex probability amplitude.
pub type ComplexAmp = Complex64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Polarization {
    H,
    V,
}

impl Polarization {
    fn index(self) -> usize {
        match self {
            Polarization::H => 0,
            Polarization::V => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Slit {
    One,
    Two,
}

impl Slit {
    pub const BOTH: [Slit; 2] = [Slit::One, Slit::Two];

    fn index(self) -> usize {
        match self {
            Slit::One => 0,
            Slit::Two => 1,
        }
    }

    /// Sign of the rotation and of the momentum phase for this slit.
    pub fn sign(self) -> f64 {
        match self {
            Slit::One => 1.0,
            Slit::Two => -1.0,
        }
    }
}

/// Joint polarization ⊗ path state right after the slits.
#[derive(Clone, Debug, PartialEq)]
pub struct JointState {
    amp: [[ComplexAmp; 2]; 2],
}

impl JointState {
    pub fn amplitude(&self, pol: Polarization, slit: Slit) -> ComplexAmp {
        self.amp[pol.index()][slit.index()]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amp.iter().flatten().map(|a| a.norm_sqr()).sum()
    }

    /// Project the path degree of freedom onto a screen outcome, given the
    /// outcome's overlap with each slit.
    pub fn contract(&self, slit_overlaps: [ComplexAmp; 2]) -> [ComplexAmp; 2] {
        self.amp
            .map(|row| row[0] * slit_overlaps[0] + row[1] * slit_overlaps[1])
    }
}

/// Screen amplitude `⟨p|ψ⟩` split into its `H` and `V` components.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScreenAmplitude {
    pub p: f64,
    pub a_h: ComplexAmp,
    pub a_v: ComplexAmp,
}

impl ScreenAmplitude {
    pub fn density(&self) -> f64 {
        self.a_h.norm_sqr() + self.a_v.norm_sqr()
    }

    /// Normalized polarization state of photons detected at `p`, or `None`
    /// where nothing is detected.
    pub fn polarization(&self) -> Option<PolarizationDensity> {
        let n = self.density();
        (n > 0.0).then(|| PolarizationDensity::pure(self.a_h / n.sqrt(), self.a_v / n.sqrt()))
    }
}

/// 2×2 polarization density matrix over `{H, V}`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolarizationDensity {
    pub rho: [[ComplexAmp; 2]; 2],
}

impl PolarizationDensity {
    pub fn pure(a_h: ComplexAmp, a_v: ComplexAmp) -> Self {
        let v = [a_h, a_v];
        Self {
            rho: [0, 1].map(|i| [0, 1].map(|j| v[i] * v[j].conj())),
        }
    }

    pub fn trace(&self) -> ComplexAmp {
        self.rho[0][0] + self.rho[1][1]
    }

    pub fn prob(&self, pol: Polarization) -> f64 {
        let i = pol.index();
        self.rho[i][i].re
    }

    /// Largest deviation from Hermiticity.
    pub fn hermiticity_error(&self) -> f64 {
        let diag = self.rho[0][0].im.abs().max(self.rho[1][1].im.abs());
        diag.max((self.rho[0][1] - self.rho[1][0].conj()).norm())
    }

    /// `tr ρ²`; one for a pure state, one half for the maximally mixed one.
    pub fn purity(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                s += (self.rho[i][j] * self.rho[j][i]).re;
            }
        }
        s
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn eigenvalues(&self) -> [f64; 2] {
        let a = self.rho[0][0].re;
        let d = self.rho[1][1].re;
        let b = self.rho[0][1];
        let mean = 0.5 * (a + d);
        let r = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
        [mean - r, mean + r]
    }
}

/// `sin²(x/2)` and `cos²(x/2)` for fringe phase `x`, with the exact fringe
/// positions (where `cos x` rounds to ±1) snapped to 0 and 1.
#[derive(Clone, Copy, Debug)]
pub(crate) struct HalfPhase {
    pub sin2: f64,
    pub cos2: f64,
}

impl HalfPhase {
    #[inline]
    pub fn new(x: f64) -> Self {
        let c = x.cos();
        if c == -1.0 {
            return Self {
                sin2: 1.0,
                cos2: 0.0,
            };
        }
        if c == 1.0 {
            return Self {
                sin2: 0.0,
                cos2: 1.0,
            };
        }
        let (s, c) = (0.5 * x).sin_cos();
        Self {
            sin2: s * s,
            cos2: c * c,
        }
    }
}

/// Post-slit joint state: `(cosθ|H⟩ ± sinθ|V⟩)|slit⟩ / √2`.
pub fn prepare_post_slit_state(theta: f64) -> Result<JointState> {
    validate_theta(theta)?;
    let (s, c) = theta.sin_cos();
    let h = ComplexAmp::new(FRAC_1_SQRT_2 * c, 0.0);
    let v = ComplexAmp::new(FRAC_1_SQRT_2 * s, 0.0);
    Ok(JointState {
        amp: [[h, h], [v, -v]],
    })
}

#[inline]
fn sinc(u: f64) -> f64 {
    if u == 0.0 {
        1.0
    } else {
        u.sin() / u
    }
}

/// Single-slit envelope `f(p) = C·sinc(a p / 2ħ)`.
pub fn envelope(p: f64, config: &ExperimentConfig) -> f64 {
    config.normalization() * sinc(config.envelope_width * p / (2.0 * config.hbar))
}

/// Momentum-space amplitude `⟨p|slit⟩ = f(p)·exp(±i d p / 2ħ)`.
pub fn slit_amplitude(p: f64, slit: Slit, config: &ExperimentConfig) -> ComplexAmp {
    let phase = slit.sign() * 0.5 * config.phase(p);
    ComplexAmp::from_polar(1.0, phase) * envelope(p, config)
}

/// Screen amplitude `√2 f(p) (cosθ cos(x/2)|H⟩ + i sinθ sin(x/2)|V⟩)`.
pub fn screen_amplitude(p: f64, config: &ExperimentConfig) -> ScreenAmplitude {
    let f = SQRT_2 * envelope(p, config);
    let (s_half, c_half) = (0.5 * config.phase(p)).sin_cos();
    let (s_t, c_t) = config.theta.sin_cos();
    ScreenAmplitude {
        p,
        a_h: ComplexAmp::new(f * c_t * c_half, 0.0),
        a_v: ComplexAmp::new(0.0, f * s_t * s_half),
    }
}

/// Probability density of detecting the photon at momentum `p`.
pub fn detection_density(p: f64, config: &ExperimentConfig) -> f64 {
    screen_amplitude(p, config).density()
}

/// Same quantity as [`detection_density`] written as
/// `C² sinc²(a p/2ħ)·(1 + cos2θ·cos x)`, which is cheaper to tabulate.
#[inline]
pub(crate) fn density_closed_form(p: f64, config: &ExperimentConfig) -> f64 {
    let f = envelope(p, config);
    f * f * (1.0 + (2.0 * config.theta).cos() * config.phase(p).cos())
}

/// `|⟨V|⟨p|ψ⟩|²` in closed form.
#[inline]
pub(crate) fn v_density_closed_form(p: f64, config: &ExperimentConfig) -> f64 {
    let f = envelope(p, config);
    let s = config.theta.sin();
    f * f * s * s * (1.0 - config.phase(p).cos())
}

/// `P(V|x)` at fringe phase `x` for rotation angle `theta`.
///
/// Evaluated as `sin²θ sin²(x/2) / (cos²θ cos²(x/2) + sin²θ sin²(x/2))`, the
/// tangent-free form of `tan²θ tan²(x/2) / (1 + tan²θ tan²(x/2))`. Exact dark
/// fringes give 1 for `theta > 0`; at `theta = 0` they are undefined.
#[inline]
pub fn conditional_v_at_phase(x: f64, theta: f64) -> Result<f64> {
    let half = HalfPhase::new(x);
    let (s, c) = theta.sin_cos();
    let v = s * s * half.sin2;
    let den = c * c * half.cos2 + v;
    if den > 0.0 {
        Ok(v / den)
    } else {
        Err(Error::UndefinedConditional { phase: x })
    }
}

/// Conditional probability that a photon detected at `p` is `V` polarized.
pub fn conditional_v_probability(p: f64, config: &ExperimentConfig) -> Result<f64> {
    conditional_v_at_phase(config.phase(p), config.theta)
}

/// Polarization state of an incoherent 50/50 mixture of `±θ` rotations.
pub fn mixture_density(theta: f64) -> Result<PolarizationDensity> {
    validate_theta(theta)?;
    let (s, c) = theta.sin_cos();
    let zero = ComplexAmp::new(0.0, 0.0);
    Ok(PolarizationDensity {
        rho: [
            [ComplexAmp::new(c * c, 0.0), zero],
            [zero, ComplexAmp::new(s * s, 0.0)],
        ],
    })
}

/// Squared rotation-angle uncertainty read off a `V` probability,
/// `δφ² ≈ P(V)`. Only meaningful for `P(V) ≪ 1`.
pub fn rotation_uncertainty_sq(p_v: f64) -> f64 {
    p_v
}

/// Value paired with a flag marking use outside the small-angle regime.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SmallAngleValue {
    pub value: f64,
    pub beyond_small_angle: bool,
}

/// Small-angle rotation uncertainty `θ² tan²(x/2)` at momentum `p`.
pub fn rotation_uncertainty_profile(p: f64, config: &ExperimentConfig) -> SmallAngleValue {
    SmallAngleValue {
        value: config.theta * config.theta * path_fluctuation_at_phase(config.phase(p)),
        beyond_small_angle: config.theta > SMALL_ANGLE_LIMIT,
    }
}

/// Normalized path fluctuation `(1 − cos x)/(1 + cos x) = tan²(x/2)`.
///
/// Returns `f64::INFINITY` at exact dark fringes.
#[inline]
pub fn path_fluctuation_at_phase(x: f64) -> f64 {
    let half = HalfPhase::new(x);
    if half.cos2 == 0.0 {
        f64::INFINITY
    } else {
        half.sin2 / half.cos2
    }
}

pub fn path_fluctuation_analytic(p: f64, config: &ExperimentConfig) -> f64 {
    path_fluctuation_at_phase(config.phase(p))
}

/// Fringe factor `1 + cos x`; averages to one over a period.
#[inline]
pub fn fringe_pattern(x: f64) -> f64 {
    1.0 + x.cos()
}

/// Interference pattern without polarization rotations, `|f(p)|² (1 + cos x)`.
pub fn undisturbed_pattern(p: f64, config: &ExperimentConfig) -> f64 {
    let f = envelope(p, config);
    f * f * fringe_pattern(config.phase(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn cfg(theta: f64) -> ExperimentConfig {
        ExperimentConfig::new(theta).unwrap()
    }

    #[test]
    fn post_slit_state_examples() {
        let s = prepare_post_slit_state(0.0).unwrap();
        assert_eq!(s.amplitude(Polarization::H, Slit::One).re, FRAC_1_SQRT_2);
        assert_eq!(s.amplitude(Polarization::H, Slit::Two).re, FRAC_1_SQRT_2);
        assert_eq!(s.amplitude(Polarization::V, Slit::One).norm(), 0.0);

        let s = prepare_post_slit_state(PI / 4.0).unwrap();
        for (pol, slit, want) in [
            (Polarization::H, Slit::One, 0.5),
            (Polarization::H, Slit::Two, 0.5),
            (Polarization::V, Slit::One, 0.5),
            (Polarization::V, Slit::Two, -0.5),
        ] {
            assert!((s.amplitude(pol, slit).re - want).abs() < 1e-15);
        }

        let s = prepare_post_slit_state(0.05).unwrap();
        assert!((s.amplitude(Polarization::V, Slit::One).re - 0.035_340_6).abs() < 1e-6);
        assert!((s.norm_sqr() - 1.0).abs() < 1e-12);

        assert!(prepare_post_slit_state(2.0).is_err());
    }

    #[test]
    fn envelope_and_slit_phases() {
        let c = cfg(0.0);
        assert_eq!(envelope(0.0, &c), c.normalization());
        // a p / 2ħ = π is the first diffraction zero
        let p0 = 2.0 * PI * c.hbar / c.envelope_width;
        assert!(envelope(p0, &c).abs() < 1e-16);

        let a1 = slit_amplitude(0.0, Slit::One, &c);
        let a2 = slit_amplitude(0.0, Slit::Two, &c);
        assert_eq!(a1, a2);
        assert_eq!(a1.im, 0.0);

        // d p / 2ħ = π/2
        let p = c.momentum(PI);
        let a = slit_amplitude(p, Slit::One, &c);
        let f = envelope(p, &c);
        assert!((a - ComplexAmp::new(0.0, f)).norm() < 1e-16);
    }

    #[test]
    fn screen_amplitude_examples() {
        let c = cfg(0.0);
        let a = screen_amplitude(c.momentum(PI), &c);
        assert!(a.a_h.norm() < 1e-15 && a.a_v.norm() == 0.0);

        let c = cfg(PI / 4.0);
        let a = screen_amplitude(c.momentum(PI / 2.0), &c);
        assert!((a.a_v.norm() / a.a_h.norm() - 1.0).abs() < 1e-12);
        assert_eq!(a.a_h.im, 0.0);
        assert_eq!(a.a_v.re, 0.0);
    }

    #[test]
    fn density_forms_agree() {
        for theta in [0.0, 0.05, 0.7] {
            let c = cfg(theta);
            for i in 0..500 {
                let p = -40.0 + 0.1601 * i as f64;
                let d = detection_density(p, &c);
                assert!(
                    (d - density_closed_form(p, &c)).abs() <= 1e-13 * c.normalization().powi(2)
                );
                let av = screen_amplitude(p, &c).a_v.norm_sqr();
                assert!(
                    (av - v_density_closed_form(p, &c)).abs() <= 1e-13 * c.normalization().powi(2)
                );
            }
        }
    }

    #[test]
    fn dark_fringe_density_with_rotation() {
        let c = cfg(0.3);
        let p = c.momentum(PI);
        let f = envelope(p, &c);
        let want = 2.0 * f * f * 0.3f64.sin().powi(2);
        assert!((detection_density(p, &c) - want).abs() < 1e-15);
        assert!(detection_density(p, &c) > 0.0);
    }

    #[test]
    fn conditional_examples() {
        assert!((conditional_v_at_phase(PI / 2.0, PI / 4.0).unwrap() - 0.5).abs() < 1e-15);
        for theta in [0.0, 0.05, 1.2] {
            assert_eq!(conditional_v_at_phase(0.0, theta).unwrap(), 0.0);
        }
        let pv = conditional_v_at_phase(2.0 * PI / 3.0, 0.05).unwrap();
        assert!((pv - 0.007_456_50).abs() < 1e-6, "{pv}");
        assert_eq!(conditional_v_at_phase(PI, 0.05).unwrap(), 1.0);
        assert_eq!(conditional_v_at_phase(-3.0 * PI, 0.05).unwrap(), 1.0);
        assert!(matches!(
            conditional_v_at_phase(PI, 0.0),
            Err(Error::UndefinedConditional { .. })
        ));
        assert_eq!(conditional_v_at_phase(PI - 1e-3, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn mixture_examples() {
        let m = mixture_density(0.0).unwrap();
        assert_eq!(m.prob(Polarization::H), 1.0);
        assert_eq!(m.prob(Polarization::V), 0.0);
        let m = mixture_density(PI / 4.0).unwrap();
        assert!((m.prob(Polarization::H) - 0.5).abs() < 1e-15);
        assert!((m.prob(Polarization::V) - 0.5).abs() < 1e-15);
        assert_eq!(m.rho[0][1].norm(), 0.0);
        assert!((m.trace().re - 1.0).abs() < 1e-12);
        assert!(m.eigenvalues()[0] >= -1e-12);
    }

    #[test]
    fn rotation_uncertainty_examples() {
        assert_eq!(rotation_uncertainty_sq(0.0), 0.0);
        assert_eq!(rotation_uncertainty_sq(0.01), 0.01);
        // sin²θ ≈ θ² within 1% up to 0.17 rad
        for i in 1..=170 {
            let theta = i as f64 * 1e-3;
            let pv = mixture_density(theta).unwrap().prob(Polarization::V);
            assert!((rotation_uncertainty_sq(pv) / (theta * theta) - 1.0).abs() < 0.01);
        }

        let c = cfg(0.05);
        let r = rotation_uncertainty_profile(0.0, &c);
        assert_eq!(r.value, 0.0);
        assert!(!r.beyond_small_angle);
        let r = rotation_uncertainty_profile(c.momentum(PI / 2.0), &c);
        assert!((r.value - 0.0025).abs() < 1e-15);
        assert!(rotation_uncertainty_profile(0.0, &cfg(0.2)).beyond_small_angle);

        let c = cfg(1e-4);
        let p = c.momentum(2.0 * PI / 3.0);
        let ratio =
            rotation_uncertainty_profile(p, &c).value / conditional_v_probability(p, &c).unwrap();
        assert!((ratio - 1.0).abs() < 1e-7, "{ratio}");
    }

    #[test]
    fn path_fluctuation_examples() {
        assert_eq!(path_fluctuation_at_phase(0.0), 0.0);
        assert!((path_fluctuation_at_phase(PI / 2.0) - 1.0).abs() < 1e-15);
        assert!((path_fluctuation_at_phase(2.0 * PI / 3.0) - 3.0).abs() < 1e-14);
        assert_eq!(path_fluctuation_at_phase(PI), f64::INFINITY);
        assert_eq!(path_fluctuation_at_phase(-PI), f64::INFINITY);
    }

    #[test]
    fn undisturbed_examples() {
        let c = cfg(0.0);
        assert_eq!(undisturbed_pattern(c.momentum(PI), &c), 0.0);
        // average of 1 + cos x over a period
        let n = 1000;
        let mean: f64 = (0..n)
            .map(|i| fringe_pattern(-PI + 2.0 * PI * i as f64 / n as f64))
            .sum::<f64>()
            / n as f64;
        assert!((mean - 1.0).abs() < 1e-12);
    }
}
