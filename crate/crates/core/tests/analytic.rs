use std::f64::consts::{FRAC_PI_2, PI};

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use whichway::analytic::*;
use whichway::{ExperimentConfig, Polarization, Slit};

fn sinc2(u: f64) -> f64 {
    if u == 0.0 {
        1.0
    } else {
        (u.sin() / u).powi(2)
    }
}

/// Composite Simpson over `[-l, l]` plus the averaged `1/p²` tails beyond.
fn full_line_integral(c: &ExperimentConfig, l: f64, panels: usize) -> f64 {
    let h = 2.0 * l / panels as f64;
    let f = |p: f64| detection_density(p, c);
    let mut s = f(-l) + f(l);
    for i in 1..panels {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(-l + h * i as f64);
    }
    let inner = s * h / 3.0;
    // |f|² ≈ C² (2ħ/a)² sin²(·)/p², sin² and the fringe factor average to 1/2 and 1
    let c2 = c.normalization().powi(2);
    let k = 2.0 * c.hbar / c.envelope_width;
    inner + 2.0 * c2 * k * k * 0.5 / l
}

#[test]
fn density_integrates_to_one() {
    for theta in [0.0, 0.05, 0.3, 1.2] {
        let c = ExperimentConfig::new(theta).unwrap();
        let total = full_line_integral(&c, 400.0 * PI, 1 << 20);
        assert!((total - 1.0).abs() < 1e-6, "theta={theta}: {total}");
    }
}

#[test]
fn physical_units_also_normalize() {
    let c = ExperimentConfig::physical(0.2, 2.5, 0.4, 0.7).unwrap();
    let total = full_line_integral(&c, 1200.0, 1 << 20);
    assert!((total - 1.0).abs() < 1e-6, "{total}");
}

#[test]
fn composition_matches_screen_amplitude() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..1000 {
        let theta = rng.random_range(0.0..FRAC_PI_2);
        let p = rng.random_range(-60.0..60.0);
        let c = ExperimentConfig::new(theta).unwrap();
        let [h, v] = prepare_post_slit_state(theta)
            .unwrap()
            .contract(Slit::BOTH.map(|s| slit_amplitude(p, s, &c)));
        let s = screen_amplitude(p, &c);
        assert!((h - s.a_h).norm() < 1e-12);
        assert!((v - s.a_v).norm() < 1e-12);
    }
}

#[test]
fn vertical_weight_equals_sin_squared() {
    // ∫|a_V|² dp = sin²θ: the fringe term integrates to zero against sinc²
    let theta: f64 = 0.3;
    let c = ExperimentConfig::new(theta).unwrap();
    let l = 400.0 * PI;
    let n = 1 << 20;
    let h = 2.0 * l / n as f64;
    let mut s = 0.0;
    for i in 0..=n {
        let p = -l + h * i as f64;
        let w = if i == 0 || i == n {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        s += w * screen_amplitude(p, &c).a_v.norm_sqr();
    }
    let k = 2.0 * c.hbar / c.envelope_width;
    let tail = 2.0 * c.normalization().powi(2) * k * k * 0.5 / l * theta.sin().powi(2);
    let total = s * h / 3.0 + tail;
    assert!((total - theta.sin().powi(2)).abs() < 1e-6, "{total}");
}

#[test]
fn small_angle_limit_of_conditional() {
    let x = 2.0 * PI / 3.0;
    for theta in [1e-2, 1e-3, 1e-4] {
        let ratio = conditional_v_at_phase(x, theta).unwrap() / (theta as f64).sin().powi(2);
        // P(V)/sin²θ = ε² / (cos²θ + sin²θ ε²)
        let exact = 3.0 / (theta.cos().powi(2) + 3.0 * theta.sin().powi(2));
        assert!((ratio - exact).abs() < 1e-12 * exact);
        assert!(
            (ratio - 3.0).abs() < 3.0 * 3.0 * theta * theta,
            "theta={theta}: {ratio}"
        );
    }
}

#[test]
fn screen_state_is_pure_while_mixture_is_not() {
    let theta = 0.2;
    let c = ExperimentConfig::new(theta).unwrap();
    for x in [0.3, 1.0, 2.0, 3.0] {
        let rho = screen_amplitude(c.momentum(x), &c).polarization().unwrap();
        assert!((rho.purity() - 1.0).abs() < 1e-12);
        assert!(rho.eigenvalues()[0].abs() < 1e-12);
        assert!(rho.hermiticity_error() < 1e-15);
    }
    let mix = mixture_density(theta).unwrap();
    let s2 = theta.sin().powi(2);
    assert!((mix.purity() - (1.0 - 2.0 * s2 * (1.0 - s2))).abs() < 1e-12);
    assert!((mix.prob(Polarization::V) - s2).abs() < 1e-15);
    assert!(mix.purity() < 1.0 - 1e-3);
}

#[test]
fn conditional_probability_tracks_fringe_not_mixture() {
    let theta = 0.1;
    let mix = mixture_density(theta).unwrap().prob(Polarization::V);
    let bright = conditional_v_at_phase(0.0, theta).unwrap();
    let half = conditional_v_at_phase(FRAC_PI_2, theta).unwrap();
    assert_eq!(bright, 0.0);
    assert!((half - mix).abs() < 1e-15);
    assert!(conditional_v_at_phase(3.0, theta).unwrap() > 10.0 * mix);
}

#[test]
fn dark_fringes_are_handled_exactly() {
    assert_eq!(path_fluctuation_at_phase(PI), f64::INFINITY);
    assert_eq!(path_fluctuation_at_phase(-3.0 * PI), f64::INFINITY);
    assert_eq!(path_fluctuation_at_phase(2.0 * PI), 0.0);
    assert_eq!(conditional_v_at_phase(PI, 0.05).unwrap(), 1.0);
    assert!(conditional_v_at_phase(PI, 0.0).is_err());
    assert!(path_fluctuation_at_phase(PI - 1e-6) > 1e11);
}

#[test]
fn rotation_uncertainty_flags_large_angles() {
    let c = ExperimentConfig::new(0.05).unwrap();
    let r = rotation_uncertainty_profile(c.momentum(FRAC_PI_2), &c);
    assert!((r.value - 0.0025).abs() < 1e-15);
    assert!(!r.beyond_small_angle);
    let c = c.with_theta(0.3).unwrap();
    assert!(rotation_uncertainty_profile(1.0, &c).beyond_small_angle);
    assert_eq!(rotation_uncertainty_sq(0.01), 0.01);
}

#[test]
fn undisturbed_pattern_is_theta_zero_density() {
    let c = ExperimentConfig::new(0.0).unwrap();
    let e = ExperimentConfig::new(0.4).unwrap();
    for p in [-7.3, -1.0, 0.0, 0.2, 5.5, 31.0] {
        let expect =
            c.normalization().powi(2) * sinc2(0.5 * c.envelope_width * p) * (1.0 + p.cos());
        assert!((undisturbed_pattern(p, &e) - expect).abs() < 1e-15);
        assert!((detection_density(p, &c) - expect).abs() < 1e-15);
    }
}

proptest! {
    #[test]
    fn density_is_even(p in -200.0f64..200.0, theta in 0.0f64..1.5) {
        let c = ExperimentConfig::new(theta).unwrap();
        let (a, b) = (detection_density(p, &c), detection_density(-p, &c));
        prop_assert!((a - b).abs() <= 1e-15 * a.max(1e-300) + 1e-300);
    }

    #[test]
    fn conditionals_are_complete(p in -200.0f64..200.0, theta in 0.0f64..1.5) {
        let c = ExperimentConfig::new(theta).unwrap();
        let rho = screen_amplitude(p, &c).polarization();
        prop_assume!(rho.is_some());
        let rho = rho.unwrap();
        prop_assert!((rho.prob(Polarization::H) + rho.prob(Polarization::V) - 1.0).abs() < 1e-12);
        prop_assert!((rho.trace().re - 1.0).abs() < 1e-12);
        if let Ok(pv) = conditional_v_probability(p, &c) {
            prop_assert!((pv - rho.prob(Polarization::V)).abs() < 1e-9);
        }
    }

    #[test]
    fn half_angle_identity(x in -20.0f64..20.0) {
        prop_assume!((1.0 + x.cos()) > 1e-6);
        let direct = (1.0 - x.cos()) / (1.0 + x.cos());
        let e = path_fluctuation_at_phase(x);
        prop_assert!((e - direct).abs() <= 1e-9 * direct.max(1.0));
        prop_assert!(e >= 0.0);
    }

    #[test]
    fn slits_have_equal_modulus(p in -500.0f64..500.0) {
        let c = ExperimentConfig::default();
        let a1 = slit_amplitude(p, Slit::One, &c);
        let a2 = slit_amplitude(p, Slit::Two, &c);
        prop_assert!((a1.norm() - a2.norm()).abs() < 1e-15);
        prop_assert!((a1 - a2.conj()).norm() < 1e-15);
    }

    #[test]
    fn post_slit_state_is_normalized(theta in 0.0f64..1.57) {
        let s = prepare_post_slit_state(theta).unwrap();
        prop_assert!((s.norm_sqr() - 1.0).abs() < 1e-14);
        prop_assert_eq!(s.amplitude(Polarization::V, Slit::One), -s.amplitude(Polarization::V, Slit::Two));
    }
}
