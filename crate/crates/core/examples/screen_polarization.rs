//! The state behind the slits and the polarization each detected photon
//! carries, contrasted with an incoherent mixture of the two rotations.

use std::f64::consts::PI;

use whichway::analytic::{
    mixture_density, prepare_post_slit_state, screen_amplitude, slit_amplitude,
};
use whichway::{ExperimentConfig, Polarization, Slit};

fn main() -> whichway::Result<()> {
    let theta = 0.2;
    let config = ExperimentConfig::new(theta)?;
    let state = prepare_post_slit_state(theta)?;

    println!("post-slit amplitudes (theta = {theta}):");
    for pol in [Polarization::H, Polarization::V] {
        for slit in Slit::BOTH {
            println!("  {pol:?} {slit:?}: {:+.6}", state.amplitude(pol, slit).re);
        }
    }

    let mix = mixture_density(theta)?;
    println!(
        "\nmixture: P(V) = {:.5}, purity = {:.5}",
        mix.prob(Polarization::V),
        mix.purity()
    );

    println!(
        "\n{:>6} {:>10} {:>10} {:>10} {:>9}",
        "x/pi", "density", "P(V|x)", "purity", "|dev|"
    );
    for k in 0..=8 {
        let x = k as f64 * PI / 8.0;
        let p = config.momentum(x);
        let screen = screen_amplitude(p, &config);
        let [h, v] = state.contract(Slit::BOTH.map(|s| slit_amplitude(p, s, &config)));
        let dev = (h - screen.a_h).norm().max((v - screen.a_v).norm());
        match screen.polarization() {
            Some(rho) => println!(
                "{:>6.3} {:>10.5} {:>10.5} {:>10.6} {:>9.1e}",
                x / PI,
                screen.density(),
                rho.prob(Polarization::V),
                rho.purity(),
                dev
            ),
            None => println!(
                "{:>6.3} {:>10.5} {:>10} {:>10} {:>9.1e}",
                x / PI,
                0.0,
                "-",
                "-",
                dev
            ),
        }
    }
    Ok(())
}
