//! Weak values of the two path projectors for a photon found at momentum p,
//! and how their separation reproduces the path fluctuation.

use std::f64::consts::PI;

use whichway::analysis::weak_value_path;
use whichway::analytic::path_fluctuation_analytic;
use whichway::ExperimentConfig;

fn main() -> whichway::Result<()> {
    let config = ExperimentConfig::default();
    println!(
        "{:>6} {:>20} {:>20} {:>12} {:>12}",
        "x/pi", "w1", "w2", "|w1-w2|^2", "eps2"
    );
    for k in -7..=7 {
        let x = k as f64 * PI / 8.0;
        let p = config.momentum(x);
        let w = weak_value_path(p, &config)?;
        println!(
            "{:>6.3} {:>9.4}{:+9.4}i {:>9.4}{:+9.4}i {:>12.6} {:>12.6}",
            x / PI,
            w.w1.re,
            w.w1.im,
            w.w2.re,
            w.w2.im,
            w.difference_sq(),
            path_fluctuation_analytic(p, &config)
        );
    }
    match weak_value_path(config.momentum(PI), &config) {
        Ok(_) => unreachable!(),
        Err(e) => println!("\nat the dark fringe: {e}"),
    }
    Ok(())
}
