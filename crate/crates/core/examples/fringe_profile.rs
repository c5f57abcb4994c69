//! Closed-form profiles across one fringe period: the interference factor,
//! the path fluctuation ε² and the conditional V probability.
//!
//! ```bash
//! cargo run --release --example fringe_profile -- 0.05 fringe.svg
//! ```

use std::f64::consts::PI;

use whichway::analysis::{analytic_profile, ProfileFlag};
use whichway::plot::fluctuation_svg;
use whichway::ExperimentConfig;

fn main() -> whichway::Result<()> {
    let mut args = std::env::args().skip(1);
    let theta: f64 = args.next().map_or(0.05, |s| s.parse().expect("theta"));
    let svg = args.next();

    let config = ExperimentConfig::new(theta)?;
    let rows = analytic_profile(&config, -PI, PI, 25, 1e3)?;

    println!(
        "{:>8} {:>8} {:>12} {:>12}",
        "x/pi", "1+cos x", "eps2", "P(V|x)"
    );
    for r in &rows {
        let eps2 = match r.flag {
            ProfileFlag::Divergent => "inf".to_string(),
            _ => format!("{:.6}", r.eps2),
        };
        let p_v = r.p_v.map_or("-".to_string(), |p| format!("{p:.3e}"));
        println!(
            "{:>8.3} {:>8.4} {:>12} {:>12}",
            r.x / PI,
            r.pattern,
            eps2,
            p_v
        );
    }

    if let Some(path) = svg {
        let fine = analytic_profile(&config, -PI, PI, 1001, 1e3)?;
        std::fs::write(&path, fluctuation_svg(&fine, None, 4.0))?;
        println!("wrote {path}");
    }
    Ok(())
}
