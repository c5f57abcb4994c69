//! Repeat the measurement for shrinking rotation angles. The profile stays
//! the same while fewer photons carry the signal.

use whichway::analysis::{theta_sweep, SweepReport};
use whichway::ExperimentConfig;

fn main() -> whichway::Result<()> {
    let n: u64 = std::env::args()
        .nth(1)
        .map_or(2_000_000, |s| s.parse().expect("photon count"));
    let thetas = [0.2, 0.1, 0.05, 0.01];

    let rows = theta_sweep(&ExperimentConfig::default(), &thetas, n, 1)?;
    let report = SweepReport::new(rows, n, 1);

    println!("N = {n}, bins with |x| <= {:.3}", report.max_abs_phase);
    for s in &report.summaries {
        println!(
            "theta = {:<5} median relative error {:.4} over {} bins",
            s.theta, s.median_relative_error, s.bins
        );
    }

    println!("\nbin nearest x = pi/2:");
    for &theta in &thetas {
        let row = report
            .rows
            .iter()
            .filter(|r| r.theta == theta)
            .min_by(|a, b| {
                let d = |x: f64| (x - std::f64::consts::FRAC_PI_2).abs();
                d(a.bin_center).total_cmp(&d(b.bin_center))
            })
            .unwrap();
        println!(
            "  theta = {:<5} eps2_hat = {:.4} analytic = {:.4}",
            theta, row.eps2_hat, row.analytic
        );
    }
    Ok(())
}
