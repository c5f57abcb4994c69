//! Simulate detections and recover the path fluctuation bin by bin.
//!
//! ```bash
//! cargo run --release --example photon_counting -- 10000000 1
//! ```

use std::time::Instant;

use whichway::analysis::{bin_reference, estimate_path_fluctuation, BinFlag};
use whichway::{Binning, Experiment, ExperimentConfig};

fn main() -> whichway::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: u64 = args
        .next()
        .map_or(10_000_000, |s| s.parse().expect("photon count"));
    let seed: u64 = args.next().map_or(1, |s| s.parse().expect("seed"));

    let config = ExperimentConfig::new(0.05)?;
    let binning = Binning::with_bins(20)?;
    let t = Instant::now();
    let experiment = Experiment::new(config.clone())?;
    let counts = experiment.run(n, seed, &binning)?;
    println!(
        "{n} photons in {:.2} s, {} vertical",
        t.elapsed().as_secs_f64(),
        counts.total_v()
    );

    let reference = bin_reference(&config, &binning)?;
    let sin2 = config.theta.sin().powi(2);
    println!(
        "\n{:>7} {:>9} {:>6} {:>9} {:>19} {:>9}",
        "center", "n_total", "n_V", "eps2_hat", "99% interval", "expected"
    );
    for (e, q) in estimate_path_fluctuation(&counts, 0.99)?
        .iter()
        .zip(&reference.mean_p_v)
    {
        if e.flag == BinFlag::Empty {
            println!("{:>7.3} {:>9} (empty)", e.bin_center, e.n_total);
            continue;
        }
        println!(
            "{:>7.3} {:>9} {:>6} {:>9.4} [{:>8.4}, {:>8.4}] {:>9.4}{}",
            e.bin_center,
            e.n_total,
            e.n_v,
            e.eps2_hat.unwrap(),
            e.ci_low.unwrap(),
            e.ci_high.unwrap(),
            q / sin2,
            if e.covers(q / sin2) { "" } else { "  *" }
        );
    }
    Ok(())
}
