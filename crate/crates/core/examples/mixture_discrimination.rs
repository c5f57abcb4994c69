//! Coherent rotations and a classical mixture of ±θ rotations give the same
//! overall V fraction. Only the coherent model makes it depend on where the
//! photon lands, and a chi-square test on the conditional counts tells them
//! apart.

use whichway::analysis::{bin_reference, goodness_of_fit_with_reference};
use whichway::{Binning, Experiment, ExperimentConfig, PolarizationModel};

fn main() -> whichway::Result<()> {
    let config = ExperimentConfig::new(0.1)?;
    let binning = Binning::default();
    let experiment = Experiment::new(config.clone())?;
    let reference = bin_reference(&config, &binning)?;
    let n = 1_000_000;

    for model in [PolarizationModel::Coherent, PolarizationModel::Mixture] {
        let counts = experiment.run_model(model, n, 1, &binning)?;
        let gof = goodness_of_fit_with_reference(&counts, &reference)?;
        println!("{model:?}");
        println!(
            "  V fraction        {:.5}",
            counts.total_v() as f64 / n as f64
        );
        println!(
            "  totals      chi2 = {:>10.1} (df {:>3}) p = {:.3e}",
            gof.total.statistic, gof.total.df, gof.total.p_value
        );
        println!(
            "  conditional chi2 = {:>10.1} (df {:>3}) p = {:.3e}",
            gof.conditional.statistic, gof.conditional.df, gof.conditional.p_value
        );
    }
    println!("sin^2(theta) = {:.5}", config.theta.sin().powi(2));
    Ok(())
}
