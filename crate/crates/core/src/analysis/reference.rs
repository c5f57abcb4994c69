use crate::analytic::{density_closed_form, v_density_closed_form};
use crate::config::{Binning, ExperimentConfig};
use crate::error::{Error, Result};
use crate::quad::gl8;

/// Analytic expectations per fringe-phase bin, folded over every fringe
/// period the momentum grid covers.
#[derive(Clone, Debug, PartialEq)]
pub struct BinReference {
    pub centers: Vec<f64>,
    /// Probability that a photon lands in the bin.
    pub probability: Vec<f64>,
    /// Density-weighted average of `P(V|x)` over the bin.
    pub mean_p_v: Vec<f64>,
}

/// Integrate the detection density and its `V` part over each bin.
pub fn bin_reference(config: &ExperimentConfig, binning: &Binning) -> Result<BinReference> {
    config.validate()?;
    let x_min = config.phase(config.p_grid.p_min);
    let x_max = config.phase(config.p_grid.p_max);
    let w = binning.width();
    let panels = ((binning.bin_width() / 0.5).ceil() as usize).max(1);

    let mut mass = vec![0.0; binning.n_bins];
    let mut v_mass = vec![0.0; binning.n_bins];
    for i in 0..binning.n_bins {
        let (l, r) = (binning.edge(i), binning.edge(i + 1));
        let k_lo = ((x_min - r) / w).floor() as i64;
        let k_hi = ((x_max - l) / w).ceil() as i64;
        for k in k_lo..=k_hi {
            let shift = k as f64 * w;
            let a = (l + shift).max(x_min);
            let b = (r + shift).min(x_max);
            if b <= a {
                continue;
            }
            let (pa, pb) = (config.momentum(a), config.momentum(b));
            mass[i] += gl8(|p| density_closed_form(p, config), pa, pb, panels);
            v_mass[i] += gl8(|p| v_density_closed_form(p, config), pa, pb, panels);
        }
    }
    let total: f64 = mass.iter().sum();
    if !(total > 0.0) {
        return Err(Error::InvalidConfig(
            "momentum grid carries no probability".into(),
        ));
    }
    Ok(BinReference {
        centers: (0..binning.n_bins).map(|i| binning.center(i)).collect(),
        probability: mass.iter().map(|m| m / total).collect(),
        mean_p_v: mass
            .iter()
            .zip(&v_mass)
            .map(|(m, v)| {
                if *m > 0.0 {
                    (v / m).clamp(0.0, 1.0)
                } else {
                    0.0
                }
            })
            .collect(),
    })
}
