use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use super::reference::{bin_reference, BinReference};
use crate::config::ExperimentConfig;
use crate::counts::BinnedCounts;
use crate::error::{Error, Result};

/// Minimum expected events per tested cell; sparser bins are pooled with
/// their neighbours.
const MIN_EXPECTED: f64 = 5.0;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChiSquareTest {
    pub statistic: f64,
    pub df: usize,
    pub p_value: f64,
    pub cells: usize,
    /// Bins absorbed into a neighbouring cell.
    pub pooled_bins: usize,
}

/// Chi-square comparison of a count table with the coherent model.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GoodnessOfFit {
    /// `n_total` against the bin probabilities of the detection density.
    pub total: ChiSquareTest,
    /// `n_V` given `n_total` against the bin-averaged conditional `P(V|x)`.
    pub conditional: ChiSquareTest,
}

pub fn goodness_of_fit(counts: &BinnedCounts, config: &ExperimentConfig) -> Result<GoodnessOfFit> {
    let config = config.with_theta(counts.theta)?;
    let reference = bin_reference(&config, &counts.binning()?)?;
    goodness_of_fit_with_reference(counts, &reference)
}

/// As [`goodness_of_fit`] with precomputed bin expectations.
pub fn goodness_of_fit_with_reference(
    counts: &BinnedCounts,
    reference: &BinReference,
) -> Result<GoodnessOfFit> {
    if counts.n_photons == 0 {
        return Err(Error::NoPhotons);
    }
    counts.check_invariants()?;
    if reference.probability.len() != counts.n_bins() {
        return Err(Error::IncompatibleBinning(
            "reference and counts differ in bin count".into(),
        ));
    }
    let n = counts.n_photons as f64;

    // multinomial cells: (observed, expected)
    let cells = pool(
        (0..counts.n_bins()).map(|i| (counts.n_total[i] as f64, n * reference.probability[i])),
        |(_, e)| *e >= MIN_EXPECTED,
        |a, b| (a.0 + b.0, a.1 + b.1),
    );
    if cells.len() < 2 {
        return Err(Error::AllBinsPooled);
    }
    let stat: f64 = cells.iter().map(|(o, e)| (o - e) * (o - e) / e).sum();
    let total = finish(stat, cells.len() - 1, cells.len(), counts.n_bins());

    // binomial cells: (observed V, expected V, expected H, variance)
    let cells = pool(
        (0..counts.n_bins()).map(|i| {
            let m = counts.n_total[i] as f64;
            let q = reference.mean_p_v[i];
            (
                counts.n_v[i] as f64,
                m * q,
                m * (1.0 - q),
                m * q * (1.0 - q),
            )
        }),
        |c| c.1 >= MIN_EXPECTED && c.2 >= MIN_EXPECTED,
        |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2, a.3 + b.3),
    );
    if cells.is_empty() {
        return Err(Error::AllBinsPooled);
    }
    let stat: f64 = cells
        .iter()
        .map(|&(o, e, _, var)| {
            let d = o - e;
            if var > 0.0 {
                d * d / var
            } else if d == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        })
        .sum();
    let conditional = finish(stat, cells.len(), cells.len(), counts.n_bins());

    Ok(GoodnessOfFit { total, conditional })
}

fn finish(statistic: f64, df: usize, cells: usize, bins: usize) -> ChiSquareTest {
    let p_value = ChiSquared::new(df as f64)
        .map(|d| d.sf(statistic))
        .unwrap_or(f64::NAN);
    ChiSquareTest {
        statistic,
        df,
        p_value,
        cells,
        pooled_bins: bins - cells,
    }
}

/// Merge consecutive items until `ready` holds; a trailing remainder joins
/// the last complete cell.
fn pool<T: Copy>(
    items: impl Iterator<Item = T>,
    ready: impl Fn(&T) -> bool,
    add: impl Fn(T, T) -> T,
) -> Vec<T> {
    let mut out: Vec<T> = Vec::new();
    let mut acc: Option<T> = None;
    for item in items {
        let cur = match acc {
            Some(a) => add(a, item),
            None => item,
        };
        if ready(&cur) {
            out.push(cur);
            acc = None;
        } else {
            acc = Some(cur);
        }
    }
    if let Some(rest) = acc {
        if let Some(last) = out.pop() {
            out.push(add(last, rest));
        }
    }
    out
}

/// One-sample Kolmogorov–Smirnov test against the uniform distribution on
/// `(0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct KsTest {
    pub statistic: f64,
    pub p_value: f64,
}

pub fn ks_uniform(samples: &[f64]) -> KsTest {
    let mut u: Vec<f64> = samples.to_vec();
    u.sort_by(f64::total_cmp);
    let n = u.len() as f64;
    let d = u
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let v = v.clamp(0.0, 1.0);
            ((i + 1) as f64 / n - v).max(v - i as f64 / n)
        })
        .fold(0.0, f64::max);
    KsTest {
        statistic: d,
        p_value: kolmogorov_sf(d, n),
    }
}

/// Asymptotic Kolmogorov survival function with Stephens' small-sample
/// correction.
fn kolmogorov_sf(d: f64, n: f64) -> f64 {
    let sn = n.sqrt();
    let lambda = (sn + 0.12 + 0.11 / sn) * d;
    if lambda < 0.2 {
        return 1.0;
    }
    let mut sum = 0.0;
    for k in 1..=100 {
        let k = k as f64;
        let term = (-2.0 * k * k * lambda * lambda).exp();
        sum += if k as i64 % 2 == 1 { term } else { -term };
        if term < 1e-16 {
            break;
        }
    }
    (2.0 * sum).clamp(0.0, 1.0)
}
