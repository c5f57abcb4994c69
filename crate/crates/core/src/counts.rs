//! Binned photon counts and their on-disk forms.

use serde::{Deserialize, Serialize};

use crate::config::{Binning, ExperimentConfig};
use crate::error::{Error, Result};

/// Histogram of detected photons over fringe-phase bins, with the number of
/// `V`-polarized detections per bin.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BinnedCounts {
    pub bin_edges: Vec<f64>,
    pub n_total: Vec<u64>,
    #[serde(rename = "n_V")]
    pub n_v: Vec<u64>,
    pub seed: u64,
    pub n_photons: u64,
    pub theta: f64,
}

impl BinnedCounts {
    pub fn empty(binning: &Binning, theta: f64, seed: u64) -> Self {
        Self {
            bin_edges: binning.edges(),
            n_total: vec![0; binning.n_bins],
            n_v: vec![0; binning.n_bins],
            seed,
            n_photons: 0,
            theta,
        }
    }

    pub fn n_bins(&self) -> usize {
        self.n_total.len()
    }

    pub fn binning(&self) -> Result<Binning> {
        Binning::from_edges(&self.bin_edges)
    }

    pub fn bin_center(&self, i: usize) -> f64 {
        0.5 * (self.bin_edges[i] + self.bin_edges[i + 1])
    }

    #[inline]
    pub(crate) fn record(&mut self, bin: usize, vertical: bool) {
        self.n_total[bin] += 1;
        self.n_v[bin] += u64::from(vertical);
        self.n_photons += 1;
    }

    pub fn total_v(&self) -> u64 {
        self.n_v.iter().sum()
    }

    pub fn check_invariants(&self) -> Result<()> {
        let consistent = self.bin_edges.len() == self.n_total.len() + 1
            && self.n_v.len() == self.n_total.len()
            && self.n_v.iter().zip(&self.n_total).all(|(v, t)| v <= t)
            && self.n_total.iter().sum::<u64>() == self.n_photons;
        if consistent {
            Ok(())
        } else {
            Err(Error::IncompatibleBinning(
                "count table is inconsistent".into(),
            ))
        }
    }

    /// Columnar CSV: `bin_left,bin_right,n_total,n_V`.
    pub fn to_csv(&self) -> Result<String> {
        #[derive(Serialize)]
        struct Row {
            bin_left: f64,
            bin_right: f64,
            n_total: u64,
            #[serde(rename = "n_V")]
            n_v: u64,
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        for i in 0..self.n_bins() {
            w.serialize(Row {
                bin_left: self.bin_edges[i],
                bin_right: self.bin_edges[i + 1],
                n_total: self.n_total[i],
                n_v: self.n_v[i],
            })?;
        }
        finish_csv(w)
    }

    /// JSON envelope carrying the configuration, seed and photon count
    /// alongside the table.
    pub fn to_json(&self, config: &ExperimentConfig) -> Result<String> {
        #[derive(Serialize)]
        struct Envelope<'a> {
            config: &'a ExperimentConfig,
            seed: u64,
            n_photons: u64,
            theta: f64,
            counts: &'a BinnedCounts,
        }
        let mut s = serde_json::to_string_pretty(&Envelope {
            config,
            seed: self.seed,
            n_photons: self.n_photons,
            theta: self.theta,
            counts: self,
        })?;
        s.push('\n');
        Ok(s)
    }
}

pub(crate) fn finish_csv(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Element-wise sum of two count tables over the same bins.
///
/// Commutative and associative; a table with no photons is the identity.
/// The merged table carries the smallest contributing seed.
pub fn merge_counts(a: &BinnedCounts, b: &BinnedCounts) -> Result<BinnedCounts> {
    if a.bin_edges != b.bin_edges {
        return Err(Error::IncompatibleBinning("bin edges differ".into()));
    }
    if a.theta.to_bits() != b.theta.to_bits() {
        return Err(Error::IncompatibleBinning(format!(
            "rotation angles differ ({} vs {})",
            a.theta, b.theta
        )));
    }
    let seed = match (a.n_photons, b.n_photons) {
        (0, _) => b.seed,
        (_, 0) => a.seed,
        _ => a.seed.min(b.seed),
    };
    let add = |x: &[u64], y: &[u64]| x.iter().zip(y).map(|(p, q)| p + q).collect();
    Ok(BinnedCounts {
        bin_edges: a.bin_edges.clone(),
        n_total: add(&a.n_total, &b.n_total),
        n_v: add(&a.n_v, &b.n_v),
        seed,
        n_photons: a.n_photons + b.n_photons,
        theta: a.theta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn table(totals: &[u64], vs: &[u64], seed: u64) -> BinnedCounts {
        let binning = Binning::with_bins(totals.len()).unwrap();
        let mut c = BinnedCounts::empty(&binning, 0.05, seed);
        c.n_total = totals.to_vec();
        c.n_v = vs.to_vec();
        c.n_photons = totals.iter().sum();
        c
    }

    #[test]
    fn identity_and_conservation() {
        let x = table(&[3, 4, 5], &[1, 0, 2], 9);
        let e = BinnedCounts::empty(&x.binning().unwrap(), 0.05, 0);
        assert_eq!(merge_counts(&x, &e).unwrap(), x);
        assert_eq!(merge_counts(&e, &x).unwrap(), x);
        let y = table(&[1, 1, 1], &[1, 1, 0], 2);
        let m = merge_counts(&x, &y).unwrap();
        assert_eq!(m.n_photons, 15);
        assert_eq!(m.n_total.iter().sum::<u64>(), 15);
        m.check_invariants().unwrap();
    }

    #[test]
    fn incompatible_tables() {
        let x = table(&[3, 4, 5], &[1, 0, 2], 9);
        let y = table(&[3, 4], &[1, 0], 9);
        assert!(matches!(
            merge_counts(&x, &y),
            Err(Error::IncompatibleBinning(_))
        ));
        let mut z = x.clone();
        z.theta = 0.1;
        assert!(matches!(
            merge_counts(&x, &z),
            Err(Error::IncompatibleBinning(_))
        ));
    }

    #[test]
    fn csv_layout() {
        let x = table(&[3, 4], &[1, 0], 9);
        let csv = x.to_csv().unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("bin_left,bin_right,n_total,n_V"));
        assert!(lines.next().unwrap().ends_with(",3,1"));
    }

    fn arb_table() -> impl Strategy<Value = BinnedCounts> {
        (
            prop::collection::vec((0u64..1000, 0u64..1000), 4),
            any::<u16>(),
        )
            .prop_map(|(pairs, seed)| {
                let totals: Vec<u64> = pairs.iter().map(|(a, b)| a + b).collect();
                let vs: Vec<u64> = pairs.iter().map(|(a, _)| *a).collect();
                table(&totals, &vs, u64::from(seed))
            })
    }

    proptest! {
        #[test]
        fn merge_is_commutative_and_associative(a in arb_table(), b in arb_table(), c in arb_table()) {
            let ab = merge_counts(&a, &b).unwrap();
            prop_assert_eq!(&ab, &merge_counts(&b, &a).unwrap());
            let left = merge_counts(&ab, &c).unwrap();
            let right = merge_counts(&a, &merge_counts(&b, &c).unwrap()).unwrap();
            prop_assert_eq!(&left, &right);
            prop_assert!(left.check_invariants().is_ok());
        }
    }
}
