//! Counter-based random streams.
//!
//! Photon `i` of a run always draws from stream `i / PHOTONS_PER_STREAM` at
//! word offset `i % PHOTONS_PER_STREAM`, keyed by the run seed. The numbers
//! a photon sees therefore do not depend on how streams are spread over
//! threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Photons drawn from one stream before moving to the next.
pub const PHOTONS_PER_STREAM: u64 = 1 << 16;

/// Uniform draws consumed by each photon (momentum, polarization).
pub const DRAWS_PER_PHOTON: u64 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PhotonStreams {
    seed: u64,
}

impl PhotonStreams {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Generator positioned at the first draw of stream `index`.
    pub fn stream(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        rng
    }

    /// Generator positioned at the first draw of global photon `photon`.
    pub fn at_photon(&self, photon: u64) -> ChaCha8Rng {
        let mut rng = self.stream(photon / PHOTONS_PER_STREAM);
        // each f64 draw consumes one u64, i.e. two 32-bit words
        rng.set_word_pos(u128::from(
            (photon % PHOTONS_PER_STREAM) * DRAWS_PER_PHOTON * 2,
        ));
        rng
    }

    /// Number of streams needed for `n_photons`.
    pub fn streams_for(n_photons: u64) -> u64 {
        n_photons.div_ceil(PHOTONS_PER_STREAM)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn seeking_matches_sequential_draws() {
        let streams = PhotonStreams::new(42);
        let mut seq = streams.stream(3);
        let first: Vec<f64> = (0..20).map(|_| seq.random::<f64>()).collect();
        let base = 3 * PHOTONS_PER_STREAM;
        let mut jumped = streams.at_photon(base + 5);
        assert_eq!(jumped.random::<f64>(), first[10]);
        assert_eq!(jumped.random::<f64>(), first[11]);
    }

    #[test]
    fn streams_and_seeds_differ() {
        let a: f64 = PhotonStreams::new(1).stream(0).random();
        let b: f64 = PhotonStreams::new(1).stream(1).random();
        let c: f64 = PhotonStreams::new(2).stream(0).random();
        assert!(a != b && a != c && b != c);
        assert_eq!(PhotonStreams::streams_for(PHOTONS_PER_STREAM + 1), 2);
    }
}
