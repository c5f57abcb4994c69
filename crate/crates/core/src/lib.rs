//! Simulator and analysis toolkit for a double-slit experiment in which the
//! two slits rotate the photon polarization by `+θ` and `−θ`.
//!
//! The analytic engine ([`analytic`]) evaluates the post-slit state, the
//! polarization pattern on the screen, the conditional probability of a
//! vertically polarized photon at each position, and the normalized path
//! fluctuation `ε²(x) = (1 − cos x)/(1 + cos x)` as a function of the
//! fringe phase `x = d·p/ħ`. The [`sampler`] draws individual photon
//! detections from the same model with reproducible counter-based streams,
//! and [`analysis`] recovers `ε²` from the counts, checks it against the
//! closed form, and computes the path weak values.
//!
//! ## Examples
//!
//! Each major capability has a runnable example under `examples/`:
//!
//! ```text
//! examples/
//! ├── fringe_profile.rs        # ε², P(V|x) and the fringe pattern; SVG plot
//! ├── screen_polarization.rs   # post-slit state, screen amplitudes, mixture vs coherent
//! ├── photon_counting.rs       # Monte Carlo run and per-bin ε̂² with Wilson intervals
//! ├── theta_sweep.rs           # θ-dependence of the estimate
//! ├── mixture_discrimination.rs# chi-square separation of coherent and mixture data
//! ├── weak_values.rs           # path weak values against ε²
//! └── manifest_replay.rs       # byte-identical replay of a recorded run
//! ```
//!
//! Run one with `cargo run --release --example fringe_profile`.

pub mod analysis;
pub mod analytic;
pub mod cli;
pub mod config;
pub mod counts;
pub mod error;
pub mod plot;
mod quad;
pub mod rng;
pub mod sampler;

pub use analytic::{ComplexAmp, Polarization, Slit};
pub use config::{Binning, ExperimentConfig, MomentumGrid};
pub use counts::{merge_counts, BinnedCounts};
pub use error::{Error, Result};
pub use sampler::{run_experiment, Experiment, PolarizationModel};
