//! Estimators that recover the path-fluctuation profile from photon counts,
//! plus the closed-form weak-value cross-check and model-comparison tests.

mod fluctuation;
mod gof;
mod interval;
mod profile;
mod reference;
mod sweep;
mod weak;

pub use fluctuation::{
    estimate_path_fluctuation, estimate_path_fluctuation_with, fluctuation_csv, BinFlag,
    EstimateOptions, FluctuationEstimate, Normalization, DEFAULT_CEILING, DEFAULT_CONFIDENCE,
};
pub use gof::{
    goodness_of_fit, goodness_of_fit_with_reference, ks_uniform, ChiSquareTest, GoodnessOfFit,
    KsTest,
};
pub use interval::{estimate_pv, estimate_pv_with, IntervalMethod, ProportionEstimate};
pub use profile::{analytic_profile, profile_csv, AnalyticRow, ProfileFlag};
pub use reference::{bin_reference, BinReference};
pub use sweep::{
    summarize_sweep, sweep_csv, theta_sweep, theta_sweep_with, SweepReport, SweepSummary,
    ThetaSweepRow, RELATIVE_ERROR_FLOOR, SUMMARY_MAX_PHASE,
};
pub use weak::{weak_value_at_phase, weak_value_path, WeakValuePair};
