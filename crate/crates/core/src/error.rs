use thiserror::Error;

/// Errors raised by the analytic model, the sampler, the estimators and the
/// command-line front end.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("rotation angle {0} rad is outside [0, pi/2)")]
    InvalidTheta(f64),

    #[error("invalid window: {0}")]
    InvalidWindow(String),

    #[error(
        "conditional polarization is undefined at fringe phase {phase}: detection density is zero"
    )]
    UndefinedConditional { phase: f64 },

    #[error(
        "path weak values are singular at fringe phase {phase}: post-selection amplitude vanishes"
    )]
    PostSelectionSingular { phase: f64 },

    #[error("momentum grid misses {tail:.3e} of the detection probability (limit 1e-3)")]
    InsufficientCoverage { tail: f64 },

    #[error("bin is empty")]
    EmptyBin,

    #[error("incompatible binning: {0}")]
    IncompatibleBinning(String),

    #[error("not enough expected events to test any bin after pooling")]
    AllBinsPooled,

    #[error("no photons were recorded")]
    NoPhotons,

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Process exit status: 2 for usage or configuration problems, 3 when the
    /// data are statistically insufficient, 1 for I/O failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidConfig(_)
            | Error::InvalidTheta(_)
            | Error::InvalidWindow(_)
            | Error::InsufficientCoverage { .. }
            | Error::IncompatibleBinning(_)
            | Error::Usage(_)
            | Error::Json(_) => 2,
            Error::UndefinedConditional { .. }
            | Error::PostSelectionSingular { .. }
            | Error::EmptyBin
            | Error::AllBinsPooled
            | Error::NoPhotons => 3,
            Error::Io(_) | Error::Csv(_) => 1,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
