use thiserror::Error;

/// Failures reported by the simulation modules.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    #[error("non-positive frequency {omega} encountered at t = {t}")]
    NonPositiveFrequency { t: f64, omega: f64 },

    #[error("integrator could not meet tolerance near t = {t} (step {step:e})")]
    ToleranceNotMet { t: f64, step: f64 },

    #[error("fit window is not stationary: relative frequency deviation {deviation:e}")]
    WindowNotStationary { deviation: f64 },

    #[error("ill-conditioned Bogoliubov fit: {0}")]
    IllConditionedFit(String),

    #[error("quadrature did not converge on [{a}, {b}] (estimated error {error:e})")]
    QuadratureFailure { a: f64, b: f64, error: f64 },

    #[error("mode truncation insufficient: highest mode holds {share:.3} of all photons")]
    TruncationInsufficient { share: f64 },

    #[error("even modes hold {share:.3} of all photons in the asymptotic regime")]
    EvenModesNotSuppressed { share: f64 },

    #[error("fit window too short: {0}")]
    FitWindowTooShort(String),

    #[error("gain and loss balance (nu - Lambda = {net:e}); growth law is singular")]
    DegenerateBalance { net: f64 },

    #[error("no sign change of the net gain over the scanned range")]
    NoSignChange,
}

impl Error {
    pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter { field, reason: reason.into() }
    }

    /// Short machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidParameter { .. } => "InvalidParameter",
            Error::NonPositiveFrequency { .. } => "NonPositiveFrequency",
            Error::ToleranceNotMet { .. } => "ToleranceNotMet",
            Error::WindowNotStationary { .. } => "WindowNotStationary",
            Error::IllConditionedFit(_) => "IllConditionedFit",
            Error::QuadratureFailure { .. } => "QuadratureFailure",
            Error::TruncationInsufficient { .. } => "TruncationInsufficient",
            Error::EvenModesNotSuppressed { .. } => "EvenModesNotSuppressed",
            Error::FitWindowTooShort(_) => "FitWindowTooShort",
            Error::DegenerateBalance { .. } => "DegenerateBalance",
            Error::NoSignChange => "NoSignChange",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
