use core::fmt;

/// Everything that can go wrong when building models, computing odds or
/// rendering explanations.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// ε must be finite and strictly positive.
    InvalidBudget { epsilon: f64 },
    /// Laplace scale must be finite and strictly positive.
    InvalidScale { scale: f64 },
    /// A real-valued input was NaN or infinite.
    NonFinite { what: &'static str, value: f64 },
    /// The adversary's prior must lie strictly between 0 and 1.
    InvalidPrior { prior_no: f64 },
    /// The prior's log-odds exceed ε: no release value can change the
    /// adversary's conclusion, so there is no decision threshold.
    ExtremePrior { prior_no: f64, epsilon: f64 },
    /// The two compared means differ by more than the query sensitivity.
    SensitivityExceeded {
        mu0: f64,
        mu1: f64,
        sensitivity: u32,
    },
    /// A scenario field violated its invariant.
    InvalidScenario {
        field: &'static str,
        reason: &'static str,
    },
    /// A request parameter violated its invariant.
    InvalidRequest {
        field: &'static str,
        reason: &'static str,
    },
    /// Icon arrays are laid out on a fixed 10×10 grid.
    UnsupportedDenominator { denominator: u32 },
}

impl Error {
    /// Name of the invariant or type whose contract was violated. Stable,
    /// meant for machine-readable error output.
    pub fn invariant(&self) -> &'static str {
        match self {
            Error::InvalidBudget { .. } => "PrivacyBudget",
            Error::InvalidScale { .. } => "LaplaceDistribution",
            Error::NonFinite { what, .. } => what,
            Error::InvalidPrior { .. } => "AdversaryModel.prior_no",
            Error::ExtremePrior { .. } => "ExtremePrior",
            Error::SensitivityExceeded { .. } => "CountQuery.sensitivity",
            Error::InvalidScenario { field, .. } => field,
            Error::InvalidRequest { field, .. } => field,
            Error::UnsupportedDenominator { .. } => "IconArraySpec.denominator",
        }
    }

    pub fn is_extreme_prior(&self) -> bool {
        matches!(self, Error::ExtremePrior { .. })
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidBudget { epsilon } => {
                write!(
                    f,
                    "PrivacyBudget requires a finite epsilon > 0, got {epsilon}"
                )
            }
            Error::InvalidScale { scale } => {
                write!(f, "Laplace scale must be finite and > 0, got {scale}")
            }
            Error::NonFinite { what, value } => write!(f, "{what} must be finite, got {value}"),
            Error::InvalidPrior { prior_no } => {
                write!(
                    f,
                    "prior_no must lie strictly between 0 and 1, got {prior_no}"
                )
            }
            Error::ExtremePrior { prior_no, epsilon } => write!(
                f,
                "ExtremePrior: prior_no={prior_no} is too extreme for epsilon={epsilon}; \
                 max(P/(1-P), (1-P)/P) must not exceed e^epsilon"
            ),
            Error::SensitivityExceeded {
                mu0,
                mu1,
                sensitivity,
            } => write!(
                f,
                "means {mu0} and {mu1} differ by more than the sensitivity {sensitivity}"
            ),
            Error::InvalidScenario { field, reason } => write!(f, "scenario.{field}: {reason}"),
            Error::InvalidRequest { field, reason } => write!(f, "{field}: {reason}"),
            Error::UnsupportedDenominator { denominator } => write!(
                f,
                "icon arrays need denominator 100 (10x10 grid), got {denominator}"
            ),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn ensure_finite(what: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite { what, value })
    }
}
