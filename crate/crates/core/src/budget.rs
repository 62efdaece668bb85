use crate::error::{Error, Result};

/// The ε values used for the study stimuli, weakest-to-strongest noise
/// removed: 0.1, 0.5, 2 and 4.
pub const STUDY_EPSILONS: [f64; 4] = [0.1, 0.5, 2.0, 4.0];

/// A validated privacy budget ε. Always finite and strictly positive.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "f64", into = "f64"))]
pub struct PrivacyBudget(f64);

impl PrivacyBudget {
    pub fn new(epsilon: f64) -> Result<Self> {
        if epsilon.is_finite() && epsilon > 0.0 {
            Ok(PrivacyBudget(epsilon))
        } else {
            Err(Error::InvalidBudget { epsilon })
        }
    }

    #[inline]
    pub fn epsilon(self) -> f64 {
        self.0
    }

    /// Laplace scale `sensitivity / ε`.
    #[inline]
    pub fn noise_scale(self, sensitivity: u32) -> f64 {
        f64::from(sensitivity) / self.0
    }
}

impl TryFrom<f64> for PrivacyBudget {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        PrivacyBudget::new(value)
    }
}

impl From<PrivacyBudget> for f64 {
    fn from(b: PrivacyBudget) -> f64 {
        b.0
    }
}
