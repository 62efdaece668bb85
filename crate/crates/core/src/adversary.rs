//! The adversary's guessing process.
//!
//! The adversary knows every other respondent's answer, observes one release
//! `r`, and concludes the subject gave the sensitive answer ("NO") when the
//! posterior for NO is strictly larger than for not-NO. With prior `P` the
//! posterior log-odds are
//!
//! ```text
//! ln(P / (1 - P)) + ε·(|r - μ_without| - |r - μ_with|)
//! ```
//!
//! which is increasing in `r` between the two means and constant outside
//! them. The adversary's decision therefore reduces to `r > threshold`,
//! where
//!
//! ```text
//! threshold = (μ_without + μ_with)/2 + (ln(1 - P) - ln P) / (2ε)
//! ```
//!
//! provided `|ln(P / (1 - P))| <= ε`. Beyond that the prior dominates every
//! possible release and [`Error::ExtremePrior`] is returned.

use crate::budget::PrivacyBudget;
use crate::error::{ensure_finite, Error, Result};
use crate::laplace::LaplaceDistribution;
use crate::mechanism::{Branch, CountQuery, COUNT_SENSITIVITY};
use crate::rng::SeededRng;

/// Slack on the prior validity check, in log-odds units.
pub const VALIDITY_SLACK: f64 = 1e-12;

/// Default display denominator ("x out of 100").
pub const DEFAULT_DENOMINATOR: u32 = 100;

/// Prior the adversary holds when nothing else is known about the subject.
pub const DEFAULT_PRIOR_NO: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdversaryModel {
    prior_no: f64,
    epsilon: PrivacyBudget,
    mu_without: f64,
}

impl AdversaryModel {
    pub fn new(prior_no: f64, epsilon: PrivacyBudget, mu_without: f64) -> Result<Self> {
        if !(prior_no > 0.0 && prior_no < 1.0) {
            return Err(Error::InvalidPrior { prior_no });
        }
        ensure_finite("AdversaryModel.mu_without", mu_without)?;
        Ok(AdversaryModel {
            prior_no,
            epsilon,
            mu_without,
        })
    }

    /// Model for a count query: means are the true counts on both branches.
    pub fn for_query(prior_no: f64, epsilon: PrivacyBudget, query: &CountQuery) -> Result<Self> {
        Self::new(prior_no, epsilon, query.true_count_without() as f64)
    }

    pub fn prior_no(&self) -> f64 {
        self.prior_no
    }

    pub fn epsilon(&self) -> PrivacyBudget {
        self.epsilon
    }

    pub fn mu_without(&self) -> f64 {
        self.mu_without
    }

    pub fn mu_with(&self) -> f64 {
        self.mu_without + f64::from(COUNT_SENSITIVITY)
    }

    pub fn distribution(&self, branch: Branch) -> LaplaceDistribution {
        let mu = match branch {
            Branch::WithSubject => self.mu_with(),
            Branch::WithoutSubject => self.mu_without,
        };
        LaplaceDistribution::new(mu, self.epsilon.noise_scale(COUNT_SENSITIVITY))
            .expect("validated model has finite means and positive scale")
    }

    /// `ln(P_no / (1 - P_no))`.
    pub fn prior_log_odds(&self) -> f64 {
        libm::log(self.prior_no) - libm::log(1.0 - self.prior_no)
    }

    /// Whether `max{P/(1-P), (1-P)/P} <= e^ε` (up to [`VALIDITY_SLACK`]).
    pub fn prior_is_valid(&self) -> bool {
        libm::fabs(self.prior_log_odds()) <= self.epsilon.epsilon() + VALIDITY_SLACK
    }

    /// Release value at which the adversary is indifferent between NO and
    /// not-NO. Exactly the midpoint of the two means when `P_no = 0.5`.
    pub fn decision_threshold(&self) -> Result<f64> {
        if !self.prior_is_valid() {
            return Err(Error::ExtremePrior {
                prior_no: self.prior_no,
                epsilon: self.epsilon.epsilon(),
            });
        }
        let midpoint = (self.mu_without + self.mu_with()) / 2.0;
        let shift = (libm::log(1.0 - self.prior_no) - libm::log(self.prior_no))
            / (2.0 * self.epsilon.epsilon());
        Ok(midpoint + shift)
    }

    /// Posterior log-odds of NO after observing `r`.
    pub fn posterior_log_odds(&self, r: f64) -> f64 {
        let eps = self.epsilon.epsilon();
        self.prior_log_odds()
            + eps * (libm::fabs(r - self.mu_without) - libm::fabs(r - self.mu_with()))
    }

    /// Bayesian posterior that the subject answered NO given release `r`.
    pub fn posterior_no(&self, r: f64) -> Result<f64> {
        ensure_finite("r", r)?;
        Ok(logistic(self.posterior_log_odds(r)))
    }

    /// Complement of [`posterior_no`](Self::posterior_no).
    pub fn posterior_not_no(&self, r: f64) -> Result<f64> {
        ensure_finite("r", r)?;
        Ok(logistic(-self.posterior_log_odds(r)))
    }

    /// The adversary's decision on observing `r`. Ties go to not-NO.
    pub fn concludes_no(&self, r: f64) -> bool {
        self.posterior_log_odds(r) > 0.0
    }

    /// Closed-form probabilities that a release leads the adversary to
    /// conclude NO, on each branch, plus their display integers.
    pub fn compute_odds(&self, denominator: u32) -> Result<OddsPair> {
        if denominator == 0 {
            return Err(Error::InvalidRequest {
                field: "denominator",
                reason: "must be a positive integer",
            });
        }
        let threshold = self.decision_threshold()?;
        let p_without = self.distribution(Branch::WithoutSubject).sf(threshold)?;
        let p_with = self.distribution(Branch::WithSubject).sf(threshold)?;
        Ok(OddsPair {
            p_without,
            p_with,
            threshold,
            denominator,
            x: to_display(p_without, denominator),
            y: to_display(p_with, denominator),
        })
    }

    /// Empirical version of [`compute_odds`](Self::compute_odds): simulates
    /// `trials` releases per branch and classifies each one by comparing
    /// posteriors directly, without using the closed-form threshold.
    ///
    /// Draws are taken from one stream: all without-subject releases first,
    /// then all with-subject releases.
    pub fn monte_carlo_odds(&self, trials: u64, rng: &mut SeededRng) -> Result<OddsEstimate> {
        if trials == 0 {
            return Err(Error::InvalidRequest {
                field: "trials",
                reason: "must be at least 1",
            });
        }
        self.decision_threshold()?;
        let mut hits = [0u64; 2];
        for (slot, branch) in [Branch::WithoutSubject, Branch::WithSubject]
            .into_iter()
            .enumerate()
        {
            let dist = self.distribution(branch);
            for _ in 0..trials {
                if self.concludes_no(dist.sample(rng)) {
                    hits[slot] += 1;
                }
            }
        }
        let n = trials as f64;
        Ok(OddsEstimate {
            p_without: hits[0] as f64 / n,
            p_with: hits[1] as f64 / n,
            trials,
            standard_error_bound: 0.5 / libm::sqrt(n),
        })
    }
}

/// Probabilities that the adversary concludes the sensitive answer, on the
/// withhold branch (`p_without`, shown as `x`) and the share branch
/// (`p_with`, shown as `y`).
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct OddsPair {
    pub p_without: f64,
    pub p_with: f64,
    pub threshold: f64,
    pub denominator: u32,
    pub x: u32,
    pub y: u32,
}

/// Monte Carlo frequencies. `standard_error_bound` is `0.5/√trials`, the
/// worst case over all true probabilities.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct OddsEstimate {
    pub p_without: f64,
    pub p_with: f64,
    pub trials: u64,
    pub standard_error_bound: f64,
}

/// `Pr[release > outcome_threshold]` for a release from Lap(μ, 1/ε): the
/// chance that a downstream trigger on the published value fires.
pub fn outcome_threshold_odds(eps: PrivacyBudget, mu: f64, outcome_threshold: f64) -> Result<f64> {
    let dist = LaplaceDistribution::new(mu, eps.noise_scale(COUNT_SENSITIVITY))?;
    dist.sf(outcome_threshold)
}

/// Round half away from zero to an integer count out of `denominator`.
pub fn to_display(p: f64, denominator: u32) -> u32 {
    libm::round(p * f64::from(denominator)) as u32
}

fn logistic(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + libm::exp(-z))
    } else {
        let e = libm::exp(z);
        e / (1.0 + e)
    }
}
