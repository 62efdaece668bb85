//! Central-model Laplace mechanism for a single binary count query.

use crate::budget::PrivacyBudget;
use crate::error::{ensure_finite, Error, Result};
use crate::laplace::LaplaceDistribution;
use crate::rng::SeededRng;

/// Sensitivity of a count query: one person changes the count by at most 1.
pub const COUNT_SENSITIVITY: u32 = 1;

/// Which neighbouring database the release is computed on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Branch {
    /// The subject contributes the sensitive answer.
    WithSubject,
    /// The subject withholds it (does not participate, or answers otherwise).
    WithoutSubject,
}

/// Count of sensitive answers among everyone except the subject.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountQuery {
    true_count_without: u64,
    sensitivity: u32,
}

impl CountQuery {
    pub fn new(true_count_without: u64) -> Self {
        CountQuery {
            true_count_without,
            sensitivity: COUNT_SENSITIVITY,
        }
    }

    pub fn sensitivity(&self) -> u32 {
        self.sensitivity
    }

    pub fn true_count_without(&self) -> u64 {
        self.true_count_without
    }

    pub fn true_count_with(&self) -> u64 {
        self.true_count_without + 1
    }

    /// True count on the given branch.
    pub fn true_count(&self, branch: Branch) -> u64 {
        match branch {
            Branch::WithSubject => self.true_count_with(),
            Branch::WithoutSubject => self.true_count_without(),
        }
    }

    /// Output distribution of the mechanism on the given branch.
    pub fn output_distribution(&self, branch: Branch, eps: PrivacyBudget) -> LaplaceDistribution {
        LaplaceDistribution::new(
            self.true_count(branch) as f64,
            eps.noise_scale(self.sensitivity),
        )
        .expect("budget guarantees a finite positive scale")
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct MechanismOutput {
    pub value: f64,
    pub epsilon: PrivacyBudget,
    pub branch: Branch,
}

/// Releases `true count + Lap(0, 1/ε)`. The value is not clamped or rounded,
/// so it can be negative or fractional.
pub fn release_count(
    query: &CountQuery,
    branch: Branch,
    eps: PrivacyBudget,
    rng: &mut SeededRng,
) -> MechanismOutput {
    let value = query.output_distribution(branch, eps).sample(rng);
    MechanismOutput {
        value,
        epsilon: eps,
        branch,
    }
}

/// Relative slack allowed on the density-ratio bound.
pub const DP_RATIO_SLACK: f64 = 1e-9;

/// Checks the ε-DP density-ratio bound between Lap(mu0, 1/ε) and
/// Lap(mu1, 1/ε) at every point: the ratio must stay in `[e^-ε, e^ε]`.
///
/// Ratios are compared in log space so tail points do not underflow.
pub fn dp_ratio_check(eps: PrivacyBudget, mu0: f64, mu1: f64, points: &[f64]) -> Result<bool> {
    ensure_finite("mu0", mu0)?;
    ensure_finite("mu1", mu1)?;
    if libm::fabs(mu0 - mu1) > f64::from(COUNT_SENSITIVITY) {
        return Err(Error::SensitivityExceeded {
            mu0,
            mu1,
            sensitivity: COUNT_SENSITIVITY,
        });
    }
    let scale = eps.noise_scale(COUNT_SENSITIVITY);
    let d0 = LaplaceDistribution::new(mu0, scale)?;
    let d1 = LaplaceDistribution::new(mu1, scale)?;
    let bound = eps.epsilon() + libm::log1p(DP_RATIO_SLACK);
    for &r in points {
        let log_ratio = d1.ln_pdf(r)? - d0.ln_pdf(r)?;
        if libm::fabs(log_ratio) > bound {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    fn eps(e: f64) -> PrivacyBudget {
        PrivacyBudget::new(e).unwrap()
    }

    #[test]
    fn with_branch_adds_one() {
        let q = CountQuery::new(3);
        assert_eq!(q.true_count(Branch::WithSubject), 4);
        assert_eq!(q.true_count(Branch::WithoutSubject), 3);
        assert_eq!(q.sensitivity(), 1);
    }

    #[test]
    fn huge_epsilon_releases_true_count() {
        let q = CountQuery::new(0);
        for seed in 0..50 {
            let out = release_count(
                &q,
                Branch::WithoutSubject,
                eps(1e9),
                &mut SeededRng::new(seed),
            );
            assert!(out.value.abs() < 1e-6);
        }
    }

    #[test]
    fn release_is_reproducible() {
        let q = CountQuery::new(0);
        let a = release_count(&q, Branch::WithSubject, eps(0.5), &mut SeededRng::new(99));
        let b = release_count(&q, Branch::WithSubject, eps(0.5), &mut SeededRng::new(99));
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.branch, Branch::WithSubject);
    }

    #[test]
    fn releases_are_unclamped() {
        let q = CountQuery::new(0);
        let mut rng = SeededRng::new(5);
        let (mut negative, mut fractional) = (false, false);
        for _ in 0..100_000 {
            let v = release_count(&q, Branch::WithoutSubject, eps(0.1), &mut rng).value;
            negative |= v < 0.0;
            fractional |= v.fract() != 0.0;
        }
        assert!(negative && fractional);
    }

    #[test]
    fn ratio_check_holds_on_integer_grid() {
        let pts: Vec<f64> = (-5..=5).map(f64::from).collect();
        assert_eq!(dp_ratio_check(eps(2.0), 0.0, 1.0, &pts), Ok(true));
    }

    #[test]
    fn fractional_shift_within_bound() {
        let pts = [-100.0, -0.3, 0.2, 100.0];
        assert_eq!(dp_ratio_check(eps(0.1), 0.0, 0.5, &pts), Ok(true));
        assert_eq!(dp_ratio_check(eps(0.1), 1.0, 0.0, &pts), Ok(true));
    }

    #[test]
    fn sensitivity_precondition() {
        let err = dp_ratio_check(eps(2.0), 0.0, 3.0, &[0.0]).unwrap_err();
        assert!(matches!(err, Error::SensitivityExceeded { .. }));
        assert!(dp_ratio_check(eps(2.0), 0.0, 1.0, &[f64::NAN]).is_err());
    }

    #[test]
    fn ratio_check_far_tails_do_not_underflow() {
        let pts = [-1e6, -5e3, 5e3, 1e6];
        assert_eq!(dp_ratio_check(eps(4.0), 0.0, 1.0, &pts), Ok(true));
    }
}
