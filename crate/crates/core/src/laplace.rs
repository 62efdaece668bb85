//! The Laplace distribution Lap(μ, b): density `exp(-|r-μ|/b) / (2b)`.
//!
//! All transcendental functions go through `libm`, so results are identical
//! on every target.

use crate::error::{ensure_finite, Error, Result};
use crate::rng::SeededRng;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaplaceDistribution {
    location: f64,
    scale: f64,
}

impl LaplaceDistribution {
    pub fn new(location: f64, scale: f64) -> Result<Self> {
        ensure_finite("LaplaceDistribution.location", location)?;
        if !(scale.is_finite() && scale > 0.0) {
            return Err(Error::InvalidScale { scale });
        }
        Ok(LaplaceDistribution { location, scale })
    }

    pub fn location(&self) -> f64 {
        self.location
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn pdf(&self, r: f64) -> Result<f64> {
        ensure_finite("r", r)?;
        Ok(libm::exp(-libm::fabs(r - self.location) / self.scale) / (2.0 * self.scale))
    }

    /// Natural log of the density. Finite everywhere, unlike `pdf` which
    /// underflows far in the tails.
    pub fn ln_pdf(&self, r: f64) -> Result<f64> {
        ensure_finite("r", r)?;
        Ok(-libm::fabs(r - self.location) / self.scale - libm::log(2.0 * self.scale))
    }

    /// `Pr[X <= r]`. Infinite `r` maps to 0 or 1; NaN is rejected.
    pub fn cdf(&self, r: f64) -> Result<f64> {
        if r.is_nan() {
            return Err(Error::NonFinite {
                what: "r",
                value: r,
            });
        }
        let z = (r - self.location) / self.scale;
        Ok(if z < 0.0 {
            0.5 * libm::exp(z)
        } else {
            1.0 - 0.5 * libm::exp(-z)
        })
    }

    /// `Pr[X > r]`, computed directly rather than as `1 - cdf` so that
    /// right-tail probabilities keep full relative precision.
    pub fn sf(&self, r: f64) -> Result<f64> {
        if r.is_nan() {
            return Err(Error::NonFinite {
                what: "r",
                value: r,
            });
        }
        let z = (r - self.location) / self.scale;
        Ok(if z > 0.0 {
            0.5 * libm::exp(-z)
        } else {
            1.0 - 0.5 * libm::exp(z)
        })
    }

    /// One draw by inverse-CDF transform of `u ~ U(-0.5, 0.5)`:
    /// `μ - b·sign(u)·ln(1 - 2|u|)`.
    pub fn sample(&self, rng: &mut SeededRng) -> f64 {
        self.transform(rng.next_centered())
    }

    /// Inverse-CDF transform of a centered uniform. `u` must lie in the open
    /// interval (-0.5, 0.5).
    pub fn transform(&self, u: f64) -> f64 {
        debug_assert!(u > -0.5 && u < 0.5);
        let magnitude = -self.scale * libm::log1p(-2.0 * libm::fabs(u));
        if u < 0.0 {
            self.location - magnitude
        } else {
            self.location + magnitude
        }
    }
}
