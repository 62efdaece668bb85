//! Exact adversary-inference odds for the Laplace mechanism on count
//! queries, and the end-user explanations built from them.
//!
//! The crate is `no_std` and only needs `alloc`. Floating-point special
//! functions come from `libm`, so every number and every rendered byte is
//! the same on every platform.
//!
//! ```
//! use epsodds_core::{AdversaryModel, PrivacyBudget};
//!
//! let eps = PrivacyBudget::new(0.5).unwrap();
//! let odds = AdversaryModel::new(0.5, eps, 0.0).unwrap().compute_odds(100).unwrap();
//! assert_eq!((odds.x, odds.y), (39, 61));
//! ```
#![no_std]

extern crate alloc;

pub mod adversary;
pub mod budget;
pub mod error;
pub mod laplace;
pub mod mechanism;
pub mod render;
pub mod rng;
pub mod scenario;

pub use adversary::{outcome_threshold_odds, AdversaryModel, OddsEstimate, OddsPair};
pub use budget::{PrivacyBudget, STUDY_EPSILONS};
pub use error::{Error, Result};
pub use laplace::LaplaceDistribution;
pub use mechanism::{dp_ratio_check, release_count, Branch, CountQuery, MechanismOutput};
pub use render::{explain, Explanation};
pub use rng::SeededRng;
pub use scenario::{ExplanationRequest, Method, Scenario, Setting};
