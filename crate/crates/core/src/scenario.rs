use alloc::string::String;
use core::fmt;
use core::str::FromStr;

use crate::adversary::{DEFAULT_DENOMINATOR, DEFAULT_PRIOR_NO};
use crate::budget::PrivacyBudget;
use crate::error::{Error, Result};
use crate::mechanism::CountQuery;

/// Whether providing data is optional or mandatory. Changes wording only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Setting {
    Optional,
    Mandatory,
}

impl Setting {
    pub fn as_str(self) -> &'static str {
        match self {
            Setting::Optional => "optional",
            Setting::Mandatory => "mandatory",
        }
    }
}

/// A data-sharing situation the explanations are phrased for.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(deny_unknown_fields))]
pub struct Scenario {
    pub question_text: String,
    /// The answer the subject fears being singled out for, e.g. "NO".
    pub sensitive_answer_label: String,
    pub setting: Setting,
    /// Action that contributes the sensitive answer ("participate",
    /// "respond NO").
    pub action_share_label: String,
    /// Action that keeps it out ("do not participate", "respond YES").
    pub action_withhold_label: String,
    /// Who tries to infer the answer, e.g. "your manager".
    pub adversary_label: String,
    /// Plural noun for the released outputs, e.g. "reports".
    pub output_noun: String,
    /// How many of the other respondents give the sensitive answer.
    pub others_sensitive_count: u64,
    pub consequence_text: String,
}

impl Scenario {
    pub fn validate(&self) -> Result<()> {
        let labels: [(&'static str, &str); 7] = [
            ("question_text", &self.question_text),
            ("sensitive_answer_label", &self.sensitive_answer_label),
            ("action_share_label", &self.action_share_label),
            ("action_withhold_label", &self.action_withhold_label),
            ("adversary_label", &self.adversary_label),
            ("output_noun", &self.output_noun),
            ("consequence_text", &self.consequence_text),
        ];
        for (field, value) in labels {
            if value.trim().is_empty() {
                return Err(Error::InvalidScenario {
                    field,
                    reason: "must be a nonempty string",
                });
            }
        }
        Ok(())
    }

    pub fn query(&self) -> CountQuery {
        CountQuery::new(self.others_sensitive_count)
    }
}

/// Which artifact to produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Method {
    OddsText,
    OddsVis,
    SampleReports,
    ControlDeterministic,
    ControlNoEpsilon,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::OddsText,
        Method::OddsVis,
        Method::SampleReports,
        Method::ControlDeterministic,
        Method::ControlNoEpsilon,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::OddsText => "odds_text",
            Method::OddsVis => "odds_vis",
            Method::SampleReports => "sample_reports",
            Method::ControlDeterministic => "control_deterministic",
            Method::ControlNoEpsilon => "control_no_epsilon",
        }
    }

    pub fn is_control(self) -> bool {
        matches!(
            self,
            Method::ControlDeterministic | Method::ControlNoEpsilon
        )
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or(Error::InvalidRequest {
                field: "method",
                reason: "expected one of odds_text, odds_vis, sample_reports, \
                         control_deterministic, control_no_epsilon",
            })
    }
}

/// Seed used when a caller does not supply one (the study date, 2022-01-31).
pub const DEFAULT_SEED: u64 = 20220131;

pub const DEFAULT_SAMPLES: u32 = 5;

/// Everything needed to render one explanation deterministically.
#[derive(Debug, Clone, PartialEq)]
pub struct ExplanationRequest {
    pub scenario: Scenario,
    pub epsilon: PrivacyBudget,
    pub prior_no: f64,
    pub method: Method,
    pub denominator: u32,
    pub n_samples: u32,
    pub seed: u64,
}

impl ExplanationRequest {
    /// Request with the study defaults: prior 0.5, denominator 100,
    /// five samples per branch.
    pub fn new(scenario: Scenario, epsilon: PrivacyBudget, method: Method) -> Self {
        ExplanationRequest {
            scenario,
            epsilon,
            prior_no: DEFAULT_PRIOR_NO,
            method,
            denominator: DEFAULT_DENOMINATOR,
            n_samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.scenario.validate()?;
        if !(self.prior_no > 0.0 && self.prior_no < 1.0) {
            return Err(Error::InvalidPrior {
                prior_no: self.prior_no,
            });
        }
        if self.denominator < 2 {
            return Err(Error::InvalidRequest {
                field: "denominator",
                reason: "must be at least 2",
            });
        }
        if self.n_samples < 1 {
            return Err(Error::InvalidRequest {
                field: "samples",
                reason: "must be at least 1",
            });
        }
        Ok(())
    }
}
