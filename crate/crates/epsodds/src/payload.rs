//! Structured payloads shared by the CLI files and the HTTP API, so both
//! surfaces emit the same numbers for the same parameters.

use epsodds_core::adversary::{DEFAULT_DENOMINATOR, DEFAULT_PRIOR_NO};
use epsodds_core::render::{self, stimulus_text, Explanation, IconGlyph};
use epsodds_core::scenario::{DEFAULT_SAMPLES, DEFAULT_SEED};
use epsodds_core::{
    AdversaryModel, Error, ExplanationRequest, Method, OddsPair, PrivacyBudget, Scenario, Setting,
    STUDY_EPSILONS,
};
use serde::{Deserialize, Serialize};

use crate::error::AppError;
use crate::registry::DEFAULT_SCENARIO_ID;

pub const SCHEMA_VERSION: u32 = 1;

/// Parameters of one explanation, as accepted by `explain` and
/// `GET /api/v1/explain`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExplainParams {
    pub scenario_id: String,
    pub epsilon: f64,
    pub prior: f64,
    pub method: Method,
    pub seed: u64,
    pub denominator: u32,
    pub samples: u32,
    /// Icon shape for `odds_vis`.
    #[serde(default)]
    pub glyph: IconGlyph,
}

impl ExplainParams {
    pub fn new(epsilon: f64, method: Method) -> Self {
        ExplainParams {
            scenario_id: DEFAULT_SCENARIO_ID.to_string(),
            epsilon,
            prior: DEFAULT_PRIOR_NO,
            method,
            seed: DEFAULT_SEED,
            denominator: DEFAULT_DENOMINATOR,
            samples: DEFAULT_SAMPLES,
            glyph: IconGlyph::default(),
        }
    }

    /// Checks every numeric parameter. Needs no scenario, so callers can
    /// run it before touching the filesystem.
    pub fn check(&self) -> Result<PrivacyBudget, AppError> {
        let eps = PrivacyBudget::new(self.epsilon)?;
        if !(self.prior > 0.0 && self.prior < 1.0) {
            return Err(Error::InvalidPrior {
                prior_no: self.prior,
            }
            .into());
        }
        if self.denominator < 2 {
            return Err(Error::InvalidRequest {
                field: "denominator",
                reason: "must be at least 2",
            }
            .into());
        }
        if self.samples < 1 {
            return Err(Error::InvalidRequest {
                field: "samples",
                reason: "must be at least 1",
            }
            .into());
        }
        if self.method == Method::OddsVis && self.denominator != 100 {
            return Err(Error::UnsupportedDenominator {
                denominator: self.denominator,
            }
            .into());
        }
        Ok(eps)
    }

    pub fn request(&self, scenario: Scenario) -> Result<ExplanationRequest, AppError> {
        let epsilon = self.check()?;
        let req = ExplanationRequest {
            scenario,
            epsilon,
            prior_no: self.prior,
            method: self.method,
            denominator: self.denominator,
            n_samples: self.samples,
            seed: self.seed,
        };
        req.validate()?;
        Ok(req)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RequestEcho {
    pub scenario_id: String,
    pub setting: Setting,
    pub epsilon: f64,
    pub prior: f64,
    pub method: Method,
    pub seed: u64,
    pub denominator: u32,
    pub samples: u32,
    pub glyph: IconGlyph,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OddsTextPayload {
    pub preamble: String,
    pub line_withhold: String,
    pub line_share: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IconArrayPayload {
    pub rows: u32,
    pub cols: u32,
    pub highlighted_withhold: u32,
    pub highlighted_share: u32,
    pub highlight_color: String,
    pub muted_color: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleReportsPayload {
    pub disclaimer: String,
    pub heading_withhold: String,
    pub heading_share: String,
    pub draws_withhold: Vec<f64>,
    pub draws_share: Vec<f64>,
    pub display_withhold: Vec<String>,
    pub display_share: Vec<String>,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Artifacts {
    /// Full stimulus as plain text.
    pub text: String,
    pub odds_text: Option<OddsTextPayload>,
    pub icon_array_svg: Option<String>,
    pub icon_array: Option<IconArrayPayload>,
    pub sample_reports: Option<SampleReportsPayload>,
    pub control_text: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExplainResponse {
    pub schema_version: u32,
    pub request: RequestEcho,
    pub odds: OddsPair,
    pub artifacts: Artifacts,
}

/// Computes odds and renders the requested artifact.
///
/// Odds are part of every response, so an extreme prior is rejected for
/// every method, controls included.
pub fn build_response(
    scenario_id: &str,
    scenario: &Scenario,
    params: &ExplainParams,
) -> Result<ExplainResponse, AppError> {
    let req = params.request(scenario.clone())?;
    let odds = render::request_odds(&req)?;
    let explanation = match req.method {
        Method::OddsVis => {
            Explanation::OddsVis(render::render_icon_array_with(&req, params.glyph)?)
        }
        _ => render::explain(&req)?,
    };
    let mut artifacts = Artifacts {
        text: stimulus_text(&req, &explanation),
        ..Artifacts::default()
    };
    match explanation {
        Explanation::OddsText(t) => {
            artifacts.odds_text = Some(odds_text_payload(&t));
        }
        Explanation::OddsVis(v) => {
            artifacts.odds_text = Some(odds_text_payload(&v.text));
            artifacts.icon_array = Some(IconArrayPayload {
                rows: v.spec.rows,
                cols: v.spec.cols,
                highlighted_withhold: v.spec.highlighted_withhold,
                highlighted_share: v.spec.highlighted_share,
                highlight_color: render::HIGHLIGHT_COLOR.to_string(),
                muted_color: render::MUTED_COLOR.to_string(),
            });
            artifacts.icon_array_svg = Some(v.svg);
        }
        Explanation::SampleReports(r) => {
            artifacts.sample_reports = Some(SampleReportsPayload {
                disclaimer: r.disclaimer,
                heading_withhold: r.heading_withhold,
                heading_share: r.heading_share,
                draws_withhold: r.draws_withhold,
                draws_share: r.draws_share,
                display_withhold: r.display_withhold,
                display_share: r.display_share,
                seed: r.seed,
            });
        }
        Explanation::Control(text) => artifacts.control_text = Some(text),
    }
    Ok(ExplainResponse {
        schema_version: SCHEMA_VERSION,
        request: RequestEcho {
            scenario_id: scenario_id.to_string(),
            setting: scenario.setting,
            epsilon: params.epsilon,
            prior: params.prior,
            method: params.method,
            seed: params.seed,
            denominator: params.denominator,
            samples: params.samples,
            glyph: params.glyph,
        },
        odds,
        artifacts,
    })
}

fn odds_text_payload(t: &render::OddsTextExplanation) -> OddsTextPayload {
    OddsTextPayload {
        preamble: t.preamble.clone(),
        line_withhold: t.line_withhold.clone(),
        line_share: t.line_share.clone(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub epsilon: f64,
    pub x: u32,
    pub y: u32,
    pub p_without: f64,
    pub p_with: f64,
    pub threshold: f64,
}

/// One row of odds per ε, for the symmetric-count scenario (means 0 and 1).
pub fn table_rows(
    epsilons: &[f64],
    prior: f64,
    denominator: u32,
) -> Result<Vec<TableRow>, AppError> {
    if epsilons.is_empty() {
        return Err(Error::InvalidRequest {
            field: "epsilons",
            reason: "must list at least one value",
        }
        .into());
    }
    let budgets = epsilons
        .iter()
        .map(|&e| PrivacyBudget::new(e))
        .collect::<Result<Vec<_>, _>>()?;
    budgets
        .into_iter()
        .map(|eps| {
            let o = AdversaryModel::new(prior, eps, 0.0)?.compute_odds(denominator)?;
            Ok(TableRow {
                epsilon: eps.epsilon(),
                x: o.x,
                y: o.y,
                p_without: o.p_without,
                p_with: o.p_with,
                threshold: o.threshold,
            })
        })
        .collect()
}

pub fn default_epsilons() -> Vec<f64> {
    STUDY_EPSILONS.to_vec()
}

/// Parses `0.1,0.5,2` into a list. Blank input is an error.
pub fn parse_epsilon_list(text: &str) -> Result<Vec<f64>, AppError> {
    let parts: Vec<&str> = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    if parts.is_empty() {
        return Err(Error::InvalidRequest {
            field: "epsilons",
            reason: "must list at least one value",
        }
        .into());
    }
    parts
        .into_iter()
        .map(|p| {
            p.parse::<f64>().map_err(|_| {
                AppError::Invalid(Error::InvalidRequest {
                    field: "epsilons",
                    reason: "every entry must be a number",
                })
            })
        })
        .collect()
}

/// Tab-separated `epsilon x y` table.
pub fn table_text(rows: &[TableRow]) -> String {
    let mut out = String::from("epsilon\tx\ty\n");
    for r in rows {
        out.push_str(&format!("{}\t{}\t{}\n", r.epsilon, r.x, r.y));
    }
    out
}
