//! Turns computed odds and draws into the artifacts shown to people: the
//! odds sentences, the icon-array SVG, the sample-report table and the two
//! control texts.

mod control;
mod icon_array;
mod odds_text;
mod sample_reports;
mod wording;

pub use control::render_control;
pub use icon_array::{
    render_icon_array, render_icon_array_with, IconArrayExplanation, IconArraySpec, IconGlyph,
    HIGHLIGHT_COLOR, ICON_COLS, ICON_ROWS, MUTED_COLOR,
};
pub use odds_text::{render_odds_text, OddsTextExplanation};
pub use sample_reports::{format_draw, render_sample_reports, SampleReportsExplanation};
pub use wording::{privacy_method_preamble, scenario_text};

use alloc::string::String;

use crate::adversary::{AdversaryModel, OddsPair};
use crate::error::Result;
use crate::scenario::{ExplanationRequest, Method};

/// Any rendered artifact.
#[derive(Debug, Clone, PartialEq)]
pub enum Explanation {
    OddsText(OddsTextExplanation),
    OddsVis(IconArrayExplanation),
    SampleReports(SampleReportsExplanation),
    Control(String),
}

/// Validates the request and renders whatever its method asks for.
pub fn explain(req: &ExplanationRequest) -> Result<Explanation> {
    req.validate()?;
    Ok(match req.method {
        Method::OddsText => Explanation::OddsText(render_odds_text(req)?),
        Method::OddsVis => Explanation::OddsVis(render_icon_array(req)?),
        Method::SampleReports => Explanation::SampleReports(render_sample_reports(req)),
        Method::ControlDeterministic | Method::ControlNoEpsilon => {
            Explanation::Control(render_control(req))
        }
    })
}

/// The closed-form odds behind a request, independent of its method.
pub fn request_odds(req: &ExplanationRequest) -> Result<OddsPair> {
    AdversaryModel::for_query(req.prior_no, req.epsilon, &req.scenario.query())?
        .compute_odds(req.denominator)
}

/// Full stimulus as plain text: the scenario, then the privacy-method
/// description and the artifact's text body. Controls carry their own
/// scenario text.
pub fn stimulus_text(req: &ExplanationRequest, explanation: &Explanation) -> String {
    let s = &req.scenario;
    let mut out = String::new();
    match explanation {
        Explanation::Control(text) => out.push_str(text),
        Explanation::OddsText(t) | Explanation::OddsVis(IconArrayExplanation { text: t, .. }) => {
            out.push_str(&scenario_text(s));
            out.push_str("\n\n");
            out.push_str(&t.to_text());
        }
        Explanation::SampleReports(r) => {
            out.push_str(&scenario_text(s));
            out.push_str("\n\n");
            out.push_str(&privacy_method_preamble(s));
            out.push_str("\n\n");
            out.push_str(&r.to_text());
        }
    }
    if !out.ends_with('\n') {
        out.push('\n');
    }
    out
}

/// Uppercases the first character, for labels that open a sentence.
pub(crate) fn sentence_case(label: &str) -> String {
    let mut chars = label.chars();
    match chars.next() {
        Some(first) => first.to_uppercase().chain(chars).collect(),
        None => String::new(),
    }
}

pub(crate) fn xml_escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}
