use alloc::format;
use alloc::string::String;

use super::{privacy_method_preamble, request_odds};
use crate::adversary::OddsPair;
use crate::error::Result;
use crate::scenario::{ExplanationRequest, Scenario};

/// Two frequency-framed sentences, one per action, sharing one denominator.
#[derive(Debug, Clone, PartialEq)]
pub struct OddsTextExplanation {
    pub preamble: String,
    pub line_withhold: String,
    pub line_share: String,
    pub odds: OddsPair,
}

impl OddsTextExplanation {
    pub fn to_text(&self) -> String {
        format!(
            "{}\n\n{}\n{}",
            self.preamble, self.line_withhold, self.line_share
        )
    }
}

pub(crate) fn odds_line(s: &Scenario, action: &str, count: u32, denominator: u32) -> String {
    format!(
        "If you {action}, {count} out of {denominator} potential {noun} will lead {adversary} \
         to believe you responded {answer}.",
        noun = s.output_noun,
        adversary = s.adversary_label,
        answer = s.sensitive_answer_label,
    )
}

pub fn render_odds_text(req: &ExplanationRequest) -> Result<OddsTextExplanation> {
    let odds = request_odds(req)?;
    let s = &req.scenario;
    Ok(OddsTextExplanation {
        preamble: privacy_method_preamble(s),
        line_withhold: odds_line(s, &s.action_withhold_label, odds.x, odds.denominator),
        line_share: odds_line(s, &s.action_share_label, odds.y, odds.denominator),
        odds,
    })
}
