use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::mechanism::{release_count, Branch};
use crate::rng::SeededRng;
use crate::scenario::ExplanationRequest;

/// Decimal places shown for each draw.
pub const DISPLAY_PRECISION: usize = 1;

/// Pre-drawn example releases for both actions. The unrounded draws are
/// kept next to their one-decimal display strings.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleReportsExplanation {
    pub heading_withhold: String,
    pub heading_share: String,
    pub draws_withhold: Vec<f64>,
    pub draws_share: Vec<f64>,
    pub display_withhold: Vec<String>,
    pub display_share: Vec<String>,
    pub disclaimer: String,
    pub seed: u64,
}

impl SampleReportsExplanation {
    pub fn to_text(&self) -> String {
        format!(
            "{}\n\n{}\n{}\n\n{}\n{}",
            self.disclaimer,
            self.heading_withhold,
            self.display_withhold.join("  "),
            self.heading_share,
            self.display_share.join("  "),
        )
    }
}

/// One-decimal display of a draw. Negative zero prints as "0.0".
pub fn format_draw(value: f64) -> String {
    let s = format!("{value:.DISPLAY_PRECISION$}");
    if s.starts_with('-') && s[1..].bytes().all(|b| b == b'0' || b == b'.') {
        String::from(&s[1..])
    } else {
        s
    }
}

/// Draws `n_samples` releases per branch from a stream seeded with
/// `req.seed`: withhold branch first, then share branch.
pub fn render_sample_reports(req: &ExplanationRequest) -> SampleReportsExplanation {
    let s = &req.scenario;
    let query = s.query();
    let mut rng = SeededRng::new(req.seed);
    let mut draw = |branch| -> Vec<f64> {
        (0..req.n_samples)
            .map(|_| release_count(&query, branch, req.epsilon, &mut rng).value)
            .collect()
    };
    let draws_withhold = draw(Branch::WithoutSubject);
    let draws_share = draw(Branch::WithSubject);
    let noun = &s.output_noun;
    SampleReportsExplanation {
        heading_withhold: format!(
            "If you {}, potential {noun} could show:",
            s.action_withhold_label
        ),
        heading_share: format!("If you {}, potential {noun} could show:", s.action_share_label),
        display_withhold: draws_withhold.iter().copied().map(format_draw).collect(),
        display_share: draws_share.iter().copied().map(format_draw).collect(),
        draws_withhold,
        draws_share,
        disclaimer: format!(
            "The total number of {} responses may be fractional or negative due to the privacy method.",
            s.sensitive_answer_label
        ),
        seed: req.seed,
    }
}
