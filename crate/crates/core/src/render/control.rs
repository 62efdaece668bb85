use alloc::format;
use alloc::string::String;

use super::scenario_text;
use crate::scenario::{ExplanationRequest, Method, Scenario};

/// Generic description of noise-based protection that never mentions ε.
fn noise_description(s: &Scenario) -> String {
    let adversary = &s.adversary_label;
    let answer = &s.sensitive_answer_label;
    format!(
        "However, to respect your personal information privacy, the {noun} shared with \
         {adversary} will include the total number of {answer} responses processed using a \
         privacy protection method. This method protects respondents' privacy by adding random \
         noise to aggregated data, for example, the total number of {answer} responses, such \
         that the probability that {adversary} can infer your response on the survey is lower \
         than without the privacy protection.",
        noun = s.output_noun,
    )
}

/// Control texts. The deterministic control is the bare scenario; the
/// no-ε control appends a generic noise description. Calling this with an
/// experimental method yields the deterministic control.
pub fn render_control(req: &ExplanationRequest) -> String {
    let s = &req.scenario;
    let base = scenario_text(s);
    match req.method {
        Method::ControlNoEpsilon => format!("{base}\n\n{}", noise_description(s)),
        _ => base,
    }
}
