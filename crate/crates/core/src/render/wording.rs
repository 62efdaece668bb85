use alloc::format;
use alloc::string::String;

use super::sentence_case;
use crate::scenario::{Scenario, Setting};

/// The scenario as the subject reads it, ending before any privacy
/// protection is described. This is also the whole deterministic control.
pub fn scenario_text(s: &Scenario) -> String {
    let adversary = &s.adversary_label;
    let adversary_cap = sentence_case(adversary);
    let answer = &s.sensitive_answer_label;
    let framing = match s.setting {
        Setting::Optional => "Taking part in a survey is optional. Anyone who takes part answers truthfully.",
        Setting::Mandatory => {
            "Everyone is required to take part in a survey. You can answer truthfully or untruthfully."
        }
    };
    let others = match s.others_sensitive_count {
        0 => format!("nobody else will answer {answer}"),
        1 => format!("exactly 1 other person will answer {answer}"),
        n => format!("exactly {n} other people will answer {answer}"),
    };
    let revealing_total = s.others_sensitive_count + 1;
    format!(
        "{framing} The survey asks:\n\n\
         {question}\n\n\
         You want to answer {answer}.\n\n\
         {consequence}\n\n\
         {adversary_cap} already knows how everyone else will answer: {others}. \
         {adversary_cap} has no idea how you will answer.\n\n\
         {adversary_cap} will learn the total number of {answer} responses. Names are left out, \
         but {adversary} can still use the total to guess your answer. If the total is \
         {revealing_total}, {adversary} will conclude the extra {answer} came from you.",
        question = s.question_text,
        consequence = s.consequence_text,
    )
}

/// Description of the privacy protection that precedes every experimental
/// artifact: many potential outputs exist, one is sent.
pub fn privacy_method_preamble(s: &Scenario) -> String {
    let adversary = &s.adversary_label;
    let answer = &s.sensitive_answer_label;
    let noun = &s.output_noun;
    format!(
        "A privacy protection method will be used to make it harder for {adversary} to guess \
         anyone's answer.\n\n\
         The exact number of {answer} responses will not be reported. Instead, many potential \
         {noun} are generated, each showing the number of {answer} responses after a statistical \
         method has randomly moved it up or down.\n\n\
         Only ONE of these potential {noun} will be randomly picked and sent to {adversary}.\n\n\
         Because of the privacy method, the one {adversary} receives might lead them to believe \
         you responded {answer} no matter how you respond."
    )
}
