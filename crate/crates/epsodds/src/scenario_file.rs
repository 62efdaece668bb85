//! Scenario documents: one strict JSON object per file.

use epsodds_core::Scenario;

use crate::error::AppError;

/// Parses and validates a scenario document. Unknown fields are rejected.
pub fn parse_scenario(document: &str) -> Result<Scenario, AppError> {
    let de = &mut serde_json::Deserializer::from_str(document);
    let scenario: Scenario = serde_path_to_error::deserialize(de).map_err(|err| {
        let path = err.path().to_string();
        let inner = err.into_inner();
        AppError::Parse {
            path,
            line: inner.line(),
            column: inner.column(),
            message: inner.to_string(),
        }
    })?;
    scenario.validate()?;
    Ok(scenario)
}

pub fn to_json(scenario: &Scenario) -> String {
    let mut s = serde_json::to_string_pretty(scenario).expect("scenario serializes");
    s.push('\n');
    s
}
