//! Scenarios known to the server, keyed by id (the fixture file stem).

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use epsodds_core::{Scenario, Setting};
use serde::Serialize;

use crate::error::AppError;
use crate::scenario_file::parse_scenario;

/// Id of the scenario used when none is requested.
pub const DEFAULT_SCENARIO_ID: &str = "workplace";

const BUNDLED: [(&str, &str); 2] = [
    ("workplace", include_str!("../fixtures/workplace.json")),
    (
        "workplace_mandatory",
        include_str!("../fixtures/workplace_mandatory.json"),
    ),
];

/// Immutable after construction; share it behind an `Arc`.
#[derive(Debug, Clone, Default)]
pub struct ScenarioRegistry {
    scenarios: BTreeMap<String, Scenario>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioSummary {
    pub id: String,
    pub question_text: String,
    pub setting: Setting,
    pub adversary_label: String,
    pub output_noun: String,
}

impl ScenarioRegistry {
    /// The fixtures compiled into the binary.
    pub fn bundled() -> Self {
        let scenarios = BUNDLED
            .iter()
            .map(|(id, doc)| {
                let s = parse_scenario(doc).expect("bundled fixtures are valid");
                (id.to_string(), s)
            })
            .collect();
        ScenarioRegistry { scenarios }
    }

    /// Bundled fixtures plus every `*.json` in `dir`. Files override bundled
    /// entries with the same id. Any unreadable or malformed file fails the
    /// whole load, naming the file.
    pub fn with_dir(dir: &Path) -> Result<Self, AppError> {
        let mut registry = Self::bundled();
        let entries = fs::read_dir(dir)
            .map_err(|e| AppError::io(format!("reading scenario dir {}", dir.display()), e))?;
        let mut paths: Vec<_> = entries
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|ext| ext == "json"))
            .collect();
        paths.sort();
        for path in paths {
            let scenario = load_file(&path)?;
            let id = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            registry.scenarios.insert(id, scenario);
        }
        Ok(registry)
    }

    pub fn get(&self, id: &str) -> Result<&Scenario, AppError> {
        self.scenarios
            .get(id)
            .ok_or_else(|| AppError::UnknownScenario(id.to_string()))
    }

    pub fn summaries(&self) -> Vec<ScenarioSummary> {
        self.scenarios
            .iter()
            .map(|(id, s)| ScenarioSummary {
                id: id.clone(),
                question_text: s.question_text.clone(),
                setting: s.setting,
                adversary_label: s.adversary_label.clone(),
                output_noun: s.output_noun.clone(),
            })
            .collect()
    }
}

/// Reads and parses one scenario file; errors carry the file name.
pub fn load_file(path: &Path) -> Result<Scenario, AppError> {
    let wrap = |source: AppError| AppError::ScenarioFile {
        file: path.to_path_buf(),
        source: Box::new(source),
    };
    let text = fs::read_to_string(path).map_err(|e| wrap(AppError::io("reading scenario", e)))?;
    parse_scenario(&text).map_err(wrap)
}
