//! `epsodds` command line: `explain`, `table`, `simulate`, `serve`.
//!
//! Exit codes: 0 ok, 1 parse/validation/usage, 2 ExtremePrior, 3 I/O,
//! 4 when `simulate` finds a gap above four standard errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use epsodds_core::render::IconGlyph;
use epsodds_core::scenario::DEFAULT_SEED;
use epsodds_core::{AdversaryModel, Error, Method, PrivacyBudget, SeededRng};

use crate::error::AppError;
use crate::payload::{self, build_response, ExplainParams, ExplainResponse};
use crate::registry::{self, ScenarioRegistry, DEFAULT_SCENARIO_ID};
use crate::server::{self, ServerConfig};

pub const EXIT_SIMULATION_GAP: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "epsodds",
    version,
    about = "Explain what a privacy budget means to the people sharing data"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MethodArg {
    #[value(name = "odds_text")]
    OddsText,
    #[value(name = "odds_vis")]
    OddsVis,
    #[value(name = "sample_reports")]
    SampleReports,
    #[value(name = "control_deterministic")]
    ControlDeterministic,
    #[value(name = "control_no_epsilon")]
    ControlNoEpsilon,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::OddsText => Method::OddsText,
            MethodArg::OddsVis => Method::OddsVis,
            MethodArg::SampleReports => Method::SampleReports,
            MethodArg::ControlDeterministic => Method::ControlDeterministic,
            MethodArg::ControlNoEpsilon => Method::ControlNoEpsilon,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum GlyphArg {
    Circle,
    Square,
}

impl From<GlyphArg> for IconGlyph {
    fn from(g: GlyphArg) -> IconGlyph {
        match g {
            GlyphArg::Circle => IconGlyph::Circle,
            GlyphArg::Square => IconGlyph::Square,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Render one explanation artifact and its JSON payload into --out-dir.
    Explain {
        /// Scenario JSON file; the bundled workplace scenario when omitted.
        #[arg(long)]
        scenario: Option<PathBuf>,
        #[arg(long, allow_negative_numbers = true)]
        epsilon: f64,
        #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
        prior: f64,
        #[arg(long, value_enum, default_value = "odds_text")]
        method: MethodArg,
        #[arg(long, default_value_t = 100)]
        denominator: u32,
        #[arg(long, default_value_t = 5)]
        samples: u32,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value = "circle")]
        glyph: GlyphArg,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Print x and y per ε. Defaults to the study grid 0.1, 0.5, 2, 4.
    Table {
        /// Comma-separated ε values.
        #[arg(long)]
        epsilons: Option<String>,
        #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
        prior: f64,
        #[arg(long, default_value_t = 100)]
        denominator: u32,
    },
    /// Compare closed-form odds against a Monte Carlo simulation.
    Simulate {
        #[arg(long, allow_negative_numbers = true)]
        epsilon: f64,
        #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
        prior: f64,
        #[arg(long, default_value_t = 1_000_000)]
        trials: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Serve the JSON API.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        /// Extra scenario fixtures (*.json); the file stem is the id.
        #[arg(long)]
        scenario_dir: Option<PathBuf>,
        /// Static explorer bundle served at /.
        #[arg(long)]
        static_dir: Option<PathBuf>,
        /// Allowed CORS origin; any origin when omitted.
        #[arg(long)]
        allow_origin: Option<String>,
    },
}

/// Parses arguments and runs the command, writing to the given streams.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn std::io::Write, stderr: &mut dyn std::io::Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{}", e.render());
                return 0;
            }
            let _ = write!(stderr, "{}", e.render());
            report(stderr, &AppError::Usage(e.kind().to_string()));
            return 1;
        }
    };
    match execute(cli.command, stdout) {
        Ok(code) => code,
        Err(err) => {
            report(stderr, &err);
            err.exit_code()
        }
    }
}

fn report(stderr: &mut dyn std::io::Write, err: &AppError) {
    let line = serde_json::to_string(&err.body()).expect("error body serializes");
    let _ = writeln!(stderr, "{line}");
}

fn execute(command: Command, out: &mut dyn std::io::Write) -> Result<i32, AppError> {
    match command {
        Command::Explain {
            scenario,
            epsilon,
            prior,
            method,
            denominator,
            samples,
            seed,
            glyph,
            out_dir,
        } => {
            let params = ExplainParams {
                scenario_id: scenario
                    .as_deref()
                    .and_then(Path::file_stem)
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| DEFAULT_SCENARIO_ID.to_string()),
                epsilon,
                prior,
                method: method.into(),
                seed,
                denominator,
                samples,
                glyph: glyph.into(),
            };
            cmd_explain(&params, scenario.as_deref(), &out_dir, out)
        }
        Command::Table {
            epsilons,
            prior,
            denominator,
        } => {
            let eps = match epsilons {
                Some(list) => payload::parse_epsilon_list(&list)?,
                None => payload::default_epsilons(),
            };
            let rows = payload::table_rows(&eps, prior, denominator)?;
            write_out(out, &payload::table_text(&rows))?;
            Ok(0)
        }
        Command::Simulate {
            epsilon,
            prior,
            trials,
            seed,
        } => cmd_simulate(epsilon, prior, trials, seed, out),
        Command::Serve {
            port,
            scenario_dir,
            static_dir,
            allow_origin,
        } => {
            let registry = match scenario_dir {
                Some(dir) => ScenarioRegistry::with_dir(&dir)?,
                None => ScenarioRegistry::bundled(),
            };
            let config = ServerConfig {
                port,
                static_dir,
                allow_origin,
            };
            let rt =
                tokio::runtime::Runtime::new().map_err(|e| AppError::io("starting runtime", e))?;
            rt.block_on(server::serve(registry, config))?;
            Ok(0)
        }
    }
}

fn write_out(out: &mut dyn std::io::Write, text: &str) -> Result<(), AppError> {
    out.write_all(text.as_bytes())
        .map_err(|e| AppError::io("writing stdout", e))
}

/// Base name for artifact files, e.g. `odds_vis_0.5`.
pub fn artifact_stem(method: Method, epsilon: f64) -> String {
    format!("{}_{}", method.as_str(), epsilon)
}

fn cmd_explain(
    params: &ExplainParams,
    scenario_path: Option<&Path>,
    out_dir: &Path,
    out: &mut dyn std::io::Write,
) -> Result<i32, AppError> {
    // Numbers first: nothing touches the filesystem until they pass.
    params.check()?;
    let scenario = match scenario_path {
        Some(path) => registry::load_file(path)?,
        None => ScenarioRegistry::bundled()
            .get(DEFAULT_SCENARIO_ID)?
            .clone(),
    };
    let response = build_response(&params.scenario_id, &scenario, params)?;

    fs::create_dir_all(out_dir)
        .map_err(|e| AppError::io(format!("creating {}", out_dir.display()), e))?;
    let stem = artifact_stem(params.method, params.epsilon);
    let mut files: Vec<(PathBuf, String)> = Vec::new();
    if let Some(svg) = &response.artifacts.icon_array_svg {
        files.push((out_dir.join(format!("{stem}.svg")), svg.clone()));
    }
    files.push((
        out_dir.join(format!("{stem}.txt")),
        response.artifacts.text.clone(),
    ));
    let mut json = serde_json::to_string_pretty(&response).expect("response serializes");
    json.push('\n');
    files.push((out_dir.join(format!("{stem}.json")), json));

    let mut summary = summary_line(&response);
    for (path, contents) in &files {
        fs::write(path, contents)
            .map_err(|e| AppError::io(format!("writing {}", path.display()), e))?;
        let _ = writeln!(summary, "wrote {}", path.display());
    }
    write_out(out, &summary)?;
    Ok(0)
}

fn summary_line(r: &ExplainResponse) -> String {
    let o = &r.odds;
    let mut s = format!(
        "method={} epsilon={} prior={} denominator={} x={} y={} p_without={:.6} p_with={:.6} threshold={:.6}\n",
        r.request.method, r.request.epsilon, r.request.prior, o.denominator, o.x, o.y,
        o.p_without, o.p_with, o.threshold
    );
    if let Some(sr) = &r.artifacts.sample_reports {
        let _ = writeln!(s, "withhold: {}", sr.display_withhold.join(" "));
        let _ = writeln!(s, "share: {}", sr.display_share.join(" "));
    }
    s
}

fn cmd_simulate(
    epsilon: f64,
    prior: f64,
    trials: u64,
    seed: u64,
    out: &mut dyn std::io::Write,
) -> Result<i32, AppError> {
    let eps = PrivacyBudget::new(epsilon)?;
    if trials == 0 {
        return Err(Error::InvalidRequest {
            field: "trials",
            reason: "must be at least 1",
        }
        .into());
    }
    let model = AdversaryModel::new(prior, eps, 0.0)?;
    let closed = model.compute_odds(100)?;
    let est = model.monte_carlo_odds(trials, &mut SeededRng::new(seed))?;
    let bound = 4.0 * est.standard_error_bound;
    let gaps = [
        (est.p_without - closed.p_without).abs(),
        (est.p_with - closed.p_with).abs(),
    ];
    let pass = gaps.iter().all(|g| *g <= bound);
    let mut text = format!(
        "epsilon={epsilon} prior={prior} trials={trials} seed={seed} threshold={:.6}\n\
         branch\tclosed_form\tempirical\tgap\tbound\n",
        closed.threshold
    );
    let _ = writeln!(
        text,
        "without\t{:.4}\t{:.4}\t{:.6}\t{:.6}",
        closed.p_without, est.p_without, gaps[0], bound
    );
    let _ = writeln!(
        text,
        "with\t{:.4}\t{:.4}\t{:.6}\t{:.6}",
        closed.p_with, est.p_with, gaps[1], bound
    );
    let _ = writeln!(text, "status={}", if pass { "pass" } else { "fail" });
    write_out(out, &text)?;
    Ok(if pass { 0 } else { EXIT_SIMULATION_GAP })
}
