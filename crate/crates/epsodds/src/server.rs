//! HTTP/JSON facade: `/api/v1/explain`, `/api/v1/table`, `/api/v1/scenarios`.
//!
//! Stateless: the scenario registry is loaded once at startup and never
//! mutated, and seeds come from the client.

use std::collections::HashMap;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

use axum::extract::{Query, State};
use axum::http::{HeaderValue, Method as HttpMethod, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::get;
use axum::{Json, Router};
use epsodds_core::render::IconGlyph;
use epsodds_core::{Error, Method};
use tower_http::cors::{AllowOrigin, Any, CorsLayer};
use tower_http::services::ServeDir;

use crate::error::AppError;
use crate::payload::{self, build_response, ExplainParams, ExplainResponse, TableRow};
use crate::registry::{ScenarioRegistry, ScenarioSummary};

#[derive(Debug, Clone, Default)]
pub struct ServerConfig {
    pub port: u16,
    pub static_dir: Option<PathBuf>,
    pub allow_origin: Option<String>,
}

type Shared = Arc<ScenarioRegistry>;

impl IntoResponse for AppError {
    fn into_response(self) -> Response {
        let status = match self.kind() {
            "extreme_prior" => StatusCode::UNPROCESSABLE_ENTITY,
            "not_found" => StatusCode::NOT_FOUND,
            "io" => StatusCode::INTERNAL_SERVER_ERROR,
            _ => StatusCode::BAD_REQUEST,
        };
        (status, Json(self.body())).into_response()
    }
}

pub fn router(registry: ScenarioRegistry, config: &ServerConfig) -> Result<Router, AppError> {
    let origin = match &config.allow_origin {
        Some(o) => AllowOrigin::exact(
            HeaderValue::from_str(o)
                .map_err(|_| AppError::Usage(format!("invalid --allow-origin value {o:?}")))?,
        ),
        None => AllowOrigin::from(Any),
    };
    let cors = CorsLayer::new()
        .allow_methods([HttpMethod::GET])
        .allow_headers(Any)
        .allow_origin(origin);
    let api = Router::new()
        .route("/api/v1/explain", get(explain))
        .route("/api/v1/table", get(table))
        .route("/api/v1/scenarios", get(scenarios))
        .with_state(Arc::new(registry));
    let app = match &config.static_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api,
    };
    Ok(app.layer(cors))
}

pub async fn serve(registry: ScenarioRegistry, config: ServerConfig) -> Result<(), AppError> {
    let app = router(registry, &config)?;
    let addr = std::net::SocketAddr::from(([0, 0, 0, 0], config.port));
    let listener = tokio::net::TcpListener::bind(addr)
        .await
        .map_err(|e| AppError::io(format!("binding {addr}"), e))?;
    eprintln!("listening on http://{addr}");
    axum::serve(listener, app)
        .await
        .map_err(|e| AppError::io("serving", e))
}

fn invalid(field: &'static str, reason: &'static str) -> AppError {
    AppError::Invalid(Error::InvalidRequest { field, reason })
}

fn parse_field<T: FromStr>(
    query: &HashMap<String, String>,
    field: &'static str,
    reason: &'static str,
) -> Result<Option<T>, AppError> {
    query
        .get(field)
        .map(|raw| raw.trim().parse::<T>().map_err(|_| invalid(field, reason)))
        .transpose()
}

/// Builds explain parameters from the query string, applying defaults.
pub fn explain_params(query: &HashMap<String, String>) -> Result<ExplainParams, AppError> {
    let epsilon: f64 = parse_field(query, "epsilon", "must be a number")?
        .ok_or_else(|| invalid("epsilon", "is required"))?;
    let method = match query.get("method") {
        Some(m) => Method::from_str(m)?,
        None => Method::OddsText,
    };
    let mut params = ExplainParams::new(epsilon, method);
    if let Some(p) = parse_field(query, "prior", "must be a number")? {
        params.prior = p;
    }
    if let Some(s) = parse_field(query, "seed", "must be an unsigned 64-bit integer")? {
        params.seed = s;
    }
    if let Some(d) = parse_field(query, "denominator", "must be a positive integer")? {
        params.denominator = d;
    }
    if let Some(n) = parse_field(query, "samples", "must be a positive integer")? {
        params.samples = n;
    }
    if let Some(id) = query.get("scenario_id") {
        params.scenario_id = id.clone();
    }
    params.glyph = match query.get("glyph").map(String::as_str) {
        None | Some("circle") => IconGlyph::Circle,
        Some("square") => IconGlyph::Square,
        Some(_) => return Err(invalid("glyph", "expected circle or square")),
    };
    params.check()?;
    Ok(params)
}

async fn explain(
    State(registry): State<Shared>,
    Query(query): Query<HashMap<String, String>>,
) -> Result<Json<ExplainResponse>, AppError> {
    let params = explain_params(&query)?;
    let scenario = registry.get(&params.scenario_id)?;
    Ok(Json(build_response(
        &params.scenario_id,
        scenario,
        &params,
    )?))
}

async fn table(
    Query(query): Query<HashMap<String, String>>,
) -> Result<Json<Vec<TableRow>>, AppError> {
    let epsilons = match query.get("epsilons") {
        Some(list) => payload::parse_epsilon_list(list)?,
        None => payload::default_epsilons(),
    };
    let prior = parse_field(&query, "prior", "must be a number")?.unwrap_or(0.5);
    let denominator =
        parse_field(&query, "denominator", "must be a positive integer")?.unwrap_or(100);
    Ok(Json(payload::table_rows(&epsilons, prior, denominator)?))
}

async fn scenarios(State(registry): State<Shared>) -> Json<Vec<ScenarioSummary>> {
    Json(registry.summaries())
}
