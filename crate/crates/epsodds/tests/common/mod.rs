#![allow(dead_code)]

use std::path::Path;
use std::process::{Command, Output};

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use epsodds::registry::ScenarioRegistry;
use epsodds::server::{router, ServerConfig};
use tower::ServiceExt;

pub fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_epsodds"))
        .args(args)
        .output()
        .expect("binary runs")
}

pub fn cli_in(dir: &Path, args: &[&str]) -> Output {
    let mut all: Vec<&str> = args.to_vec();
    let out_dir = dir.to_str().unwrap();
    all.extend(["--out-dir", out_dir]);
    cli(&all)
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

pub fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

pub fn app() -> Router {
    router(ScenarioRegistry::bundled(), &ServerConfig::default()).unwrap()
}

pub async fn get(app: &Router, uri: &str) -> (StatusCode, serde_json::Value) {
    let (status, _, body) = get_raw(app, uri).await;
    let value = serde_json::from_slice(&body).unwrap_or(serde_json::Value::Null);
    (status, value)
}

pub async fn get_raw(app: &Router, uri: &str) -> (StatusCode, axum::http::HeaderMap, Vec<u8>) {
    let resp = app
        .clone()
        .oneshot(
            Request::builder()
                .uri(uri)
                .header("origin", "http://localhost:5173")
                .body(Body::empty())
                .unwrap(),
        )
        .await
        .unwrap();
    let status = resp.status();
    let headers = resp.headers().clone();
    let body = axum::body::to_bytes(resp.into_body(), usize::MAX)
        .await
        .unwrap();
    (status, headers, body.to_vec())
}

/// Counts highlighted icons per panel by their fill attribute.
pub fn highlighted_per_panel(svg: &str, color: &str) -> Vec<usize> {
    svg.split("<g id=\"panel-")
        .skip(1)
        .map(|chunk| {
            let body = &chunk[..chunk.find("</g>").unwrap()];
            body.matches(&format!("fill=\"{color}\"")).count()
        })
        .collect()
}

pub fn ks_statistic(samples: &mut [f64], cdf: impl Fn(f64) -> f64) -> f64 {
    samples.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = samples.len() as f64;
    samples
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).max((i + 1) as f64 / n - f)
        })
        .fold(0.0, f64::max)
}

pub fn ks_critical_001(n: usize) -> f64 {
    ((2.0f64 / 0.001).ln() / 2.0).sqrt() / (n as f64).sqrt()
}

pub fn laplace_cdf(mu: f64, b: f64, r: f64) -> f64 {
    if r < mu {
        0.5 * ((r - mu) / b).exp()
    } else {
        1.0 - 0.5 * (-(r - mu) / b).exp()
    }
}
