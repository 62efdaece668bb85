#![allow(dead_code)]

/// Two-sided one-sample Kolmogorov–Smirnov statistic.
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

/// Asymptotic critical value of the KS statistic at significance 0.001:
/// sqrt(ln(2/α)/2)/sqrt(n).
pub fn ks_critical_001(n: usize) -> f64 {
    ((2.0f64 / 0.001).ln() / 2.0).sqrt() / (n as f64).sqrt()
}

/// Closed-form Laplace CDF written out independently of the library.
pub fn reference_cdf(mu: f64, b: f64, r: f64) -> f64 {
    if r < mu {
        0.5 * ((r - mu) / b).exp()
    } else {
        1.0 - 0.5 * (-(r - mu) / b).exp()
    }
}
