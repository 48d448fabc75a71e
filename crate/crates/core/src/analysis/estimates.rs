//! Finite-series estimates of the connective constant and heuristic
//! exponent diagnostics. Nothing here is rigorous except where stated.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{BallGraph, Location, VertexId};
use crate::saw::{two_point_series, CountSeries, DisplacementSeries, EnumConfig};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MuEstimate {
    /// (n, σ_n^(1/n)) for n ≥ 1.
    pub roots: Vec<(usize, f64)>,
    /// (n, σ_{n+1}/σ_n) for n ≥ 1.
    pub ratios: Vec<(usize, f64)>,
    /// min σ_n^(1/n); a rigorous upper bound on μ only for a single start
    /// vertex of a vertex-transitive graph (submultiplicativity).
    pub upper_bound: Option<f64>,
    /// Every ratio estimate lies in [1, 2]. Root estimates are not checked:
    /// on a cubic graph σ_1 = 3 puts early roots above 2.
    pub within_cubic_range: bool,
}

impl MuEstimate {
    pub fn last_root(&self) -> f64 {
        self.roots.last().map_or(f64::NAN, |r| r.1)
    }

    pub fn last_ratio(&self) -> f64 {
        self.ratios.last().map_or(f64::NAN, |r| r.1)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serialization cannot fail")
    }
}

pub fn estimate_mu(series: &CountSeries) -> Result<MuEstimate> {
    let c = series.as_f64();
    if c.len() < 2 || c[1..].iter().any(|&x| x <= 0.0) {
        return Err(Error::EmptySeries);
    }
    let roots: Vec<(usize, f64)> = (1..c.len()).map(|n| (n, (c[n].ln() / n as f64).exp())).collect();
    let ratios: Vec<(usize, f64)> = (1..c.len() - 1).map(|n| (n, c[n + 1] / c[n])).collect();
    let upper_bound = series
        .vertex_transitive
        .then(|| roots.iter().map(|r| r.1).fold(f64::INFINITY, f64::min));
    let within_cubic_range = ratios
        .iter()
        .all(|&(_, x)| (1.0 - 1e-12..=2.0 + 1e-12).contains(&x));
    Ok(MuEstimate {
        roots,
        ratios,
        upper_bound,
        within_cubic_range,
    })
}

/// Ordinary least-squares line fit.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Regression {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual.
    pub residual: f64,
    /// Inclusive range of lengths used.
    pub window: (usize, usize),
    pub points: usize,
}

fn fit(points: &[(usize, f64, f64)]) -> Regression {
    let k = points.len() as f64;
    let mx = points.iter().map(|p| p.1).sum::<f64>() / k;
    let my = points.iter().map(|p| p.2).sum::<f64>() / k;
    let sxx: f64 = points.iter().map(|p| (p.1 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.1 - mx) * (p.2 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss: f64 = points.iter().map(|p| (p.2 - intercept - slope * p.1).powi(2)).sum();
    Regression {
        slope,
        intercept,
        residual: (ss / k).sqrt(),
        window: (points[0].0, points[points.len() - 1].0),
        points: points.len(),
    }
}

/// Minimum number of lengths for a regression.
pub const MIN_POINTS: usize = 8;

/// Fits the trailing half of the points, but never fewer than [`MIN_POINTS`].
fn trailing_fit(points: Vec<(usize, f64, f64)>) -> Result<Regression> {
    if points.len() < MIN_POINTS {
        return Err(Error::InsufficientData {
            have: points.len(),
            need: MIN_POINTS,
        });
    }
    let take = (points.len() / 2).max(MIN_POINTS);
    Ok(fit(&points[points.len() - take..]))
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct DiagnosticsParams {
    pub y_grid: Vec<f64>,
    pub z_grid: Vec<f64>,
    /// Caller-supplied η for the Fisher-relation residual.
    pub eta: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExponentEstimate {
    pub value: f64,
    pub fit: Regression,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiagnosticsReport {
    pub note: &'static str,
    pub mu: f64,
    pub truncation: usize,
    /// γ = 1 + slope of log(σ_n/μⁿ) against log n.
    pub gamma: ExponentEstimate,
    /// ν = slope of log⟨‖π‖²⟩_n against log n, halved.
    pub nu: ExponentEstimate,
    /// (y, Y_N(1/μ, y)).
    pub y_table: Vec<(f64, f64)>,
    /// (z, V_N(z)).
    pub v_table: Vec<(f64, f64)>,
    /// γ − ν(2 − η) when η is supplied.
    pub fisher_residual: Option<f64>,
}

impl DiagnosticsReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serialization cannot fail")
    }
}

/// Y_N(x, y) = Σ_{n ≤ N} σ_n xⁿ / n^y, with the n = 0 term taken as σ_0.
pub fn y_truncated(series: &CountSeries, x: f64, y: f64) -> f64 {
    series
        .as_f64()
        .iter()
        .enumerate()
        .map(|(n, &c)| if n == 0 { c } else { c * x.powi(n as i32) / (n as f64).powf(y) })
        .sum()
}

/// V_N(z) = Σ_{1 ≤ n ≤ N} ⟨‖π‖²⟩_n / n^(2z+1).
pub fn v_truncated(disp: &DisplacementSeries, z: f64) -> f64 {
    (1..disp.counts.len())
        .filter(|&n| disp.counts[n] > Default::default())
        .map(|n| disp.mean_square(n) / (n as f64).powf(2.0 * z + 1.0))
        .sum()
}

pub fn exponent_diagnostics(
    series: &CountSeries,
    disp: &DisplacementSeries,
    mu: f64,
    params: &DiagnosticsParams,
) -> Result<DiagnosticsReport> {
    // μ = 1 is admitted so the line graph can serve as a calibration case.
    if mu.is_nan() || mu < 1.0 {
        return Err(Error::OutOfDomain {
            value: mu.to_string(),
            domain: "[1, inf)",
        });
    }
    let counts = series.as_f64();
    let gamma_points: Vec<(usize, f64, f64)> = (1..counts.len())
        .filter(|&n| counts[n] > 0.0)
        .map(|n| (n, (n as f64).ln(), counts[n].ln() - n as f64 * mu.ln()))
        .collect();
    let gfit = trailing_fit(gamma_points)?;
    let nu_points: Vec<(usize, f64, f64)> = (1..disp.counts.len())
        .filter(|&n| disp.counts[n] > Default::default() && disp.mean_square(n) > 0.0)
        .map(|n| (n, (n as f64).ln(), disp.mean_square(n).ln()))
        .collect();
    let nfit = trailing_fit(nu_points)?;
    let gamma = 1.0 + gfit.slope;
    let nu = nfit.slope / 2.0;
    Ok(DiagnosticsReport {
        note: "heuristic finite-length regressions; not estimates with error bars",
        mu,
        truncation: series.n_max(),
        gamma: ExponentEstimate { value: gamma, fit: gfit },
        nu: ExponentEstimate { value: nu, fit: nfit },
        y_table: params.y_grid.iter().map(|&y| (y, y_truncated(series, 1.0 / mu, y))).collect(),
        v_table: params.z_grid.iter().map(|&z| (z, v_truncated(disp, z))).collect(),
        fisher_residual: params.eta.map(|eta| gamma - nu * (2.0 - eta)),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecayRow {
    pub v: String,
    pub w: String,
    pub distance: u32,
    pub truncation: usize,
    /// Σ_{n ≤ truncation} σ_n(v, w) xⁿ.
    pub value: f64,
}

/// Truncated two-point functions Z_{v,w}(x) with the graph distance of each pair.
pub fn two_point_decay(
    ball: &BallGraph,
    pairs: &[(VertexId, VertexId)],
    x: f64,
    n_max: usize,
    cfg: EnumConfig,
) -> Result<Vec<DecayRow>> {
    let mut rows = Vec::with_capacity(pairs.len());
    for (v, w) in pairs {
        let s = two_point_series(ball, v, w, n_max, cfg)?;
        let dist = ball.bfs_distance(&Location::Vertex(v.clone()))?;
        let wi = ball.resolve_vertex(w)?;
        let value = s
            .as_f64()
            .iter()
            .enumerate()
            .map(|(n, &c)| c * x.powi(n as i32))
            .sum();
        rows.push(DecayRow {
            v: v.to_string(),
            w: w.to_string(),
            distance: dist.vertex_edges(wi).unwrap_or(u32::MAX),
            truncation: n_max,
            value,
        });
    }
    Ok(rows)
}
