//! Exact enumeration of self-avoiding walks from vertices and from mid-edges.
//!
//! Walks are directed, so a walk and its reversal are counted separately from
//! their respective starts. A mid-edge walk has length equal to the number of
//! vertices it visits and never revisits a vertex or a mid-edge; the empty
//! walk (length 0) is the start mid-edge alone.
//!
//! Every operation checks that the ball is large enough for the requested
//! length before enumerating, so a returned count is never silently truncated
//! by the ball boundary.

mod engine;
mod sinks;

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{BallGraph, EdgeOrigin, MidEdge, VertexId};

pub use engine::EnumConfig;
use engine::Csr;
use sinks::*;

/// Largest length accepted by the dense weighted tallies.
pub const MAX_WEIGHTED_LENGTH: usize = 96;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StartMode {
    Vertex,
    Midedge,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EndFilter {
    Any,
    MidedgeOfOriginalE,
    EndpointSet(Vec<String>),
}

/// SAW counts indexed by length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountSeries {
    #[serde(with = "decimal_vec")]
    pub counts: Vec<BigUint>,
    pub start_mode: StartMode,
    pub start_set: Vec<String>,
    pub end_filter: EndFilter,
    pub graph_id: String,
    /// Counts at indices up to and including this one are exact.
    pub valid_through: usize,
    /// Single start vertex of a vertex-transitive lattice.
    #[serde(default)]
    pub vertex_transitive: bool,
}

impl CountSeries {
    pub fn n_max(&self) -> usize {
        self.counts.len().saturating_sub(1)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serialization cannot fail")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,count\n");
        for (n, c) in self.counts.iter().enumerate() {
            out.push_str(&format!("{n},{c}\n"));
        }
        out
    }

    /// Counts as f64, for diagnostics.
    pub fn as_f64(&self) -> Vec<f64> {
        self.counts.iter().map(big_to_f64).collect()
    }
}

pub(crate) fn big_to_f64(x: &BigUint) -> f64 {
    x.to_f64().unwrap_or(f64::INFINITY)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightMode {
    /// Index (black steps, white steps).
    BlackWhite,
    /// Index (p-steps, q-steps, r-steps).
    Pqr,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedEntry {
    pub index: Vec<usize>,
    #[serde(with = "decimal")]
    pub count: BigUint,
}

/// Multi-index SAW counts; only nonzero classes are stored, sorted by index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedCounts {
    pub mode: WeightMode,
    pub n_max: usize,
    pub graph_id: String,
    pub counts: Vec<WeightedEntry>,
}

impl WeightedCounts {
    pub fn get(&self, index: &[usize]) -> BigUint {
        self.counts
            .binary_search_by(|e| e.index.as_slice().cmp(index))
            .map(|i| self.counts[i].count.clone())
            .unwrap_or_default()
    }

    /// Totals by walk length (sum of the index components).
    pub fn totals_by_length(&self) -> Vec<BigUint> {
        let mut out = vec![BigUint::zero(); self.n_max + 1];
        for e in &self.counts {
            out[e.index.iter().sum::<usize>()] += &e.count;
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serialization cannot fail")
    }

    fn from_dense(mode: WeightMode, n_max: usize, graph_id: &str, dense: BTreeMap<Vec<usize>, u128>) -> Self {
        let counts = dense
            .into_iter()
            .filter(|(_, c)| *c != 0)
            .map(|(index, c)| WeightedEntry {
                index,
                count: BigUint::from(c),
            })
            .collect();
        WeightedCounts {
            mode,
            n_max,
            graph_id: graph_id.to_string(),
            counts,
        }
    }
}

/// Per-length count and sum of squared end-to-end distance (half-edge units).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisplacementSeries {
    #[serde(with = "decimal_vec")]
    pub counts: Vec<BigUint>,
    #[serde(with = "decimal_vec")]
    pub sum_sq: Vec<BigUint>,
    pub graph_id: String,
}

impl DisplacementSeries {
    pub fn mean_square(&self, n: usize) -> f64 {
        big_to_f64(&self.sum_sq[n]) / big_to_f64(&self.counts[n])
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serialization cannot fail")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,count,sum_sq\n");
        for n in 0..self.counts.len() {
            out.push_str(&format!("{n},{},{}\n", self.counts[n], self.sum_sq[n]));
        }
        out
    }
}

/// Endpoint-resolved counts from one start vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndpointCounts {
    pub start: VertexId,
    /// Per endpoint with at least one walk: counts by length.
    pub by_endpoint: BTreeMap<VertexId, Vec<BigUint>>,
}

fn guard(ball: &BallGraph, start_depth: u32, n_max: usize) -> Result<()> {
    let need = start_depth as usize + n_max + 1;
    if ball.radius < need {
        return Err(Error::InsufficientRadius {
            have: ball.radius,
            need,
        });
    }
    Ok(())
}

fn resolve_vertices(ball: &BallGraph, starts: &[VertexId], n_max: usize) -> Result<Vec<u32>> {
    let mut idx = Vec::with_capacity(starts.len());
    for s in starts {
        let i = ball.resolve_vertex(s)?;
        guard(ball, ball.depth[i], n_max)?;
        idx.push(i as u32);
    }
    Ok(idx)
}

fn resolve_midedges(ball: &BallGraph, starts: &[MidEdge], n_max: usize) -> Result<Vec<u32>> {
    let mut idx = Vec::with_capacity(starts.len());
    for m in starts {
        let e = ball.resolve_midedge(m)?;
        let [a, b] = ball.edges[e].ends;
        guard(ball, ball.depth[a as usize].min(ball.depth[b as usize]), n_max)?;
        idx.push(e as u32);
    }
    Ok(idx)
}

fn labels<T: std::fmt::Display>(xs: &[T]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

fn to_big(counts: Vec<u128>) -> Vec<BigUint> {
    counts.into_iter().map(BigUint::from).collect()
}

/// Total number of SAWs of each length from the given vertices.
pub fn count_from_vertices(
    ball: &BallGraph,
    starts: &[VertexId],
    n_max: usize,
    cfg: EnumConfig,
) -> Result<CountSeries> {
    let idx = resolve_vertices(ball, starts, n_max)?;
    let g = Csr::new(ball);
    let sink = engine::enumerate_from_vertices(&g, &idx, n_max, cfg, LengthCounts::new(n_max));
    Ok(CountSeries {
        counts: to_big(sink.counts),
        start_mode: StartMode::Vertex,
        start_set: labels(starts),
        end_filter: EndFilter::Any,
        graph_id: ball.spec_name.clone(),
        valid_through: n_max,
        vertex_transitive: false,
    })
}

/// Counts of mid-edge SAWs from `starts`, optionally keeping only walks that
/// end at a mid-edge of an original-origin edge.
pub fn count_from_midedges(
    ball: &BallGraph,
    starts: &[MidEdge],
    n_max: usize,
    end_filter: EndFilter,
    cfg: EnumConfig,
) -> Result<CountSeries> {
    let original_only = match &end_filter {
        EndFilter::Any => false,
        EndFilter::MidedgeOfOriginalE => {
            if !ball.has_origin_tags() {
                return Err(Error::NoOriginTags);
            }
            true
        }
        EndFilter::EndpointSet(_) => {
            return Err(Error::WrongSeriesKind(
                "endpoint filters apply to vertex walks".into(),
            ))
        }
    };
    let idx = resolve_midedges(ball, starts, n_max)?;
    let g = Csr::new(ball);
    let origins = edge_origins(ball);
    let sink = MidLengthCounts::new(n_max, original_only.then_some(origins.as_slice()));
    let sink = engine::enumerate_from_midedges(&g, &idx, n_max, cfg, sink);
    Ok(CountSeries {
        counts: to_big(sink.counts),
        start_mode: StartMode::Midedge,
        start_set: labels(starts),
        end_filter,
        graph_id: ball.spec_name.clone(),
        valid_through: n_max,
        vertex_transitive: false,
    })
}

fn edge_origins(ball: &BallGraph) -> Vec<Option<EdgeOrigin>> {
    (0..ball.edge_count()).map(|e| ball.edge_origin(e)).collect()
}

/// Counts of SAWs from `v` to every endpoint.
pub fn endpoint_counts(
    ball: &BallGraph,
    v: &VertexId,
    n_max: usize,
    cfg: EnumConfig,
) -> Result<EndpointCounts> {
    let idx = resolve_vertices(ball, std::slice::from_ref(v), n_max)?;
    let g = Csr::new(ball);
    let sink = EndpointTally::new(n_max, ball.vertex_count());
    let sink = engine::enumerate_from_vertices(&g, &idx, n_max, cfg, sink);
    let mut by_endpoint = BTreeMap::new();
    for w in 0..ball.vertex_count() {
        let row = &sink.counts[w * (n_max + 1)..(w + 1) * (n_max + 1)];
        if row.iter().any(|&c| c != 0) {
            by_endpoint.insert(
                ball.vertices[w].clone(),
                row.iter().map(|&c| BigUint::from(c)).collect(),
            );
        }
    }
    Ok(EndpointCounts {
        start: v.clone(),
        by_endpoint,
    })
}

/// σ_n(v, w): number of n-step SAWs from `v` ending at `w`.
pub fn two_point_series(
    ball: &BallGraph,
    v: &VertexId,
    w: &VertexId,
    n_max: usize,
    cfg: EnumConfig,
) -> Result<CountSeries> {
    ball.resolve_vertex(w)?;
    let all = endpoint_counts(ball, v, n_max, cfg)?;
    let counts = all
        .by_endpoint
        .get(w)
        .cloned()
        .unwrap_or_else(|| vec![BigUint::zero(); n_max + 1]);
    Ok(CountSeries {
        counts,
        start_mode: StartMode::Vertex,
        start_set: vec![v.to_string()],
        end_filter: EndFilter::EndpointSet(vec![w.to_string()]),
        graph_id: ball.spec_name.clone(),
        valid_through: n_max,
        vertex_transitive: false,
    })
}

/// Count and summed squared displacement of mid-edge SAWs by length.
pub fn displacement_series(
    ball: &BallGraph,
    starts: &[MidEdge],
    n_max: usize,
    cfg: EnumConfig,
) -> Result<DisplacementSeries> {
    let idx = resolve_midedges(ball, starts, n_max)?;
    let g = Csr::new(ball);
    let dist: Vec<Vec<u32>> = idx.iter().map(|&e| ball.midedge_distances(e as usize)).collect();
    let sink = Displacement::new(n_max, &dist);
    let sink = engine::enumerate_from_midedges(&g, &idx, n_max, cfg, sink);
    Ok(DisplacementSeries {
        counts: to_big(sink.counts),
        sum_sq: to_big(sink.sum_sq),
        graph_id: ball.spec_name.clone(),
    })
}

fn check_weighted_length(n_max: usize) -> Result<()> {
    if n_max > MAX_WEIGHTED_LENGTH {
        return Err(Error::ResourceLimit {
            what: "weighted tally length",
            needed: n_max,
            cap: MAX_WEIGHTED_LENGTH,
        });
    }
    Ok(())
}

/// Counts of mid-edge SAWs by (black steps, white steps).
pub fn weighted_black_white(
    ball: &BallGraph,
    starts: &[MidEdge],
    n_max: usize,
    cfg: EnumConfig,
) -> Result<WeightedCounts> {
    if !ball.is_bipartite_coloured() {
        return Err(Error::NotBipartite);
    }
    check_weighted_length(n_max)?;
    let idx = resolve_midedges(ball, starts, n_max)?;
    let g = Csr::new(ball);
    let black: Vec<bool> = ball
        .colours
        .iter()
        .map(|&c| c == crate::lattice::Colour::Black)
        .collect();
    let sink = BlackWhite::new(n_max, &black);
    let sink = engine::enumerate_from_midedges(&g, &idx, n_max, cfg, sink);
    let side = n_max + 1;
    let dense = sink
        .counts
        .iter()
        .enumerate()
        .map(|(i, &c)| (vec![i / side, i % side], c))
        .collect();
    Ok(WeightedCounts::from_dense(WeightMode::BlackWhite, n_max, &ball.spec_name, dense))
}

/// Counts of mid-edge SAWs that end at original-origin mid-edges, by
/// (p, q, r) step classes: a step is p when both of its half-edges lie on
/// triangle edges, q when exactly one does, r when neither does.
pub fn weighted_pqr(
    ball: &BallGraph,
    starts: &[MidEdge],
    n_max: usize,
    cfg: EnumConfig,
) -> Result<WeightedCounts> {
    if !ball.has_origin_tags() {
        return Err(Error::NoOriginTags);
    }
    check_weighted_length(n_max)?;
    for m in starts {
        let e = ball.resolve_midedge(m)?;
        if ball.edge_origin(e) != Some(EdgeOrigin::Original) {
            return Err(Error::StartNotOriginal(m.to_string()));
        }
    }
    let idx = resolve_midedges(ball, starts, n_max)?;
    let g = Csr::new(ball);
    let triangle: Vec<bool> = (0..ball.edge_count())
        .map(|e| ball.edge_origin(e) == Some(EdgeOrigin::Triangle))
        .collect();
    let sink = Pqr::new(n_max, &triangle);
    let sink = engine::enumerate_from_midedges(&g, &idx, n_max, cfg, sink);
    let side = n_max + 1;
    let dense = sink
        .counts
        .iter()
        .enumerate()
        .map(|(i, &c)| (vec![i / (side * side), (i / side) % side, i % side], c))
        .collect();
    Ok(WeightedCounts::from_dense(WeightMode::Pqr, n_max, &ball.spec_name, dense))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubstitutionRule {
    /// x -> x^2 (1 + x)
    XToX2OnePlusX,
}

/// Coefficients of Σ_n counts0[n] (x²(1+x))ⁿ.
///
/// Output degree `m` collects contributions from every `n` with
/// `2n <= m <= 3n`; it is exact when all those `n` are within the input,
/// that is for `m <= 2N + 1` (capped at `3N`).
pub fn substitute_series(series0: &CountSeries, rule: SubstitutionRule) -> Result<CountSeries> {
    let SubstitutionRule::XToX2OnePlusX = rule;
    if series0.start_mode != StartMode::Midedge || series0.end_filter != EndFilter::Any {
        return Err(Error::WrongSeriesKind(
            "substitution expects an unfiltered mid-edge series".into(),
        ));
    }
    let n = series0.valid_through.min(series0.n_max());
    let top = 3 * n;
    let mut out = vec![BigUint::zero(); top + 1];
    for (k, c) in series0.counts.iter().enumerate().take(n + 1) {
        // (x²(1+x))^k = Σ_j C(k, j) x^(2k+j)
        let mut binom = BigUint::one();
        for j in 0..=k {
            out[2 * k + j] += c * &binom;
            binom = binom * BigUint::from(k - j) / BigUint::from(j + 1);
        }
    }
    Ok(CountSeries {
        counts: out,
        start_mode: StartMode::Midedge,
        start_set: series0.start_set.clone(),
        end_filter: EndFilter::Any,
        graph_id: format!("subst({})", series0.graph_id),
        valid_through: (2 * n + 1).min(top),
        vertex_transitive: false,
    })
}

mod decimal {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

mod decimal_vec {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(xs: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(xs.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
        let texts = Vec::<String>::deserialize(d)?;
        texts
            .iter()
            .map(|t| t.parse().map_err(serde::de::Error::custom))
            .collect()
    }
}
