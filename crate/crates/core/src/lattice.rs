//! Periodic lattice descriptions and their finite balls.
//!
//! A [`LatticeSpec`] describes an infinite graph by a finite cell of vertices
//! plus edges labelled with the translation offset between the cells of their
//! endpoints. The 3-regular tree is the one aperiodic built-in and is handled
//! by an explicit neighbour oracle.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the number of vertices in a [`BallGraph`].
pub const DEFAULT_MAX_VERTICES: usize = 5_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Colour {
    White,
    Black,
    None,
}

/// Whether an edge of a Fisher image is the image of an edge of the
/// pre-image graph or a side of a newly created triangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeOrigin {
    Original,
    Triangle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellVertex {
    pub local: usize,
    pub colour: Colour,
}

/// Edge joining `u` in cell `c` to `v` in cell `c + offset`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellEdge {
    pub u: usize,
    pub v: usize,
    pub offset: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub origin: Option<EdgeOrigin>,
}

impl CellEdge {
    pub fn new(u: usize, v: usize, offset: Vec<i64>) -> Self {
        CellEdge {
            u,
            v,
            offset,
            origin: None,
        }
    }

    fn canonical_key(&self) -> (usize, usize, Vec<i64>) {
        let fwd = (self.u, self.v, self.offset.clone());
        let rev = (self.v, self.u, self.offset.iter().map(|x| -x).collect());
        fwd.min(rev)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Aperiodic {
    /// Regular tree of the given degree; vertices are addressed by their
    /// path of child choices from the root.
    RegularTree { degree: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSpec {
    pub name: String,
    pub dimension: usize,
    #[serde(default)]
    pub multigraph: bool,
    pub vertices: Vec<CellVertex>,
    pub edges: Vec<CellEdge>,
    pub domain: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub aperiodic: Option<Aperiodic>,
}

/// A vertex of the infinite graph: translation cell plus index within the cell.
///
/// For the regular tree `cell` holds the path of child choices from the root.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexId {
    pub cell: Vec<i64>,
    pub local: usize,
}

impl VertexId {
    pub fn new(cell: Vec<i64>, local: usize) -> Self {
        VertexId { cell, local }
    }

    pub fn origin(dimension: usize, local: usize) -> Self {
        VertexId {
            cell: vec![0; dimension],
            local,
        }
    }

    /// Parses the `cell/local` label used in DOT output and on the command line,
    /// e.g. `0,-1/1`.
    pub fn parse(text: &str) -> Result<Self> {
        let (cell, local) = text
            .split_once('/')
            .ok_or_else(|| Error::Parse(format!("vertex `{text}` is not of the form cell/local")))?;
        let cell = if cell.trim().is_empty() {
            Vec::new()
        } else {
            cell.split(',')
                .map(|x| x.trim().parse::<i64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::Parse(format!("vertex `{text}`: {e}")))?
        };
        let local = local
            .trim()
            .parse()
            .map_err(|e| Error::Parse(format!("vertex `{text}`: {e}")))?;
        Ok(VertexId { cell, local })
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cell: Vec<String> = self.cell.iter().map(|c| c.to_string()).collect();
        write!(f, "{}/{}", cell.join(","), self.local)
    }
}

/// Midpoint of an edge. Endpoints are stored in the orientation of the
/// generating cell edge (`u` side first), which is canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MidEdge {
    pub endpoints: (VertexId, VertexId),
    pub multiplicity_tag: usize,
    pub origin: Option<EdgeOrigin>,
}

impl MidEdge {
    pub fn other(&self, v: &VertexId) -> Option<&VertexId> {
        if &self.endpoints.0 == v {
            Some(&self.endpoints.1)
        } else if &self.endpoints.1 == v {
            Some(&self.endpoints.0)
        } else {
            None
        }
    }
}

impl fmt::Display for MidEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "<{}, {}>#{}",
            self.endpoints.0, self.endpoints.1, self.multiplicity_tag
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub is_cubic: bool,
    pub is_bipartite_coloured: bool,
    pub black_cubic: bool,
    pub is_simple: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Builtin {
    Hexagonal,
    Ladder,
    Loop3,
    SquareOctagon,
    Tree3,
    Line,
}

impl Builtin {
    pub const ALL: [Builtin; 6] = [
        Builtin::Hexagonal,
        Builtin::Ladder,
        Builtin::Loop3,
        Builtin::SquareOctagon,
        Builtin::Tree3,
        Builtin::Line,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Hexagonal => "hexagonal",
            Builtin::Ladder => "ladder",
            Builtin::Loop3 => "loop3",
            Builtin::SquareOctagon => "square_octagon",
            Builtin::Tree3 => "tree3",
            Builtin::Line => "line",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Builtin::ALL
            .into_iter()
            .find(|b| b.name() == name)
            .ok_or_else(|| Error::UnknownLattice(name.to_string()))
    }
}

/// Built-in lattice by name: `hexagonal`, `ladder`, `loop3`, `square_octagon`,
/// `tree3` or `line`.
pub fn builtin(name: &str) -> Result<LatticeSpec> {
    Ok(Builtin::from_name(name)?.spec())
}

impl Builtin {
    pub fn spec(self) -> LatticeSpec {
        use Colour::*;
        let plain = |n: usize| -> Vec<CellVertex> {
            (0..n).map(|local| CellVertex { local, colour: None }).collect()
        };
        let e = |u, v, off: &[i64]| CellEdge::new(u, v, off.to_vec());
        let spec = match self {
            // Vertex 0 black, vertex 1 white; cell (i,j) holds one of each.
            Builtin::Hexagonal => LatticeSpec {
                name: "hexagonal".into(),
                dimension: 2,
                multigraph: false,
                vertices: vec![
                    CellVertex { local: 0, colour: Black },
                    CellVertex { local: 1, colour: White },
                ],
                edges: vec![e(0, 1, &[0, 0]), e(0, 1, &[-1, 0]), e(0, 1, &[0, -1])],
                domain: vec![0, 1],
                aperiodic: Option::None,
            },
            Builtin::Ladder => LatticeSpec {
                name: "ladder".into(),
                dimension: 1,
                multigraph: false,
                vertices: plain(2),
                edges: vec![e(0, 1, &[0]), e(0, 0, &[1]), e(1, 1, &[1])],
                domain: vec![0, 1],
                aperiodic: Option::None,
            },
            // Z with every alternating pair of consecutive vertices doubled.
            Builtin::Loop3 => LatticeSpec {
                name: "loop3".into(),
                dimension: 1,
                multigraph: true,
                vertices: plain(2),
                edges: vec![e(0, 1, &[0]), e(0, 1, &[0]), e(1, 0, &[1])],
                domain: vec![0, 1],
                aperiodic: Option::None,
            },
            // Square 0 (east), 1 (north), 2 (west), 3 (south); octagons between cells.
            Builtin::SquareOctagon => LatticeSpec {
                name: "square_octagon".into(),
                dimension: 2,
                multigraph: false,
                vertices: plain(4),
                edges: vec![
                    e(0, 1, &[0, 0]),
                    e(1, 2, &[0, 0]),
                    e(2, 3, &[0, 0]),
                    e(3, 0, &[0, 0]),
                    e(0, 2, &[1, 0]),
                    e(1, 3, &[0, 1]),
                ],
                domain: vec![0, 1, 2, 3],
                aperiodic: Option::None,
            },
            Builtin::Tree3 => LatticeSpec {
                name: "tree3".into(),
                dimension: 0,
                multigraph: false,
                vertices: plain(1),
                edges: Vec::new(),
                domain: vec![0],
                aperiodic: Some(Aperiodic::RegularTree { degree: 3 }),
            },
            Builtin::Line => LatticeSpec {
                name: "line".into(),
                dimension: 1,
                multigraph: false,
                vertices: plain(1),
                edges: vec![e(0, 0, &[1])],
                domain: vec![0],
                aperiodic: Option::None,
            },
        };
        debug_assert!(spec.validate().is_ok());
        spec
    }
}

/// Parses and validates a spec file (JSON).
pub fn load_spec(text: &str) -> Result<LatticeSpec> {
    let spec: LatticeSpec = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    spec.validate()?;
    Ok(spec)
}

impl LatticeSpec {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serialization cannot fail")
    }

    pub fn is_periodic(&self) -> bool {
        self.aperiodic.is_none()
    }

    pub fn has_origin_tags(&self) -> bool {
        !self.edges.is_empty() && self.edges.iter().all(|e| e.origin.is_some())
    }

    /// Checks every structural invariant, naming the violated rule.
    pub fn validate(&self) -> Result<()> {
        let invalid = |msg: String| Err(Error::InvalidSpec(msg));
        if self.vertices.is_empty() {
            return invalid("cell has no vertices".into());
        }
        for (i, v) in self.vertices.iter().enumerate() {
            if v.local != i {
                return invalid(format!(
                    "local indices must be 0..{} in order, found {} at position {i}",
                    self.vertices.len(),
                    v.local
                ));
            }
        }
        if self.domain.is_empty() {
            return invalid("fundamental domain is empty".into());
        }
        for &d in &self.domain {
            if d >= self.vertices.len() {
                return invalid(format!("domain vertex {d} is not a cell vertex"));
            }
        }
        let mut dom = self.domain.clone();
        dom.sort_unstable();
        dom.dedup();
        if dom.len() != self.domain.len() {
            return invalid("fundamental domain lists a vertex twice".into());
        }
        if let Some(Aperiodic::RegularTree { degree }) = &self.aperiodic {
            if *degree < 2 {
                return invalid("regular tree degree must be at least 2".into());
            }
            if !self.edges.is_empty() || self.vertices.len() != 1 {
                return invalid("a regular tree spec has one cell vertex and no cell edges".into());
            }
            return Ok(());
        }
        let mut seen = HashMap::new();
        for (i, e) in self.edges.iter().enumerate() {
            if e.u >= self.vertices.len() || e.v >= self.vertices.len() {
                return invalid(format!("edge {i} references a missing local index"));
            }
            if e.offset.len() != self.dimension {
                return invalid(format!(
                    "edge {i} offset has length {}, dimension is {}",
                    e.offset.len(),
                    self.dimension
                ));
            }
            if e.u == e.v && e.offset.iter().all(|&x| x == 0) {
                return invalid(format!("edge {i} is a loop"));
            }
            if let Some(j) = seen.insert(e.canonical_key(), i) {
                if !self.multigraph {
                    return invalid(format!(
                        "edges {j} and {i} are parallel but the spec is not flagged multigraph"
                    ));
                }
            }
        }
        if !self.is_connected() {
            return invalid("induced infinite graph is not connected".into());
        }
        Ok(())
    }

    /// Connectivity of the periodic graph: the quotient graph must be connected
    /// and the net offsets of its cycles must generate the full translation lattice.
    fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        let d = self.dimension;
        let mut pot: Vec<Option<Vec<i64>>> = vec![None; n];
        pot[0] = Some(vec![0; d]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            let px = pot[x].clone().unwrap();
            for e in &self.edges {
                let (y, py) = if e.u == x {
                    (e.v, add(&px, &e.offset))
                } else if e.v == x {
                    (e.u, sub(&px, &e.offset))
                } else {
                    continue;
                };
                if pot[y].is_none() {
                    pot[y] = Some(py);
                    queue.push_back(y);
                }
            }
        }
        if pot.iter().any(Option::is_none) {
            return false;
        }
        let cycles: Vec<Vec<i64>> = self
            .edges
            .iter()
            .map(|e| {
                let pu = pot[e.u].as_ref().unwrap();
                let pv = pot[e.v].as_ref().unwrap();
                sub(&add(pu, &e.offset), pv)
            })
            .filter(|c| c.iter().any(|&x| x != 0))
            .collect();
        spans_integer_lattice(cycles, d)
    }

    /// Number of edge incidences at each cell vertex.
    pub fn degrees(&self) -> Vec<usize> {
        if let Some(Aperiodic::RegularTree { degree }) = self.aperiodic {
            return vec![degree; self.vertices.len()];
        }
        let mut deg = vec![0; self.vertices.len()];
        for e in &self.edges {
            deg[e.u] += 1;
            deg[e.v] += 1;
        }
        deg
    }

    pub fn validate_structure(&self) -> StructureReport {
        let degrees = self.degrees();
        let is_cubic = degrees.iter().all(|&d| d == 3);
        let is_simple = self.aperiodic.is_some() || {
            let mut keys: Vec<_> = self.edges.iter().map(CellEdge::canonical_key).collect();
            let before = keys.len();
            keys.sort();
            keys.dedup();
            keys.len() == before
        };
        let coloured = self.aperiodic.is_none()
            && self.vertices.iter().all(|v| v.colour != Colour::None)
            && self
                .edges
                .iter()
                .all(|e| self.vertices[e.u].colour != self.vertices[e.v].colour);
        let any_black = self.vertices.iter().any(|v| v.colour == Colour::Black);
        let black_cubic = any_black
            && self
                .vertices
                .iter()
                .zip(&degrees)
                .filter(|(v, _)| v.colour == Colour::Black)
                .all(|(_, &d)| d == 3);
        StructureReport {
            is_cubic,
            is_bipartite_coloured: coloured,
            black_cubic,
            is_simple,
        }
    }

    pub fn colour(&self, v: &VertexId) -> Colour {
        self.vertices[v.local].colour
    }

    /// Neighbours of `v` with the connecting mid-edges, in deterministic order
    /// (cell edge index, `u` side before `v` side).
    pub fn neighbours(&self, v: &VertexId) -> Vec<(VertexId, MidEdge)> {
        if let Some(Aperiodic::RegularTree { degree }) = self.aperiodic {
            return tree_neighbours(v, degree);
        }
        let mut out = Vec::with_capacity(4);
        for (i, e) in self.edges.iter().enumerate() {
            if e.u == v.local {
                let w = VertexId::new(add(&v.cell, &e.offset), e.v);
                let mid = MidEdge {
                    endpoints: (v.clone(), w.clone()),
                    multiplicity_tag: i,
                    origin: e.origin,
                };
                out.push((w, mid));
            }
            if e.v == v.local {
                let w = VertexId::new(sub(&v.cell, &e.offset), e.u);
                let mid = MidEdge {
                    endpoints: (w.clone(), v.clone()),
                    multiplicity_tag: i,
                    origin: e.origin,
                };
                out.push((w, mid));
            }
        }
        out
    }

    /// The fundamental domain placed in the origin cell.
    pub fn seed_vertices(&self) -> Vec<VertexId> {
        let dim = if self.is_periodic() { self.dimension } else { 0 };
        self.domain
            .iter()
            .map(|&l| VertexId::origin(dim, l))
            .collect()
    }

    /// Mid-edges of the edges incident to the fundamental domain at the origin
    /// cell (the set usually written X), sorted.
    pub fn domain_midedges(&self) -> Vec<MidEdge> {
        let mut out: Vec<MidEdge> = self
            .seed_vertices()
            .iter()
            .flat_map(|v| self.neighbours(v).into_iter().map(|(_, m)| m))
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

fn tree_neighbours(v: &VertexId, degree: usize) -> Vec<(VertexId, MidEdge)> {
    let mut out = Vec::with_capacity(degree);
    let edge = |parent: &VertexId, child: &VertexId| MidEdge {
        endpoints: (parent.clone(), child.clone()),
        multiplicity_tag: 0,
        origin: None,
    };
    let children = if v.cell.is_empty() {
        degree
    } else {
        let mut parent = v.cell.clone();
        parent.pop();
        let p = VertexId::new(parent, 0);
        out.push((p.clone(), edge(&p, v)));
        degree - 1
    };
    for c in 0..children as i64 {
        let mut path = v.cell.clone();
        path.push(c);
        let w = VertexId::new(path, 0);
        out.push((w.clone(), edge(v, &w)));
    }
    out
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// True iff the integer vectors generate all of Z^dim.
fn spans_integer_lattice(mut rows: Vec<Vec<i64>>, dim: usize) -> bool {
    // Integer row reduction to echelon form; the generated lattice is Z^dim
    // iff there are `dim` pivots, each equal to ±1.
    let mut pivots = 0;
    for col in 0..dim {
        let mut active: Vec<Vec<i64>> = Vec::new();
        let mut rest = Vec::new();
        for r in rows.drain(..) {
            if r[col] != 0 {
                active.push(r);
            } else {
                rest.push(r);
            }
        }
        if active.is_empty() {
            return false;
        }
        // Euclid on column `col` until one row carries the gcd.
        loop {
            active.sort_by_key(|r| r[col].abs());
            if active.len() == 1 {
                break;
            }
            let pivot = active[0].clone();
            for r in active[1..].iter_mut() {
                let q = r[col] / pivot[col];
                for k in 0..dim {
                    r[k] -= q * pivot[k];
                }
            }
            let (zeroed, keep): (Vec<_>, Vec<_>) = active.into_iter().partition(|r| r[col] == 0);
            rest.extend(zeroed);
            active = keep;
        }
        if active[0][col].abs() != 1 {
            return false;
        }
        pivots += 1;
        rows = rest;
    }
    pivots == dim
}

#[derive(Clone, Debug)]
pub struct BallEdge {
    pub ends: [u32; 2],
    pub mid: MidEdge,
}

/// Finite window of a lattice: all vertices within graph distance `radius`
/// of the fundamental domain at the origin cell.
#[derive(Clone, Debug)]
pub struct BallGraph {
    pub spec_name: String,
    pub radius: usize,
    pub vertices: Vec<VertexId>,
    pub depth: Vec<u32>,
    /// Per vertex: (neighbour index, edge index), in spec neighbour order.
    pub adjacency: Vec<Vec<(u32, u32)>>,
    pub edges: Vec<BallEdge>,
    pub seed: Vec<usize>,
    pub colours: Vec<Colour>,
    full_degree: Vec<usize>,
    index: HashMap<VertexId, usize>,
    edge_index: HashMap<MidEdge, usize>,
    has_origin_tags: bool,
    coloured_bipartite: bool,
}

/// Where a distance is measured from.
#[derive(Clone, Debug)]
pub enum Location {
    Vertex(VertexId),
    MidEdge(MidEdge),
}

/// Distances in the subdivision graph (every edge split at its mid-edge),
/// in half-edge units.
#[derive(Clone, Debug)]
pub struct DistanceMap {
    pub to_vertex: Vec<Option<u32>>,
    pub to_midedge: Vec<Option<u32>>,
}

impl DistanceMap {
    /// Vertex distance in whole edges; only meaningful for a vertex source.
    pub fn vertex_edges(&self, v: usize) -> Option<u32> {
        self.to_vertex[v].map(|h| h / 2)
    }
}

pub fn build_ball(spec: &LatticeSpec, radius: usize) -> Result<BallGraph> {
    build_ball_capped(spec, radius, DEFAULT_MAX_VERTICES)
}

pub fn build_ball_capped(spec: &LatticeSpec, radius: usize, max_vertices: usize) -> Result<BallGraph> {
    if let Some(Aperiodic::RegularTree { degree }) = spec.aperiodic {
        // Exact size check before allocating: 1 + d((d-1)^r - 1)/(d-2).
        let mut total: usize = 1;
        let mut layer: usize = 1;
        for k in 0..radius {
            layer = layer.saturating_mul(if k == 0 { degree } else { degree - 1 });
            total = total.saturating_add(layer);
        }
        if total > max_vertices {
            return Err(Error::ResourceLimit {
                what: "ball vertices",
                needed: total,
                cap: max_vertices,
            });
        }
    }
    let seeds = spec.seed_vertices();
    let mut depth_of: HashMap<VertexId, u32> = HashMap::new();
    let mut order: Vec<VertexId> = Vec::new();
    let mut queue = VecDeque::new();
    for s in &seeds {
        if depth_of.insert(s.clone(), 0).is_none() {
            order.push(s.clone());
            queue.push_back(s.clone());
        }
    }
    while let Some(v) = queue.pop_front() {
        let d = depth_of[&v];
        if d as usize == radius {
            continue;
        }
        for (w, _) in spec.neighbours(&v) {
            if !depth_of.contains_key(&w) {
                depth_of.insert(w.clone(), d + 1);
                order.push(w.clone());
                if order.len() > max_vertices {
                    return Err(Error::ResourceLimit {
                        what: "ball vertices",
                        needed: order.len(),
                        cap: max_vertices,
                    });
                }
                queue.push_back(w);
            }
        }
    }
    order.sort_by(|a, b| depth_of[a].cmp(&depth_of[b]).then_with(|| a.cmp(b)));
    let index: HashMap<VertexId, usize> =
        order.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
    let degrees = spec.degrees();
    let mut adjacency = vec![Vec::new(); order.len()];
    let mut edges: Vec<BallEdge> = Vec::new();
    let mut edge_index: HashMap<MidEdge, usize> = HashMap::new();
    let mut full_degree = Vec::with_capacity(order.len());
    for (i, v) in order.iter().enumerate() {
        full_degree.push(if spec.is_periodic() {
            degrees[v.local]
        } else {
            degrees[0]
        });
        for (w, mid) in spec.neighbours(v) {
            let Some(&j) = index.get(&w) else { continue };
            let e = *edge_index.entry(mid.clone()).or_insert_with(|| {
                let a = index[&mid.endpoints.0] as u32;
                let b = index[&mid.endpoints.1] as u32;
                edges.push(BallEdge { ends: [a, b], mid });
                edges.len() - 1
            });
            adjacency[i].push((j as u32, e as u32));
        }
    }
    let depth = order.iter().map(|v| depth_of[v]).collect();
    let colours = order
        .iter()
        .map(|v| {
            if spec.is_periodic() {
                spec.colour(v)
            } else {
                Colour::None
            }
        })
        .collect();
    let seed = seeds.iter().map(|s| index[s]).collect();
    Ok(BallGraph {
        spec_name: spec.name.clone(),
        radius,
        vertices: order,
        depth,
        adjacency,
        edges,
        seed,
        colours,
        full_degree,
        index,
        edge_index,
        has_origin_tags: spec.has_origin_tags(),
        coloured_bipartite: spec.validate_structure().is_bipartite_coloured,
    })
}

impl BallGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn index_of(&self, v: &VertexId) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn edge_of(&self, m: &MidEdge) -> Option<usize> {
        self.edge_index.get(m).copied()
    }

    pub fn is_boundary(&self, v: usize) -> bool {
        self.depth[v] as usize == self.radius
    }

    pub fn boundary(&self) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&v| self.is_boundary(v)).collect()
    }

    pub fn has_origin_tags(&self) -> bool {
        self.has_origin_tags
    }

    pub fn is_bipartite_coloured(&self) -> bool {
        self.coloured_bipartite
    }

    pub fn edge_origin(&self, e: usize) -> Option<EdgeOrigin> {
        self.edges[e].mid.origin
    }

    pub fn other_end(&self, e: usize, v: u32) -> u32 {
        let [a, b] = self.edges[e].ends;
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn resolve_vertex(&self, v: &VertexId) -> Result<usize> {
        self.index_of(v)
            .ok_or_else(|| Error::NotInGraph(format!("vertex {v}")))
    }

    pub fn resolve_midedge(&self, m: &MidEdge) -> Result<usize> {
        self.edge_of(m)
            .ok_or_else(|| Error::NotInGraph(format!("mid-edge {m}")))
    }

    /// Mid-edges incident to the seed set, as edge indices.
    pub fn domain_edges(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .seed
            .iter()
            .flat_map(|&s| self.adjacency[s].iter().map(|&(_, e)| e as usize))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Checks symmetry, interior degrees and the radius bound.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        for (v, adj) in self.adjacency.iter().enumerate() {
            if self.depth[v] as usize > self.radius {
                return Err(format!("vertex {} beyond radius", self.vertices[v]));
            }
            if !self.is_boundary(v) && adj.len() != self.full_degree[v] {
                return Err(format!(
                    "interior vertex {} has degree {}, expected {}",
                    self.vertices[v],
                    adj.len(),
                    self.full_degree[v]
                ));
            }
            for &(w, e) in adj {
                if !self.adjacency[w as usize].contains(&(v as u32, e)) {
                    return Err(format!(
                        "adjacency {} -> {} is not symmetric",
                        self.vertices[v], self.vertices[w as usize]
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn bfs_distance(&self, source: &Location) -> Result<DistanceMap> {
        let nv = self.vertices.len();
        let ne = self.edges.len();
        // Subdivision graph nodes: vertices 0..nv, mid-edges nv..nv+ne.
        let mut dist = vec![u32::MAX; nv + ne];
        let mut queue = VecDeque::new();
        let start = match source {
            Location::Vertex(v) => self.resolve_vertex(v)?,
            Location::MidEdge(m) => nv + self.resolve_midedge(m)?,
        };
        dist[start] = 0;
        queue.push_back(start);
        while let Some(x) = queue.pop_front() {
            let d = dist[x] + 1;
            let mut relax = |y: usize, queue: &mut VecDeque<usize>| {
                if dist[y] == u32::MAX {
                    dist[y] = d;
                    queue.push_back(y);
                }
            };
            if x < nv {
                for &(_, e) in &self.adjacency[x] {
                    relax(nv + e as usize, &mut queue);
                }
            } else {
                for v in self.edges[x - nv].ends {
                    relax(v as usize, &mut queue);
                }
            }
        }
        let opt = |d: u32| (d != u32::MAX).then_some(d);
        Ok(DistanceMap {
            to_vertex: dist[..nv].iter().copied().map(opt).collect(),
            to_midedge: dist[nv..].iter().copied().map(opt).collect(),
        })
    }

    /// Half-edge distances from mid-edge `e` to every mid-edge.
    pub(crate) fn midedge_distances(&self, e: usize) -> Vec<u32> {
        let m = self.edges[e].mid.clone();
        self.bfs_distance(&Location::MidEdge(m))
            .expect("edge belongs to the ball")
            .to_midedge
            .into_iter()
            .map(|d| d.unwrap_or(u32::MAX))
            .collect()
    }

    /// DOT rendering, one node per vertex labelled `cell/local`.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("graph \"{}_r{}\" {{\n", self.spec_name, self.radius));
        for (i, v) in self.vertices.iter().enumerate() {
            let colour = match self.colours[i] {
                Colour::Black => ", style=filled, fillcolor=black, fontcolor=white",
                Colour::White => ", style=filled, fillcolor=white",
                Colour::None => "",
            };
            out.push_str(&format!("  n{i} [label=\"{v}\"{colour}];\n"));
        }
        for e in &self.edges {
            let style = match e.mid.origin {
                Some(EdgeOrigin::Triangle) => " [style=dashed]",
                _ => "",
            };
            out.push_str(&format!("  n{} -- n{}{};\n", e.ends[0], e.ends[1], style));
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_validate() {
        for b in Builtin::ALL {
            b.spec().validate().unwrap();
        }
    }

    #[test]
    fn hexagonal_shape() {
        let h = builtin("hexagonal").unwrap();
        assert_eq!(h.vertices.len(), 2);
        assert_eq!(h.edges.len(), 3);
        assert_eq!(h.degrees(), vec![3, 3]);
        assert_eq!(
            h.validate_structure(),
            StructureReport {
                is_cubic: true,
                is_bipartite_coloured: true,
                black_cubic: true,
                is_simple: true
            }
        );
    }

    #[test]
    fn loop3_is_cubic_multigraph() {
        let l = builtin("loop3").unwrap();
        assert!(l.multigraph);
        assert_eq!(l.vertices.len(), 2);
        assert_eq!(l.degrees(), vec![3, 3]);
        let r = l.validate_structure();
        assert!(r.is_cubic);
        assert!(!r.is_simple);
    }

    #[test]
    fn line_is_not_cubic() {
        let l = builtin("line").unwrap();
        assert_eq!((l.vertices.len(), l.edges.len()), (1, 1));
        assert_eq!(l.degrees(), vec![2]);
        assert!(!l.validate_structure().is_cubic);
    }

    #[test]
    fn unknown_lattice() {
        assert_eq!(
            builtin("kagome"),
            Err(Error::UnknownLattice("kagome".into()))
        );
    }

    #[test]
    fn rejects_loop_edge() {
        let text = r#"{"name":"bad","dimension":1,"multigraph":false,
            "vertices":[{"local":0,"colour":"none"}],
            "edges":[{"u":0,"v":0,"offset":[0]},{"u":0,"v":0,"offset":[1]}],
            "domain":[0]}"#;
        match load_spec(text) {
            Err(Error::InvalidSpec(msg)) => assert!(msg.contains("loop"), "{msg}"),
            other => panic!("expected InvalidSpec, got {other:?}"),
        }
    }

    #[test]
    fn rejects_duplicate_edge_without_multigraph() {
        let text = r#"{"name":"dup","dimension":1,"multigraph":false,
            "vertices":[{"local":0,"colour":"none"},{"local":1,"colour":"none"}],
            "edges":[{"u":0,"v":1,"offset":[0]},{"u":1,"v":0,"offset":[0]},{"u":1,"v":0,"offset":[1]}],
            "domain":[0,1]}"#;
        match load_spec(text) {
            Err(Error::InvalidSpec(msg)) => assert!(msg.contains("multigraph"), "{msg}"),
            other => panic!("expected InvalidSpec, got {other:?}"),
        }
    }

    #[test]
    fn rejects_disconnected() {
        // Two disjoint lines.
        let text = r#"{"name":"two","dimension":1,
            "vertices":[{"local":0,"colour":"none"},{"local":1,"colour":"none"}],
            "edges":[{"u":0,"v":0,"offset":[1]},{"u":1,"v":1,"offset":[1]}],
            "domain":[0,1]}"#;
        assert!(matches!(load_spec(text), Err(Error::InvalidSpec(_))));
        // Line with only even translations: offset 2 splits Z into two classes.
        let text = r#"{"name":"even","dimension":1,
            "vertices":[{"local":0,"colour":"none"}],
            "edges":[{"u":0,"v":0,"offset":[2]}],
            "domain":[0]}"#;
        assert!(matches!(load_spec(text), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn malformed_text_is_parse_error() {
        assert!(matches!(load_spec("{not json"), Err(Error::Parse(_))));
    }

    #[test]
    fn json_round_trip() {
        for b in Builtin::ALL {
            let s = b.spec();
            assert_eq!(load_spec(&s.to_json()).unwrap(), s);
        }
    }

    #[test]
    fn ball_radius_zero_hexagonal() {
        let ball = build_ball(&builtin("hexagonal").unwrap(), 0).unwrap();
        assert_eq!(ball.vertex_count(), 2);
        assert_eq!(ball.edge_count(), 1);
    }

    #[test]
    fn ball_line_is_path() {
        let ball = build_ball(&builtin("line").unwrap(), 3).unwrap();
        assert_eq!(ball.vertex_count(), 7);
        assert_eq!(ball.edge_count(), 6);
        let left = ball.resolve_vertex(&VertexId::new(vec![-3], 0)).unwrap();
        let right = ball.resolve_vertex(&VertexId::new(vec![3], 0)).unwrap();
        let d = ball
            .bfs_distance(&Location::Vertex(ball.vertices[left].clone()))
            .unwrap();
        assert_eq!(d.vertex_edges(right), Some(6));
        assert_eq!(d.vertex_edges(left), Some(0));
    }

    #[test]
    fn midedges_at_common_vertex_are_two_half_edges_apart() {
        let ball = build_ball(&builtin("hexagonal").unwrap(), 2).unwrap();
        let v = ball.seed[0];
        let (_, e1) = ball.adjacency[v][0];
        let (_, e2) = ball.adjacency[v][1];
        let d = ball
            .bfs_distance(&Location::MidEdge(ball.edges[e1 as usize].mid.clone()))
            .unwrap();
        assert_eq!(d.to_midedge[e2 as usize], Some(2));
        assert_eq!(d.to_midedge[e1 as usize], Some(0));
        assert_eq!(d.to_vertex[v], Some(1));
    }

    #[test]
    fn bfs_rejects_foreign_source() {
        let ball = build_ball(&builtin("line").unwrap(), 1).unwrap();
        let far = VertexId::new(vec![9], 0);
        assert!(matches!(
            ball.bfs_distance(&Location::Vertex(far)),
            Err(Error::NotInGraph(_))
        ));
    }

    #[test]
    fn hexagonal_ball_interior_degrees() {
        let ball = build_ball(&builtin("hexagonal").unwrap(), 10).unwrap();
        ball.check_invariants().unwrap();
        for v in 0..ball.vertex_count() {
            if !ball.is_boundary(v) {
                assert_eq!(ball.adjacency[v].len(), 3);
            }
        }
    }

    #[test]
    fn tree_ball_size_and_cap() {
        let t = builtin("tree3").unwrap();
        let ball = build_ball(&t, 3).unwrap();
        assert_eq!(ball.vertex_count(), 1 + 3 + 6 + 12);
        ball.check_invariants().unwrap();
        assert!(matches!(
            build_ball_capped(&t, 20, 1000),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn periodic_cap() {
        let h = builtin("hexagonal").unwrap();
        assert!(matches!(
            build_ball_capped(&h, 30, 100),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn vertex_label_round_trip() {
        let v = VertexId::new(vec![0, -1], 1);
        assert_eq!(v.to_string(), "0,-1/1");
        assert_eq!(VertexId::parse("0,-1/1").unwrap(), v);
        assert_eq!(VertexId::parse("/0").unwrap(), VertexId::new(vec![], 0));
    }

    #[test]
    fn domain_midedges_hexagonal() {
        let h = builtin("hexagonal").unwrap();
        assert_eq!(h.domain_midedges().len(), 5);
        let ball = build_ball(&h, 2).unwrap();
        assert_eq!(ball.domain_edges().len(), 5);
    }

    #[test]
    fn dot_labels() {
        let ball = build_ball(&builtin("line").unwrap(), 1).unwrap();
        let dot = ball.to_dot();
        assert!(dot.contains("label=\"0/0\""));
        assert!(dot.contains("label=\"-1/0\""));
        assert_eq!(dot.matches(" -- ").count(), 2);
    }
}
