//! The Fisher transformation: replace a degree-3 vertex by a triangle, each
//! incident edge reattached to its own triangle corner.
//!
//! Corner `i` of the triangle at local vertex `l` is attached to the `i`-th
//! incidence of `l`, where incidences are listed by cell edge index with the
//! `u` side before the `v` side. Image edges keep their cell edge index and
//! offset, so the translation group is unchanged.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{CellEdge, CellVertex, Colour, EdgeOrigin, LatticeSpec, MidEdge, VertexId};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FisherMaps {
    /// Original cell edge index -> image cell edge index.
    pub edge_map: Vec<usize>,
    /// Original local vertex -> its triangle corners (or itself if not expanded).
    pub vertex_map: Vec<Vec<usize>>,
    /// Cell edge indices of the triangle sides in the transformed spec.
    pub triangle_edges: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FisherResult {
    pub transformed: LatticeSpec,
    pub maps: FisherMaps,
}

#[derive(Serialize, Deserialize)]
struct FisherDocument {
    #[serde(flatten)]
    spec: LatticeSpec,
    maps: FisherMaps,
}

/// Incidences of each local vertex as (cell edge index, is_v_side).
fn incidences(spec: &LatticeSpec) -> Vec<Vec<(usize, bool)>> {
    let mut out = vec![Vec::new(); spec.vertices.len()];
    for (i, e) in spec.edges.iter().enumerate() {
        out[e.u].push((i, false));
        out[e.v].push((i, true));
    }
    out
}

fn require_periodic(spec: &LatticeSpec) -> Result<()> {
    if spec.is_periodic() {
        Ok(())
    } else {
        Err(Error::NotPeriodic(spec.name.clone()))
    }
}

/// Applies the transformation at every vertex of a cubic, simple lattice.
pub fn fisher_full(spec: &LatticeSpec) -> Result<FisherResult> {
    require_periodic(spec)?;
    let report = spec.validate_structure();
    if !report.is_cubic {
        return Err(Error::NotCubic);
    }
    if !report.is_simple {
        return Err(Error::NotSimple);
    }
    let expand: Vec<bool> = vec![true; spec.vertices.len()];
    Ok(transform(spec, &expand, format!("fisher({})", spec.name), |_, _| {
        Colour::None
    }))
}

/// Applies the transformation at the black vertices of a bipartite-coloured
/// lattice. White vertices stay white, triangle corners are black.
pub fn fisher_black(spec: &LatticeSpec) -> Result<FisherResult> {
    require_periodic(spec)?;
    let report = spec.validate_structure();
    if !report.is_bipartite_coloured {
        return Err(Error::NotBipartite);
    }
    if !report.black_cubic {
        return Err(Error::BlackNotCubic);
    }
    if !report.is_simple {
        return Err(Error::NotSimple);
    }
    let expand: Vec<bool> = spec
        .vertices
        .iter()
        .map(|v| v.colour == Colour::Black)
        .collect();
    Ok(transform(
        spec,
        &expand,
        format!("fisher_black({})", spec.name),
        |orig, expanded| if expanded { Colour::Black } else { orig },
    ))
}

fn transform(
    spec: &LatticeSpec,
    expand: &[bool],
    name: String,
    colour: impl Fn(Colour, bool) -> Colour,
) -> FisherResult {
    let inc = incidences(spec);
    let mut vertex_map = Vec::with_capacity(spec.vertices.len());
    let mut vertices = Vec::new();
    for (l, v) in spec.vertices.iter().enumerate() {
        let copies = if expand[l] { 3 } else { 1 };
        let mut corners = Vec::with_capacity(copies);
        for _ in 0..copies {
            let local = vertices.len();
            vertices.push(CellVertex {
                local,
                colour: colour(v.colour, expand[l]),
            });
            corners.push(local);
        }
        vertex_map.push(corners);
    }
    let corner = |l: usize, edge: usize, v_side: bool| -> usize {
        if expand[l] {
            let i = inc[l]
                .iter()
                .position(|&x| x == (edge, v_side))
                .expect("incidence listed");
            vertex_map[l][i]
        } else {
            vertex_map[l][0]
        }
    };
    let mut edges: Vec<CellEdge> = spec
        .edges
        .iter()
        .enumerate()
        .map(|(i, e)| CellEdge {
            u: corner(e.u, i, false),
            v: corner(e.v, i, true),
            offset: e.offset.clone(),
            origin: Some(EdgeOrigin::Original),
        })
        .collect();
    let edge_map: Vec<usize> = (0..spec.edges.len()).collect();
    let mut triangle_edges = Vec::new();
    let zero = vec![0; spec.dimension];
    for (l, corners) in vertex_map.iter().enumerate() {
        if !expand[l] {
            continue;
        }
        for (a, b) in [(0, 1), (1, 2), (2, 0)] {
            triangle_edges.push(edges.len());
            edges.push(CellEdge {
                u: corners[a],
                v: corners[b],
                offset: zero.clone(),
                origin: Some(EdgeOrigin::Triangle),
            });
        }
    }
    let mut domain: Vec<usize> = spec
        .domain
        .iter()
        .flat_map(|&w| vertex_map[w].iter().copied())
        .collect();
    domain.sort_unstable();
    let transformed = LatticeSpec {
        name,
        dimension: spec.dimension,
        multigraph: false,
        vertices,
        edges,
        domain,
        aperiodic: None,
    };
    debug_assert!(transformed.validate().is_ok());
    FisherResult {
        transformed,
        maps: FisherMaps {
            edge_map,
            vertex_map,
            triangle_edges,
        },
    }
}

impl FisherResult {
    /// Spec file JSON with an extra `maps` section.
    pub fn to_json(&self) -> String {
        let doc = FisherDocument {
            spec: self.transformed.clone(),
            maps: self.maps.clone(),
        };
        serde_json::to_string_pretty(&doc).expect("serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: FisherDocument =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        doc.spec.validate()?;
        Ok(FisherResult {
            transformed: doc.spec,
            maps: doc.maps,
        })
    }

    /// Image of a mid-edge of the pre-image lattice.
    pub fn map_midedge(&self, m: &MidEdge) -> MidEdge {
        let image = self.maps.edge_map[m.multiplicity_tag];
        let e = &self.transformed.edges[image];
        MidEdge {
            endpoints: (
                VertexId::new(m.endpoints.0.cell.clone(), e.u),
                VertexId::new(m.endpoints.1.cell.clone(), e.v),
            ),
            multiplicity_tag: image,
            origin: e.origin,
        }
    }

    /// Shrinks every triangle back to a vertex. Colours are not recovered
    /// for the full transformation.
    pub fn contract(&self) -> LatticeSpec {
        let n = self.maps.vertex_map.len();
        let mut back = vec![0; self.transformed.vertices.len()];
        for (l, corners) in self.maps.vertex_map.iter().enumerate() {
            for &c in corners {
                back[c] = l;
            }
        }
        let mut edges = vec![None; self.maps.edge_map.len()];
        for (orig, &img) in self.maps.edge_map.iter().enumerate() {
            let e = &self.transformed.edges[img];
            edges[orig] = Some(CellEdge::new(back[e.u], back[e.v], e.offset.clone()));
        }
        let mut domain: Vec<usize> = self.transformed.domain.iter().map(|&d| back[d]).collect();
        domain.sort_unstable();
        domain.dedup();
        let vertices = (0..n)
            .map(|l| {
                let c = self.maps.vertex_map[l][0];
                let colour = if self.maps.vertex_map[l].len() == 1 {
                    self.transformed.vertices[c].colour
                } else {
                    Colour::None
                };
                CellVertex { local: l, colour }
            })
            .collect();
        LatticeSpec {
            name: format!("contract({})", self.transformed.name),
            dimension: self.transformed.dimension,
            multigraph: false,
            vertices,
            edges: edges.into_iter().map(Option::unwrap).collect(),
            domain,
            aperiodic: None,
        }
    }
}

/// The chain G_1, ..., G_k with G_{i+1} = F(G_i).
pub fn iterate_fisher(spec: &LatticeSpec, k: usize, max_cell: usize) -> Result<Vec<FisherResult>> {
    if k == 0 {
        return Err(Error::OutOfDomain {
            value: k.to_string(),
            domain: "k >= 1",
        });
    }
    let needed = 3usize
        .checked_pow(k as u32)
        .and_then(|p| p.checked_mul(spec.vertices.len()))
        .unwrap_or(usize::MAX);
    if needed > max_cell {
        return Err(Error::ResourceLimit {
            what: "cell vertices",
            needed,
            cap: max_cell,
        });
    }
    let mut out: Vec<FisherResult> = Vec::with_capacity(k);
    for _ in 0..k {
        let prev = out.last().map(|r| &r.transformed).unwrap_or(spec);
        out.push(fisher_full(prev)?);
    }
    Ok(out)
}

/// Edge map from G_0 into the last graph of a chain.
pub fn compose_edge_maps(chain: &[FisherResult]) -> Vec<usize> {
    let Some(first) = chain.first() else {
        return Vec::new();
    };
    let mut map = first.maps.edge_map.clone();
    for step in &chain[1..] {
        for m in map.iter_mut() {
            *m = step.maps.edge_map[*m];
        }
    }
    map
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Incidence {
    Edge(usize),
    Stub(usize),
}

/// Finite iterate of the two-gasket construction, with a planar embedding.
#[derive(Clone, Debug)]
pub struct GasketGraph {
    pub positions: Vec<[f64; 2]>,
    pub edges: Vec<(usize, usize)>,
    /// Stub half-edges: (attached vertex, free tip position).
    pub stubs: Vec<(usize, [f64; 2])>,
    pub incidences: Vec<Vec<Incidence>>,
}

impl GasketGraph {
    pub fn vertex_count(&self) -> usize {
        self.positions.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidences[v].len()
    }

    fn seed() -> Self {
        let s = 3f64.sqrt() / 2.0;
        GasketGraph {
            positions: vec![[0.0, 0.0], [1.0, 0.0]],
            edges: vec![(0, 1)],
            stubs: vec![
                (0, [-0.5, s]),
                (0, [-0.5, -s]),
                (1, [1.5, s]),
                (1, [1.5, -s]),
            ],
            incidences: vec![
                vec![Incidence::Edge(0), Incidence::Stub(0), Incidence::Stub(1)],
                vec![Incidence::Edge(0), Incidence::Stub(2), Incidence::Stub(3)],
            ],
        }
    }

    fn far_point(&self, v: usize, inc: Incidence) -> [f64; 2] {
        match inc {
            Incidence::Edge(e) => {
                let (a, b) = self.edges[e];
                self.positions[if a == v { b } else { a }]
            }
            Incidence::Stub(s) => self.stubs[s].1,
        }
    }

    /// One round of triangle replacement at every vertex.
    fn expand(&self) -> Self {
        const SHRINK: f64 = 0.4;
        let n = self.positions.len();
        let mut positions = Vec::with_capacity(3 * n);
        let mut incidences = vec![Vec::new(); 3 * n];
        for v in 0..n {
            let p = self.positions[v];
            for &inc in &self.incidences[v] {
                let q = self.far_point(v, inc);
                positions.push([p[0] + SHRINK * (q[0] - p[0]), p[1] + SHRINK * (q[1] - p[1])]);
            }
        }
        let corner = |v: usize, inc: Incidence| -> usize {
            3 * v + self.incidences[v].iter().position(|&x| x == inc).unwrap()
        };
        let mut edges = Vec::with_capacity(self.edges.len() + 3 * n);
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            let (ca, cb) = (corner(a, Incidence::Edge(i)), corner(b, Incidence::Edge(i)));
            incidences[ca].push(Incidence::Edge(edges.len()));
            incidences[cb].push(Incidence::Edge(edges.len()));
            edges.push((ca, cb));
        }
        let stubs: Vec<(usize, [f64; 2])> = self
            .stubs
            .iter()
            .enumerate()
            .map(|(i, &(v, tip))| (corner(v, Incidence::Stub(i)), tip))
            .collect();
        for (i, &(c, _)) in stubs.iter().enumerate() {
            incidences[c].push(Incidence::Stub(i));
        }
        for v in 0..n {
            for (x, y) in [(0, 1), (1, 2), (2, 0)] {
                let (a, b) = (3 * v + x, 3 * v + y);
                incidences[a].push(Incidence::Edge(edges.len()));
                incidences[b].push(Incidence::Edge(edges.len()));
                edges.push((a, b));
            }
        }
        GasketGraph {
            positions,
            edges,
            stubs,
            incidences,
        }
    }
}

/// `k` rounds of triangle replacement starting from a single edge whose two
/// endpoints are completed to degree 3 by stubs. Stubs are never expanded.
pub fn gasket_iterate(k: usize, max_vertices: usize) -> Result<GasketGraph> {
    let needed = 3usize
        .checked_pow(k as u32)
        .and_then(|p| p.checked_mul(2))
        .unwrap_or(usize::MAX);
    if needed > max_vertices {
        return Err(Error::ResourceLimit {
            what: "gasket vertices",
            needed,
            cap: max_vertices,
        });
    }
    let mut g = GasketGraph::seed();
    for _ in 0..k {
        g = g.expand();
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::builtin;

    #[test]
    fn full_on_hexagonal() {
        let r = fisher_full(&builtin("hexagonal").unwrap()).unwrap();
        assert_eq!(r.transformed.vertices.len(), 6);
        assert_eq!(r.transformed.edges.len(), 9);
        let rep = r.transformed.validate_structure();
        assert!(rep.is_cubic && rep.is_simple);
        assert_eq!(r.transformed.domain.len(), 6);
        assert_eq!(r.maps.triangle_edges.len(), 6);
    }

    #[test]
    fn full_twice() {
        let h = builtin("hexagonal").unwrap();
        let r2 = fisher_full(&fisher_full(&h).unwrap().transformed).unwrap();
        assert_eq!(r2.transformed.vertices.len(), 18);
        assert_eq!(r2.transformed.edges.len(), 27);
    }

    #[test]
    fn full_rejects() {
        assert_eq!(fisher_full(&builtin("line").unwrap()), Err(Error::NotCubic));
        assert_eq!(fisher_full(&builtin("loop3").unwrap()), Err(Error::NotSimple));
        assert!(matches!(
            fisher_full(&builtin("tree3").unwrap()),
            Err(Error::NotPeriodic(_))
        ));
    }

    #[test]
    fn black_on_hexagonal() {
        let r = fisher_black(&builtin("hexagonal").unwrap()).unwrap();
        let t = &r.transformed;
        assert_eq!(t.vertices.len(), 4);
        assert_eq!(t.edges.len(), 6);
        let blacks = t.vertices.iter().filter(|v| v.colour == Colour::Black).count();
        assert_eq!(blacks, 3);
        let orig = t
            .edges
            .iter()
            .filter(|e| e.origin == Some(EdgeOrigin::Original))
            .count();
        assert_eq!(orig, 3);
        assert_eq!(t.edges.len() - orig, 3);
        // White vertices keep their degree, triangle corners are cubic.
        assert_eq!(t.degrees(), vec![3, 3, 3, 3]);
        assert_eq!(t.domain, vec![0, 1, 2, 3]);
    }

    #[test]
    fn black_rejects_degree_two_black_vertex() {
        // Line coloured black/white with a 2-vertex cell: black has degree 2.
        let text = r#"{"name":"bw-line","dimension":1,
            "vertices":[{"local":0,"colour":"black"},{"local":1,"colour":"white"}],
            "edges":[{"u":0,"v":1,"offset":[0]},{"u":1,"v":0,"offset":[1]}],
            "domain":[0,1]}"#;
        let spec = crate::lattice::load_spec(text).unwrap();
        assert_eq!(fisher_black(&spec), Err(Error::BlackNotCubic));
        assert_eq!(
            fisher_black(&builtin("ladder").unwrap()),
            Err(Error::NotBipartite)
        );
    }

    #[test]
    fn iterate_counts() {
        let h = builtin("hexagonal").unwrap();
        let chain = iterate_fisher(&h, 3, 1_000_000).unwrap();
        let sizes: Vec<usize> = chain.iter().map(|r| r.transformed.vertices.len()).collect();
        assert_eq!(sizes, vec![6, 18, 54]);
        assert_eq!(chain[0], fisher_full(&h).unwrap());
        for r in &chain {
            assert!(r.transformed.validate_structure().is_cubic);
        }
        let composed = compose_edge_maps(&chain);
        let mut sorted = composed.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), composed.len());
        assert!(matches!(
            iterate_fisher(&h, 12, 1000),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn contraction_recovers_original() {
        for name in ["hexagonal", "ladder", "square_octagon"] {
            let spec = builtin(name).unwrap();
            let back = fisher_full(&spec).unwrap().contract();
            let strip = |s: &LatticeSpec| -> Vec<(usize, usize, Vec<i64>)> {
                s.edges.iter().map(|e| (e.u, e.v, e.offset.clone())).collect()
            };
            assert_eq!(strip(&back), strip(&spec), "{name}");
            assert_eq!(back.domain, spec.domain);
        }
        let h = builtin("hexagonal").unwrap();
        let back = fisher_black(&h).unwrap().contract();
        assert_eq!(back.vertices[1].colour, Colour::White);
    }

    #[test]
    fn json_with_maps() {
        let r = fisher_black(&builtin("hexagonal").unwrap()).unwrap();
        let text = r.to_json();
        assert!(text.contains("\"maps\""));
        assert_eq!(FisherResult::from_json(&text).unwrap(), r);
    }

    #[test]
    fn midedge_images_are_original() {
        let h = builtin("hexagonal").unwrap();
        let r = fisher_full(&h).unwrap();
        let images: Vec<MidEdge> = h.domain_midedges().iter().map(|m| r.map_midedge(m)).collect();
        for m in &images {
            assert_eq!(m.origin, Some(EdgeOrigin::Original));
            let a = &m.endpoints.0;
            assert!(r
                .transformed
                .neighbours(a)
                .iter()
                .any(|(_, e)| e == m));
        }
    }

    #[test]
    fn gasket_seed_and_growth() {
        let g0 = gasket_iterate(0, 100).unwrap();
        assert_eq!((g0.vertex_count(), g0.edges.len(), g0.stubs.len()), (2, 1, 4));
        let g1 = gasket_iterate(1, 100).unwrap();
        assert_eq!(g1.vertex_count(), 6);
        assert_eq!(g1.edges.len(), 7);
        for k in 0..5 {
            let g = gasket_iterate(k, 10_000).unwrap();
            assert_eq!(g.vertex_count(), 2 * 3usize.pow(k as u32));
            assert!((0..g.vertex_count()).all(|v| g.degree(v) == 3));
            assert_eq!(g.stubs.len(), 4);
        }
        assert!(gasket_iterate(20, 1000).is_err());
    }
}
