//! Brute-force walk enumeration used as an independent check on the DFS
//! engine. Every walk of the requested length is generated from the lattice's
//! neighbour relation alone (no ball, no pruning); self-intersecting walks
//! are discarded afterwards.

use std::collections::{HashMap, HashSet, VecDeque};

use saw_core::lattice::{Colour, EdgeOrigin, LatticeSpec, MidEdge, VertexId};

/// A vertex walk: start vertex plus (edge, vertex) steps.
#[derive(Clone, Debug)]
pub struct VWalk {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<MidEdge>,
}

/// A mid-edge walk: start mid-edge, visited vertices, and the mid-edges
/// between and after them. `mids.len() == vertices.len() + 1`.
#[derive(Clone, Debug)]
pub struct MWalk {
    pub mids: Vec<MidEdge>,
    pub vertices: Vec<VertexId>,
}

pub fn all_vertex_walks(spec: &LatticeSpec, v: &VertexId, n: usize) -> Vec<VWalk> {
    let mut walks = vec![VWalk {
        vertices: vec![v.clone()],
        edges: vec![],
    }];
    for _ in 0..n {
        let mut next = Vec::with_capacity(walks.len() * 3);
        for w in &walks {
            for (u, m) in spec.neighbours(w.vertices.last().unwrap()) {
                let mut x = w.clone();
                x.vertices.push(u);
                x.edges.push(m);
                next.push(x);
            }
        }
        walks = next;
    }
    walks
}

pub fn is_self_avoiding(w: &VWalk) -> bool {
    let set: HashSet<&VertexId> = w.vertices.iter().collect();
    set.len() == w.vertices.len()
}

/// σ_n(v) for n = 0..=n_max.
pub fn vertex_counts(spec: &LatticeSpec, v: &VertexId, n_max: usize) -> Vec<u64> {
    (0..=n_max)
        .map(|n| {
            all_vertex_walks(spec, v, n)
                .iter()
                .filter(|w| is_self_avoiding(w))
                .count() as u64
        })
        .collect()
}

pub fn all_midedge_walks(spec: &LatticeSpec, start: &MidEdge, n: usize) -> Vec<MWalk> {
    let mut walks = vec![MWalk {
        mids: vec![start.clone()],
        vertices: vec![],
    }];
    for _ in 0..n {
        let mut next = Vec::new();
        for w in &walks {
            let last = w.mids.last().unwrap();
            // From the current mid-edge, step into either endpoint not just left.
            let candidates: Vec<VertexId> = match w.vertices.last() {
                None => vec![last.endpoints.0.clone(), last.endpoints.1.clone()],
                Some(prev) => vec![last.other(prev).unwrap().clone()],
            };
            for v in candidates {
                for (_, m) in spec.neighbours(&v) {
                    let mut x = w.clone();
                    x.vertices.push(v.clone());
                    x.mids.push(m);
                    next.push(x);
                }
            }
        }
        walks = next;
    }
    walks
}

pub fn midedge_self_avoiding(w: &MWalk) -> bool {
    let vs: HashSet<&VertexId> = w.vertices.iter().collect();
    let ms: HashSet<&MidEdge> = w.mids.iter().collect();
    vs.len() == w.vertices.len() && ms.len() == w.mids.len()
}

pub fn midedge_saws(spec: &LatticeSpec, starts: &[MidEdge], n: usize) -> Vec<MWalk> {
    starts
        .iter()
        .flat_map(|s| all_midedge_walks(spec, s, n))
        .filter(midedge_self_avoiding)
        .collect()
}

pub fn midedge_counts(spec: &LatticeSpec, starts: &[MidEdge], n_max: usize, original_only: bool) -> Vec<u64> {
    (0..=n_max)
        .map(|n| {
            midedge_saws(spec, starts, n)
                .iter()
                .filter(|w| !original_only || w.mids.last().unwrap().origin == Some(EdgeOrigin::Original))
                .count() as u64
        })
        .collect()
}

/// (black, white) step counts of every mid-edge SAW up to `n_max`.
pub fn black_white(spec: &LatticeSpec, starts: &[MidEdge], n_max: usize) -> HashMap<(usize, usize), u64> {
    let mut out = HashMap::new();
    for n in 0..=n_max {
        for w in midedge_saws(spec, starts, n) {
            let b = w.vertices.iter().filter(|v| spec.colour(v) == Colour::Black).count();
            *out.entry((b, n - b)).or_insert(0) += 1;
        }
    }
    out
}

/// (p, q, r) step classes of mid-edge SAWs ending at original mid-edges.
pub fn pqr(spec: &LatticeSpec, starts: &[MidEdge], n_max: usize) -> HashMap<(usize, usize, usize), u64> {
    let mut out = HashMap::new();
    for n in 0..=n_max {
        for w in midedge_saws(spec, starts, n) {
            if w.mids.last().unwrap().origin != Some(EdgeOrigin::Original) {
                continue;
            }
            let (mut p, mut q, mut r) = (0, 0, 0);
            for pair in w.mids.windows(2) {
                let t0 = pair[0].origin == Some(EdgeOrigin::Triangle);
                let t1 = pair[1].origin == Some(EdgeOrigin::Triangle);
                match (t0, t1) {
                    (true, true) => p += 1,
                    (false, false) => r += 1,
                    _ => q += 1,
                }
            }
            *out.entry((p, q, r)).or_insert(0) += 1;
        }
    }
    out
}

/// Half-edge distance between two mid-edges by BFS on the subdivided lattice.
pub fn midedge_distance(spec: &LatticeSpec, a: &MidEdge, b: &MidEdge) -> u64 {
    #[derive(Clone, PartialEq, Eq, Hash)]
    enum Node {
        V(VertexId),
        M(MidEdge),
    }
    let mut seen = HashMap::new();
    let mut queue = VecDeque::new();
    seen.insert(Node::M(a.clone()), 0u64);
    queue.push_back(Node::M(a.clone()));
    while let Some(x) = queue.pop_front() {
        let d = seen[&x];
        if x == Node::M(b.clone()) {
            return d;
        }
        let next: Vec<Node> = match &x {
            Node::M(m) => vec![Node::V(m.endpoints.0.clone()), Node::V(m.endpoints.1.clone())],
            Node::V(v) => spec.neighbours(v).into_iter().map(|(_, m)| Node::M(m)).collect(),
        };
        for y in next {
            if !seen.contains_key(&y) {
                seen.insert(y.clone(), d + 1);
                queue.push_back(y);
            }
        }
    }
    unreachable!("lattice is connected")
}
