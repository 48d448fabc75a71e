//! Depth-first enumeration of self-avoiding walks on a [`BallGraph`].
//!
//! Walks are enumerated to a split depth sequentially; every surviving prefix
//! at that depth becomes an independent work unit. Partial tallies are
//! combined by integer addition, so the result does not depend on how the
//! units are scheduled.

use crate::lattice::BallGraph;

/// Worker count and prefix split depth for an enumeration run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumConfig {
    pub workers: usize,
    pub split_depth: usize,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig {
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            split_depth: 8,
        }
    }
}

impl EnumConfig {
    pub fn sequential() -> Self {
        EnumConfig {
            workers: 1,
            ..Default::default()
        }
    }

    pub fn with_workers(workers: usize) -> Self {
        EnumConfig {
            workers: workers.max(1),
            ..Default::default()
        }
    }
}

/// Compressed adjacency of a ball.
pub(crate) struct Csr {
    offsets: Vec<u32>,
    nbr: Vec<u32>,
    eid: Vec<u32>,
    pub(crate) ends: Vec<[u32; 2]>,
}

impl Csr {
    pub(crate) fn new(ball: &BallGraph) -> Self {
        let mut offsets = Vec::with_capacity(ball.adjacency.len() + 1);
        let mut nbr = Vec::new();
        let mut eid = Vec::new();
        offsets.push(0);
        for adj in &ball.adjacency {
            for &(w, e) in adj {
                nbr.push(w);
                eid.push(e);
            }
            offsets.push(nbr.len() as u32);
        }
        Csr {
            offsets,
            nbr,
            eid,
            ends: ball.edges.iter().map(|e| e.ends).collect(),
        }
    }

    fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    #[inline]
    fn range(&self, v: u32) -> std::ops::Range<usize> {
        self.offsets[v as usize] as usize..self.offsets[v as usize + 1] as usize
    }
}

/// Tally for walks starting at vertices. `record` is called once per walk.
pub(crate) trait VertexSink: Send + Sync + Sized {
    /// When false, the engine may batch the final step with `record_many`.
    const NEEDS_END: bool;
    fn empty(&self) -> Self;
    fn record(&mut self, len: usize, end: u32);
    fn record_many(&mut self, len: usize, count: u128);
    fn merge(&mut self, other: Self);
}

/// Tally for walks starting at mid-edges.
///
/// A walk of length `k` is the visited vertex sequence plus its exit mid-edge;
/// `step` folds in the vertex just visited together with the half-edges used
/// to enter and leave it.
pub(crate) trait MidSink: Send + Sync + Sized {
    type Acc: Copy + Send + Sync;
    fn empty(&self) -> Self;
    fn init(&self) -> Self::Acc;
    fn record_empty(&mut self, start: usize, edge: u32);
    fn step(&self, acc: Self::Acc, v: u32, in_edge: u32, out_edge: u32) -> Self::Acc;
    fn record(&mut self, start: usize, len: usize, acc: Self::Acc, exit: u32);
    fn merge(&mut self, other: Self);
}

struct VertexPrefix {
    path: Vec<u32>,
}

struct MidPrefix<A> {
    start: usize,
    start_edge: u32,
    in_edge: u32,
    acc: A,
    path: Vec<u32>,
}

struct VertexWalker<'g> {
    g: &'g Csr,
    n_max: usize,
}

impl VertexWalker<'_> {
    /// Arrive at `v` as the `depth`-th step; `visited` already contains `v`.
    fn arrive<S: VertexSink>(&self, v: u32, depth: usize, visited: &mut [bool], sink: &mut S) {
        sink.record(depth, v);
        if depth == self.n_max {
            return;
        }
        if !S::NEEDS_END && depth + 1 == self.n_max {
            let free = self.g.range(v).filter(|&i| !visited[self.g.nbr[i] as usize]).count();
            sink.record_many(depth + 1, free as u128);
            return;
        }
        for i in self.g.range(v) {
            let w = self.g.nbr[i];
            if !visited[w as usize] {
                visited[w as usize] = true;
                self.arrive(w, depth + 1, visited, sink);
                visited[w as usize] = false;
            }
        }
    }

    fn collect<S: VertexSink>(
        &self,
        split: usize,
        path: &mut Vec<u32>,
        visited: &mut [bool],
        sink: &mut S,
        out: &mut Vec<VertexPrefix>,
    ) {
        let v = *path.last().unwrap();
        let depth = path.len() - 1;
        if depth == split {
            out.push(VertexPrefix { path: path.clone() });
            return;
        }
        sink.record(depth, v);
        if depth == self.n_max {
            return;
        }
        for i in self.g.range(v) {
            let w = self.g.nbr[i];
            if !visited[w as usize] {
                visited[w as usize] = true;
                path.push(w);
                self.collect(split, path, visited, sink, out);
                path.pop();
                visited[w as usize] = false;
            }
        }
    }
}

struct MidWalker<'g> {
    g: &'g Csr,
    n_max: usize,
}

impl MidWalker<'_> {
    #[allow(clippy::too_many_arguments)]
    fn arrive<S: MidSink>(
        &self,
        start: usize,
        start_edge: u32,
        v: u32,
        in_edge: u32,
        depth: usize,
        acc: S::Acc,
        visited: &mut [bool],
        sink: &mut S,
    ) {
        for i in self.g.range(v) {
            let e = self.g.eid[i];
            if e == in_edge || e == start_edge {
                continue;
            }
            let next = sink.step(acc, v, in_edge, e);
            sink.record(start, depth, next, e);
            if depth < self.n_max {
                let w = self.g.nbr[i];
                if !visited[w as usize] {
                    visited[w as usize] = true;
                    self.arrive(start, start_edge, w, e, depth + 1, next, visited, sink);
                    visited[w as usize] = false;
                }
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn collect<S: MidSink>(
        &self,
        split: usize,
        start: usize,
        start_edge: u32,
        in_edge: u32,
        acc: S::Acc,
        path: &mut Vec<u32>,
        visited: &mut [bool],
        sink: &mut S,
        out: &mut Vec<MidPrefix<S::Acc>>,
    ) {
        let v = *path.last().unwrap();
        let depth = path.len();
        if depth == split {
            out.push(MidPrefix {
                start,
                start_edge,
                in_edge,
                acc,
                path: path.clone(),
            });
            return;
        }
        for i in self.g.range(v) {
            let e = self.g.eid[i];
            if e == in_edge || e == start_edge {
                continue;
            }
            let next = sink.step(acc, v, in_edge, e);
            sink.record(start, depth, next, e);
            if depth < self.n_max {
                let w = self.g.nbr[i];
                if !visited[w as usize] {
                    visited[w as usize] = true;
                    path.push(w);
                    self.collect(split, start, start_edge, e, next, path, visited, sink, out);
                    path.pop();
                    visited[w as usize] = false;
                }
            }
        }
    }
}

/// Runs `work` over every unit, folding into copies of `proto`.
fn run_units<U, S, F>(units: &[U], proto: &S, nv: usize, cfg: EnumConfig, work: F) -> S
where
    U: Sync,
    S: Send + Sync + Sized,
    F: Fn(&U, &mut Vec<bool>, &mut S) + Sync,
    S: Mergeable,
{
    #[cfg(feature = "parallel")]
    if cfg.workers > 1 && units.len() > 1 {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.workers)
            .build()
            .expect("thread pool");
        return pool.install(|| {
            units
                .par_iter()
                .fold(
                    || (proto.fresh(), vec![false; nv]),
                    |(mut sink, mut visited), u| {
                        work(u, &mut visited, &mut sink);
                        (sink, visited)
                    },
                )
                .map(|(sink, _)| sink)
                .reduce(
                    || proto.fresh(),
                    |mut a, b| {
                        a.absorb(b);
                        a
                    },
                )
        });
    }
    let _ = cfg;
    let mut sink = proto.fresh();
    let mut visited = vec![false; nv];
    for u in units {
        work(u, &mut visited, &mut sink);
    }
    sink
}

trait Mergeable {
    fn fresh(&self) -> Self;
    fn absorb(&mut self, other: Self);
}

struct VWrap<S>(S);
struct MWrap<S>(S);

impl<S: VertexSink> Mergeable for VWrap<S> {
    fn fresh(&self) -> Self {
        VWrap(self.0.empty())
    }
    fn absorb(&mut self, other: Self) {
        self.0.merge(other.0)
    }
}

impl<S: MidSink> Mergeable for MWrap<S> {
    fn fresh(&self) -> Self {
        MWrap(self.0.empty())
    }
    fn absorb(&mut self, other: Self) {
        self.0.merge(other.0)
    }
}

/// Enumerates all SAWs of length at most `n_max` from each start vertex.
pub(crate) fn enumerate_from_vertices<S: VertexSink>(
    g: &Csr,
    starts: &[u32],
    n_max: usize,
    cfg: EnumConfig,
    sink: S,
) -> S {
    let walker = VertexWalker { g, n_max };
    let nv = g.vertex_count();
    let split = cfg.split_depth.max(1);
    let mut head = VWrap(sink.empty());
    let mut units = Vec::new();
    let mut visited = vec![false; nv];
    for &s in starts {
        visited[s as usize] = true;
        let mut path = vec![s];
        walker.collect(split, &mut path, &mut visited, &mut head.0, &mut units);
        visited[s as usize] = false;
    }
    let tail = run_units(&units, &VWrap(sink), nv, cfg, |u: &VertexPrefix, visited, s| {
        for &v in &u.path {
            visited[v as usize] = true;
        }
        let last = *u.path.last().unwrap();
        walker.arrive(last, u.path.len() - 1, visited, &mut s.0);
        for &v in &u.path {
            visited[v as usize] = false;
        }
    });
    head.absorb(tail);
    head.0
}

/// Enumerates all mid-edge SAWs of length at most `n_max` from each start edge.
pub(crate) fn enumerate_from_midedges<S: MidSink>(
    g: &Csr,
    starts: &[u32],
    n_max: usize,
    cfg: EnumConfig,
    sink: S,
) -> S {
    let walker = MidWalker { g, n_max };
    let nv = g.vertex_count();
    let split = cfg.split_depth.max(1);
    let mut head = MWrap(sink.empty());
    let mut units = Vec::new();
    let mut visited = vec![false; nv];
    for (si, &e0) in starts.iter().enumerate() {
        head.0.record_empty(si, e0);
        if n_max == 0 {
            continue;
        }
        for v1 in g.ends[e0 as usize] {
            visited[v1 as usize] = true;
            let mut path = vec![v1];
            let acc = head.0.init();
            walker.collect(split, si, e0, e0, acc, &mut path, &mut visited, &mut head.0, &mut units);
            visited[v1 as usize] = false;
        }
    }
    let tail = run_units(&units, &MWrap(sink), nv, cfg, |u: &MidPrefix<S::Acc>, visited, s| {
        for &v in &u.path {
            visited[v as usize] = true;
        }
        let last = *u.path.last().unwrap();
        walker.arrive(
            u.start,
            u.start_edge,
            last,
            u.in_edge,
            u.path.len(),
            u.acc,
            visited,
            &mut s.0,
        );
        for &v in &u.path {
            visited[v as usize] = false;
        }
    });
    head.absorb(tail);
    head.0
}
