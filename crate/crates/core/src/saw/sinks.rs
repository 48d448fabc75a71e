//! Tallies plugged into the enumeration engine. Per-unit counters are `u128`,
//! which one-at-a-time increments cannot overflow; totals are promoted to
//! `BigUint` by the callers.

use super::engine::{MidSink, VertexSink};
use crate::lattice::EdgeOrigin;

fn add_into(a: &mut [u128], b: &[u128]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
}

pub(crate) struct LengthCounts {
    pub counts: Vec<u128>,
}

impl LengthCounts {
    pub fn new(n_max: usize) -> Self {
        LengthCounts {
            counts: vec![0; n_max + 1],
        }
    }
}

impl VertexSink for LengthCounts {
    const NEEDS_END: bool = false;

    fn empty(&self) -> Self {
        LengthCounts::new(self.counts.len() - 1)
    }

    #[inline]
    fn record(&mut self, len: usize, _end: u32) {
        self.counts[len] += 1;
    }

    #[inline]
    fn record_many(&mut self, len: usize, count: u128) {
        self.counts[len] += count;
    }

    fn merge(&mut self, other: Self) {
        add_into(&mut self.counts, &other.counts);
    }
}

pub(crate) struct EndpointTally {
    n_max: usize,
    vertices: usize,
    pub counts: Vec<u128>,
}

impl EndpointTally {
    pub fn new(n_max: usize, vertices: usize) -> Self {
        EndpointTally {
            n_max,
            vertices,
            counts: vec![0; (n_max + 1) * vertices],
        }
    }
}

impl VertexSink for EndpointTally {
    const NEEDS_END: bool = true;

    fn empty(&self) -> Self {
        EndpointTally::new(self.n_max, self.vertices)
    }

    #[inline]
    fn record(&mut self, len: usize, end: u32) {
        self.counts[end as usize * (self.n_max + 1) + len] += 1;
    }

    fn record_many(&mut self, _len: usize, _count: u128) {
        unreachable!("endpoint tallies need every endpoint")
    }

    fn merge(&mut self, other: Self) {
        add_into(&mut self.counts, &other.counts);
    }
}

/// Counts by length, optionally only walks exiting through original edges.
pub(crate) struct MidLengthCounts<'a> {
    pub counts: Vec<u128>,
    original_only: Option<&'a [Option<EdgeOrigin>]>,
}

impl<'a> MidLengthCounts<'a> {
    pub fn new(n_max: usize, original_only: Option<&'a [Option<EdgeOrigin>]>) -> Self {
        MidLengthCounts {
            counts: vec![0; n_max + 1],
            original_only,
        }
    }

    #[inline]
    fn admits(&self, e: u32) -> bool {
        match self.original_only {
            None => true,
            Some(o) => o[e as usize] == Some(EdgeOrigin::Original),
        }
    }
}

impl MidSink for MidLengthCounts<'_> {
    type Acc = ();

    fn empty(&self) -> Self {
        MidLengthCounts::new(self.counts.len() - 1, self.original_only)
    }

    fn init(&self) {}

    fn record_empty(&mut self, _start: usize, edge: u32) {
        if self.admits(edge) {
            self.counts[0] += 1;
        }
    }

    #[inline]
    fn step(&self, _acc: (), _v: u32, _in_edge: u32, _out_edge: u32) {}

    #[inline]
    fn record(&mut self, _start: usize, len: usize, _acc: (), exit: u32) {
        if self.admits(exit) {
            self.counts[len] += 1;
        }
    }

    fn merge(&mut self, other: Self) {
        add_into(&mut self.counts, &other.counts);
    }
}

pub(crate) struct BlackWhite<'a> {
    side: usize,
    black: &'a [bool],
    pub counts: Vec<u128>,
}

impl<'a> BlackWhite<'a> {
    pub fn new(n_max: usize, black: &'a [bool]) -> Self {
        let side = n_max + 1;
        BlackWhite {
            side,
            black,
            counts: vec![0; side * side],
        }
    }
}

impl MidSink for BlackWhite<'_> {
    type Acc = (u16, u16);

    fn empty(&self) -> Self {
        BlackWhite::new(self.side - 1, self.black)
    }

    fn init(&self) -> (u16, u16) {
        (0, 0)
    }

    fn record_empty(&mut self, _start: usize, _edge: u32) {
        self.counts[0] += 1;
    }

    #[inline]
    fn step(&self, (b, w): (u16, u16), v: u32, _in_edge: u32, _out_edge: u32) -> (u16, u16) {
        if self.black[v as usize] {
            (b + 1, w)
        } else {
            (b, w + 1)
        }
    }

    #[inline]
    fn record(&mut self, _start: usize, _len: usize, (b, w): (u16, u16), _exit: u32) {
        self.counts[b as usize * self.side + w as usize] += 1;
    }

    fn merge(&mut self, other: Self) {
        add_into(&mut self.counts, &other.counts);
    }
}

pub(crate) struct Pqr<'a> {
    side: usize,
    triangle: &'a [bool],
    pub counts: Vec<u128>,
}

impl<'a> Pqr<'a> {
    pub fn new(n_max: usize, triangle: &'a [bool]) -> Self {
        let side = n_max + 1;
        Pqr {
            side,
            triangle,
            counts: vec![0; side * side * side],
        }
    }
}

impl MidSink for Pqr<'_> {
    type Acc = (u16, u16, u16);

    fn empty(&self) -> Self {
        Pqr::new(self.side - 1, self.triangle)
    }

    fn init(&self) -> (u16, u16, u16) {
        (0, 0, 0)
    }

    fn record_empty(&mut self, _start: usize, _edge: u32) {
        self.counts[0] += 1;
    }

    #[inline]
    fn step(&self, (p, q, r): (u16, u16, u16), _v: u32, in_edge: u32, out_edge: u32) -> (u16, u16, u16) {
        match (self.triangle[in_edge as usize], self.triangle[out_edge as usize]) {
            (true, true) => (p + 1, q, r),
            (false, false) => (p, q, r + 1),
            _ => (p, q + 1, r),
        }
    }

    #[inline]
    fn record(&mut self, _start: usize, _len: usize, (p, q, r): (u16, u16, u16), exit: u32) {
        if !self.triangle[exit as usize] {
            let s = self.side;
            self.counts[(p as usize * s + q as usize) * s + r as usize] += 1;
        }
    }

    fn merge(&mut self, other: Self) {
        add_into(&mut self.counts, &other.counts);
    }
}

pub(crate) struct Displacement<'a> {
    dist: &'a [Vec<u32>],
    pub counts: Vec<u128>,
    pub sum_sq: Vec<u128>,
}

impl<'a> Displacement<'a> {
    pub fn new(n_max: usize, dist: &'a [Vec<u32>]) -> Self {
        Displacement {
            dist,
            counts: vec![0; n_max + 1],
            sum_sq: vec![0; n_max + 1],
        }
    }
}

impl MidSink for Displacement<'_> {
    type Acc = ();

    fn empty(&self) -> Self {
        Displacement::new(self.counts.len() - 1, self.dist)
    }

    fn init(&self) {}

    fn record_empty(&mut self, _start: usize, _edge: u32) {
        self.counts[0] += 1;
    }

    #[inline]
    fn step(&self, _acc: (), _v: u32, _in_edge: u32, _out_edge: u32) {}

    #[inline]
    fn record(&mut self, start: usize, len: usize, _acc: (), exit: u32) {
        let d = self.dist[start][exit as usize] as u128;
        self.counts[len] += 1;
        self.sum_sq[len] += d * d;
    }

    fn merge(&mut self, other: Self) {
        add_into(&mut self.counts, &other.counts);
        add_into(&mut self.sum_sq, &other.sum_sq);
    }
}
