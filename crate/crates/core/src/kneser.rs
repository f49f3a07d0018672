//! Generalized Kneser hypergraphs `KG^r(F, s)`.
//!
//! The vertices of `KG^r(F, s)` are the edges of `F` (by position), and `r` of
//! them form an edge when every pair of the underlying base edges shares at
//! most `s` vertices.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::hypergraph::{Hypergraph, VertexSet, MAX_VERTICES};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct KneserSpec {
    pub r: usize,
    pub s: usize,
}

impl KneserSpec {
    pub fn new(r: usize, s: usize) -> Result<Self> {
        if r < 2 {
            return Err(Error::Domain(format!("Kneser uniformity r must be at least 2, got {r}")));
        }
        Ok(KneserSpec { r, s })
    }
}

pub fn build_kneser(f: &Hypergraph, spec: KneserSpec) -> Result<Hypergraph> {
    build_kneser_with(f, spec, Exec::available())
}

/// Same as [`build_kneser`] with explicit scheduling. Edge order is
/// lexicographic in the index tuple regardless of `exec`.
pub fn build_kneser_with(f: &Hypergraph, spec: KneserSpec, exec: Exec) -> Result<Hypergraph> {
    if spec.r < 2 {
        return Err(Error::Domain(format!("Kneser uniformity r must be at least 2, got {}", spec.r)));
    }
    f.check_threshold(spec.s)?;
    let m = f.n_edges();
    if m > MAX_VERTICES {
        return Err(Error::Capacity(m));
    }

    // compatible[i]: indices j > i whose base edge meets edge i in at most s vertices.
    let base = f.edges();
    let compatible: Vec<u128> = (0..m)
        .map(|i| {
            ((i + 1)..m)
                .filter(|&j| (base[i].bits() & base[j].bits()).count_ones() as usize <= spec.s)
                .fold(0u128, |acc, j| acc | 1 << j)
        })
        .collect();

    let chunks = exec.map((0..m).collect(), |first| {
        let mut out = Vec::new();
        let mut stack = Vec::with_capacity(spec.r);
        stack.push(first);
        extend_tuples(&compatible, spec.r, compatible[first], &mut stack, &mut out);
        out
    });

    let edges = chunks
        .into_iter()
        .flatten()
        .map(|bits| VertexSet::from_bits(m, bits))
        .collect();
    Hypergraph::new(m, edges)
}

fn extend_tuples(compatible: &[u128], r: usize, candidates: u128, stack: &mut Vec<usize>, out: &mut Vec<u128>) {
    if stack.len() == r {
        out.push(stack.iter().fold(0u128, |acc, &i| acc | 1 << i));
        return;
    }
    let needed = r - stack.len();
    let mut rest = candidates;
    while rest.count_ones() as usize >= needed {
        let j = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        stack.push(j);
        extend_tuples(compatible, r, candidates & compatible[j], stack, out);
        stack.pop();
    }
}
