//! Finite set systems over contiguous vertex indices, plus the `p hg` text format.
//!
//! Vertices are `0..n` in memory and `1..=n` in files. Every vertex subset is a
//! [`VertexSet`], a fixed-width bit mask, so a hypergraph holds at most
//! [`MAX_VERTICES`] vertices.

use std::fmt;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Largest vertex count a [`VertexSet`] can address.
pub const MAX_VERTICES: usize = 128;

/// A subset of `{0, …, width-1}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet {
    bits: u128,
    width: u8,
}

impl VertexSet {
    pub fn empty(width: usize) -> Result<Self> {
        if width > MAX_VERTICES {
            return Err(Error::Capacity(width));
        }
        Ok(VertexSet {
            bits: 0,
            width: width as u8,
        })
    }

    /// Every vertex of the universe.
    pub fn full(width: usize) -> Result<Self> {
        let mut set = Self::empty(width)?;
        set.bits = low_mask(width);
        Ok(set)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(width: usize, indices: I) -> Result<Self> {
        let mut set = Self::empty(width)?;
        for v in indices {
            if v >= width {
                return Err(Error::Usage(format!(
                    "vertex {v} outside a universe of {width} vertices"
                )));
            }
            set.bits |= 1 << v;
        }
        Ok(set)
    }

    pub(crate) fn from_bits(width: usize, bits: u128) -> Self {
        debug_assert!(width <= MAX_VERTICES && bits & !low_mask(width) == 0);
        VertexSet {
            bits,
            width: width as u8,
        }
    }

    #[inline]
    pub fn bits(&self) -> u128 {
        self.bits
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width as usize
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.width() && self.bits >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        assert!(v < self.width(), "vertex {v} outside universe");
        self.bits |= 1 << v;
    }

    pub fn remove(&mut self, v: usize) {
        if v < self.width() {
            self.bits &= !(1 << v);
        }
    }

    /// Ascending vertex indices.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let mut rest = self.bits;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(v)
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    fn same_universe(&self, other: &VertexSet) -> Result<()> {
        if self.width != other.width {
            return Err(Error::Usage(format!(
                "vertex sets over universes of {} and {} vertices",
                self.width, other.width
            )));
        }
        Ok(())
    }

    pub fn intersection(&self, other: &VertexSet) -> Result<VertexSet> {
        self.same_universe(other)?;
        Ok(VertexSet::from_bits(self.width(), self.bits & other.bits))
    }

    pub fn union(&self, other: &VertexSet) -> Result<VertexSet> {
        self.same_universe(other)?;
        Ok(VertexSet::from_bits(self.width(), self.bits | other.bits))
    }

    pub fn difference(&self, other: &VertexSet) -> Result<VertexSet> {
        self.same_universe(other)?;
        Ok(VertexSet::from_bits(self.width(), self.bits & !other.bits))
    }

    pub fn is_subset(&self, other: &VertexSet) -> Result<bool> {
        self.same_universe(other)?;
        Ok(self.bits & !other.bits == 0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> Result<bool> {
        self.same_universe(other)?;
        Ok(self.bits & other.bits == 0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[inline]
fn low_mask(width: usize) -> u128 {
    if width >= 128 {
        u128::MAX
    } else {
        (1u128 << width) - 1
    }
}

/// `a ⊆_s b`: all but at most `s` elements of `a` lie in `b`.
pub fn subseteq_s(a: &VertexSet, b: &VertexSet, s: usize) -> Result<bool> {
    Ok(a.difference(b)?.len() <= s)
}

/// A finite vertex set `0..n` with an ordered list of nonempty edges.
///
/// Edge order is significant and duplicate edges are kept: the `i`-th edge is
/// the `i`-th vertex of any Kneser hypergraph built from this one.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Hypergraph {
    n_vertices: usize,
    edges: Vec<VertexSet>,
}

impl Hypergraph {
    pub fn new(n_vertices: usize, edges: Vec<VertexSet>) -> Result<Self> {
        if n_vertices > MAX_VERTICES {
            return Err(Error::Capacity(n_vertices));
        }
        for (i, e) in edges.iter().enumerate() {
            if e.width() != n_vertices {
                return Err(Error::Usage(format!(
                    "edge {i} is over {} vertices, expected {n_vertices}",
                    e.width()
                )));
            }
            if e.is_empty() {
                return Err(Error::Usage(format!("edge {i} is empty")));
            }
        }
        Ok(Hypergraph { n_vertices, edges })
    }

    /// Builds from 0-based vertex lists.
    pub fn from_edge_lists<E, I>(n_vertices: usize, edges: E) -> Result<Self>
    where
        E: IntoIterator<Item = I>,
        I: IntoIterator<Item = usize>,
    {
        let edges = edges
            .into_iter()
            .map(|e| VertexSet::from_indices(n_vertices, e))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n_vertices, edges)
    }

    #[inline]
    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    #[inline]
    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[VertexSet] {
        &self.edges
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::from_bits(self.n_vertices, low_mask(self.n_vertices))
    }

    pub fn min_edge_size(&self) -> Option<usize> {
        self.edges.iter().map(VertexSet::len).min()
    }

    /// Number of edges containing each vertex.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n_vertices];
        for e in &self.edges {
            for v in e.iter() {
                deg[v] += 1;
            }
        }
        deg
    }

    /// For each vertex, the indices of edges containing it (ascending).
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n_vertices];
        for (i, e) in self.edges.iter().enumerate() {
            for v in e.iter() {
                inc[v].push(i);
            }
        }
        inc
    }

    /// Vertices by descending degree, ties broken by index.
    pub fn degree_order(&self) -> Vec<usize> {
        let deg = self.degrees();
        let mut order: Vec<usize> = (0..self.n_vertices).collect();
        order.sort_by(|&a, &b| deg[b].cmp(&deg[a]).then(a.cmp(&b)));
        order
    }

    /// `Some(r)` when every edge has exactly `r` vertices.
    pub fn uniformity(&self) -> Option<usize> {
        let first = self.edges.first()?.len();
        self.edges.iter().all(|e| e.len() == first).then_some(first)
    }

    /// Fails with [`Error::ThresholdTooLarge`] unless `s < |e|` for every edge.
    pub fn check_threshold(&self, s: usize) -> Result<()> {
        match self.edges.iter().position(|e| e.len() <= s) {
            Some(edge) => Err(Error::ThresholdTooLarge {
                edge,
                size: self.edges[edge].len(),
                s,
            }),
            None => Ok(()),
        }
    }
}

/// Parses the `p hg <n> <m>` format. Comment lines (`c ...`) and blank lines
/// are skipped; file labels are 1-based.
pub fn parse_hypergraph(text: &str) -> Result<Hypergraph> {
    let err = |line: usize, message: String| Error::Parse { line, message };

    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line == "c" || line.starts_with("c ") || line.starts_with("c\t") {
            continue;
        }
        let mut tokens = line.split_ascii_whitespace();
        match tokens.next() {
            Some("p") => {
                if header.is_some() {
                    return Err(err(lineno, "duplicate header".into()));
                }
                if tokens.next() != Some("hg") {
                    return Err(err(lineno, "malformed header, expected `p hg <n> <m>`".into()));
                }
                let mut num = || -> Result<usize> {
                    tokens
                        .next()
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| err(lineno, "malformed header, expected `p hg <n> <m>`".into()))
                };
                let n = num()?;
                let m = num()?;
                if tokens.next().is_some() {
                    return Err(err(lineno, "trailing tokens after header".into()));
                }
                if n > MAX_VERTICES {
                    return Err(err(lineno, format!("{n} vertices exceeds capacity of {MAX_VERTICES}")));
                }
                header = Some((n, m));
            }
            Some("e") => {
                let (n, m) = header.ok_or_else(|| err(lineno, "edge before header".into()))?;
                if edges.len() == m {
                    return Err(err(lineno, format!("more than the declared {m} edges")));
                }
                let mut set = VertexSet::empty(n)?;
                let mut prev = 0usize;
                for tok in tokens {
                    let v: usize = tok
                        .parse()
                        .map_err(|_| err(lineno, format!("invalid vertex label `{tok}`")))?;
                    if v == 0 || v > n {
                        return Err(err(lineno, format!("vertex {v} out of range 1..={n}")));
                    }
                    if v <= prev {
                        return Err(err(lineno, "vertex labels must be strictly increasing".into()));
                    }
                    prev = v;
                    set.insert(v - 1);
                }
                if set.is_empty() {
                    return Err(err(lineno, "empty edge".into()));
                }
                edges.push(set);
            }
            Some(other) => {
                return Err(err(lineno, format!("unknown line type `{other}`")));
            }
            None => unreachable!(),
        }
    }

    let (n, m) = header.ok_or_else(|| err(text.lines().count().max(1), "missing `p hg` header".into()))?;
    if edges.len() != m {
        return Err(err(
            text.lines().count().max(1),
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    Hypergraph::new(n, edges)
}

/// Canonical text form: header, then one `e` line per edge in stored order.
pub fn emit_hypergraph(h: &Hypergraph) -> String {
    let mut out = String::new();
    writeln!(out, "p hg {} {}", h.n_vertices, h.edges.len()).unwrap();
    for e in &h.edges {
        out.push('e');
        for v in e.iter() {
            write!(out, " {}", v + 1).unwrap();
        }
        out.push('\n');
    }
    out
}

impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&emit_hypergraph(self))
    }
}

impl std::str::FromStr for Hypergraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_hypergraph(s)
    }
}
