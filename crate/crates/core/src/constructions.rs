//! Hypergraph families with known chromatic numbers and defects, together with
//! the explicit partitions that witness their defect upper bounds.

use serde::Serialize;

use crate::defect::DefectCertificate;
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, VertexSet, MAX_VERTICES};

/// Refuse to materialize more edges than this.
pub const MAX_GENERATED_EDGES: u128 = 1 << 20;

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(p) = (0..k).rev().find(|&p| idx[p] < n - k + p) else {
            return out;
        };
        idx[p] += 1;
        for q in p + 1..k {
            idx[q] = idx[q - 1] + 1;
        }
    }
}

/// `K_n^k`: vertices `0..n`, every `k`-subset as an edge.
pub fn complete_uniform(n: usize, k: usize) -> Result<Hypergraph> {
    if k == 0 {
        return Err(Error::Domain("edge size k must be positive (empty edges are not allowed)".into()));
    }
    if k > n {
        return Err(Error::Domain(format!("edge size k = {k} exceeds n = {n}")));
    }
    if n > MAX_VERTICES {
        return Err(Error::Capacity(n));
    }
    if binomial(n, k) > MAX_GENERATED_EDGES {
        return Err(Error::Domain(format!("C({n}, {k}) edges is beyond desk scale")));
    }
    Hypergraph::from_edge_lists(n, combinations(n, k))
}

/// Parameters of the lifted complete hypergraph `{e ∪ S : e ∈ C([2n+k], n)}`
/// with `k = l - 2` and `|S| = s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Thm2Params {
    pub l: usize,
    pub s: usize,
    pub n: usize,
}

impl Thm2Params {
    pub fn new(l: usize, s: usize, n: usize) -> Result<Self> {
        if l < 2 {
            return Err(Error::Domain(format!("l must be at least 2, got {l}")));
        }
        if s < 1 {
            return Err(Error::Domain("s must be positive".into()));
        }
        if n < 1 {
            return Err(Error::Domain("n must be positive".into()));
        }
        let p = Thm2Params { l, s, n };
        if p.n_vertices() > MAX_VERTICES {
            return Err(Error::Capacity(p.n_vertices()));
        }
        if binomial(p.base_size(), n) > MAX_GENERATED_EDGES {
            return Err(Error::Domain(format!("C({}, {n}) edges is beyond desk scale", p.base_size())));
        }
        Ok(p)
    }

    pub fn k(&self) -> usize {
        self.l - 2
    }

    /// `2n + k`, the size of the base ground set.
    pub fn base_size(&self) -> usize {
        2 * self.n + self.k()
    }

    pub fn n_vertices(&self) -> usize {
        self.base_size() + self.s
    }
}

/// Base vertices come first (`0..2n+k`), then the `s` tail vertices of `S`.
/// Each edge is an `n`-subset of the base plus all of `S`, in lexicographic
/// order of the base part.
pub fn thm2_family(p: Thm2Params) -> Hypergraph {
    let base = p.base_size();
    let width = p.n_vertices();
    let edges = combinations(base, p.n)
        .into_iter()
        .map(|e| e.into_iter().chain(base..width))
        .collect::<Vec<_>>();
    Hypergraph::from_edge_lists(width, edges).expect("validated parameters")
}

/// `(χ(KG^2(F, s)), ecd^2(F, s)) = (l, l + s)`.
pub fn thm2_predicted(p: Thm2Params) -> (usize, usize) {
    (p.l, p.l + p.s)
}

/// The equitable partition `Y1 = first n-1 base vertices`, `Y2 = next n-1`,
/// `Y0 = everything else`, of deleted size `k + 2 + s`.
pub fn thm2_upper_certificate(p: Thm2Params) -> DefectCertificate {
    let width = p.n_vertices();
    let y1 = VertexSet::from_indices(width, 0..p.n - 1).unwrap();
    let y2 = VertexSet::from_indices(width, p.n - 1..2 * p.n - 2).unwrap();
    let y0 = VertexSet::from_indices(width, 2 * p.n - 2..width).unwrap();
    DefectCertificate {
        x0: y0,
        parts: vec![y1, y2],
        equitable: true,
        threshold_s: p.s,
    }
}

/// Parameters of `k` pairwise disjoint blocks of size `s + 1`, `s` even.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Thm3Params {
    pub k: usize,
    pub s: usize,
}

impl Thm3Params {
    pub fn new(k: usize, s: usize) -> Result<Self> {
        if k < 1 {
            return Err(Error::Domain("k must be positive".into()));
        }
        if s < 2 || !s.is_multiple_of(2) {
            return Err(Error::Domain(format!("s must be a positive even integer, got {s}")));
        }
        let width = k * (s + 1);
        if width > MAX_VERTICES {
            return Err(Error::Capacity(width));
        }
        Ok(Thm3Params { k, s })
    }

    /// Thresholds `s/2 + 1 ..= s` for which the defect formula is claimed.
    pub fn thresholds(&self) -> std::ops::RangeInclusive<usize> {
        self.s / 2 + 1..=self.s
    }

    fn check_threshold(&self, l: usize) -> Result<()> {
        if self.thresholds().contains(&l) {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "threshold l = {l} outside {}..={} where the defect formula holds",
                self.s / 2 + 1,
                self.s
            )))
        }
    }
}

/// Block `i` is the vertex range `i(s+1) .. (i+1)(s+1)`.
pub fn thm3_family(p: Thm3Params) -> Hypergraph {
    let b = p.s + 1;
    Hypergraph::from_edge_lists(p.k * b, (0..p.k).map(|i| i * b..(i + 1) * b)).expect("validated parameters")
}

/// `(χ(KG^2(F, s)), cd^2(F, l), ecd^2(F, l)) = (k, k(2l-s+1), k(2l-s+1))`.
pub fn thm3_predicted(p: Thm3Params, l: usize) -> Result<(usize, usize, usize)> {
    p.check_threshold(l)?;
    let defect = p.k * (2 * l + 1 - p.s);
    Ok((p.k, defect, defect))
}

/// From each block, the first `s-l` vertices go to `Y1` and the next `s-l`
/// to `Y2`; the rest are deleted.
pub fn thm3_upper_certificate(p: Thm3Params, l: usize) -> Result<DefectCertificate> {
    p.check_threshold(l)?;
    let b = p.s + 1;
    let take = p.s - l;
    let width = p.k * b;
    let y1 = VertexSet::from_indices(width, (0..p.k).flat_map(|i| i * b..i * b + take))?;
    let y2 = VertexSet::from_indices(width, (0..p.k).flat_map(|i| i * b + take..i * b + 2 * take))?;
    let y0 = VertexSet::full(width)?.difference(&y1.union(&y2)?)?;
    Ok(DefectCertificate {
        x0: y0,
        parts: vec![y1, y2],
        equitable: true,
        threshold_s: l,
    })
}

/// `⌈(n - r(k-1)) / (r-1)⌉` for `KG^r(K_n^k, 0)`, when `n ≥ r(k-1) + 1`.
pub fn closed_form_chi_complete(n: usize, k: usize, r: usize) -> Option<usize> {
    let spare = closed_form_cd_complete(n, k, r)?;
    Some(spare.div_ceil(r - 1))
}

/// `cd^r(K_n^k, 0) = n - r(k-1)`, when `n ≥ r(k-1) + 1`.
pub fn closed_form_cd_complete(n: usize, k: usize, r: usize) -> Option<usize> {
    if k == 0 || r < 2 || n < r * (k - 1) + 1 {
        return None;
    }
    Some(n - r * (k - 1))
}
