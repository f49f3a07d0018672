//! Brute-force references. Nothing here calls into the solvers under test.

use kneser_core::Hypergraph;

fn edge_masks(f: &Hypergraph) -> Vec<u128> {
    f.edges().iter().map(|e| e.bits()).collect()
}

/// Minimum `|X0|` over all `(r+1)^n` assignments of vertices to `X0, X1..Xr`.
pub fn defect_brute_force(f: &Hypergraph, r: usize, s: usize, equitable: bool) -> usize {
    let n = f.n_vertices();
    let edges = edge_masks(f);
    let base = r as u64 + 1;
    let total = base.pow(n as u32);
    let mut best = n;
    let mut parts = vec![0u128; r + 1];
    for code in 0..total {
        parts.iter_mut().for_each(|p| *p = 0);
        let mut c = code;
        for v in 0..n {
            parts[(c % base) as usize] |= 1 << v;
            c /= base;
        }
        let x0 = parts[0].count_ones() as usize;
        if x0 >= best {
            continue;
        }
        let blocked = edges
            .iter()
            .all(|&e| parts[1..].iter().all(|&p| (e & !p).count_ones() as usize > s));
        if !blocked {
            continue;
        }
        if equitable {
            let sizes: Vec<u32> = parts[1..].iter().map(|p| p.count_ones()).collect();
            let (lo, hi) = (sizes.iter().min().unwrap(), sizes.iter().max().unwrap());
            if hi - lo > 1 {
                continue;
            }
        }
        best = x0;
    }
    best
}

/// Least `t` such that some assignment of `t` colors leaves no edge monochromatic.
pub fn chi_brute_force(h: &Hypergraph) -> usize {
    let n = h.n_vertices();
    if n == 0 {
        return 0;
    }
    let edges: Vec<Vec<usize>> = h.edges().iter().map(|e| e.to_vec()).collect();
    assert!(edges.iter().all(|e| e.len() >= 2), "singleton edge");
    for t in 1..=n {
        let total = (t as u64).pow(n as u32);
        let mut colors = vec![0usize; n];
        for code in 0..total {
            let mut c = code;
            for col in colors.iter_mut() {
                *col = (c % t as u64) as usize;
                c /= t as u64;
            }
            if edges.iter().all(|e| e.iter().any(|&v| colors[v] != colors[e[0]])) {
                return t;
            }
        }
    }
    unreachable!("n colors always suffice without singleton edges")
}

/// Pairwise-disjointness test of the Kneser rule over all index pairs.
pub fn kneser_graph_edges(f: &Hypergraph, s: usize) -> Vec<(usize, usize)> {
    let edges = edge_masks(f);
    let mut out = Vec::new();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            if ((edges[i] & edges[j]).count_ones() as usize) <= s {
                out.push((i, j));
            }
        }
    }
    out
}
