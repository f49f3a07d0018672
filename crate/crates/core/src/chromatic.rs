//! Exact weak chromatic number: the fewest colors such that no edge is
//! monochromatic.
//!
//! The solver deepens on the palette size `t` from a clique lower bound up to a
//! greedy upper bound and backtracks over a fixed vertex order (descending
//! degree, ties by index). Color `c` may be given to the next vertex only if
//! `c ≤ 1 + max color used so far`, which removes color permutations. Per-edge
//! color counts make each assignment cost `O(deg v)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coloring {
    pub colors: Vec<usize>,
    pub palette_size: usize,
}

impl Coloring {
    pub fn distinct_colors(&self) -> usize {
        let mut seen: Vec<usize> = self.colors.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChiResult {
    pub chi: usize,
    pub witness: Coloring,
    pub nodes_explored: u64,
}

pub fn is_proper_coloring(h: &Hypergraph, c: &Coloring) -> Result<bool> {
    if c.colors.len() != h.n_vertices() {
        return Err(Error::Usage(format!(
            "coloring covers {} vertices, hypergraph has {}",
            c.colors.len(),
            h.n_vertices()
        )));
    }
    if let Some(&bad) = c.colors.iter().find(|&&col| col >= c.palette_size) {
        return Err(Error::Usage(format!("color {bad} outside palette of size {}", c.palette_size)));
    }
    Ok(h.edges().iter().all(|e| {
        let mut it = e.iter().map(|v| c.colors[v]);
        let first = it.next();
        it.any(|col| Some(col) != first)
    }))
}

fn reject_singletons(h: &Hypergraph) -> Result<()> {
    match h.edges().iter().position(|e| e.len() == 1) {
        Some(i) => Err(Error::Domain(format!(
            "edge {i} has a single vertex, so no coloring can avoid a monochromatic edge"
        ))),
        None => Ok(()),
    }
}

/// First-fit coloring in descending-degree order.
pub fn greedy_upper_bound(h: &Hypergraph) -> Result<Coloring> {
    reject_singletons(h)?;
    let n = h.n_vertices();
    let inc = h.incidence();
    let mut colors: Vec<Option<usize>> = vec![None; n];
    let mut palette = 0;
    for v in h.degree_order() {
        // A color is blocked if some edge through v is otherwise entirely that color.
        let blocked = |c: usize| {
            inc[v].iter().any(|&e| {
                h.edges()[e]
                    .iter()
                    .filter(|&u| u != v)
                    .all(|u| colors[u] == Some(c))
            })
        };
        let c = (0..).find(|&c| !blocked(c)).unwrap();
        colors[v] = Some(c);
        palette = palette.max(c + 1);
    }
    Ok(Coloring {
        colors: colors.into_iter().map(Option::unwrap).collect(),
        palette_size: palette,
    })
}

/// Size of a greedily grown clique among the 2-element edges.
fn clique_lower_bound(h: &Hypergraph) -> usize {
    let n = h.n_vertices();
    let mut adj = vec![0u128; n];
    for e in h.edges().iter().filter(|e| e.len() == 2) {
        let v: Vec<usize> = e.iter().collect();
        adj[v[0]] |= 1 << v[1];
        adj[v[1]] |= 1 << v[0];
    }
    let order = h.degree_order();
    let mut best = 0;
    for &start in &order {
        let mut clique = 1;
        let mut candidates = adj[start];
        for &u in &order {
            if candidates >> u & 1 == 1 {
                clique += 1;
                candidates &= adj[u];
            }
        }
        best = best.max(clique);
    }
    best
}

struct Search<'a> {
    order: &'a [usize],
    inc: &'a [Vec<usize>],
    edge_len: &'a [usize],
    t: usize,
    colors: Vec<usize>,
    counts: Vec<u16>,
    nodes: u64,
    budget: Option<u64>,
}

enum Outcome {
    Found,
    Exhausted,
    OutOfBudget,
}

impl Search<'_> {
    fn run(&mut self, pos: usize, used: usize) -> Outcome {
        if pos == self.order.len() {
            return Outcome::Found;
        }
        let v = self.order[pos];
        let limit = (used + 1).min(self.t);
        for c in 0..limit {
            self.nodes += 1;
            if self.budget.is_some_and(|b| self.nodes > b) {
                return Outcome::OutOfBudget;
            }
            let t = self.t;
            let conflict = self.inc[v]
                .iter()
                .any(|&e| self.counts[e * t + c] as usize + 1 == self.edge_len[e]);
            if conflict {
                continue;
            }
            for &e in &self.inc[v] {
                self.counts[e * t + c] += 1;
            }
            self.colors[v] = c;
            let outcome = self.run(pos + 1, used.max(c + 1));
            if !matches!(outcome, Outcome::Exhausted) {
                return outcome;
            }
            for &e in &self.inc[v] {
                self.counts[e * t + c] -= 1;
            }
        }
        Outcome::Exhausted
    }
}

/// Exact `χ(h)` with a witness coloring. `budget` caps the number of search
/// nodes; running out yields [`Error::BudgetExhausted`] with the proven bounds.
pub fn chromatic_number_exact(h: &Hypergraph, budget: Option<u64>) -> Result<ChiResult> {
    reject_singletons(h)?;
    let n = h.n_vertices();
    if n == 0 {
        return Ok(ChiResult {
            chi: 0,
            witness: Coloring {
                colors: vec![],
                palette_size: 0,
            },
            nodes_explored: 0,
        });
    }
    if h.n_edges() == 0 {
        return Ok(ChiResult {
            chi: 1,
            witness: Coloring {
                colors: vec![0; n],
                palette_size: 1,
            },
            nodes_explored: 0,
        });
    }

    let greedy = greedy_upper_bound(h)?;
    let upper = greedy.palette_size;
    let lower = clique_lower_bound(h).max(2);
    let order = h.degree_order();
    let inc = h.incidence();
    let edge_len: Vec<usize> = h.edges().iter().map(|e| e.len()).collect();
    let mut nodes = 0;

    for t in lower..upper {
        let mut search = Search {
            order: &order,
            inc: &inc,
            edge_len: &edge_len,
            t,
            colors: vec![0; n],
            counts: vec![0; h.n_edges() * t],
            nodes,
            budget,
        };
        let outcome = search.run(0, 0);
        nodes = search.nodes;
        match outcome {
            Outcome::Found => {
                return Ok(ChiResult {
                    chi: t,
                    witness: Coloring {
                        colors: search.colors,
                        palette_size: t,
                    },
                    nodes_explored: nodes,
                })
            }
            Outcome::Exhausted => {}
            Outcome::OutOfBudget => {
                return Err(Error::BudgetExhausted {
                    budget: budget.unwrap_or(u64::MAX),
                    nodes,
                    lower: t,
                    upper,
                })
            }
        }
    }

    Ok(ChiResult {
        chi: upper,
        witness: greedy,
        nodes_explored: nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::complete_uniform;
    use crate::kneser::{build_kneser, KneserSpec};

    fn complete_graph(k: usize) -> Hypergraph {
        complete_uniform(k, 2).unwrap()
    }

    fn petersen() -> Hypergraph {
        build_kneser(&complete_uniform(5, 2).unwrap(), KneserSpec::new(2, 0).unwrap()).unwrap()
    }

    #[test]
    fn proper_coloring_checks() {
        let h = Hypergraph::from_edge_lists(3, [vec![0, 1, 2]]).unwrap();
        let c = |colors: Vec<usize>| Coloring { colors, palette_size: 2 };
        assert!(is_proper_coloring(&h, &c(vec![0, 0, 1])).unwrap());
        assert!(!is_proper_coloring(&h, &c(vec![0, 0, 0])).unwrap());
        assert!(is_proper_coloring(&Hypergraph::new(3, vec![]).unwrap(), &c(vec![0, 0, 0])).unwrap());
        assert!(matches!(is_proper_coloring(&h, &c(vec![0, 1])), Err(Error::Usage(_))));
        assert!(matches!(is_proper_coloring(&h, &c(vec![0, 1, 5])), Err(Error::Usage(_))));
    }

    #[test]
    fn greedy_cases() {
        let edgeless = Hypergraph::new(4, vec![]).unwrap();
        assert_eq!(greedy_upper_bound(&edgeless).unwrap().palette_size, 1);
        let k4 = complete_graph(4);
        assert_eq!(greedy_upper_bound(&k4).unwrap().palette_size, 4);
        let p = petersen();
        let g = greedy_upper_bound(&p).unwrap();
        assert!(g.palette_size <= 4);
        assert!(is_proper_coloring(&p, &g).unwrap());
    }

    #[test]
    fn exact_small_cases() {
        assert_eq!(chromatic_number_exact(&Hypergraph::new(0, vec![]).unwrap(), None).unwrap().chi, 0);
        assert_eq!(chromatic_number_exact(&Hypergraph::new(3, vec![]).unwrap(), None).unwrap().chi, 1);
        for k in 2..=7 {
            assert_eq!(chromatic_number_exact(&complete_graph(k), None).unwrap().chi, k);
        }
        let p = petersen();
        let res = chromatic_number_exact(&p, None).unwrap();
        assert_eq!(res.chi, 3);
        assert!(is_proper_coloring(&p, &res.witness).unwrap());
    }

    #[test]
    fn three_uniform_kneser() {
        let kg = build_kneser(&complete_uniform(7, 2).unwrap(), KneserSpec::new(3, 0).unwrap()).unwrap();
        let res = chromatic_number_exact(&kg, None).unwrap();
        assert_eq!(res.chi, 2);
        assert!(is_proper_coloring(&kg, &res.witness).unwrap());
    }

    #[test]
    fn singleton_edges_are_rejected() {
        let h = Hypergraph::from_edge_lists(2, [vec![0], vec![0, 1]]).unwrap();
        assert!(matches!(chromatic_number_exact(&h, None), Err(Error::Domain(_))));
    }

    #[test]
    fn budget_exhaustion_reports_bounds() {
        let kg = build_kneser(&complete_uniform(7, 2).unwrap(), KneserSpec::new(2, 0).unwrap()).unwrap();
        match chromatic_number_exact(&kg, Some(10)) {
            Err(Error::BudgetExhausted { lower, upper, nodes, .. }) => {
                assert!(lower <= 5 && 5 <= upper);
                assert!(nodes > 10);
            }
            other => panic!("expected budget exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn witness_is_deterministic() {
        let kg = build_kneser(&complete_uniform(6, 2).unwrap(), KneserSpec::new(2, 0).unwrap()).unwrap();
        let a = chromatic_number_exact(&kg, None).unwrap();
        let b = chromatic_number_exact(&kg, None).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.chi, 4);
    }
}
