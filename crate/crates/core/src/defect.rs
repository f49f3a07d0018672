//! Exact colorability defects `cd^r(F, s)` and equitable defects `ecd^r(F, s)`.
//!
//! Both are the least `|X0|` such that `V \ X0` splits into parts
//! `X1, …, Xr` (some possibly empty) with `|e \ Xi| > s` for every edge `e`
//! and part `Xi`; the equitable variant also requires part sizes to differ by
//! at most one.
//!
//! The search assigns vertices one at a time, in descending degree order, to
//! `X1..Xr` (tried first) or `X0`. A part is admissible for a vertex while
//! `|e ∩ Xi| ≤ |e| - s - 1` stays true for every edge through it. The `i`-th
//! part to be opened along a branch is always `Xi`, and branches whose `|X0|`
//! cannot beat the incumbent are cut. In equitable mode a branch is also cut
//! once the remaining vertices cannot raise every part to within one of the
//! largest.

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::hypergraph::{Hypergraph, VertexSet};

/// A partition `{X0, X1, …, Xr}` witnessing `cd ≤ |X0|` (or `ecd ≤ |X0|`
/// when `equitable`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefectCertificate {
    pub x0: VertexSet,
    pub parts: Vec<VertexSet>,
    pub equitable: bool,
    pub threshold_s: usize,
}

/// Wire form: 1-based sorted vertex lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateJson {
    pub value: usize,
    pub x0: Vec<usize>,
    pub parts: Vec<Vec<usize>>,
    pub equitable: bool,
    pub threshold_s: usize,
    pub r: usize,
}

impl DefectCertificate {
    pub fn value(&self) -> usize {
        self.x0.len()
    }

    pub fn r(&self) -> usize {
        self.parts.len()
    }

    pub fn to_json(&self) -> CertificateJson {
        let one_based = |set: &VertexSet| set.iter().map(|v| v + 1).collect();
        CertificateJson {
            value: self.value(),
            x0: one_based(&self.x0),
            parts: self.parts.iter().map(one_based).collect(),
            equitable: self.equitable,
            threshold_s: self.threshold_s,
            r: self.r(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DefectKind {
    Plain,
    Equitable,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DefectOptions {
    /// Maximum number of search nodes.
    pub budget: Option<u64>,
    /// `Parallel` splits the tree below a short prefix of the vertex order.
    pub exec: Exec,
}

impl DefectOptions {
    pub fn with_budget(budget: Option<u64>) -> Self {
        DefectOptions {
            budget,
            ..Default::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefectResult {
    pub value: usize,
    pub certificate: DefectCertificate,
    pub nodes_explored: u64,
    /// How the search was scheduled. The value never depends on it.
    pub mode: Exec,
}

/// Checks that `cert` partitions `V(f)`, that no part `s`-almost contains an
/// edge, and, if flagged equitable, that part sizes differ by at most one.
pub fn verify_certificate(f: &Hypergraph, s: usize, cert: &DefectCertificate) -> Result<bool> {
    f.check_threshold(s)?;
    let n = f.n_vertices();
    for set in std::iter::once(&cert.x0).chain(&cert.parts) {
        if set.width() != n {
            return Err(Error::Usage(format!(
                "certificate set over {} vertices, hypergraph has {n}",
                set.width()
            )));
        }
    }

    let mut covered = cert.x0.bits();
    for part in &cert.parts {
        if covered & part.bits() != 0 {
            return Ok(false);
        }
        covered |= part.bits();
    }
    if covered != f.vertices().bits() {
        return Ok(false);
    }

    let blocked = f
        .edges()
        .iter()
        .all(|e| cert.parts.iter().all(|x| (e.bits() & !x.bits()).count_ones() as usize > s));
    if !blocked {
        return Ok(false);
    }

    if cert.equitable {
        let sizes = cert.parts.iter().map(VertexSet::len);
        let (lo, hi) = sizes.fold((usize::MAX, 0), |(lo, hi), x| (lo.min(x), hi.max(x)));
        if !cert.parts.is_empty() && hi - lo > 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn cd_exact(f: &Hypergraph, r: usize, s: usize, budget: Option<u64>) -> Result<DefectResult> {
    defect_exact(f, r, s, DefectKind::Plain, DefectOptions::with_budget(budget))
}

pub fn ecd_exact(f: &Hypergraph, r: usize, s: usize, budget: Option<u64>) -> Result<DefectResult> {
    defect_exact(f, r, s, DefectKind::Equitable, DefectOptions::with_budget(budget))
}

pub fn defect_exact(
    f: &Hypergraph,
    r: usize,
    s: usize,
    kind: DefectKind,
    opts: DefectOptions,
) -> Result<DefectResult> {
    if r < 2 {
        return Err(Error::Domain(format!("number of parts r must be at least 2, got {r}")));
    }
    f.check_threshold(s)?;

    let problem = Problem::new(f, r, s, kind == DefectKind::Equitable);
    let n = problem.n;
    let prefixes = match opts.exec {
        Exec::Sequential => vec![Vec::new()],
        Exec::Parallel => problem.prefixes(64),
    };

    let shared = Shared {
        best: AtomicUsize::new(n),
        nodes: AtomicU64::new(0),
        budget: opts.budget,
    };
    let outcomes = opts.exec.map(prefixes, |prefix| problem.solve_below(&prefix, &shared));

    let nodes = shared.nodes.load(Ordering::Relaxed);
    let mut best: Option<(usize, Vec<usize>)> = None;
    let mut exhausted = false;
    for outcome in outcomes {
        exhausted |= outcome.out_of_budget;
        if let Some((value, assign)) = outcome.best {
            if best.as_ref().is_none_or(|(b, _)| value < *b) {
                best = Some((value, assign));
            }
        }
    }

    let certificate = match &best {
        Some((_, assign)) => problem.certificate(assign, s),
        None => DefectCertificate {
            x0: f.vertices(),
            parts: vec![VertexSet::empty(n)?; r],
            equitable: problem.equitable,
            threshold_s: s,
        },
    };

    if exhausted {
        return Err(Error::BudgetExhausted {
            budget: opts.budget.unwrap_or(u64::MAX),
            nodes,
            lower: 0,
            upper: certificate.value(),
        });
    }

    Ok(DefectResult {
        value: certificate.value(),
        certificate,
        nodes_explored: nodes,
        mode: opts.exec,
    })
}

const UNASSIGNED: usize = usize::MAX;
const FLUSH_EVERY: u64 = 1 << 12;

struct Problem<'a> {
    f: &'a Hypergraph,
    n: usize,
    r: usize,
    equitable: bool,
    order: Vec<usize>,
    inc: Vec<Vec<usize>>,
    /// `|e| - s - 1`: the most vertices of `e` any single part may hold.
    cap: Vec<usize>,
}

struct Shared {
    best: AtomicUsize,
    nodes: AtomicU64,
    budget: Option<u64>,
}

struct SubtreeOutcome {
    best: Option<(usize, Vec<usize>)>,
    out_of_budget: bool,
}

struct State {
    /// Part per vertex: 0 for `X0`, `1..=r` for the parts.
    assign: Vec<usize>,
    sizes: Vec<usize>,
    /// `counts[e * (r + 1) + p] = |e ∩ Xp|`.
    counts: Vec<usize>,
    opened: usize,
}

impl<'a> Problem<'a> {
    fn new(f: &'a Hypergraph, r: usize, s: usize, equitable: bool) -> Self {
        Problem {
            f,
            n: f.n_vertices(),
            r,
            equitable,
            order: f.degree_order(),
            inc: f.incidence(),
            cap: f.edges().iter().map(|e| e.len() - s - 1).collect(),
        }
    }

    fn empty_state(&self) -> State {
        State {
            assign: vec![UNASSIGNED; self.n],
            sizes: vec![0; self.r + 1],
            counts: vec![0; self.f.n_edges() * (self.r + 1)],
            opened: 0,
        }
    }

    #[inline]
    fn admissible(&self, st: &State, v: usize, p: usize) -> bool {
        p == 0 || self.inc[v].iter().all(|&e| st.counts[e * (self.r + 1) + p] < self.cap[e])
    }

    fn assign(&self, st: &mut State, v: usize, p: usize) {
        st.assign[v] = p;
        st.sizes[p] += 1;
        if p > 0 {
            for &e in &self.inc[v] {
                st.counts[e * (self.r + 1) + p] += 1;
            }
        }
    }

    fn unassign(&self, st: &mut State, v: usize) {
        let p = st.assign[v];
        st.assign[v] = UNASSIGNED;
        st.sizes[p] -= 1;
        if p > 0 {
            for &e in &self.inc[v] {
                st.counts[e * (self.r + 1) + p] -= 1;
            }
        }
    }

    /// Can `remaining` more vertices bring every part to at least `max - 1`?
    #[inline]
    fn completable(&self, st: &State, remaining: usize) -> bool {
        if !self.equitable {
            return true;
        }
        let parts = &st.sizes[1..];
        let max = parts.iter().copied().max().unwrap_or(0);
        let deficit: usize = parts.iter().map(|&x| (max.saturating_sub(1)).saturating_sub(x)).sum();
        deficit <= remaining
    }

    /// Branch values for the vertex at `pos`, in search order: parts first,
    /// opening at most one new part, then `X0`.
    fn choices(&self, st: &State) -> impl Iterator<Item = usize> {
        let open_limit = (st.opened + 1).min(self.r);
        (1..=open_limit).chain(std::iter::once(0))
    }

    fn apply(&self, st: &mut State, v: usize, p: usize) -> usize {
        let prev_opened = st.opened;
        self.assign(st, v, p);
        if p > st.opened {
            st.opened = p;
        }
        prev_opened
    }

    /// Feasible partial assignments of the first few vertices, in the order
    /// the sequential search would visit them.
    fn prefixes(&self, target: usize) -> Vec<Vec<usize>> {
        let mut depth = 0;
        let mut frontier = vec![Vec::new()];
        while frontier.len() < target && depth < self.n {
            let mut next = Vec::new();
            for prefix in &frontier {
                let mut st = self.empty_state();
                for (pos, &p) in prefix.iter().enumerate() {
                    self.apply(&mut st, self.order[pos], p);
                }
                let v = self.order[depth];
                for p in self.choices(&st) {
                    if !self.admissible(&st, v, p) {
                        continue;
                    }
                    let prev = self.apply(&mut st, v, p);
                    if self.completable(&st, self.n - depth - 1) {
                        let mut ext = prefix.clone();
                        ext.push(p);
                        next.push(ext);
                    }
                    self.unassign(&mut st, v);
                    st.opened = prev;
                }
            }
            frontier = next;
            depth += 1;
        }
        frontier
    }

    fn solve_below(&self, prefix: &[usize], shared: &Shared) -> SubtreeOutcome {
        let mut st = self.empty_state();
        for (pos, &p) in prefix.iter().enumerate() {
            self.apply(&mut st, self.order[pos], p);
        }
        let mut walk = Walk {
            problem: self,
            shared,
            st,
            local_best: self.n,
            best_assign: None,
            nodes: 0,
            unflushed: 0,
            out_of_budget: false,
        };
        walk.dfs(prefix.len());
        walk.flush();
        SubtreeOutcome {
            best: walk.best_assign.map(|a| (walk.local_best, a)),
            out_of_budget: walk.out_of_budget,
        }
    }

    fn certificate(&self, assign: &[usize], s: usize) -> DefectCertificate {
        let mut x0 = VertexSet::empty(self.n).unwrap();
        let mut parts = vec![VertexSet::empty(self.n).unwrap(); self.r];
        for (v, &p) in assign.iter().enumerate() {
            if p == 0 {
                x0.insert(v);
            } else {
                parts[p - 1].insert(v);
            }
        }
        DefectCertificate {
            x0,
            parts,
            equitable: self.equitable,
            threshold_s: s,
        }
    }
}

struct Walk<'p, 'a> {
    problem: &'p Problem<'a>,
    shared: &'p Shared,
    st: State,
    local_best: usize,
    best_assign: Option<Vec<usize>>,
    nodes: u64,
    unflushed: u64,
    out_of_budget: bool,
}

impl Walk<'_, '_> {
    fn flush(&mut self) {
        self.shared.nodes.fetch_add(self.unflushed, Ordering::Relaxed);
        self.unflushed = 0;
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        self.unflushed += 1;
        if self.unflushed >= FLUSH_EVERY {
            self.flush();
        }
        if let Some(b) = self.shared.budget {
            if self.shared.nodes.load(Ordering::Relaxed) + self.unflushed > b {
                self.out_of_budget = true;
            }
        }
        !self.out_of_budget
    }

    fn dfs(&mut self, pos: usize) {
        if !self.tick() {
            return;
        }
        let x0 = self.st.sizes[0];
        // Strict against the shared bound so that each subtree still finds its
        // own first optimum; that keeps the certificate independent of timing.
        if x0 >= self.local_best || x0 > self.shared.best.load(Ordering::Relaxed) {
            return;
        }
        let problem = self.problem;
        if !problem.completable(&self.st, problem.n - pos) {
            return;
        }
        if pos == problem.n {
            self.local_best = x0;
            self.best_assign = Some(self.st.assign.clone());
            self.shared.best.fetch_min(x0, Ordering::Relaxed);
            return;
        }
        let v = problem.order[pos];
        for p in problem.choices(&self.st) {
            if !problem.admissible(&self.st, v, p) {
                continue;
            }
            let prev = problem.apply(&mut self.st, v, p);
            self.dfs(pos + 1);
            problem.unassign(&mut self.st, v);
            self.st.opened = prev;
            if self.out_of_budget {
                return;
            }
        }
    }
}
