//! Claim checking: the known lower bounds on `χ(KG^r(F, s))`, the two
//! counterexample families, and randomized corpora.
//!
//! Every claim is decided from exact values only. A solver that runs out of
//! budget makes the claim inconclusive; it never produces a pass or a fail.

use std::fmt::Write as _;
use std::time::Instant;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::chromatic::chromatic_number_exact;
use crate::constructions::{
    binomial, closed_form_cd_complete, closed_form_chi_complete, complete_uniform, thm2_family, thm2_predicted,
    thm2_upper_certificate, thm3_family, thm3_predicted, thm3_upper_certificate, Thm2Params, Thm3Params,
};
use crate::defect::{defect_exact, verify_certificate, DefectKind, DefectOptions};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::hypergraph::{Hypergraph, VertexSet};
use crate::kneser::{build_kneser, KneserSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

/// Outcome of testing one inequality.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Holds,
    Violated,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "HOLDS",
            Verdict::Violated => "VIOLATED",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// Named integers, kept in insertion order and serialized as a JSON object.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Fields(Vec<(String, usize)>);

impl Fields {
    pub fn new() -> Self {
        Fields(Vec::new())
    }

    pub fn with(mut self, key: &str, value: usize) -> Self {
        self.set(key, value);
        self
    }

    pub fn set(&mut self, key: &str, value: usize) {
        match self.0.iter_mut().find(|(k, _)| k == key) {
            Some(slot) => slot.1 = value,
            None => self.0.push((key.to_string(), value)),
        }
    }

    pub fn get(&self, key: &str) -> Option<usize> {
        self.0.iter().find(|(k, _)| k == key).map(|&(_, v)| v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, usize)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }
}

impl Serialize for Fields {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub id: String,
    pub params: Fields,
    pub predicted: String,
    pub computed: Fields,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub verdicts: Vec<(String, Verdict)>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Claim {
    fn new(id: &str, params: Fields, predicted: impl Into<String>) -> Self {
        Claim {
            id: id.to_string(),
            params,
            predicted: predicted.into(),
            computed: Fields::new(),
            verdicts: Vec::new(),
            status: Status::Inconclusive,
            note: None,
        }
    }

    pub fn verdict(&self, name: &str) -> Option<Verdict> {
        self.verdicts.iter().find(|(k, _)| k == name).map(|&(_, v)| v)
    }

    /// Records an exact value, or its bounds when the solver gave up.
    fn record(&mut self, key: &str, value: Exact) -> Option<usize> {
        match value {
            Exact::Value(v) => {
                self.computed.set(key, v);
                Some(v)
            }
            Exact::Bounds { lower, upper } => {
                self.computed.set(&format!("{key}_lower"), lower);
                self.computed.set(&format!("{key}_upper"), upper);
                self.note = Some(format!("{key}: search budget exhausted"));
                None
            }
        }
    }

    fn decide(&mut self, ok: Option<bool>) {
        self.status = match ok {
            Some(true) => Status::Pass,
            Some(false) => Status::Fail,
            None => Status::Inconclusive,
        };
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Exact {
    Value(usize),
    Bounds { lower: usize, upper: usize },
}

fn exact_or_bounds(res: Result<usize>) -> Result<Exact> {
    match res {
        Ok(v) => Ok(Exact::Value(v)),
        Err(Error::BudgetExhausted { lower, upper, .. }) => Ok(Exact::Bounds { lower, upper }),
        Err(e) => Err(e),
    }
}

fn kneser_chi(f: &Hypergraph, r: usize, s: usize, budget: Option<u64>) -> Result<Exact> {
    let kg = build_kneser(f, KneserSpec::new(r, s)?)?;
    exact_or_bounds(chromatic_number_exact(&kg, budget).map(|res| res.chi))
}

fn defect(f: &Hypergraph, r: usize, s: usize, kind: DefectKind, budget: Option<u64>) -> Result<Exact> {
    exact_or_bounds(defect_exact(f, r, s, kind, DefectOptions::with_budget(budget)).map(|res| res.value))
}

fn shape(f: &Hypergraph) -> Fields {
    Fields::new().with("n_vertices", f.n_vertices()).with("n_edges", f.n_edges())
}

/// `χ(KG^r(F, s)) ≥ ⌈ecd^r(F, ⌊s/2⌋) / (r-1)⌉`.
pub fn check_aj_bound(f: &Hypergraph, r: usize, s: usize, budget: Option<u64>) -> Result<Claim> {
    check_aj_bound_with(f, r, s, shape(f), budget)
}

fn check_aj_bound_with(f: &Hypergraph, r: usize, s: usize, params: Fields, budget: Option<u64>) -> Result<Claim> {
    let params = params.with("r", r).with("s", s);
    let mut claim = Claim::new("AJ-bound", params, "chi(KG^r(F,s)) >= ceil(ecd^r(F, floor(s/2)) / (r-1))");
    let chi = kneser_chi(f, r, s, budget)?;
    let ecd = defect(f, r, s / 2, DefectKind::Equitable, budget)?;
    let chi = claim.record("chi", chi);
    let ecd = claim.record("ecd_half_s", ecd);
    let ok = match (chi, ecd) {
        (Some(chi), Some(ecd)) => {
            let bound = ecd.div_ceil(r - 1);
            claim.computed.set("bound", bound);
            Some(chi >= bound)
        }
        _ => None,
    };
    claim.decide(ok);
    Ok(claim)
}

/// `χ(KG^r(F, 0)) ≥ ⌈cd^r(F, 0) / (r-1)⌉`.
pub fn check_dk_bound(f: &Hypergraph, r: usize, budget: Option<u64>) -> Result<Claim> {
    let params = shape(f).with("r", r).with("s", 0);
    let mut claim = Claim::new("DK-bound", params, "chi(KG^r(F,0)) >= ceil(cd^r(F,0) / (r-1))");
    let chi = claim.record("chi", kneser_chi(f, r, 0, budget)?);
    let cd = claim.record("cd", defect(f, r, 0, DefectKind::Plain, budget)?);
    let ok = chi.zip(cd).map(|(chi, cd)| {
        let bound = cd.div_ceil(r - 1);
        claim.computed.set("bound", bound);
        chi >= bound
    });
    claim.decide(ok);
    Ok(claim)
}

/// What a caller expects of each strengthened inequality; `None` means the
/// verdict is only reported.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Expectation {
    pub cd: Option<Verdict>,
    pub ecd: Option<Verdict>,
}

/// Evaluates `χ(KG^r(F, s)) ≥ ⌈cd^r(F, x) / (r-1)⌉` and the same with `ecd`.
///
/// The claim passes when every verdict named in `expect` comes out as
/// expected. With no expectations it passes once both verdicts are decided.
pub fn check_strengthened_bound(
    f: &Hypergraph,
    r: usize,
    s: usize,
    x: usize,
    expect: Expectation,
    budget: Option<u64>,
) -> Result<Claim> {
    check_strengthened_with(f, r, s, x, expect, shape(f), "strengthened-bound", budget)
}

#[allow(clippy::too_many_arguments)]
fn check_strengthened_with(
    f: &Hypergraph,
    r: usize,
    s: usize,
    x: usize,
    expect: Expectation,
    params: Fields,
    id: &str,
    budget: Option<u64>,
) -> Result<Claim> {
    if x > s {
        return Err(Error::Domain(format!("x = {x} exceeds s = {s}")));
    }
    let params = params.with("r", r).with("s", s).with("x", x);
    let predicted = match (expect.cd, expect.ecd) {
        (None, None) => "evaluate chi(KG^r(F,s)) >= ceil(cd^r(F,x)/(r-1)) and the ecd variant".to_string(),
        (cd, ecd) => {
            let part = |name: &str, v: Option<Verdict>| v.map(|v| format!("{name}-strengthening {v:?}"));
            [part("cd", cd), part("ecd", ecd)]
                .into_iter()
                .flatten()
                .collect::<Vec<_>>()
                .join(", ")
                .to_uppercase()
        }
    };
    let mut claim = Claim::new(id, params, predicted);

    let chi = claim.record("chi", kneser_chi(f, r, s, budget)?);
    let cd = claim.record("cd_x", defect(f, r, x, DefectKind::Plain, budget)?);
    let ecd = claim.record("ecd_x", defect(f, r, x, DefectKind::Equitable, budget)?);

    let mut verdict = |name: &str, value: Option<usize>| {
        let v = match chi.zip(value) {
            Some((chi, value)) => {
                let bound = value.div_ceil(r - 1);
                claim.computed.set(&format!("{name}_bound"), bound);
                if chi >= bound {
                    Verdict::Holds
                } else {
                    Verdict::Violated
                }
            }
            None => Verdict::Inconclusive,
        };
        claim.verdicts.push((name.to_string(), v));
        v
    };
    let cd_v = verdict("cd", cd);
    let ecd_v = verdict("ecd", ecd);

    let judge = |got: Verdict, want: Option<Verdict>| -> Option<bool> {
        match (got, want) {
            (Verdict::Inconclusive, _) => None,
            (_, None) => Some(true),
            (got, Some(want)) => Some(got == want),
        }
    };
    let relevant: Vec<Option<bool>> = if expect == Expectation::default() {
        vec![judge(cd_v, None), judge(ecd_v, None)]
    } else {
        [(cd_v, expect.cd), (ecd_v, expect.ecd)]
            .into_iter()
            .filter(|(_, want)| want.is_some())
            .map(|(got, want)| judge(got, want))
            .collect()
    };
    let ok = if relevant.contains(&Some(false)) {
        Some(false)
    } else if relevant.iter().all(Option::is_some) {
        Some(true)
    } else {
        None
    };
    claim.decide(ok);
    Ok(claim)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub kind: String,
    pub metadata: serde_json::Map<String, serde_json::Value>,
    pub claims: Vec<Claim>,
    pub summary: Summary,
    /// Wall-clock time; the only field allowed to differ between identical runs.
    pub timing_ms: u64,
}

impl VerificationReport {
    /// Sorts claims by id then parameters and tallies the summary.
    pub fn assemble(
        kind: &str,
        metadata: serde_json::Map<String, serde_json::Value>,
        mut claims: Vec<Claim>,
        started: Instant,
    ) -> Self {
        claims.sort_by(|a, b| a.id.cmp(&b.id).then_with(|| a.params.cmp(&b.params)));
        let mut summary = Summary {
            total: claims.len(),
            ..Default::default()
        };
        for c in &claims {
            match c.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Inconclusive => summary.inconclusive += 1,
            }
        }
        VerificationReport {
            kind: kind.to_string(),
            metadata,
            claims,
            summary,
            timing_ms: started.elapsed().as_millis() as u64,
        }
    }

    /// 0 when everything passed, 1 on any failure, 2 when something was
    /// inconclusive but nothing failed.
    pub fn exit_code(&self) -> i32 {
        if self.summary.fail > 0 {
            1
        } else if self.summary.inconclusive > 0 {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn render_table(&self) -> String {
        let rows: Vec<[String; 5]> = self
            .claims
            .iter()
            .map(|c| {
                let kv = |f: &Fields| f.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ");
                let mut computed = kv(&c.computed);
                for (name, v) in &c.verdicts {
                    write!(computed, " {name}:{v}").unwrap();
                }
                [
                    c.id.clone(),
                    kv(&c.params),
                    c.predicted.clone(),
                    computed.trim().to_string(),
                    format!("{:?}", c.status).to_lowercase(),
                ]
            })
            .collect();
        let header = ["claim", "params", "predicted", "computed", "status"];
        let mut widths = header.map(str::len);
        for row in &rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let mut out = String::new();
        let mut line = |cells: [&str; 5]| {
            let joined: Vec<String> = cells.iter().zip(widths).map(|(c, w)| format!("{c:<w$}")).collect();
            writeln!(out, "{}", joined.join("  ").trim_end()).unwrap();
        };
        line(header);
        for row in &rows {
            line([&row[0], &row[1], &row[2], &row[3], &row[4]]);
        }
        writeln!(
            out,
            "\n{} claims: {} pass, {} fail, {} inconclusive ({} ms)",
            self.summary.total, self.summary.pass, self.summary.fail, self.summary.inconclusive, self.timing_ms
        )
        .unwrap();
        out
    }
}

/// Parameter sets for [`reproduce_paper`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Grid {
    Small,
    Full,
}

impl Grid {
    pub fn thm2_points(self) -> Vec<(usize, usize, usize)> {
        let ns: &[usize] = match self {
            Grid::Small => &[2],
            Grid::Full => &[2, 3],
        };
        let mut out = Vec::new();
        for l in [2, 3] {
            for s in [1, 2] {
                for &n in ns {
                    out.push((l, s, n));
                }
            }
        }
        out
    }

    pub fn thm3_points(self) -> Vec<(usize, usize)> {
        match self {
            Grid::Small => vec![(1, 2), (2, 2)],
            Grid::Full => [1, 2, 3].into_iter().flat_map(|k| [(k, 2), (k, 4)]).collect(),
        }
    }

    /// `(r, k, n)` with `r(k-1) + 1 ≤ n ≤ max_n`.
    pub fn complete_points(self) -> Vec<(usize, usize, usize)> {
        let (ks, max_n): (&[usize], usize) = match self {
            Grid::Small => (&[1, 2], 5),
            Grid::Full => (&[1, 2, 3], 7),
        };
        let mut out = Vec::new();
        for r in [2, 3] {
            for &k in ks {
                for n in r * (k - 1) + 1..=max_n {
                    out.push((r, k, n));
                }
            }
        }
        out
    }
}

/// Largest base edge count for which the complete-hypergraph χ claim is run.
pub const COMPLETE_CHI_MAX_EDGES: u128 = 35;

enum PaperTask {
    Thm2(Thm2Params),
    Thm3(Thm3Params),
    Complete { r: usize, k: usize, n: usize },
}

pub fn reproduce_paper(grid: Grid, budget: Option<u64>, exec: Exec) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut tasks = Vec::new();
    for (l, s, n) in grid.thm2_points() {
        tasks.push(PaperTask::Thm2(Thm2Params::new(l, s, n)?));
    }
    for (k, s) in grid.thm3_points() {
        tasks.push(PaperTask::Thm3(Thm3Params::new(k, s)?));
    }
    for (r, k, n) in grid.complete_points() {
        tasks.push(PaperTask::Complete { r, k, n });
    }

    let results = exec.map(tasks, |task| match task {
        PaperTask::Thm2(p) => thm2_claims(p, budget),
        PaperTask::Thm3(p) => thm3_claims(p, budget),
        PaperTask::Complete { r, k, n } => complete_claims(r, k, n, budget),
    });
    let mut claims = Vec::new();
    for r in results {
        claims.extend(r?);
    }

    let mut metadata = serde_json::Map::new();
    metadata.insert("grid".into(), serde_json::to_value(grid).unwrap());
    metadata.insert("budget".into(), serde_json::to_value(budget).unwrap());
    Ok(VerificationReport::assemble("paper", metadata, claims, started))
}

fn thm2_claims(p: Thm2Params, budget: Option<u64>) -> Result<Vec<Claim>> {
    let f = thm2_family(p);
    let (chi_pred, ecd_pred) = thm2_predicted(p);
    let params = || Fields::new().with("l", p.l).with("s", p.s).with("n", p.n);
    let chi = kneser_chi(&f, 2, p.s, budget)?;
    let ecd = defect(&f, 2, p.s, DefectKind::Equitable, budget)?;
    let mut out = Vec::new();

    let mut c = Claim::new("thm2-chi", params(), format!("chi(KG^2(F,s)) = {chi_pred}"));
    let v = c.record("chi", chi);
    c.decide(v.map(|v| v == chi_pred));
    out.push(c);

    let mut c = Claim::new("thm2-ecd", params(), format!("ecd^2(F,s) = {ecd_pred}"));
    let v = c.record("ecd", ecd);
    c.decide(v.map(|v| v == ecd_pred));
    out.push(c);

    let cert = thm2_upper_certificate(p);
    let mut c = Claim::new("thm2-certificate", params(), format!("valid equitable partition with |Y0| = {ecd_pred}"));
    let valid = verify_certificate(&f, p.s, &cert)?;
    c.computed.set("valid", valid as usize);
    c.computed.set("y0", cert.value());
    c.decide(Some(valid && cert.value() == ecd_pred));
    out.push(c);

    out.push(check_strengthened_with(
        &f,
        2,
        p.s,
        p.s,
        Expectation {
            cd: None,
            ecd: Some(Verdict::Violated),
        },
        params(),
        "thm2-counterexample",
        budget,
    )?);
    out.push(check_aj_bound_with(&f, 2, p.s, params().with("family", 2), budget)?);
    Ok(out)
}

fn thm3_claims(p: Thm3Params, budget: Option<u64>) -> Result<Vec<Claim>> {
    let f = thm3_family(p);
    let mut out = Vec::new();
    let chi = kneser_chi(&f, 2, p.s, budget)?;

    let mut c = Claim::new("thm3-chi", Fields::new().with("k", p.k).with("s", p.s), format!("chi(KG^2(F,s)) = {}", p.k));
    let v = c.record("chi", chi);
    c.decide(v.map(|v| v == p.k));
    out.push(c);

    for l in p.thresholds() {
        let (_, cd_pred, ecd_pred) = thm3_predicted(p, l)?;
        let params = || Fields::new().with("k", p.k).with("s", p.s).with("l", l);
        for (id, kind, pred) in [
            ("thm3-cd", DefectKind::Plain, cd_pred),
            ("thm3-ecd", DefectKind::Equitable, ecd_pred),
        ] {
            let key = if kind == DefectKind::Plain { "cd" } else { "ecd" };
            let mut c = Claim::new(id, params(), format!("{key}^2(F,l) = {pred}"));
            let v = c.record(key, defect(&f, 2, l, kind, budget)?);
            c.decide(v.map(|v| v == pred));
            out.push(c);
        }

        let cert = thm3_upper_certificate(p, l)?;
        let mut c = Claim::new("thm3-certificate", params(), format!("valid equitable partition with |Y0| = {cd_pred}"));
        let valid = verify_certificate(&f, l, &cert)?;
        c.computed.set("valid", valid as usize);
        c.computed.set("y0", cert.value());
        c.decide(Some(valid && cert.value() == cd_pred));
        out.push(c);

        out.push(check_strengthened_with(
            &f,
            2,
            p.s,
            l,
            Expectation {
                cd: Some(Verdict::Violated),
                ecd: None,
            },
            params(),
            "thm3-counterexample",
            budget,
        )?);
    }
    out.push(check_aj_bound_with(
        &f,
        2,
        p.s,
        Fields::new().with("family", 3).with("k", p.k).with("s", p.s),
        budget,
    )?);
    Ok(out)
}

fn complete_claims(r: usize, k: usize, n: usize, budget: Option<u64>) -> Result<Vec<Claim>> {
    let f = complete_uniform(n, k)?;
    let params = || Fields::new().with("r", r).with("k", k).with("n", n);
    let mut out = Vec::new();

    if let Some(pred) = closed_form_cd_complete(n, k, r) {
        let mut c = Claim::new("complete-cd", params(), format!("cd^r(K_n^k, 0) = {pred}"));
        let v = c.record("cd", defect(&f, r, 0, DefectKind::Plain, budget)?);
        c.decide(v.map(|v| v == pred));
        out.push(c);
    }
    if binomial(n, k) <= COMPLETE_CHI_MAX_EDGES {
        if let Some(pred) = closed_form_chi_complete(n, k, r) {
            let mut c = Claim::new("complete-chi", params(), format!("chi(KG^r(K_n^k, 0)) = {pred}"));
            let v = c.record("chi", kneser_chi(&f, r, 0, budget)?);
            c.decide(v.map(|v| v == pred));
            out.push(c);
        }
        let mut dk = check_dk_bound(&f, r, budget)?;
        dk.params = params();
        out.push(dk);
    }
    Ok(out)
}

/// Settings for [`fuzz_corpus`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FuzzConfig {
    pub seed: u64,
    pub trials: usize,
    pub max_n: usize,
    pub max_edges: usize,
    pub r_values: Vec<usize>,
    pub max_s: usize,
    pub budget: Option<u64>,
    #[serde(skip)]
    pub exec: Exec,
}

impl FuzzConfig {
    pub fn new(seed: u64, trials: usize, max_n: usize) -> Self {
        FuzzConfig {
            seed,
            trials,
            max_n,
            max_edges: 8,
            r_values: vec![2, 3],
            max_s: 2,
            budget: None,
            exec: Exec::available(),
        }
    }
}

/// One generated instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuzzInstance {
    pub trial: usize,
    pub f: Hypergraph,
    pub r: usize,
    pub s: usize,
}

/// `m` random edges over `n` vertices, each of a size drawn uniformly from
/// `s+1..=n` and then a uniform subset of that size. Duplicates are kept.
pub fn random_hypergraph<R: Rng>(rng: &mut R, n: usize, m: usize, s: usize) -> Result<Hypergraph> {
    let mut edges = Vec::with_capacity(m);
    if s < n {
        for _ in 0..m {
            let size = rng.gen_range(s + 1..=n);
            edges.push(VertexSet::from_indices(n, sample(rng, n, size))?);
        }
    }
    Hypergraph::new(n, edges)
}

/// The instances of a corpus, generated from a single seeded stream.
pub fn fuzz_instances(cfg: &FuzzConfig) -> Result<Vec<FuzzInstance>> {
    if cfg.max_n == 0 {
        return Err(Error::Domain("max_n must be positive".into()));
    }
    if cfg.r_values.is_empty() || cfg.r_values.iter().any(|&r| r < 2) {
        return Err(Error::Domain("r values must be at least 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    (0..cfg.trials)
        .map(|trial| {
            let n = rng.gen_range(1..=cfg.max_n);
            let r = cfg.r_values[rng.gen_range(0..cfg.r_values.len())];
            let s = rng.gen_range(0..=cfg.max_s.min(n - 1));
            let m = rng.gen_range(0..=cfg.max_edges);
            let f = random_hypergraph(&mut rng, n, m, s)?;
            Ok(FuzzInstance { trial, f, r, s })
        })
        .collect()
}

/// Thresholds `s` with `s < |e|` for every edge (capped at `n` when edgeless).
pub fn legal_thresholds(f: &Hypergraph) -> std::ops::Range<usize> {
    0..f.min_edge_size().unwrap_or(f.n_vertices() + 1)
}

/// Runs the bound, ordering and monotonicity checks on every instance.
pub fn fuzz_corpus(cfg: &FuzzConfig) -> Result<VerificationReport> {
    let started = Instant::now();
    let instances = fuzz_instances(cfg)?;
    let budget = cfg.budget;
    let results = cfg.exec.map(instances, |inst| fuzz_trial(&inst, budget));

    let mut claims = Vec::new();
    let mut ecd_r_exceptions = Vec::new();
    for res in results {
        let (trial_claims, ecd_r_increase) = res?;
        claims.extend(trial_claims);
        if let Some(trial) = ecd_r_increase {
            ecd_r_exceptions.push(trial);
        }
    }

    let mut metadata = serde_json::Map::new();
    metadata.insert("config".into(), serde_json::to_value(cfg).unwrap());
    metadata.insert(
        "ecd_increasing_in_r_trials".into(),
        serde_json::to_value(&ecd_r_exceptions).unwrap(),
    );
    Ok(VerificationReport::assemble("fuzz", metadata, claims, started))
}

/// Claims for one instance, plus the trial index when `ecd^3 > ecd^2` at the
/// trial's `s` (logged, not asserted).
fn fuzz_trial(inst: &FuzzInstance, budget: Option<u64>) -> Result<(Vec<Claim>, Option<usize>)> {
    let FuzzInstance { trial, ref f, r, s } = *inst;
    let base = || Fields::new().with("trial", trial).with("n_vertices", f.n_vertices()).with("n_edges", f.n_edges());
    let mut out = vec![check_aj_bound_with(f, r, s, base(), budget)?];

    let mut cd_vals = Vec::new();
    let mut ecd_vals = Vec::new();
    for t in legal_thresholds(f) {
        cd_vals.push(defect(f, r, t, DefectKind::Plain, budget)?);
        ecd_vals.push(defect(f, r, t, DefectKind::Equitable, budget)?);
    }

    let mut order = Claim::new("ecd-ge-cd", base().with("r", r), "ecd^r(F,t) >= cd^r(F,t) for every legal t");
    let mut mono_cd = Claim::new("cd-monotone-s", base().with("r", r), "cd^r(F,t) <= cd^r(F,t+1)");
    let mut mono_ecd = Claim::new("ecd-monotone-s", base().with("r", r), "ecd^r(F,t) <= ecd^r(F,t+1)");
    let cd: Vec<Option<usize>> = cd_vals.iter().enumerate().map(|(t, v)| mono_cd.record(&format!("cd@{t}"), *v)).collect();
    let ecd: Vec<Option<usize>> =
        ecd_vals.iter().enumerate().map(|(t, v)| mono_ecd.record(&format!("ecd@{t}"), *v)).collect();
    for (t, (c, e)) in cd.iter().zip(&ecd).enumerate() {
        if let (Some(c), Some(e)) = (c, e) {
            order.computed.set(&format!("cd@{t}"), *c);
            order.computed.set(&format!("ecd@{t}"), *e);
        }
    }
    let all = |v: &[Option<usize>]| v.iter().copied().collect::<Option<Vec<usize>>>();
    let nondecreasing = |v: Vec<usize>| v.windows(2).all(|w| w[0] <= w[1]);
    order.decide(all(&cd).zip(all(&ecd)).map(|(c, e)| c.iter().zip(&e).all(|(c, e)| e >= c)));
    mono_cd.decide(all(&cd).map(nondecreasing));
    mono_ecd.decide(all(&ecd).map(nondecreasing));
    out.extend([order, mono_cd, mono_ecd]);

    // Monotonicity in r for cd; for ecd only record exceptions.
    let mut mono_r = Claim::new("cd-monotone-r", base().with("s", s), "cd^3(F,s) <= cd^2(F,s)");
    let cd2 = mono_r.record("cd2", defect(f, 2, s, DefectKind::Plain, budget)?);
    let cd3 = mono_r.record("cd3", defect(f, 3, s, DefectKind::Plain, budget)?);
    mono_r.decide(cd2.zip(cd3).map(|(a, b)| b <= a));
    out.push(mono_r);

    let ecd2 = defect(f, 2, s, DefectKind::Equitable, budget)?;
    let ecd3 = defect(f, 3, s, DefectKind::Equitable, budget)?;
    let ecd_r_increase = match (ecd2, ecd3) {
        (Exact::Value(a), Exact::Value(b)) if b > a => Some(trial),
        _ => None,
    };
    Ok((out, ecd_r_increase))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aj_bound_on_families() {
        let f = thm2_family(Thm2Params::new(2, 1, 2).unwrap());
        let c = check_aj_bound(&f, 2, 1, None).unwrap();
        assert_eq!(c.status, Status::Pass);
        assert_eq!(c.computed.get("chi"), Some(2));

        let f = thm3_family(Thm3Params::new(2, 2).unwrap());
        let c = check_aj_bound(&f, 2, 2, None).unwrap();
        assert_eq!(c.status, Status::Pass);
        assert!(c.computed.get("bound").unwrap() <= 2);

        let single = Hypergraph::from_edge_lists(3, [vec![0, 1, 2]]).unwrap();
        let c = check_aj_bound(&single, 2, 1, None).unwrap();
        assert_eq!(c.computed.get("chi"), Some(1));
        assert_eq!(c.status, Status::Pass);
    }

    #[test]
    fn strengthened_examples() {
        let f = thm2_family(Thm2Params::new(2, 1, 2).unwrap());
        let c = check_strengthened_bound(&f, 2, 1, 1, Expectation::default(), None).unwrap();
        assert_eq!(c.computed.get("chi"), Some(2));
        assert_eq!(c.computed.get("ecd_x"), Some(3));
        assert_eq!(c.verdict("ecd"), Some(Verdict::Violated));
        assert_eq!(c.status, Status::Pass);

        let f = thm3_family(Thm3Params::new(2, 2).unwrap());
        let c = check_strengthened_bound(&f, 2, 2, 2, Expectation { cd: Some(Verdict::Violated), ecd: None }, None)
            .unwrap();
        assert_eq!(c.computed.get("cd_x"), Some(6));
        assert_eq!(c.verdict("cd"), Some(Verdict::Violated));
        assert_eq!(c.status, Status::Pass);

        let f = complete_uniform(5, 2).unwrap();
        let c = check_strengthened_bound(&f, 2, 0, 0, Expectation { cd: Some(Verdict::Violated), ecd: None }, None)
            .unwrap();
        assert_eq!(c.verdict("cd"), Some(Verdict::Holds));
        assert_eq!(c.status, Status::Fail);

        assert!(check_strengthened_bound(&f, 2, 0, 1, Expectation::default(), None).is_err());
    }

    #[test]
    fn exhausted_budget_is_inconclusive() {
        let f = complete_uniform(7, 2).unwrap();
        let c = check_dk_bound(&f, 2, Some(3)).unwrap();
        assert_eq!(c.status, Status::Inconclusive);
        assert!(c.note.is_some());
    }

    #[test]
    fn exit_codes() {
        let claim = |status| Claim {
            status,
            ..Claim::new("x", Fields::new(), "")
        };
        let report = |s: Vec<Status>| {
            VerificationReport::assemble("t", Default::default(), s.into_iter().map(claim).collect(), Instant::now())
        };
        assert_eq!(report(vec![Status::Pass]).exit_code(), 0);
        assert_eq!(report(vec![Status::Pass, Status::Inconclusive]).exit_code(), 2);
        assert_eq!(report(vec![Status::Fail, Status::Inconclusive]).exit_code(), 1);
        assert_eq!(report(vec![]).exit_code(), 0);
    }

    #[test]
    fn random_edges_respect_threshold() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let n = rng.gen_range(1..=8);
            let s = rng.gen_range(0..n);
            let f = random_hypergraph(&mut rng, n, 6, s).unwrap();
            assert!(f.check_threshold(s).is_ok());
        }
    }

    #[test]
    fn fuzz_instances_are_reproducible() {
        let cfg = FuzzConfig::new(9, 20, 6);
        assert_eq!(fuzz_instances(&cfg).unwrap(), fuzz_instances(&cfg).unwrap());
        let other = FuzzConfig::new(10, 20, 6);
        assert_ne!(fuzz_instances(&cfg).unwrap(), fuzz_instances(&other).unwrap());
    }

    #[test]
    fn small_paper_grid_passes() {
        let report = reproduce_paper(Grid::Small, None, Exec::available()).unwrap();
        assert_eq!(report.summary.fail, 0, "{}", report.render_table());
        assert_eq!(report.exit_code(), 0);
        let ids: Vec<&str> = report.claims.iter().map(|c| c.id.as_str()).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        assert_eq!(ids, sorted);
    }
}
