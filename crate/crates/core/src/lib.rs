//! Exact computation of weak chromatic numbers of generalized Kneser
//! hypergraphs `KG^r(F, s)` and of the (equitable) colorability defects
//! `cd^r(F, s)` / `ecd^r(F, s)` that bound them from below.

pub mod chromatic;
pub mod constructions;
pub mod defect;
pub mod error;
pub mod exec;
pub mod harness;
pub mod hypergraph;
pub mod kneser;

pub use chromatic::{chromatic_number_exact, greedy_upper_bound, is_proper_coloring, ChiResult, Coloring};
pub use defect::{
    cd_exact, defect_exact, ecd_exact, verify_certificate, DefectCertificate, DefectKind, DefectOptions, DefectResult,
};
pub use error::{Error, Result};
pub use exec::Exec;
pub use hypergraph::{emit_hypergraph, parse_hypergraph, subseteq_s, Hypergraph, VertexSet, MAX_VERTICES};
pub use kneser::{build_kneser, build_kneser_with, KneserSpec};
