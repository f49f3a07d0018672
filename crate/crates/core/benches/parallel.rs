use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use kneser_core::constructions::{complete_uniform, thm2_family, thm3_family, Thm2Params, Thm3Params};
use kneser_core::harness::{fuzz_corpus, reproduce_paper, FuzzConfig, Grid};
use kneser_core::{build_kneser_with, defect_exact, DefectKind, DefectOptions, Exec, KneserSpec};

const MODES: [Exec; 2] = [Exec::Sequential, Exec::Parallel];

fn kneser_construction(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_kneser");
    let base = complete_uniform(9, 3).unwrap();
    for exec in MODES {
        for r in [2, 3] {
            group.bench_with_input(BenchmarkId::new(format!("{exec:?}"), format!("K9_3_r{r}")), &r, |b, &r| {
                b.iter(|| build_kneser_with(black_box(&base), KneserSpec::new(r, 0).unwrap(), exec).unwrap())
            });
        }
    }
    group.finish();
}

fn defect_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("defect_exact");
    let cases = [
        ("thm3_k3_s4_l3", thm3_family(Thm3Params::new(3, 4).unwrap()), 2, 3),
        ("thm2_l3_s2_n3", thm2_family(Thm2Params::new(3, 2, 3).unwrap()), 2, 2),
        ("K8_3_r3", complete_uniform(8, 3).unwrap(), 3, 0),
    ];
    for exec in MODES {
        for (name, f, r, s) in &cases {
            group.bench_function(BenchmarkId::new(format!("{exec:?}"), name), |b| {
                b.iter(|| {
                    defect_exact(black_box(f), *r, *s, DefectKind::Equitable, DefectOptions { budget: None, exec })
                        .unwrap()
                })
            });
        }
    }
    group.finish();
}

fn corpus(c: &mut Criterion) {
    let mut group = c.benchmark_group("harness");
    group.sample_size(10);
    for exec in MODES {
        group.bench_function(BenchmarkId::new("fuzz_40x8", format!("{exec:?}")), |b| {
            let cfg = FuzzConfig {
                exec,
                ..FuzzConfig::new(42, 40, 8)
            };
            b.iter(|| fuzz_corpus(&cfg).unwrap())
        });
        group.bench_function(BenchmarkId::new("paper_small", format!("{exec:?}")), |b| {
            b.iter(|| reproduce_paper(Grid::Small, None, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, kneser_construction, defect_search, corpus);
criterion_main!(benches);
