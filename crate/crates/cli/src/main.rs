use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use kneser_core::constructions::{complete_uniform, thm2_family, thm3_family, Thm2Params, Thm3Params};
use kneser_core::harness::{
    check_aj_bound, check_strengthened_bound, fuzz_corpus, reproduce_paper, Expectation, FuzzConfig, Grid,
    VerificationReport, Verdict,
};
use kneser_core::{
    build_kneser, chromatic_number_exact, defect_exact, emit_hypergraph, parse_hypergraph, DefectKind, DefectOptions,
    Error, Exec, Hypergraph, KneserSpec,
};

/// Exit status for unreadable input, bad parameters and other hard errors.
const EXIT_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "kglab", version, about = "Generalized Kneser hypergraphs and colorability defects")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a hypergraph family to a file.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Build KG^r(F, s) from a base hypergraph.
    Kneser {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
        #[command(flatten)]
        io: InOut,
    },
    /// Exact weak chromatic number.
    Chi {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Exact r-colorability defect cd^r(F, s).
    Cd(DefectArgs),
    /// Exact equitable r-colorability defect ecd^r(F, s).
    Ecd(DefectArgs),
    /// Check lower bounds and reproduce the counterexample families.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Check bounds and monotonicity on random hypergraphs.
    Fuzz {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        max_n: usize,
        #[arg(long, default_value_t = 8)]
        max_edges: usize,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// K_n^k: every k-subset of [n].
    Complete {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// {e ∪ S : e an n-subset of [2n + l - 2]} with |S| = s.
    Thm2 {
        #[arg(long)]
        l: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        n: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// k disjoint blocks of size s + 1 (s even).
    Thm3 {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        s: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// chi(KG^r(F,s)) >= ceil(ecd^r(F, floor(s/2)) / (r-1)).
    Aj {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// The same bound with floor(s/2) replaced by x, for cd and ecd.
    Strengthened {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        x: usize,
        #[arg(short, long)]
        input: PathBuf,
        /// Fail unless the cd variant has this verdict.
        #[arg(long, value_enum)]
        expect_cd: Option<ExpectArg>,
        /// Fail unless the ecd variant has this verdict.
        #[arg(long, value_enum)]
        expect_ecd: Option<ExpectArg>,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Recompute every claim of the two families and the complete-hypergraph formulas.
    Paper {
        #[arg(long, value_enum, default_value_t = GridArg::Small)]
        grid: GridArg,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct InOut {
    #[arg(short, long)]
    input: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct DefectArgs {
    #[arg(long)]
    r: usize,
    #[arg(long)]
    s: usize,
    #[arg(short, long)]
    input: PathBuf,
    #[arg(long)]
    budget: Option<u64>,
    /// Split the search across threads.
    #[arg(long)]
    parallel: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExpectArg {
    Holds,
    Violated,
}

impl From<ExpectArg> for Verdict {
    fn from(e: ExpectArg) -> Verdict {
        match e {
            ExpectArg::Holds => Verdict::Holds,
            ExpectArg::Violated => Verdict::Violated,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GridArg {
    Small,
    Full,
}

fn read_input(path: &Path) -> Result<Hypergraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_hypergraph(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => io::stdout().write_all(text.as_bytes()).context("writing to stdout"),
    }
}

fn print_report(report: &VerificationReport, as_json: bool) -> ExitCode {
    if as_json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.render_table());
    }
    ExitCode::from(report.exit_code() as u8)
}

/// Prints bounds for a search that ran out of budget; exit status 2.
fn print_inconclusive(err: &Error, as_json: bool) -> Option<ExitCode> {
    let Error::BudgetExhausted { budget, nodes, lower, upper } = *err else {
        return None;
    };
    if as_json {
        let out = json!({ "status": "inconclusive", "budget": budget, "nodes_explored": nodes, "lower": lower, "upper": upper });
        println!("{out}");
    } else {
        println!("inconclusive: budget of {budget} nodes exhausted, optimum in [{lower}, {upper}]");
    }
    Some(ExitCode::from(2))
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Gen(cmd) => {
            let (h, output) = match cmd {
                GenCommand::Complete { n, k, output } => (complete_uniform(n, k)?, output),
                GenCommand::Thm2 { l, s, n, output } => (thm2_family(Thm2Params::new(l, s, n)?), output),
                GenCommand::Thm3 { k, s, output } => (thm3_family(Thm3Params::new(k, s)?), output),
            };
            write_output(output.as_deref(), &emit_hypergraph(&h))?;
        }
        Command::Kneser { r, s, io } => {
            let f = read_input(&io.input)?;
            let kg = build_kneser(&f, KneserSpec::new(r, s)?)?;
            write_output(io.output.as_deref(), &emit_hypergraph(&kg))?;
        }
        Command::Chi { input, budget, json } => {
            let h = read_input(&input)?;
            match chromatic_number_exact(&h, budget) {
                Ok(res) => {
                    if json {
                        let out = json!({
                            "status": "exact",
                            "chi": res.chi,
                            "nodes_explored": res.nodes_explored,
                            "coloring": res.witness.colors,
                        });
                        println!("{out}");
                    } else {
                        println!("{:<15}{}", "chi", res.chi);
                        println!("{:<15}{}", "nodes", res.nodes_explored);
                        let colors: Vec<String> = res.witness.colors.iter().map(|c| c.to_string()).collect();
                        println!("{:<15}{}", "coloring", colors.join(" "));
                    }
                }
                Err(e) => return print_inconclusive(&e, json).ok_or(e.into()),
            }
        }
        Command::Cd(args) => return run_defect(args, DefectKind::Plain),
        Command::Ecd(args) => return run_defect(args, DefectKind::Equitable),
        Command::Verify(cmd) => {
            let started = Instant::now();
            let (claim, kind, as_json) = match cmd {
                VerifyCommand::Aj { r, s, input, budget, json } => {
                    let f = read_input(&input)?;
                    (check_aj_bound(&f, r, s, budget)?, "aj", json)
                }
                VerifyCommand::Strengthened {
                    r,
                    s,
                    x,
                    input,
                    expect_cd,
                    expect_ecd,
                    budget,
                    json,
                } => {
                    let f = read_input(&input)?;
                    let expect = Expectation {
                        cd: expect_cd.map(Into::into),
                        ecd: expect_ecd.map(Into::into),
                    };
                    (check_strengthened_bound(&f, r, s, x, expect, budget)?, "strengthened", json)
                }
                VerifyCommand::Paper { grid, budget, json } => {
                    let grid = match grid {
                        GridArg::Small => Grid::Small,
                        GridArg::Full => Grid::Full,
                    };
                    let report = reproduce_paper(grid, budget, Exec::available())?;
                    return Ok(print_report(&report, json));
                }
            };
            let report = VerificationReport::assemble(kind, serde_json::Map::new(), vec![claim], started);
            return Ok(print_report(&report, as_json));
        }
        Command::Fuzz {
            seed,
            trials,
            max_n,
            max_edges,
            budget,
            json,
        } => {
            let cfg = FuzzConfig {
                max_edges,
                budget,
                ..FuzzConfig::new(seed, trials, max_n)
            };
            let report = fuzz_corpus(&cfg)?;
            return Ok(print_report(&report, json));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_defect(args: DefectArgs, kind: DefectKind) -> Result<ExitCode> {
    let f = read_input(&args.input)?;
    let opts = DefectOptions {
        budget: args.budget,
        exec: if args.parallel { Exec::Parallel } else { Exec::Sequential },
    };
    let res = match defect_exact(&f, args.r, args.s, kind, opts) {
        Ok(res) => res,
        Err(e) => return print_inconclusive(&e, args.json).ok_or(e.into()),
    };
    let cert = res.certificate.to_json();
    if args.json {
        let mut out = serde_json::to_value(&cert)?;
        out["nodes_explored"] = json!(res.nodes_explored);
        out["mode"] = json!(res.mode);
        println!("{out}");
    } else {
        let list = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        let name = match kind {
            DefectKind::Plain => "cd",
            DefectKind::Equitable => "ecd",
        };
        println!("{:<15}{}", format!("{name}^{}(F,{})", args.r, args.s), cert.value);
        println!("{:<15}{}", "nodes", res.nodes_explored);
        println!("{:<15}{}", "X0", list(&cert.x0));
        for (i, part) in cert.parts.iter().enumerate() {
            println!("{:<15}{}", format!("X{}", i + 1), list(part));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
