use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn kglab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kglab")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn gen_complete_matches_canonical_form() {
    let out = kglab(&["gen", "complete", "--n", "4", "--k", "2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "p hg 4 6\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n");
}

#[test]
fn gen_writes_files_and_rejects_bad_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t3.hg");
    let out = kglab(&["gen", "thm3", "--k", "2", "--s", "2", "-o", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(fs::read_to_string(&path).unwrap(), "p hg 6 2\ne 1 2 3\ne 4 5 6\n");

    assert_eq!(kglab(&["gen", "thm3", "--k", "2", "--s", "3"]).status.code(), Some(3));
    assert_eq!(kglab(&["gen", "thm2", "--l", "1", "--s", "1", "--n", "2"]).status.code(), Some(3));
    assert_eq!(kglab(&["gen", "complete", "--n", "5", "--k", "0"]).status.code(), Some(3));
}

#[test]
fn kneser_of_k4_2() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "k42.hg", "p hg 4 6\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n");
    let out = kglab(&["kneser", "--r", "2", "--s", "0", "-i", &input]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "p hg 6 3\ne 1 6\ne 2 5\ne 3 4\n");

    let err = kglab(&["kneser", "--r", "2", "--s", "2", "-i", &input]);
    assert_eq!(err.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&err.stderr).contains("edge 0"));
}

#[test]
fn parse_errors_report_line() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "bad.hg", "p hg 2 1\ne 3\n");
    let out = kglab(&["chi", "-i", &input]);
    assert_eq!(out.status.code(), Some(3));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("line 2") && msg.contains("out of range"), "{msg}");
}

#[test]
fn chi_of_petersen() {
    let dir = tempfile::tempdir().unwrap();
    let base = dir.path().join("k52.hg");
    assert!(kglab(&["gen", "complete", "--n", "5", "--k", "2", "-o", base.to_str().unwrap()]).status.success());
    let kg = dir.path().join("petersen.hg");
    let out = kglab(&["kneser", "--r", "2", "--s", "0", "-i", base.to_str().unwrap(), "-o", kg.to_str().unwrap()]);
    assert!(out.status.success());

    let out = kglab(&["chi", "-i", kg.to_str().unwrap(), "--json"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["chi"], 3);
    assert_eq!(v["coloring"].as_array().unwrap().len(), 10);

    let table = stdout(&kglab(&["chi", "-i", kg.to_str().unwrap()]));
    assert!(table.lines().next().unwrap().starts_with("chi"));
}

#[test]
fn chi_budget_exhaustion_is_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let base = dir.path().join("k72.hg");
    kglab(&["gen", "complete", "--n", "7", "--k", "2", "-o", base.to_str().unwrap()]);
    let kg = dir.path().join("kg.hg");
    kglab(&["kneser", "--r", "2", "--s", "0", "-i", base.to_str().unwrap(), "-o", kg.to_str().unwrap()]);
    let out = kglab(&["chi", "-i", kg.to_str().unwrap(), "--budget", "5", "--json"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["status"], "inconclusive");
    assert!(v["lower"].as_u64().unwrap() <= 5 && v["upper"].as_u64().unwrap() >= 5);
}

#[test]
fn cd_and_ecd_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("t2.hg");
    kglab(&["gen", "thm2", "--l", "2", "--s", "1", "--n", "2", "-o", f.to_str().unwrap()]);

    let out = kglab(&["ecd", "--r", "2", "--s", "1", "-i", f.to_str().unwrap(), "--json"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["value"], 3);
    assert_eq!(v["equitable"], true);
    assert_eq!(v["threshold_s"], 1);
    assert_eq!(v["r"], 2);
    assert_eq!(v["x0"].as_array().unwrap().len(), 3);

    let seq = json(&kglab(&["cd", "--r", "3", "--s", "1", "-i", f.to_str().unwrap(), "--json"]));
    let par = json(&kglab(&["cd", "--r", "3", "--s", "1", "-i", f.to_str().unwrap(), "--json", "--parallel"]));
    assert_eq!(seq["value"], par["value"]);
    assert_eq!(seq["equitable"], false);
    assert_eq!(par["mode"], "parallel");
}

#[test]
fn verify_subcommands() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("t3.hg");
    kglab(&["gen", "thm3", "--k", "2", "--s", "2", "-o", f.to_str().unwrap()]);
    let f = f.to_str().unwrap();

    let out = kglab(&["verify", "aj", "--r", "2", "--s", "2", "-i", f, "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["claims"][0]["status"], "pass");

    let args = ["verify", "strengthened", "--r", "2", "--s", "2", "--x", "2", "-i", f, "--json"];
    let out = kglab(&args);
    assert_eq!(out.status.code(), Some(0));
    let claim = &json(&out)["claims"][0];
    assert_eq!(claim["computed"]["cd_x"], 6);
    assert_eq!(claim["verdicts"][0], serde_json::json!(["cd", "VIOLATED"]));

    let mut expect_holds = args.to_vec();
    expect_holds.extend(["--expect-cd", "holds"]);
    assert_eq!(kglab(&expect_holds).status.code(), Some(1));

    let mut budgeted = args.to_vec();
    budgeted.extend(["--budget", "1"]);
    assert_eq!(kglab(&budgeted).status.code(), Some(2));

    let bad_x = kglab(&["verify", "strengthened", "--r", "2", "--s", "2", "--x", "3", "-i", f]);
    assert_eq!(bad_x.status.code(), Some(3));
}

#[test]
fn fuzz_and_paper_reports() {
    let out = kglab(&["fuzz", "--seed", "1", "--trials", "10", "--max-n", "6", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["kind"], "fuzz");
    assert_eq!(v["summary"]["fail"], 0);

    let out = kglab(&["verify", "paper"]);
    assert_eq!(out.status.code(), Some(0));
    let table = stdout(&out);
    assert!(table.starts_with("claim"));
    assert!(table.contains("thm2-counterexample"));
}

#[test]
fn usage_errors_do_not_collide_with_inconclusive() {
    assert_eq!(kglab(&["chi"]).status.code(), Some(3));
    assert_eq!(kglab(&["--help"]).status.code(), Some(0));
}
