use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use relief_core::model::{load_instance, Solution};

fn relief(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_relief"))
        .current_dir(dir)
        .args(args)
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn gen(dir: &Path, n: &str, kind: &str, seed: &str) {
    let out = relief(
        dir,
        &[
            "gen", "--n", n, "--m", "2", "--type", kind, "--seed", seed, "-o", "i.json",
        ],
    );
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn gen_writes_valid_instance_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = relief(
        dir.path(),
        &[
            "gen", "--n", "15", "--m", "3", "--type", "VTL", "--seed", "1", "-o", "i.json",
        ],
    );
    assert_eq!(code(&out), 0);
    let inst = load_instance(dir.path().join("i.json")).unwrap();
    assert_eq!((inst.n, inst.m), (15, 3));
    let manifest = fs::read_to_string(dir.path().join("i.json.manifest.json")).unwrap();
    assert!(manifest.contains("\"seed\": 1"));
}

#[test]
fn oracle_and_branch_and_price_agree() {
    let dir = tempfile::tempdir().unwrap();
    gen(dir.path(), "6", "T", "4");
    assert_eq!(
        code(&relief(
            dir.path(),
            &["solve", "i.json", "--bnp", "--gap", "0", "--out", "b"]
        )),
        0
    );
    assert_eq!(
        code(&relief(
            dir.path(),
            &["solve", "i.json", "--oracle", "--out", "o"]
        )),
        0
    );
    let read = |d: &str| -> Solution {
        serde_json::from_str(&fs::read_to_string(dir.path().join(d).join("solution.json")).unwrap())
            .unwrap()
    };
    let (b, o) = (read("b"), read("o"));
    assert!((b.iaaf - o.iaaf).abs() < 1e-6 * (1.0 + o.iaaf));
    assert!(dir.path().join("b/manifest.json").exists());
}

#[test]
fn validate_reports_violated_constraint() {
    let dir = tempfile::tempdir().unwrap();
    gen(dir.path(), "5", "A", "2");
    assert_eq!(
        code(&relief(dir.path(), &["solve", "i.json", "--out", "s"])),
        0
    );
    let path = dir.path().join("s/solution.json");
    let ok = relief(dir.path(), &["validate", "i.json", "s/solution.json"]);
    assert_eq!(code(&ok), 0);
    let mut sol: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    sol["total_time"] = serde_json::json!(1.0);
    fs::write(&path, sol.to_string()).unwrap();
    let bad = relief(dir.path(), &["validate", "i.json", "s/solution.json"]);
    assert_eq!(code(&bad), 1);
    assert!(String::from_utf8_lossy(&bad.stdout).contains("total_time_value"));
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        code(&relief(dir.path(), &["solve", "i.json", "--bogus"])),
        2
    );
    assert_eq!(code(&relief(dir.path(), &["frobnicate"])), 2);
    gen(dir.path(), "4", "A", "1");
    assert_eq!(
        code(&relief(
            dir.path(),
            &["solve", "i.json", "--disable", "nothing"]
        )),
        2
    );
}

#[test]
fn tight_bound_is_infeasible() {
    let dir = tempfile::tempdir().unwrap();
    gen(dir.path(), "5", "A", "3");
    let out = relief(
        dir.path(),
        &["solve", "i.json", "--epsilon", "1", "--out", "s"],
    );
    assert_eq!(code(&out), 1);
    assert!(!dir.path().join("s/solution.json").exists());
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    gen(dir.path(), "5", "T", "5");
    fs::write(
        dir.path().join("c.toml"),
        "lambda = 0.0\nseed = 7\ndisable = [\"tabu\"]\n",
    )
    .unwrap();
    let out = relief(
        dir.path(),
        &[
            "solve", "i.json", "--config", "c.toml", "--lambda", "0.25", "--out", "s",
        ],
    );
    assert_eq!(code(&out), 0);
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("s/manifest.json")).unwrap())
            .unwrap();
    assert_eq!(manifest["settings"]["lambda"], 0.25);
    assert_eq!(manifest["seed"], 7);
    assert_eq!(manifest["settings"]["disable"][0], "tabu");
}

#[test]
fn alloc_pareto_pof_and_tradeoff_write_results() {
    let dir = tempfile::tempdir().unwrap();
    gen(dir.path(), "5", "VT", "6");
    fs::write(dir.path().join("r.json"), "[[1, 2], [3, 4, 5]]").unwrap();
    assert_eq!(
        code(&relief(
            dir.path(),
            &["alloc", "i.json", "--routes", "r.json", "--out", "a"]
        )),
        0
    );
    let alloc: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("a/allocation.json")).unwrap())
            .unwrap();
    assert_eq!(alloc["load_bounds_hold"], true);
    assert_eq!(
        code(&relief(dir.path(), &["tradeoff", "i.json", "--out", "t"])),
        0
    );
    let table = fs::read_to_string(dir.path().join("t/tradeoff.csv")).unwrap();
    assert!(table.starts_with("epsilon,f1,f2,time increase %,IAAF decrease %,favorable"));
    assert!(dir.path().join("t/pareto.csv").exists());
    let out = relief(
        dir.path(),
        &["pof", "i.json", "--epsilons", "400,1000", "--out", "p"],
    );
    assert_eq!(code(&out), 0);
    let pof = fs::read_to_string(dir.path().join("p/pof.csv")).unwrap();
    assert_eq!(pof.lines().count(), 3);
}
