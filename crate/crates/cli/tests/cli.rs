//! Golden tests for the `fgr` binary. Set `UPDATE_GOLDEN=1` to rewrite the
//! expected outputs after an intentional change.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn fgr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fgr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

const CASES: &[(&str, &[&str])] = &[
    ("member_example", &["member", "--rank", "2", "--gens", "a,baBB,bbaB,bbb", "--word", "(a[a,b])^2"]),
    ("member_odd_power", &["member", "--rank", "2", "--gens", "a,baBB,bbaB,bbb", "--word", "a[a,b]"]),
    ("bergman_2_3_1", &["bergman", "--n", "2", "--m", "3", "--k", "1"]),
    ("bergman_4_5_3", &["bergman", "--n", "4", "--m", "5", "--k", "3", "--format", "tsv"]),
    ("wk_1", &["wk", "--k", "1"]),
    ("wk_3_tsv", &["wk", "--k", "3", "--format", "tsv"]),
    ("fold_k", &["fold", "--gens", "a,baBB,bbaB"]),
    ("basis_k_tree", &["basis", "--gens", "a,baBB,bbaB", "--tree", "0:1:2,1:2:2"]),
    ("basis_k_default", &["basis", "--gens", "a,baBB,bbaB", "--format", "tsv"]),
    ("rewrite_k", &["rewrite", "--gens", "a,baBB,bbaB", "--tree", "0:1:2,1:2:2", "--word", "(a[a,b])^2"]),
    ("intersect_k_w1", &["intersect", "--gens", "a,baBB,bbaB", "--gens", "aabAB"]),
    ("visible_ambient", &["visible", "--rank", "3", "--word", "a^2 b^-4 c^6"]),
    ("visible_in_subgroup", &["visible", "--gens", "a,baBB,bbaB", "--tree", "0:1:2,1:2:2", "--word", "(a[a,b])^2"]),
    ("transfer_h3", &["transfer", "--gens", "a,baBB,bbaB,bbb", "--word", "aabAB"]),
    ("gamma_3", &["gamma", "--m", "3"]),
    ("hm_5", &["hm", "--m", "5", "--format", "tsv"]),
    ("lm_4", &["lm", "--m", "4", "--format", "tsv"]),
    ("lm_5", &["lm", "--m", "5", "--format", "tsv"]),
    ("lemma33_3", &["lemma33", "--m", "3"]),
    ("lemma33_9", &["lemma33", "--m", "9", "--format", "tsv"]),
    ("suite_schreier", &["suite", "schreier-formula", "--trials", "50", "--seed", "12", "--format", "tsv"]),
];

#[test]
fn golden_outputs() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut mismatched = Vec::new();
    for (name, args) in CASES {
        let out = fgr(args);
        assert!(out.status.success(), "{name}: {}", String::from_utf8_lossy(&out.stderr));
        let actual = String::from_utf8(out.stdout).unwrap();
        let path = golden_dir().join(format!("{name}.out"));
        if update {
            fs::create_dir_all(golden_dir()).unwrap();
            fs::write(&path, &actual).unwrap();
            continue;
        }
        let expected = fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden {}", path.display()));
        if actual != expected {
            eprintln!("--- {name}\nexpected:\n{expected}\nactual:\n{actual}");
            mismatched.push(*name);
        }
    }
    assert!(mismatched.is_empty(), "golden mismatches: {mismatched:?}");
}

#[test]
fn documented_examples() {
    let out = fgr(&["member", "--rank", "2", "--gens", "a,baBB,bbaB,bbb", "--word", "(a[a,b])^2"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v, serde_json::json!({ "member": true }));

    let out = fgr(&["bergman", "--n", "2", "--m", "3", "--k", "1"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "no");

    let out = fgr(&["wk", "--k", "1"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "\"aabAB\"");
}

#[test]
fn output_is_deterministic() {
    let args = ["suite", "hanna-neumann", "--trials", "40", "--seed", "9"];
    assert_eq!(fgr(&args).stdout, fgr(&args).stdout);
}

#[test]
fn graph_files_round_trip() {
    let dir = std::env::temp_dir().join(format!("fgr-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let file = dir.join("gamma3.json");
    fs::write(&file, fgr(&["gamma", "--m", "3"]).stdout).unwrap();
    let path = file.to_str().unwrap();

    let out = fgr(&["member", "--graph", path, "--word", "bbb"]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("true"));

    // subgroups are taken in command-line order
    let a: serde_json::Value = serde_json::from_slice(&fgr(&["intersect", "--graph", path, "--gens", "aabAB"]).stdout).unwrap();
    let b: serde_json::Value = serde_json::from_slice(&fgr(&["intersect", "--gens", "aabAB", "--graph", path]).stdout).unwrap();
    assert_eq!((a["rank_h"].as_u64(), a["rank_r"].as_u64()), (Some(4), Some(1)));
    assert_eq!((b["rank_h"].as_u64(), b["rank_r"].as_u64()), (Some(1), Some(4)));
    fs::remove_dir_all(&dir).ok();
}

#[test]
fn exit_codes() {
    let parse = fgr(&["member", "--gens", "a", "--word", "a(b"]);
    assert_eq!(parse.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&parse.stderr).contains("position 3"));

    assert_eq!(fgr(&["gamma", "--m", "0"]).status.code(), Some(1));
    assert_eq!(fgr(&["member", "--gens", "z", "--word", "a"]).status.code(), Some(1));
    assert_eq!(fgr(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(fgr(&["member", "--bogus"]).status.code(), Some(2));
    assert_eq!(fgr(&["intersect", "--gens", "a"]).status.code(), Some(2));
    assert_eq!(fgr(&["suite", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(fgr(&["basis", "--gens", "a,b", "--tree", "0:0"]).status.code(), Some(2));
}
