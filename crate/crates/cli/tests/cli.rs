use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

use ihall_cli::{
    cmd_census, cmd_cross_check, cmd_identities, cmd_verify, load_quiver, IdentityBounds, Status,
    DEFAULT_SPACE_BUDGET,
};
use ihall_core::engine::{Parity, RelationKind};
use ihall_core::quiver::{DimVector, IQuiver};

const C2: &str = r#"{"vertices":["1","2"],"arrows":[["alpha","1","2"],["beta","2","1"]]}"#;
const SWAP: &str = r#"{"vertices":["1","2"],"arrows":[],"tau":{"1":"2","2":"1"}}"#;
const A2: &str = r#"{"vertices":["1","2"],"arrows":[["alpha","1","2"]]}"#;
const ONE: &str = r#"{"vertices":["1"],"arrows":[]}"#;

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn ihall(args: &[&str]) -> (i32, Value, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_ihall"))
        .args(args)
        .output()
        .unwrap();
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), json, out.stdout)
}

#[test]
fn identities_default_grid() {
    let r = cmd_identities(IdentityBounds::default()).unwrap();
    assert_eq!(r.status, Status::Verified);
    assert!(r.stats["t_tilde_tuples"].as_u64().unwrap() > 100);
    assert_eq!(r.stats["lemma_sum_values"], 8);
}

#[test]
fn identities_empty_bounds() {
    let r = cmd_identities(IdentityBounds {
        max_a: 0,
        max_b: 0,
        max_sum: 0,
        max_d: 0,
        max_n: 0,
    })
    .unwrap();
    assert_eq!(r.status, Status::Verified);
    assert_eq!(r.stats["lemma_sum_values"], 0);
    assert!(cmd_identities(IdentityBounds {
        max_d: -1,
        ..IdentityBounds::default()
    })
    .is_err());
}

#[test]
fn verify_iserre_on_cycle() {
    let dir = TempDir::new().unwrap();
    let iq = load_quiver(&write(&dir, "c2.json", C2)).unwrap();
    for parity in [Parity::Even, Parity::Odd] {
        let r = cmd_verify(&iq, 2, &[RelationKind::ISerre], parity, DEFAULT_SPACE_BUDGET).unwrap();
        assert_eq!(r.status, Status::Verified);
        assert_eq!(r.residual, None);
        assert_eq!(r.stats["checks"][0]["backend"], "engine");
    }
}

#[test]
fn verify_swap_uses_oracle() {
    let r = cmd_verify(
        &IQuiver::two_swapped(),
        2,
        &[RelationKind::TkB, RelationKind::Commute, RelationKind::OrbitSerre],
        Parity::Even,
        DEFAULT_SPACE_BUDGET,
    )
    .unwrap();
    assert_eq!(r.status, Status::Verified);
    let checks = r.stats["checks"].as_array().unwrap();
    assert!(checks
        .iter()
        .any(|c| c["relation"] == "orbit-serre" && c["backend"] == "oracle"));
    // no pair of distinct, unrelated vertices
    assert!(checks
        .iter()
        .any(|c| c["relation"] == "commute" && c["backend"] == "none"));
}

#[test]
fn verify_a2_all_relations() {
    let r = cmd_verify(
        &IQuiver::a2(),
        2,
        &RelationKind::ALL,
        Parity::Even,
        DEFAULT_SPACE_BUDGET,
    )
    .unwrap();
    assert_eq!(r.status, Status::Verified);
    assert_eq!(r.exit_code(), 0);
}

#[test]
fn verify_budget_is_reported() {
    let r = cmd_verify(&IQuiver::two_swapped(), 2, &[RelationKind::OrbitSerre], Parity::Even, 2);
    match r {
        Ok(r) => assert_eq!(r.status, Status::SkippedBudget),
        Err(e) => assert!(e.is_budget()),
    }
}

#[test]
fn census_examples() {
    let one = IQuiver::single_vertex();
    let r = cmd_census(&one, 2, &DimVector(vec![2]), false, DEFAULT_SPACE_BUDGET).unwrap();
    assert_eq!(r.stats["classes"], 2);
    let r = cmd_census(&one, 2, &DimVector(vec![0]), false, DEFAULT_SPACE_BUDGET).unwrap();
    assert_eq!(r.stats["classes"], 1);
    // S1+S2, the two uniserials, and E-free shapes all differ
    let r = cmd_census(&IQuiver::a2(), 2, &DimVector(vec![1, 1]), false, DEFAULT_SPACE_BUDGET)
        .unwrap();
    let recs = r.stats["records"].as_array().unwrap();
    assert_eq!(recs.len(), r.stats["classes"].as_u64().unwrap() as usize);
    assert!(recs.iter().all(|x| x["aut"].as_str().unwrap().parse::<u64>().unwrap() > 0));
    assert!(cmd_census(&one, 2, &DimVector(vec![1, 1]), false, DEFAULT_SPACE_BUDGET).is_err());
    let r = cmd_census(&one, 2, &DimVector(vec![3]), false, 2).unwrap();
    assert_eq!(r.status, Status::SkippedBudget);
}

#[test]
fn census_of_path_algebra() {
    // kQ for A_2 at (1,1): the split module and the indecomposable
    let r = cmd_census(&IQuiver::a2(), 2, &DimVector(vec![1, 1]), true, DEFAULT_SPACE_BUDGET)
        .unwrap();
    assert_eq!(r.stats["classes"], 2);
}

#[test]
fn cross_check_examples() {
    let r = cmd_cross_check(&IQuiver::a2(), 2, 2, DEFAULT_SPACE_BUDGET).unwrap();
    assert_eq!(r.status, Status::Verified);
    assert_eq!(r.stats["words"], 7);
    let r = cmd_cross_check(&IQuiver::single_vertex(), 2, 3, DEFAULT_SPACE_BUDGET).unwrap();
    assert_eq!(r.status, Status::Verified);
    let r = cmd_cross_check(&IQuiver::a2(), 2, 0, DEFAULT_SPACE_BUDGET).unwrap();
    assert_eq!(r.status, Status::Verified);
    assert_eq!(r.stats["words"], 1);
    assert!(cmd_cross_check(&IQuiver::two_swapped(), 2, 1, DEFAULT_SPACE_BUDGET).is_err());
}

#[test]
fn binary_exit_codes_and_schema() {
    let dir = TempDir::new().unwrap();
    let c2 = write(&dir, "c2.json", C2);
    let (code, json, _) = ihall(&["verify", "--quiver", c2.to_str().unwrap(), "--relations", "iserre"]);
    assert_eq!(code, 0);
    for key in ["command", "inputs", "status", "residual", "stats", "elapsed_ms"] {
        assert!(json.get(key).is_some(), "missing {key}");
    }
    assert_eq!(json["status"], "verified");

    let swap = write(&dir, "swap.json", SWAP);
    let (code, json, _) = ihall(&[
        "verify",
        "--quiver",
        swap.to_str().unwrap(),
        "--relations",
        "orbit-serre",
        "--budget",
        "2",
    ]);
    assert_ne!(code, 0);
    if !json.is_null() {
        assert_eq!(json["status"], "skipped-budget");
    }

    let bad = write(&dir, "bad.json", r#"{"vertices":["1"],"arrows":[["a","1","9"]]}"#);
    let (code, _, _) = ihall(&["census", "--quiver", bad.to_str().unwrap(), "--dim", "1"]);
    assert_ne!(code, 0);
    let (code, _, _) = ihall(&["verify", "--quiver", c2.to_str().unwrap(), "--relations", "nope"]);
    assert_ne!(code, 0);
}

#[test]
fn stable_reports_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let a2 = write(&dir, "a2.json", A2);
    let one = write(&dir, "one.json", ONE);
    let args = ["--stable", "cross-check", "--quiver", a2.to_str().unwrap(), "--max-len", "2"];
    let (c1, _, first) = ihall(&args);
    let (c2, _, second) = ihall(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(first, second);
    let args = ["--stable", "census", "--quiver", one.to_str().unwrap(), "--dim", "3"];
    assert_eq!(ihall(&args).2, ihall(&args).2);
}
