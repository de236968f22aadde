//! Black-box checks of the command-line interface: the worked decide and
//! invariants examples with their documented exit codes and fields, the
//! exhaustive self-test grid, witness output, realization round-trips,
//! rational entries, and error exits.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::{json, Value};

fn workdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pencils-cli-{tag}-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_fixture(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path
}

fn run(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_pencils"))
        .args(args)
        .output()
        .expect("binary runs");
    let stdout = String::from_utf8(out.stdout).unwrap();
    let stderr = String::from_utf8(out.stderr).unwrap();
    let value = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    (out.status.code().expect("no signal"), value, stderr)
}

const DIAG_S_1: &str =
    r#"{"field":{"kind":"prime","p":2},"rows":2,"cols":2,"A0":[[0,0],[0,1]],"A1":[[1,0],[0,0]]}"#;
const DIAG_S_S1: &str =
    r#"{"field":{"kind":"prime","p":2},"rows":2,"cols":2,"A0":[[0,0],[0,1]],"A1":[[1,0],[0,1]]}"#;
const DIAG_S_S: &str =
    r#"{"field":{"kind":"prime","p":2},"rows":2,"cols":2,"A0":[[0,0],[0,0]],"A1":[[1,0],[0,1]]}"#;
const DIAG_S1_S1: &str =
    r#"{"field":{"kind":"prime","p":2},"rows":2,"cols":2,"A0":[[1,0],[0,1]],"A1":[[1,0],[0,1]]}"#;
const ZERO_2X2: &str =
    r#"{"field":{"kind":"prime","p":2},"rows":2,"cols":2,"A0":[[0,0],[0,0]],"A1":[[0,0],[0,0]]}"#;

#[test]
fn criterion_9_cli_examples() {
    let dir = workdir("worked");
    let a = write_fixture(&dir, "diag_s_1.json", DIAG_S_1);
    let b = write_fixture(&dir, "diag_s_s1.json", DIAG_S_S1);
    let c = write_fixture(&dir, "diag_s_s.json", DIAG_S_S);
    let d = write_fixture(&dir, "diag_s1_s1.json", DIAG_S1_S1);
    let z = write_fixture(&dir, "zero.json", ZERO_2X2);

    let (code, v, _) = run(&["decide", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["exists"], json!(true));
    assert_eq!(v["paper_route"], json!("case1"));

    let (code, v, _) = run(&["decide", c.to_str().unwrap(), d.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(v["exists"], json!(false));
    assert_eq!(v["paper_route"], json!("none"));

    let (code, v, _) = run(&["invariants", z.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["rank"], json!(0));
    assert_eq!(v["col_min"], json!([0, 0]));
    assert_eq!(v["row_min"], json!([0, 0]));
    assert_eq!(v["hif"], json!([]));

    let (code, v, _) = run(&[
        "selftest",
        "--shape",
        "2x2",
        "--field",
        "2",
        "--exhaustive",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["pairs"], json!(65536));
    assert_eq!(v["disagreements"], json!(0));

    println!(
        "acceptance 9 (command-line worked examples): PASS — decide 0/1, invariants, exhaustive selftest"
    );
}

#[test]
fn witness_output_matches_the_documented_search_result() {
    let dir = workdir("witness");
    let a = write_fixture(&dir, "a.json", DIAG_S_1);
    let b = write_fixture(&dir, "b.json", DIAG_S_S1);

    let (code, v, _) = run(&[
        "decide",
        a.to_str().unwrap(),
        b.to_str().unwrap(),
        "--witness",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["witness"]["A0"], json!([[0, 0], [0, 0]]));
    assert_eq!(v["witness"]["A1"], json!([[0, 0], [0, 1]]));

    let (code, v, _) = run(&["oracle", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["exists"], json!(true));
    assert_eq!(v["witness"]["A1"], json!([[0, 0], [0, 1]]));

    // No witness on a negative verdict.
    let c = write_fixture(&dir, "c.json", DIAG_S_S);
    let d = write_fixture(&dir, "d.json", DIAG_S1_S1);
    let (code, v, _) = run(&["oracle", c.to_str().unwrap(), d.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(v["witness"], Value::Null);
}

#[test]
fn equivalence_and_self_decision_follow_the_field_size() {
    let dir = workdir("equiv");
    let a = write_fixture(&dir, "a.json", DIAG_S_1);
    let b = write_fixture(&dir, "b.json", DIAG_S_S1);
    let z = write_fixture(&dir, "zero.json", ZERO_2X2);

    let (code, v, _) = run(&["equiv", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(v["equivalent"], json!(false));

    let (code, v, _) = run(&["equiv", a.to_str().unwrap(), a.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["equivalent"], json!(true));

    // A pencil is never a rank-one perturbation of itself when nothing can
    // change: the zero pencil admits no rank-preserving move at all.
    let (code, v, _) = run(&["decide", z.to_str().unwrap(), z.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(v["paper_route"], json!("none"));

    // Equal nonzero invariants over an infinite field are reachable.
    let rat = write_fixture(
        &dir,
        "rat.json",
        r#"{"field":{"kind":"rational"},"rows":1,"cols":2,"A0":[["1/2",0]],"A1":[[1,"-2/3"]]}"#,
    );
    let (code, v, _) = run(&["decide", rat.to_str().unwrap(), rat.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["paper_route"], json!("equiv_case_sec3"));
}

#[test]
fn realization_round_trips_through_files() {
    let dir = workdir("realize");
    let b = write_fixture(&dir, "b.json", DIAG_S_S1);

    let (code, inv1, _) = run(&["invariants", b.to_str().unwrap()]);
    assert_eq!(code, 0);
    let inv_path = write_fixture(&dir, "inv.json", &inv1.to_string());

    let (code, canonical, _) = run(&["realize", inv_path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let canon_path = write_fixture(&dir, "canon.json", &canonical.to_string());

    // Same invariants, and realizing again reproduces the same pencil.
    let (code, inv2, _) = run(&["invariants", canon_path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(inv1, inv2);
    let inv2_path = write_fixture(&dir, "inv2.json", &inv2.to_string());
    let (code, canonical2, _) = run(&["realize", inv2_path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(canonical, canonical2);
}

#[test]
fn sampled_selftest_grid_passes() {
    let (code, v, _) = run(&[
        "selftest",
        "--shape",
        "2x2",
        "--field",
        "3",
        "--trials",
        "50",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["pairs"], json!(50));
    assert_eq!(v["mode"], json!("sampled"));
    assert_eq!(v["disagreements"], json!(0));
}

#[test]
fn input_and_usage_errors_exit_with_two() {
    let dir = workdir("errors");
    let rat = write_fixture(
        &dir,
        "rat.json",
        r#"{"field":{"kind":"rational"},"rows":1,"cols":1,"A0":[[1]],"A1":[[0]]}"#,
    );
    let bad = write_fixture(&dir, "bad.json", "{not json");
    let a = write_fixture(&dir, "a.json", DIAG_S_1);
    let seven = write_fixture(
        &dir,
        "gf11.json",
        r#"{"field":{"kind":"prime","p":11},"rows":1,"cols":1,"A0":[[1]],"A1":[[0]]}"#,
    );

    // Witness search over the rationals is refused.
    let (code, _, err) = run(&[
        "decide",
        rat.to_str().unwrap(),
        rat.to_str().unwrap(),
        "--witness",
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("prime field"), "stderr: {err}");

    // Parse failure.
    let (code, _, _) = run(&["invariants", bad.to_str().unwrap()]);
    assert_eq!(code, 2);

    // Missing file.
    let (code, _, _) = run(&["invariants", dir.join("absent.json").to_str().unwrap()]);
    assert_eq!(code, 2);

    // Field mismatch between the two inputs.
    let (code, _, _) = run(&["decide", a.to_str().unwrap(), rat.to_str().unwrap()]);
    assert_eq!(code, 2);

    // Oracle limits: the brute-force search refuses large prime fields.
    let (code, _, _) = run(&["oracle", seven.to_str().unwrap(), seven.to_str().unwrap()]);
    assert_eq!(code, 2);

    // Composite field order.
    let (code, _, _) = run(&["selftest", "--shape", "1x1", "--field", "4"]);
    assert_eq!(code, 2);

    // Malformed shape and unknown flag are usage errors.
    let (code, _, _) = run(&["selftest", "--shape", "2by2", "--field", "2"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["decide", "--frobnicate"]);
    assert_eq!(code, 2);
}
