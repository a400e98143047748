//! End-to-end runs of the `gqm` binary against the shipped scenario files.

use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn gqm_env(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_gqm"));
    cmd.args(args);
    cmd.env_remove("GQM_WORKERS");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn gqm(args: &[&str]) -> Output {
    gqm_env(args, &[])
}

fn scenario(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../scenarios")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn parse(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

#[test]
fn entropy_of_the_shift_is_log_two() {
    let out = gqm(&["entropy", &scenario("shift_z2.json")]);
    assert_eq!(out.status.code(), Some(0));
    let doc = parse(&out);
    assert_eq!(
        doc.pointer("/result/sup/value/dist/log_of").and_then(Value::as_str),
        Some("2")
    );
    assert_eq!(
        doc.pointer("/result/probes/0/method").and_then(Value::as_str),
        Some("plateau")
    );
    assert_eq!(
        doc.pointer("/result/sup/value/exact").and_then(Value::as_bool),
        Some(true)
    );
}

#[test]
fn corrupted_carrier_fails_the_audit() {
    let out = gqm(&["axioms", &scenario("corrupted.json")]);
    assert_eq!(out.status.code(), Some(1));
    let doc = parse(&out);
    assert_eq!(
        doc.pointer("/result/passed").and_then(Value::as_bool),
        Some(false)
    );
    let laws = doc.pointer("/result/laws").and_then(Value::as_array).unwrap();
    let sep = laws
        .iter()
        .find(|l| l["law"] == "zero_separation")
        .expect("separation law present");
    assert!(sep["violations"].as_u64().unwrap() > 0);
    assert!(sep["counterexample"].as_str().unwrap().contains("d(x, y)"));
}

#[test]
fn honest_carrier_passes_the_audit() {
    let out = gqm(&["axioms", &scenario("z4z2_doubling.json")]);
    assert_eq!(out.status.code(), Some(0));
    let doc = parse(&out);
    assert_eq!(
        doc.pointer("/result/passed").and_then(Value::as_bool),
        Some(true)
    );
}

#[test]
fn named_h_top_of_the_one_sided_shift() {
    let out = gqm(&["named", "h_top", &scenario("oneside_shift_z5.json")]);
    assert_eq!(out.status.code(), Some(0));
    let doc = parse(&out);
    assert_eq!(
        doc.pointer("/result/value/dist/log_of").and_then(Value::as_str),
        Some("5")
    );
    assert_eq!(
        doc.pointer("/result/confirmed").and_then(Value::as_bool),
        Some(true)
    );
}

#[test]
fn named_ent_llc_counts_dimensions_and_renders_in_base_p() {
    let out = gqm(&[
        "named",
        "ent_llc",
        &scenario("shift_f2.json"),
        "--log-base",
        "p",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = parse(&out);
    assert_eq!(doc["log_base"], "2");
    assert_eq!(
        doc.pointer("/result/value/dist/dim").and_then(Value::as_u64),
        Some(1)
    );
    assert_eq!(
        doc.pointer("/result/value/rendered").and_then(Value::as_f64),
        Some(1.0)
    );
}

#[test]
fn loglaw_on_the_shift_is_exact_equality() {
    let out = gqm(&["loglaw", &scenario("shift_z2.json")]);
    assert_eq!(out.status.code(), Some(0));
    let doc = parse(&out);
    let entries = doc.pointer("/result/entries").and_then(Value::as_array).unwrap();
    assert_eq!(entries.len(), 3);
    for e in entries {
        assert_eq!(e["outcome"], "equality");
        assert_eq!(e["exact"], true);
        assert_eq!(e["scaled_base"]["dist"], e["power_value"]["dist"]);
    }
}

#[test]
fn conjugacy_by_translation_passes() {
    let out = gqm(&["conjugacy", &scenario("translate_conjugacy.json")]);
    assert_eq!(out.status.code(), Some(0));
    let doc = parse(&out);
    assert_eq!(
        doc.pointer("/result/passed").and_then(Value::as_bool),
        Some(true)
    );
}

#[test]
fn conjugacy_by_basis_change_passes() {
    let out = gqm(&["conjugacy", &scenario("f2_4_conjugacy.json")]);
    assert_eq!(out.status.code(), Some(0));
    let doc = parse(&out);
    assert_eq!(
        doc.pointer("/result/passed").and_then(Value::as_bool),
        Some(true)
    );
}

#[test]
fn suite_and_oracle_pass_on_the_finite_example() {
    let path = scenario("z4z2_doubling.json");
    let out = gqm(&["suite", &path]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let out = gqm(&["oracle", &path]);
    assert_eq!(out.status.code(), Some(0));
    let doc = parse(&out);
    let items = doc.pointer("/result/items").and_then(Value::as_array).unwrap();
    assert!(items.iter().any(|i| i["name"] == "entropy_sum"));
    assert!(items.iter().all(|i| i["mismatches"] == 0));
}

#[test]
fn reports_are_byte_identical_across_worker_counts() {
    for cmd in ["entropy", "suite", "loglaw"] {
        let runs: Vec<Vec<u8>> = ["1", "2", "8"]
            .iter()
            .map(|w| {
                let out = gqm_env(&[cmd, &scenario("shift_z2.json")], &[("GQM_WORKERS", w)]);
                assert_eq!(out.status.code(), Some(0));
                out.stdout
            })
            .collect();
        assert_eq!(runs[0], runs[1], "{cmd} differs between 1 and 2 workers");
        assert_eq!(runs[0], runs[2], "{cmd} differs between 1 and 8 workers");
    }
}

#[test]
fn csv_is_offered_for_ladders_only() {
    let out = gqm(&["entropy", &scenario("shift_z2.json"), "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("probe,n,exact,rendered"));
    assert!(lines.next().unwrap().starts_with("win[0..1]<(1)>,0,log 2,"));

    let out = gqm(&["axioms", &scenario("corrupted.json"), "--format", "csv"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_fields_are_rejected_with_a_pointer() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{"version": 1, "carrier": {"direct_sum_group": {"m": 2, "extra": 3}}}"#,
    )
    .unwrap();
    let out = gqm(&["axioms", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("extra"), "stderr: {err}");
}

#[test]
fn wrong_version_and_missing_endo_are_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let v7 = dir.path().join("v7.json");
    std::fs::write(&v7, r#"{"version": 7, "carrier": "corrupted_z4z2"}"#).unwrap();
    let out = gqm(&["axioms", v7.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let no_endo = dir.path().join("no_endo.json");
    std::fs::write(
        &no_endo,
        r#"{"version": 1, "carrier": {"direct_sum_group": {"m": 2}}}"#,
    )
    .unwrap();
    let out = gqm(&["entropy", no_endo.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("endo"));
}

#[test]
fn side_mismatch_and_bad_worker_env_are_input_errors() {
    let out = gqm(&["named", "ent_tilde_star", &scenario("z4z2_doubling.json")]);
    assert_eq!(out.status.code(), Some(2));

    let out = gqm_env(
        &["entropy", &scenario("shift_z2.json")],
        &[("GQM_WORKERS", "many")],
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("GQM_WORKERS"));
}

#[test]
fn broken_conjugacy_claim_exits_with_violation() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    // The right flow shifts the other way, so translation cannot
    // intertwine the two.
    std::fs::write(
        &path,
        r#"{
  "version": 1,
  "carrier": { "direct_sum_group": { "m": 2 } },
  "endo": { "band": { "terms": [[1, 1]] } },
  "conjugacy": {
    "right_endo": { "band": { "terms": [[-1, 1]] } },
    "map": { "translate": { "by": 1 } }
  }
}"#,
    )
    .unwrap();
    let out = gqm(&["conjugacy", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("conjugation"));
}
