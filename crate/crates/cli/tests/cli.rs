use std::process::{Command, Output};

use fatpoints::{mu_rank, resolution, DivisorClass, FatPointScheme};

fn fatpoints(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fatpoints")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn resolve_uniform_54_as_json() {
    let out = fatpoints(&["resolve", "54,54,54,54,54,54,54,54", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["alpha"], 153);
    assert_eq!(v["generators"], serde_json::json!({"153": 55, "154": 48}));
    assert_eq!(v["syzygies"], serde_json::json!({"154": 3, "155": 99}));
}

#[test]
fn json_output_matches_the_library_byte_for_byte() {
    let out = fatpoints(&["--format", "json", "resolve", "3,3,2,2,1"]);
    let scheme = FatPointScheme::new(&[3, 3, 2, 2, 1]).unwrap();
    let direct = serde_json::to_string(&resolution(&scheme).unwrap()).unwrap();
    assert_eq!(stdout(&out), format!("{direct}\n"));
    assert_eq!(stdout(&fatpoints(&["--format", "json", "resolve", "3,3,2,2,1"])), stdout(&out));

    let out = fatpoints(&["--format", "json", "mu", "8", "3", "3", "3", "3", "3", "3", "3", "1"]);
    let direct = mu_rank(&DivisorClass::new(8, [3, 3, 3, 3, 3, 3, 3, 1])).unwrap();
    assert_eq!(stdout(&out), format!("{}\n", serde_json::to_string(&direct).unwrap()));
}

#[test]
fn exceptional_curves_table() {
    let out = fatpoints(&["curves", "--kind", "exceptional"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 241);
    assert_eq!(text.lines().last(), Some("count 240"));
    let out = fatpoints(&["curves", "--kind", "square-zero", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["count"], 2160);
}

#[test]
fn mu_of_anticanonical_class() {
    let out = fatpoints(&["--format", "json", "mu", "3", "1", "1", "1", "1", "1", "1", "1", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!((v["ker"].as_u64(), v["cok"].as_u64()), (Some(0), Some(1)));
    assert!(!v["trace"].as_array().unwrap().is_empty());
}

#[test]
fn negative_coefficients_are_accepted() {
    let out = fatpoints(&["h0", "-3", "-1", "-1", "-1", "-1", "-1", "-1", "-1", "-1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["h0"], 0);
    assert_eq!(v["h2"], 1);
}

#[test]
fn batch_mode_keeps_input_order() {
    let dir = std::env::temp_dir().join(format!("fatpoints-batch-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("in.csv");
    std::fs::write(&path, "# schemes\n2\n1,1,1,1,1,1,1,1\n\n3,1\n").unwrap();
    let out = fatpoints(&["resolve", "--batch", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let rows: Vec<serde_json::Value> = stdout(&out).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let alphas: Vec<_> = rows.iter().map(|r| r["alpha"].as_i64().unwrap()).collect();
    assert_eq!(alphas, vec![2, 3, 3]);
    assert_eq!(rows[0]["mults"], serde_json::json!([2, 0, 0, 0, 0, 0, 0, 0]));

    std::fs::write(&path, "1,1\n1,x\n").unwrap();
    let out = fatpoints(&["resolve", "--batch", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn oracle_check_single_scheme() {
    let out = fatpoints(&["oracle-check", "--mults", "3,3,2,2,1,1,1", "--tmax", "8", "--seed", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 9);
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["ok"], true);
        assert_eq!(v["seed"], 5);
    }
}

#[test]
fn usage_errors_exit_with_one() {
    for args in [
        &["resolve", "1,2,3,4,5,6,7,8,9"][..],
        &["resolve", "1,-2"],
        &["resolve", "1,,2"],
        &["h0", "1", "2", "3", "4", "5", "6", "7", "8", "9", "10"],
        &["hilbert", "2", "--from", "5", "--to", "1"],
        &["cone"],
        &["h0", "9223372036854775807", "1"],
        &["mu", "-9223372036854775808"],
        &["resolve", "9223372036854775807"],
        &["hilbert", "3", "--to", "9223372036854775807"],
        &["oracle-check", "--mults", "2", "--prime", "1000001"],
        &["oracle-check", "--mults", "20", "--prime", "7"],
        &["oracle-check", "--max-mult", "17"],
        &["oracle-check", "--max-mult", "-1"],
        &["no-such-command"],
        &[],
    ] {
        assert_eq!(fatpoints(args).status.code(), Some(1), "{args:?}");
    }
    assert_eq!(fatpoints(&["--help"]).status.code(), Some(0));
    assert_eq!(fatpoints(&["--version"]).status.code(), Some(0));
}

#[test]
fn text_output() {
    let out = fatpoints(&["resolve", "2"]);
    let text = stdout(&out);
    assert!(text.contains("alpha 2\n"), "{text}");
    assert!(text.contains("generators 3@2\n"), "{text}");
    assert!(text.contains("syzygies 2@3\n"), "{text}");
    let out = fatpoints(&["cone", "--decompose", "17", "6", "6"]);
    assert_eq!(stdout(&out), "(17,6,6) = 1*(17,6,6)\n");
}

#[test]
fn special_points_over_a_tiny_field_exit_with_three() {
    // over Z/17 the drawn points sit in special position for some scheme
    let out = fatpoints(&["oracle-check", "--prime", "17", "--seed", "1", "--max-mult", "2", "--tmax", "6"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).lines().any(|l| l.contains("\"ok\":false")));
}
