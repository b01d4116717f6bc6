use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use typea_core::{cyclic_group_algebra, fixtures, FusionAlgebra};

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "fixtures", name]
        .iter()
        .collect();
    p.to_str().unwrap().to_string()
}

fn typea(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_typea"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn a1_level2_table_matches_fixture_cells() {
    let labels = fixture("a1_level2.labels.json");
    let o = typea(&["--rank", "2", "--level", "2", "table", "--labels", &labels]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 5, "{out}");
    let table = fixtures::a1_level2().algebra;
    for (i, row) in lines[2..].iter().enumerate() {
        let cells: Vec<&str> = row.split_whitespace().collect();
        assert_eq!(cells[0], table.label(i));
        // upper triangle: row i lists products with labels i..n
        for (cell, j) in cells[1..].iter().zip(i..) {
            assert_eq!(*cell, table.product_at(i, j).to_string());
        }
    }
}

#[test]
fn a2_level1_table_is_z3() {
    let o = typea(&["--rank", "3", "--level", "1", "--format", "json", "table"]);
    assert_eq!(code(&o), 0);
    let built = FusionAlgebra::from_json_str(&stdout(&o)).unwrap();
    let renamed = built
        .relabelled(&[("0", "P(1,0,0)"), ("1", "P(0,1,0)"), ("2", "P(0,0,1)")])
        .unwrap();
    assert_eq!(renamed, cyclic_group_algebra(3));
}

#[test]
fn a2_level2_json_equals_fixture() {
    let labels = fixture("a2_level2.labels.json");
    let o = typea(&[
        "--rank", "3", "--level", "2", "--format", "json", "table", "--labels", &labels,
    ]);
    assert_eq!(code(&o), 0);
    let expected: Value =
        serde_json::from_str(&std::fs::read_to_string(fixture("a2_level2.json")).unwrap()).unwrap();
    assert_eq!(json(&o), expected);
}

#[test]
fn table_csv_lists_upper_triangle() {
    let o = typea(&["--rank", "3", "--level", "2", "--format", "csv", "table"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("a,b,product"));
    assert_eq!(lines.count(), 6 * 7 / 2);
    assert!(
        out.contains("\"P(0,1,1)\",\"P(0,1,1)\",\"P(2,0,0)+P(0,1,1)\""),
        "{out}"
    );
}

#[test]
fn count_examples() {
    let o = typea(&["--format", "json", "count", "1,1,1", "1,1,1", "1,1,1"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert!(v["counts"].as_array().unwrap().iter().all(|c| c["m"] == 3));
    assert_eq!(v["counts"].as_array().unwrap().len(), 4);
    assert_eq!(v["fusion"], 2);
    assert_eq!(v["bridge"], true);

    let o = typea(&["--format", "json", "count", "4,0", "4,0", "4,0"]);
    let v = json(&o);
    assert!(v["counts"].as_array().unwrap().iter().all(|c| c["m"] == 1));
    assert_eq!(v["fusion"], 1);

    // spins 1/2, 0, 0 violate parity
    let o = typea(&["--format", "json", "count", "1,1", "2,0", "2,0"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert!(v["counts"].as_array().unwrap().iter().all(|c| c["m"] == 0));
    assert_eq!(v["fusion"], 0);
}

#[test]
fn count_single_method_and_checks() {
    let o = typea(&["count", "1,1,1", "2,1,0", "0,1,2", "--method", "kmatrix"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("M (K-matrix)"));
    assert!(!stdout(&o).contains("brute"));

    let o = typea(&[
        "count",
        "1,1,1,1",
        "1,1,1,1",
        "1,1,1,1",
        "--method",
        "zaslavsky",
    ]);
    assert_eq!(code(&o), 2);
    let o = typea(&["--rank", "2", "count", "1,1,1", "1,1,1", "1,1,1"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("--rank"));
    let o = typea(&["count", "1,x", "1,1", "1,1"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("`1,x`"));
}

#[test]
fn verify_sweeps_pass() {
    let o = typea(&[
        "--rank", "2", "--level", "1..6", "--format", "json", "verify",
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let v = json(&o);
    assert_eq!(v["passed"], true);
    assert_eq!(v["summary"]["covers_checked"], 6);

    let o = typea(&[
        "--rank", "3", "--level", "1..4", "--format", "json", "verify",
    ]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["passed"], true);
    assert_eq!(v["summary"]["triples"], 27 + 216 + 1000 + 3375);
    let level2 = &v["algebras"][1];
    assert_eq!(level2["level"], 2);
    assert_eq!(level2["cover"], true);
}

#[test]
fn verify_csv_has_one_row_per_triple() {
    let o = typea(&[
        "--rank", "2", "--level", "1..2", "--format", "csv", "verify",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 1 + 8 + 27);
}

#[test]
fn cover_w3_verified() {
    let o = typea(&[
        "cover",
        "--algebra",
        &fixture("w3_11.json"),
        "--partition",
        &fixture("w3_cover_partition.json"),
        "--map",
        &fixture("w3_cover_map.json"),
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("cover verified: yes"));
}

#[test]
fn cover_z5_nonassociative() {
    let o = typea(&[
        "--format",
        "json",
        "cover",
        "--partition",
        &fixture("z5_partition.json"),
    ]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    assert_eq!(v["associativity"]["associative"], false);
    assert_eq!(v["associativity"]["witness"], serde_json::json!([1, 1, 2]));
    assert_eq!(
        v["associativity"]["products"],
        serde_json::json!([[1, 2, 2], [1, 3, 2]])
    );
    let plain = stdout(&typea(&[
        "cover",
        "--partition",
        &fixture("z5_partition.json"),
    ]));
    assert!(plain.contains("witness: (P1, P1, P2)"), "{plain}");
}

#[test]
fn cover_singletons_verified() {
    let o = typea(&[
        "cover",
        "--algebra",
        &fixture("z3_group.json"),
        "--partition",
        &fixture("z3_singletons.json"),
        "--map",
        &fixture("z3_identity_map.json"),
    ]);
    assert_eq!(code(&o), 0);
}

#[test]
fn cover_mismatch_fails() {
    // table labels are not in orbit order, so the positional map is wrong
    let o = typea(&[
        "--format",
        "json",
        "cover",
        "--algebra",
        &fixture("a2_level2.json"),
        "--partition",
        &fixture("w3_cover_partition.json"),
    ]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    assert_eq!(v["cover"]["verified"], false);
    assert!(!v["cover"]["mismatches"].as_array().unwrap().is_empty());

    let o = typea(&[
        "cover",
        "--algebra",
        &fixture("a2_level2.json"),
        "--partition",
        &fixture("a2_level2_cover_partition.json"),
        "--map",
        &fixture("a2_level2_cover_map.json"),
    ]);
    assert_eq!(code(&o), 0);
}

#[test]
fn cover_bad_inputs_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"modulus": 3, "length": 1, "blocks": [[[0]], [[1], [2]]], "extra": 1}"#,
    )
    .unwrap();
    let o = typea(&["cover", "--partition", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("extra"), "{}", stderr(&o));

    let map = dir.path().join("map.json");
    std::fs::write(&map, r#"{"0": 0, "1": 1, "2": 1}"#).unwrap();
    let o = typea(&[
        "cover",
        "--algebra",
        &fixture("z3_group.json"),
        "--partition",
        &fixture("z3_singletons.json"),
        "--map",
        map.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("injective"), "{}", stderr(&o));

    let o = typea(&["cover", "--partition", "/nonexistent/p.json"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn orbits_lists_modules() {
    let o = typea(&["--rank", "3", "--level", "3", "--format", "json", "orbits"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let list = v.as_array().unwrap();
    assert_eq!(list.len(), 10);
    assert_eq!(list[0]["label"], "P(3,0,0)");
    let sizes: u64 = list.iter().map(|r| r["size"].as_u64().unwrap()).sum();
    assert_eq!(sizes, 27);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&typea(&["--rank", "4", "--level", "2", "table"])), 2);
    assert_eq!(
        code(&typea(&["--rank", "2", "--level", "1..3", "table"])),
        2
    );
    assert_eq!(code(&typea(&["--rank", "2", "--level", "0", "orbits"])), 2);
    assert_eq!(code(&typea(&["--rank", "4", "--level", "1", "verify"])), 2);
    assert_eq!(code(&typea(&["--format", "xml", "orbits"])), 2);
}

#[test]
fn outputs_are_deterministic() {
    for format in ["plain", "csv", "json"] {
        for args in [
            vec!["--rank", "3", "--level", "3", "table"],
            vec!["--rank", "3", "--level", "1..2", "verify"],
            vec!["count", "1,1,1", "0,2,1", "2,0,1"],
        ] {
            let mut full = vec!["--format", format];
            full.extend(&args);
            let first = typea(&full);
            let second = typea(&full);
            assert_eq!(first.stdout, second.stdout, "{full:?}");
        }
    }
}

#[test]
fn json_outputs_round_trip() {
    let o = typea(&["--rank", "3", "--level", "3", "--format", "json", "table"]);
    let alg = FusionAlgebra::from_json_str(&stdout(&o)).unwrap();
    assert_eq!(alg.len(), 10);
    assert!(alg.check_axioms().passed());
    assert_eq!(serde_json::to_value(alg.to_json()).unwrap(), json(&o));
}
