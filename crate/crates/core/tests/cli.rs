use std::path::PathBuf;
use std::process::Command;

use semidet::cli::{parse_table, TableDocument};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn semidet(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_semidet")).args(args).output().expect("binary runs");
    let mut text = String::from_utf8(out.stdout).unwrap();
    text.push_str(&String::from_utf8(out.stderr).unwrap());
    (out.status.code().unwrap(), text)
}

fn path(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

#[test]
fn star_table_matches_golden() {
    let (code, out) = semidet(&["star-table", &path("s7.tbl"), "--format", "paper"]);
    assert_eq!(code, 0);
    assert_eq!(out, include_str!("golden/s7_star_table.txt"));
}

#[test]
fn factor_reports_sign_and_product() {
    let (code, out) = semidet(&["factor", &path("s7.tbl"), "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["sign"], -1);
    assert_eq!(v["equal"], true);
    assert_eq!(
        v["product"],
        "y^4*z^3 + y^3*z^4 - y^3*z^3*u - y^3*z^3*t + y^3*z^3*w + y^3*z^3*v - y^3*z^3*q"
    );
    assert_eq!(v["factors"].as_array().unwrap().len(), 3);
}

#[test]
fn verify_smooth_on_s7() {
    let (code, out) = semidet(&["verify-smooth", &path("s7.tbl")]);
    assert_eq!(code, 0);
    assert!(out.contains("lll_smooth: true"));
}

#[test]
fn verify_conjecture_small_order() {
    let (code, out) = semidet(&["verify-conjecture", "--order", "3", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["tables_scanned"], 113);
    assert_eq!(v["counterexamples"].as_array().unwrap().len(), 0);
}

#[test]
fn exit_codes() {
    assert_eq!(semidet(&["validate", &path("s4.tbl")]).0, 0);
    assert_eq!(semidet(&["witness", &path("s7.tbl")]).0, 0);
    // property violations
    assert_eq!(semidet(&["verify-smooth", &path("left_zero.tbl")]).0, 1);
    assert_eq!(semidet(&["witness", &path("two_chain.tbl")]).0, 1);
    // input errors
    assert_eq!(semidet(&["validate", &path("not_associative.tbl")]).0, 2);
    let (code, out) = semidet(&["analyze", &path("ragged.tbl")]);
    assert_eq!(code, 2);
    assert!(out.contains("line 3"), "{out}");
    assert_eq!(semidet(&["validate", &path("missing.tbl")]).0, 2);
    assert_eq!(semidet(&["det", &path("s7.tbl"), "--max-dim", "4"]).0, 2);
    assert_eq!(semidet(&["no-such-command"]).0, 2);
}

#[test]
fn fixtures_round_trip() {
    for name in ["s7.tbl", "s4.tbl", "c2.tbl", "two_chain.tbl", "left_zero.tbl"] {
        let text = std::fs::read_to_string(fixture(name)).unwrap();
        let doc = TableDocument::parse(&text).unwrap();
        assert_eq!(TableDocument::parse(&doc.render()).unwrap(), doc, "{name}");
        let table = parse_table(&text).unwrap();
        assert_eq!(TableDocument::from_table(&table), doc, "{name}");
    }
}

#[test]
fn det_of_group() {
    let (code, out) = semidet(&["det", &path("c2.tbl")]);
    assert_eq!(code, 0);
    assert_eq!(out, "determinant: e^2 - g^2\n");
}

#[test]
fn pseudo_counterexample_of_order_eight() {
    let (code, out) = semidet(&["verify-pseudo", &path("order8_not_pseudo.tbl"), "--json"]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["pseudo_ll_transitive"], false);
    assert_eq!(v["counterexample"], serde_json::json!(["h", "a", "a"]));
    let (code, out) = semidet(&["analyze", &path("order8_not_pseudo.tbl")]);
    assert_eq!(code, 0);
    assert!(out.contains("singleton-rich: true") && out.contains("unital algebra: true"));
}
