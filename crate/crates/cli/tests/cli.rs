use std::path::{Path, PathBuf};
use std::process::Command;

use serde::de::DeserializeOwned;
use serde::Serialize;

use quadhull::format::rows_to_mat;
use quadhull::report::{DelPezzoOutput, HullJson, Report, SearchJson, SupercodeOutput, TablesOutput, VerifyOutput};
use quadhull_core::evalinterp::delpezzo;
use quadhull_core::multred::is_mult_reduction;
use quadhull_core::{Algebra, Elem, Fq};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn run(args: &[&str], env: &[(&str, &str)]) -> (String, String, i32) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_quadhull"));
    cmd.args(args).env_remove("QH_NODE_BUDGET");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().unwrap();
    (String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap(), out.status.code().unwrap())
}

/// Parses the JSON report and checks that it round-trips unchanged.
fn json<T: Serialize + DeserializeOwned>(args: &[&str], env: &[(&str, &str)]) -> (Report<T>, i32) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (out, _, code) = run(&full, env);
    let value: serde_json::Value = serde_json::from_str(&out).unwrap();
    let report: Report<T> = serde_json::from_value(value.clone()).unwrap();
    assert_eq!(serde_json::to_value(&report).unwrap(), value);
    (report, code)
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn delpezzo_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let phi = dir.path().join("phi.txt").display().to_string();
    let (r, code) = json::<DelPezzoOutput>(&["delpezzo", "--write-phi", &phi], &[]);
    assert_eq!(code, 0);
    let out = r.output.unwrap();
    assert!(out.phi_matches_fixture && out.omega_matches_fixture && out.canonical_in_hull);
    assert_eq!(out.code, [13, 5, 5]);
    assert_eq!((out.dim_square, out.hull_points, out.quadrics.len()), (13, 13, 2));

    let (r, code) = json::<VerifyOutput>(&["verify", "--algebra", "gfext:2:5", "--target", "split:2:13", "--phi", &phi], &[]);
    assert_eq!(code, 0);
    let v = r.output.unwrap();
    assert!(v.verified);
    let red = v.reduction.unwrap();
    assert_eq!(red.algebra_spec_a, "gfext:2:5");
    let omega: Vec<Vec<u32>> = delpezzo::OMEGA.iter().map(|r| r.to_vec()).collect();
    assert_eq!(red.omega, Some(omega));
}

#[test]
fn verify_identity_and_failure() {
    let dir = tempfile::tempdir().unwrap();
    let id = write(dir.path(), "id.txt", "2 1 1\n1\n");
    let (r, code) = json::<VerifyOutput>(&["verify", "--algebra", "gfext:2:1", "--target", "split:2:1", "--phi", &id], &[]);
    assert_eq!(code, 0);
    assert!(r.output.unwrap().verified);

    // full rank, but the squares of the three forms span only two dimensions
    let bad = write(dir.path(), "bad.txt", "2 2 3\n1 0 1\n0 1 0\n");
    let (r, code) = json::<VerifyOutput>(&["verify", "--algebra", "gfext:2:2", "--target", "split:2:3", "--phi", &bad], &[]);
    assert_eq!(code, 2);
    let cert = r.output.unwrap().certificate.unwrap();
    assert_eq!(cert.kind, "form_nonzero_at_canonical_point");
    let a = Algebra::gf_ext(2, 2).unwrap();
    let form: Vec<Elem> = cert.form.unwrap().into_iter().map(Elem).collect();
    let value = a.eval_form(&form, &a.canonical_point());
    assert!(value.iter().any(|e| !e.is_zero()));
    assert_eq!(value.iter().map(|e| e.0).collect::<Vec<_>>(), cert.value.unwrap());

    let singular = write(dir.path(), "sing.txt", "2 2 3\n1 1 0\n1 1 0\n");
    let (r, code) = json::<VerifyOutput>(&["verify", "--algebra", "gfext:2:2", "--target", "split:2:3", "--phi", &singular], &[]);
    assert_eq!(code, 2);
    assert_eq!(r.output.unwrap().certificate.unwrap().kind, "not_injective");
}

#[test]
fn verify_karatsuba_text() {
    let (out, _, code) = run(&["verify", "--algebra", "gfext:2:2", "--target", "split:2:3", "--phi", data("karatsuba_phi.txt").to_str().unwrap()], &[]);
    assert_eq!(code, 0);
    assert!(out.starts_with("true\n"));
}

#[test]
fn hull_examples() {
    let (r, code) = json::<HullJson>(&["hull", "--code", data("f7_code.txt").to_str().unwrap(), "--q", "7", "--secants"], &[]);
    assert_eq!(code, 0);
    let h = r.output.unwrap();
    assert_eq!((h.dim_i2, h.point_counts[&1], h.points.len()), (3, 7, 7));
    assert_eq!(h.secant_violations, Some(0));

    let (r, _) = json::<HullJson>(&["hull", "--code", data("delpezzo_phi.txt").to_str().unwrap(), "--algebra", "gfext:2:5", "--ext", "2"], &[]);
    let h = r.output.unwrap();
    assert_eq!((h.dim_i2, h.point_counts[&1]), (2, 13));
    assert!(h.ci_proxy);
    assert_eq!(h.canonical_in_hull, Some(true));

    let (r, _) = json::<HullJson>(&["hull", "--code", data("repetition.txt").to_str().unwrap()], &[]);
    let h = r.output.unwrap();
    assert_eq!((h.k, h.dim_i2, h.point_counts[&1]), (1, 0, 1));

    let (_, _, code) = run(&["hull", "--code", data("f7_code.txt").to_str().unwrap(), "--q", "5"], &[]);
    assert_eq!(code, 1);
}

#[test]
fn search_and_budget() {
    let (r, code) = json::<SearchJson>(&["search", "--algebra", "gfext:2:5", "--length", "12"], &[]);
    assert_eq!(code, 0);
    assert_eq!(r.output.unwrap().count_w, 0);

    let (r, code) = json::<SearchJson>(&["search", "--algebra", "trunc:2:4", "--length", "8", "--workers", "2", "--ext", "2"], &[]);
    assert_eq!(code, 0);
    let s = r.output.unwrap();
    assert_eq!(s.count_w, 4);
    assert!(s.per_w.iter().all(|w| w.point_counts.len() == 2 && w.point_counts[&1] == 9));

    let (r, code) = json::<SearchJson>(&["search", "--algebra", "gfext:2:4", "--length", "9"], &[("QH_NODE_BUDGET", "100")]);
    assert_eq!(code, 3);
    assert!(r.budget_exceeded && r.output.is_none());
}

#[test]
fn tables_pass() {
    let (r, code) = json::<Vec<TablesOutput>>(&["tables", "--table", "4", "--table", "3"], &[]);
    assert_eq!(code, 0);
    let out = r.output.unwrap();
    assert_eq!(out.len(), 2);
    let statuses: Vec<&str> = out.iter().flat_map(|t| t.rows.iter().map(|r| r.status.as_str())).collect();
    assert_eq!(statuses, ["PASS", "PASS", "PASS", "SKIPPED", "PASS", "PASS", "PASS", "PASS", "SKIPPED"]);
    let (text, _, _) = run(&["tables", "--table", "4"], &[]);
    assert!(text.contains("243: 10, 9: 16"));
}

#[test]
fn supercode_examples() {
    let (r, code) = json::<SupercodeOutput>(&["supercode", "--code", data("delpezzo_phi.txt").to_str().unwrap(), "--algebra", "gfext:2:5"], &[]);
    assert_eq!(code, 0);
    let s = r.output.unwrap();
    assert!(s.found);
    let red = s.reduction.unwrap();
    let f = Fq::prime(2).unwrap();
    let phi = rows_to_mat(&f, 13, &red.phi).unwrap();
    let a = Algebra::gf_ext(2, 5).unwrap();
    assert!(is_mult_reduction(&a, &Algebra::split(&f, 13), &phi).unwrap().holds());

    let (r, _) = json::<SupercodeOutput>(&["supercode", "--code", data("full_f2_2.txt").to_str().unwrap(), "--algebra", "gfext:2:2"], &[]);
    assert!(!r.output.unwrap().found);

    let (r, _) = json::<SupercodeOutput>(&["supercode", "--code", data("karatsuba_phi.txt").to_str().unwrap(), "--algebra", "gfext:2:2"], &[]);
    let s = r.output.unwrap();
    // the class of (1 : γ)
    assert_eq!(s.point, Some(vec![vec![1, 0], vec![0, 1]]));
}

#[test]
fn parse_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.txt", "2 2 3\n1 0\n");
    let (_, err, code) = run(&["verify", "--algebra", "gfext:2:2", "--target", "split:2:3", "--phi", &bad], &[]);
    assert_eq!(code, 1);
    assert!(err.contains("parse error"));
    assert_eq!(run(&["verify", "--algebra", "gfext:2", "--target", "split:2:3", "--phi", &bad], &[]).2, 1);
    assert_eq!(run(&["hull", "--code", "/nonexistent"], &[]).2, 1);
    assert_eq!(run(&["frobnicate"], &[]).2, 1);
    assert_eq!(run(&["--help"], &[]).2, 0);
}
