use std::process::Command;

use trifourier::nonabelian::basis::{s3_new_basis, S3Variant};

fn bin(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_trifourier")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn matrix_d2_diagonal() {
    let (code, out, _) = bin(&["matrix", "--dim", "2"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let entries = v["entries"].as_array().unwrap();
    let diag: Vec<&str> = (0..4).map(|i| entries[i][i].as_str().unwrap()).collect();
    assert_eq!(diag, vec!["-1", "1", "1", "1"]);
}

#[test]
fn matrix_d0_is_one() {
    let (code, out, _) = bin(&["matrix", "--dim", "0", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out, "E,0\n0,1\n");
}

#[test]
fn matrix_d4_denominators_divide_four() {
    let (code, out, _) = bin(&["matrix", "--dim", "4", "--format", "csv"]);
    assert_eq!(code, 0);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 16);
    for row in rows {
        let cells: Vec<&str> = row.split(',').skip(1).collect();
        assert_eq!(cells.len(), 16);
        for c in cells {
            if let Some((_, den)) = c.split_once('/') {
                assert!(4 % den.parse::<i64>().unwrap() == 0, "{c}");
            }
        }
    }
}

#[test]
fn verify_suites() {
    assert_eq!(bin(&["verify", "--dim", "6", "--suite", "all"]).0, 0);
    let (code, out, _) = bin(&["verify", "--dim", "8", "--suite", "counts", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["passed"], true);
    let (code, _, err) = bin(&["verify", "--dim", "3"]);
    assert_eq!(code, 1);
    assert!(err.contains("even"), "{err}");
}

#[test]
fn tau_suite_reports_the_literal_identity() {
    let (code, out, _) = bin(&["verify", "--dim", "6", "--suite", "tau"]);
    assert_eq!(code, 0);
    assert!(out.contains("literal j = 1 at i = 1: 4 mismatches at i = [1]"), "{out}");
}

#[test]
fn nonabelian_commands() {
    let (code, out, _) = bin(&["nonabelian", "--group", "s5", "--check", "trace"]);
    assert_eq!((code, out.trim()), (0, "13"));
    let (code, out, _) = bin(&["nonabelian", "--group", "s3", "--variant", "e", "--check", "newbasis"]);
    assert_eq!(code, 0);
    assert!(out.contains("observed -1,-1,1"), "{out}");
    assert_eq!(bin(&["nonabelian", "--group", "s5", "--check", "hyperplane"]).0, 0);
    assert_eq!(bin(&["nonabelian", "--group", "s4", "--check", "involution"]).0, 0);
    let (code, _, err) = bin(&["nonabelian", "--group", "s4", "--check", "newbasis"]);
    assert_eq!(code, 1);
    assert!(err.contains("--basis"));
    assert_eq!(bin(&["nonabelian", "--group", "s3", "--check", "hyperplane"]).0, 1);
    assert_eq!(bin(&["nonabelian", "--group", "a5", "--check", "trace"]).0, 1);
}

#[test]
fn nonabelian_matrix_json_round_trips() {
    let (code, out, _) = bin(&["nonabelian", "--group", "s3", "--check", "matrix"]);
    assert_eq!(code, 0);
    let doc: trifourier::nonabelian::transform::FtDocument = serde_json::from_str(&out).unwrap();
    let ft = trifourier::nonabelian::transform::nonabelian_ft(&trifourier::nonabelian::characters::symmetric(3).unwrap());
    assert_eq!(doc.entries, ft.entries);
    assert_eq!(doc.labels, ft.labels);
}

#[test]
fn basis_files() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.json");
    std::fs::write(&good, serde_json::to_string(&s3_new_basis(S3Variant::G2)).unwrap()).unwrap();
    let (code, out, _) = bin(&["nonabelian", "--group", "s3", "--check", "newbasis", "--basis", good.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");

    let mut doc = s3_new_basis(S3Variant::G2);
    doc.expansions[2].terms[1].coeff_num = 3;
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, serde_json::to_string(&doc).unwrap()).unwrap();
    let (code, out, _) = bin(&["nonabelian", "--group", "s3", "--check", "newbasis", "--basis", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("[FAIL] triangular"), "{out}");

    let (code, _, err) = bin(&["nonabelian", "--group", "s4", "--check", "newbasis", "--basis", good.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("basis is for s3"), "{err}");

    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "{").unwrap();
    assert_eq!(bin(&["nonabelian", "--group", "s3", "--check", "newbasis", "--basis", garbage.to_str().unwrap()]).0, 1);
    assert_eq!(bin(&["nonabelian", "--group", "s3", "--check", "newbasis", "--basis", "/nonexistent/x.json"]).0, 1);
}

#[test]
fn help_and_bad_flags() {
    assert_eq!(bin(&["--help"]).0, 0);
    assert_eq!(bin(&["family"]).0, 1);
    assert_eq!(bin(&["family", "--dim", "4", "--format", "xml"]).0, 1);
    assert_eq!(bin(&["matrix", "--dim", "14"]).0, 1);
    assert_eq!(bin(&["family", "--dim", "16"]).0, 1);
}
