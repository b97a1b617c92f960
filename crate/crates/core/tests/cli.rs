use std::process::Command;

use mfold_bounds::cli::run;
use serde_json::Value;

fn mfold(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(
        std::iter::once("mfold").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn csv_rows(text: &str) -> Vec<csv::StringRecord> {
    csv::Reader::from_reader(text.as_bytes())
        .records()
        .map(|r| r.unwrap())
        .collect()
}

fn csv_header(text: &str) -> Vec<String> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    rdr.headers().unwrap().iter().map(String::from).collect()
}

const POINT: [&str; 12] = [
    "--class", "theta", "--tau", "1", "--lambda", "1", "--gamma", "0", "--delta", "0", "--m", "1",
];

#[test]
fn bounds_single_point_matches_closed_values() {
    let (code, out, _) = mfold(&[&["bounds"][..], &POINT, &["--beta", "0"]].concat());
    assert_eq!(code, 0);
    let head = csv_header(&out);
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 1);
    let get = |name: &str| -> f64 {
        let i = head.iter().position(|h| h == name).unwrap();
        rows[0][i].parse().unwrap()
    };
    assert!((get("linear") - 1.0).abs() < 1e-15);
    assert!((get("square_root") - (2.0f64 / 3.0).sqrt()).abs() < 1e-15);
    assert!((get("bound_am1") - (2.0f64 / 3.0).sqrt()).abs() < 1e-15);
    assert!((get("bound_a2m1") - 2.0 / 3.0).abs() < 1e-15);
    let cors = head.iter().position(|h| h == "corollaries").unwrap();
    assert!(rows[0][cors].split(';').any(|c| c == "9"));
}

#[test]
fn bounds_csv_and_json_agree() {
    let args = [
        "bounds",
        "--class",
        "q",
        "--tau",
        "0.5+0.5i",
        "--tau-abs",
        "0.2:2:4",
        "--lambda",
        "0:2:3",
        "--m",
        "1,3",
        "--alpha",
        "0.3:1:2",
    ];
    let (c1, csv_out, _) = mfold(&args);
    let (c2, json_out, _) = mfold(&[&args[..], &["--format", "json"]].concat());
    assert_eq!((c1, c2), (0, 0));
    let head = csv_header(&csv_out);
    let rows = csv_rows(&csv_out);
    let v: Value = serde_json::from_str(&json_out).unwrap();
    let jrows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4 * 3 * 2 * 2);
    assert_eq!(rows.len(), jrows.len());
    for (r, j) in rows.iter().zip(jrows) {
        for (i, col) in head.iter().enumerate() {
            let cell = &r[i];
            match &j[col] {
                Value::Number(n) => {
                    assert_eq!(cell.parse::<f64>().unwrap(), n.as_f64().unwrap(), "{col}")
                }
                Value::String(s) => assert_eq!(cell, s, "{col}"),
                Value::Null => assert_eq!(cell, "", "{col}"),
                Value::Bool(b) => assert_eq!(cell, b.to_string(), "{col}"),
                other => panic!("unexpected {other}"),
            }
        }
    }
    assert!(v["meta"]["notes"].as_array().unwrap().len() >= 2);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["bounds", "--lambda", "0:1:0"][..],
        &["bounds", "--m", ""],
        &["bounds", "--alpha", "1.5"],
        &["probe", "--n", "0"],
        &["probe", "--lambda", "0:1:3"],
        &["membership", "--a", "1+2i3"],
        &["membership", "--radii", "0.5,1.5"],
        &["bogus"],
        &["probe", "--strategy", "sideways"],
        &["bounds", "--format", "xml"],
    ] {
        let (code, _, err) = mfold(args);
        assert_eq!(code, 2, "{args:?}: {err}");
        assert!(!err.is_empty());
    }
}

#[test]
fn help_and_version_exit_zero() {
    let (code, out, _) = mfold(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("probe"));
    assert!(!out.contains("inject"));
    assert_eq!(mfold(&["--version"]).0, 0);
}

#[test]
fn verify_passes_and_detects_fault() {
    let (code, out, err) = mfold(&["verify", "--verbose"]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(csv_rows(&out).len(), 5);
    assert!(err.contains("cases"));
    let (code, _, err) = mfold(&["verify", "--inject-fault"]);
    assert_eq!(code, 1);
    assert!(err.contains("FAIL"));
}

#[test]
fn probe_reports_and_grid_hits_extremal() {
    let (code, out, _) = mfold(&["probe", "--n", "2000", "--seed", "7", "--format", "json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["meta"]["seed"], 7);
    assert_eq!(v["meta"]["passed"], true);
    let (code, out, _) = mfold(&[
        "probe",
        "--strategy",
        "grid",
        "--n",
        "500",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let am1 = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["check"] == "am1")
        .unwrap();
    assert!(am1["max_ratio"].as_f64().unwrap() >= 1.0 - 1e-9);
}

#[test]
fn membership_margins() {
    let (code, out, _) = mfold(&["membership", "--format", "json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let pi2 = std::f64::consts::FRAC_PI_2;
    assert!((v["meta"]["forward_margin"].as_f64().unwrap() - pi2).abs() < 1e-15);
    assert!((v["meta"]["inverse_margin"].as_f64().unwrap() - pi2).abs() < 1e-15);
    let (code, out, _) = mfold(&["membership", "--a", "40-3i", "--format", "json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(v["meta"]["forward_margin"].as_f64().unwrap() < 0.0);
}

#[test]
fn exemplars_and_reduce() {
    let (code, out, _) = mfold(&["exemplars", "--m", "2", "--format", "json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    for r in rows {
        assert!(r["composition_residual"].as_f64().unwrap() <= 1e-10);
        assert_eq!(r["pairing_verified"], true);
    }
    let audit = v["audit"].as_array().unwrap();
    assert_eq!(audit[0]["true_inverse"], "w/(1+w)");
    let keys: Vec<&String> = rows[0].as_object().unwrap().keys().collect();
    assert_eq!(
        keys,
        [
            "composition_residual",
            "forward",
            "inverse",
            "m",
            "name",
            "order",
            "pairing_verified"
        ]
    );

    let (code, out, _) = mfold(&["reduce"]);
    assert_eq!(code, 0);
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 9);
    for r in &rows {
        assert!(r[4].parse::<f64>().unwrap() <= 1e-12);
        assert!(r[5].parse::<f64>().unwrap() <= 1e-12);
    }
}

#[test]
fn output_file_and_unwritable_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("reduce.json");
    let (code, out, _) = mfold(&[
        "reduce",
        "--format",
        "json",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 9);

    let bad = dir.path().join("missing").join("x.csv");
    let (code, _, err) = mfold(&["reduce", "--output", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("missing"));
}

#[test]
fn binary_uses_output_dir_variable() {
    let dir = tempfile::tempdir().unwrap();
    let status = Command::new(env!("CARGO_BIN_EXE_mfold"))
        .args(["probe", "--n", "300", "--seed", "3"])
        .env("MFOLD_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(0));
    assert!(status.stdout.is_empty());
    let text = std::fs::read_to_string(dir.path().join("probe.csv")).unwrap();
    assert!(text.starts_with("check,bound,max_value"));
}

#[test]
fn probe_output_is_byte_identical() {
    let args = [
        "probe", "--class", "theta", "--beta", "0.25", "--m", "3", "--n", "20000", "--seed", "99",
    ];
    for format in ["csv", "json"] {
        let a = mfold(&[&args[..], &["--format", format]].concat());
        let b = mfold(&[&args[..], &["--format", format]].concat());
        assert_eq!(a.0, 0);
        assert_eq!(a.1.as_bytes(), b.1.as_bytes());
    }
    let other = mfold(&["probe", "--n", "20000", "--seed", "100"]);
    let base = mfold(&["probe", "--n", "20000", "--seed", "99"]);
    assert_ne!(other.1, base.1);
}
