use std::f64::consts::PI;
use std::process::Command;

use dyck_cli::run_with;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("dyck").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn run_json(args: &[&str]) -> Value {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

fn close(v: &Value, x: f64, tol: f64) -> bool {
    (v.as_f64().unwrap() - x).abs() < tol
}

#[test]
fn classify_right_isosceles() {
    let v = run_json(&["classify", "--vertices", "0,0", "1,0", "0,1"]);
    assert_eq!(v["degeneracy"], "Nondegenerate");
    assert_eq!(v["orientation"], "Positive");
    for (got, want) in v["angles"].as_array().unwrap().iter().zip([PI / 2.0, PI / 4.0, PI / 4.0]) {
        assert!(close(got, want, 1e-12));
    }
}

#[test]
fn classify_degenerate_inputs() {
    let v = run_json(&["classify", "--vertices", "-1,0", "1,0", "3,0"]);
    assert_eq!(v["degeneracy"], "Simple");
    assert_eq!(v["orientation"], "Zero");
    let v = run_json(&["classify", "--vertices", "0,0", "0,0", "1,0", "--free", "c=0.3"]);
    assert_eq!(v["degeneracy"], "Double");
    assert!(close(&v["angles"][1], 0.3, 1e-12));
    let v = run_json(&["classify", "--vertices", "2,1", "2,1", "2,1", "--directions", "1,0,-1,0,0,0"]);
    assert_eq!(v["degeneracy"], "TripledDouble");
}

#[test]
fn triple_point_without_directions_is_a_domain_error() {
    let (code, _, err) = run(&["classify", "--vertices", "1,1", "1,1", "1,1"]);
    assert_eq!(code, 1);
    assert!(err.contains("direction"), "{err}");
}

#[test]
fn equilateral_projects_to_minus_j() {
    let v = run_json(&["project", "--model", "sphere", "--vertices", "0,0", "1,0", "0.5,0.8660254037844386"]);
    let p = &v["point"];
    assert!(close(&p["x"], 0.0, 1e-9) && close(&p["y"], -1.0, 1e-9) && close(&p["z"], 0.0, 1e-9));
    assert!(v["loci"].as_array().unwrap().contains(&Value::from("EquilateralPlus")));
}

#[test]
fn project_torus_and_dyck() {
    let v = run_json(&["project", "--model", "torus", "--vertices", "0,0", "1,0", "0,1"]);
    assert_eq!(v["sheet"], "Pi");
    assert!(close(&v["point"]["p"], PI / 2.0, 1e-12));
    let v = run_json(&["project", "--model", "dyck", "--vertices", "0,0", "1,0", "0,1"]);
    assert_eq!(v["blowup"]["gauge"], "largest-side-zero");
    assert_eq!(v["class"]["sides"].as_array().unwrap().len(), 3);
}

#[test]
fn orbit_sizes() {
    let v = run_json(&["orbit", "--vertices", "0,0", "1,0", "0.3,0.7"]);
    assert_eq!(v["size"], 12);
    assert_eq!(v["images"].as_array().unwrap().len(), 12);
    let v = run_json(&["orbit", "--vertices", "0,0", "1,0", "0.5,0.8"]);
    assert_eq!(v["size"], 6);
    let v = run_json(&["orbit", "--vertices", "0,0", "1,0", "0.5,0.8660254037844386"]);
    assert_eq!(v["size"], 2);
}

#[test]
fn separate_constant_angle_pair() {
    let torus = run_json(&["separate", "--pair", "constant-angle:1.5707963,2.0943951", "--model", "torus"]);
    assert_eq!(torus["verdict"], "Separated");
    let sphere = run_json(&["separate", "--pair", "constant-angle:1.5707963,2.0943951", "--model", "sphere"]);
    assert_eq!(sphere["verdict"], "Merged");
    let ratio = run_json(&["separate", "--pair", "constant-ratio:1,2", "--model", "torus"]);
    assert_eq!(ratio["verdict"], "Merged");
    assert!(ratio["distance"].as_f64().unwrap() < 1e-6);
}

#[test]
fn trace_rows_and_limit() {
    let (code, out, _) = run(&["--format", "csv", "trace", "--family", "constant-angle", "--param", "1.5707963267948966", "--samples", "5", "--limit"]);
    assert_eq!(code, 0);
    let mut rdr = csv::Reader::from_reader(out.as_bytes());
    assert_eq!(rdr.headers().unwrap(), vec!["t", "class", "x", "y", "z", "p", "q", "r"]);
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 6);
    let last = &rows[5];
    let class: Value = serde_json::from_str(&last[1]).unwrap();
    assert_eq!(class["sides"][1], serde_json::json!([0.0, 0.0]));
    // sphere limit is δ_b
    let xyz: Vec<f64> = (2..5).map(|i| last[i].parse().unwrap()).collect();
    assert!((xyz[0] - 3f64.sqrt() / 2.0).abs() < 1e-9 && xyz[1].abs() < 1e-9 && (xyz[2] - 0.5).abs() < 1e-9);

    let v = run_json(&["trace", "--family", "inscribed", "--samples", "7"]);
    for row in v["rows"].as_array().unwrap() {
        assert!(close(&row["class"]["angles"][0], PI / 2.0, 1e-12));
    }
    let v = run_json(&["trace", "--family", "poncelet", "--r", "0.25", "--R", "1", "--samples", "4"]);
    assert_eq!(v["rows"].as_array().unwrap().len(), 4);
}

#[test]
fn poncelet_config_and_orbit() {
    let v = run_json(&["poncelet", "--r", "0.3", "--R", "1", "--samples", "16"]);
    assert!(v["chapple_residual"].as_f64().unwrap() < 1e-9);
    for s in v["orbit"].as_array().unwrap() {
        assert!(close(&s["ratio"], 0.3, 1e-9));
        assert!(s["closure_residual"].as_f64().unwrap() < 1e-8);
    }
    let (code, _, _) = run(&["poncelet", "--r", "0.6", "--R", "1"]);
    assert_eq!(code, 1);
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        vec!["classify", "--bogus"],
        vec!["classify"],
        vec!["classify", "--vertices", "0,0", "1,0"],
        vec!["classify", "--vertices", "0,0", "1,x", "0,1"],
        vec!["project", "--model", "plane", "--vertices", "0,0", "1,0", "0,1"],
        vec!["separate", "--pair", "inscribed:1,2", "--model", "torus"],
        vec!["trace", "--family", "constant-angle"],
        vec!["trace", "--family", "poncelet", "--limit"],
        vec!["emit-figure", "poncelet-levels", "--levels", "0.7"],
        vec![],
    ] {
        let (code, _, err) = run(&args);
        assert_eq!(code, 2, "{args:?}: {err}");
        assert!(!err.is_empty());
    }
}

#[test]
fn malformed_triangle_json_names_the_field() {
    let (code, _, err) = run(&["classify", "--triangle", r#"{"basepoint": [0, 0], "sides": [[1, 0], [-1, "x"], [0, 0]]}"#]);
    assert_eq!(code, 1);
    assert!(err.contains("sides[1][1]"), "{err}");
    let (code, _, err) = run(&["classify", "--triangle", "{not json"]);
    assert_eq!(code, 1);
    assert!(err.contains("invalid JSON"), "{err}");
    let v = run_json(&["classify", "--triangle", r#"{"basepoint": [0, 0], "sides": [[1, 0], [-1, 1], [0, -1]]}"#]);
    assert_eq!(v["degeneracy"], "Nondegenerate");
}

#[test]
fn help_goes_to_stdout() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("emit-figure"));
}

#[test]
fn figures_have_headers_and_repeat_exactly() {
    for name in ["poncelet-levels", "sphere-atlas", "torus-atlas"] {
        let (code, a, _) = run(&["emit-figure", name]);
        assert_eq!(code, 0);
        let (_, b, _) = run(&["emit-figure", name]);
        assert_eq!(a, b);
        let header = a.lines().next().unwrap();
        assert!(header.chars().all(|c| c.is_ascii_lowercase() || c == '_' || c == ','), "{header}");
    }
    let (_, a, _) = run(&["emit-figure", "sphere-atlas", "--seed", "1", "--samples", "12"]);
    let (_, b, _) = run(&["emit-figure", "sphere-atlas", "--seed", "2", "--samples", "12"]);
    assert_ne!(a, b);
    assert_eq!(a.lines().count(), 13);
}

#[test]
fn shape_tol_is_read_from_the_environment() {
    let exe = env!("CARGO_BIN_EXE_dyck");
    // a 1e-6 sliver counts as a simple point only under a loose tolerance
    let args = ["classify", "--vertices", "0,0", "1,0", "0.5,0.000001"];
    let strict = Command::new(exe).args(args).output().unwrap();
    let loose = Command::new(exe).args(args).env("SHAPE_TOL", "1e-3").output().unwrap();
    let strict: Value = serde_json::from_slice(&strict.stdout).unwrap();
    let loose: Value = serde_json::from_slice(&loose.stdout).unwrap();
    assert_eq!(strict["degeneracy"], "Nondegenerate");
    assert_eq!(loose["degeneracy"], "Simple");
    let bad = Command::new(exe).args(args).env("SHAPE_TOL", "-1").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
