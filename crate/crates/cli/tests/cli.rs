use std::io::Cursor;
use std::process::Command;

use metproj_cli::run;
use metproj_cli::wire::{DerivativeOut, Response};

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

fn invoke(args: &[&str], stdin: &str) -> Outcome {
    let mut input = Cursor::new(stdin.as_bytes().to_vec());
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut argv = vec!["metproj"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut input, &mut out, &mut err);
    Outcome { code, stdout: String::from_utf8(out).unwrap(), stderr: String::from_utf8(err).unwrap() }
}

fn response(out: &Outcome) -> Response {
    assert_eq!(out.code, 0, "stderr: {}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

fn close(a: &[f64], b: &[f64]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= 1e-15)
}

#[test]
fn ball_eval_exterior_example() {
    let req = r#"{"center":[0,0],"radius":1,"point":[2,0],"direction":[1,1]}"#;
    let resp = response(&invoke(&["ball", "eval"], req));
    assert!(close(&resp.projection, &[1.0, 0.0]));
    assert_eq!(resp.region.label, "exterior");
    match resp.derivative {
        DerivativeOut::Matrix(rows) => {
            assert!(close(&rows[0], &[0.0, 0.0]));
            assert!(close(&rows[1], &[0.0, 0.5]));
        }
        other => panic!("expected a matrix, got {other:?}"),
    }
    assert!(close(resp.directional_derivative.as_deref().unwrap(), &[0.0, 0.5]));
    assert_eq!(resp.direction_class, None);
}

#[test]
fn soc_eval_boundary_example() {
    let req = r#"{"dimension":3,"point":[1,1,0],"direction":[1,1,0]}"#;
    let resp = response(&invoke(&["soc", "eval"], req));
    assert_eq!(resp.region.label, "bd_K");
    assert_eq!(resp.derivative, DerivativeOut::Label("not_differentiable".into()));
    assert!(close(resp.directional_derivative.as_deref().unwrap(), &[1.0, 1.0, 0.0]));
}

#[test]
fn ball_boundary_reports_direction_class() {
    let req = r#"{"center":[1,1],"radius":2,"point":[3,1],"direction":[-1,0]}"#;
    let resp = response(&invoke(&["ball", "eval"], req));
    assert_eq!(resp.region.label, "boundary");
    assert_eq!(resp.derivative, DerivativeOut::Label("not_differentiable".into()));
    assert_eq!(resp.direction_class.as_deref(), Some("down"));
    assert!(close(resp.directional_derivative.as_deref().unwrap(), &[-1.0, 0.0]));
}

#[test]
fn not_differentiable_exactly_on_kinks() {
    let cases = [
        (vec!["soc", "eval"], r#"{"dimension":3,"point":[0,0,0]}"#, "origin", false),
        (vec!["soc", "eval"], r#"{"dimension":3,"point":[-1,0,1]}"#, "bd_neg_K", false),
        (vec!["soc", "eval"], r#"{"dimension":3,"point":[0.5,0,1]}"#, "outside", true),
        (vec!["soc", "eval"], r#"{"dimension":2,"point":[3,1]}"#, "int_K", true),
        (vec!["soc", "eval"], r#"{"dimension":2,"point":[-3,1]}"#, "int_neg_K", true),
        (vec!["ball", "eval"], r#"{"center":[0],"radius":1,"point":[0.5]}"#, "interior", true),
    ];
    for (args, req, label, smooth) in cases {
        let resp = response(&invoke(&args, req));
        assert_eq!(resp.region.label, label);
        assert_eq!(matches!(resp.derivative, DerivativeOut::Matrix(_)), smooth, "{req}");
    }
}

#[test]
fn tolerance_flag_overrides_request() {
    let req = r#"{"center":[0],"radius":1,"point":[1.001],"tolerance":0.0}"#;
    assert_eq!(response(&invoke(&["ball", "eval"], req)).region.label, "exterior");
    let widened = response(&invoke(&["--tolerance", "0.01", "ball", "eval"], req));
    assert_eq!(widened.region.label, "boundary");
    assert_eq!(widened.region.tolerance, 0.01);
}

#[test]
fn input_errors_exit_two_with_one_line() {
    let bad = [
        (vec!["ball", "eval"], "{not json"),
        (vec!["ball", "eval"], r#"{"center":[0,0],"radius":1,"point":[2,0,0]}"#),
        (vec!["ball", "eval"], r#"{"center":[0,0],"radius":-1,"point":[2,0]}"#),
        (vec!["ball", "eval"], r#"{"center":[0,0],"radius":1,"point":[2,0],"direction":[1]}"#),
        (vec!["soc", "eval"], r#"{"dimension":3,"point":[1,1]}"#),
        (vec!["soc", "eval"], r#"{"dimension":1,"point":[1]}"#),
        (vec!["soc", "eval"], r#"{"dimension":2,"point":[1,1],"colour":"red"}"#),
        (vec!["soc", "eval"], r#"{"geometry":"ball","dimension":2,"point":[1,1]}"#),
        (vec!["--tolerance=-1", "soc", "eval"], r#"{"dimension":2,"point":[1,1]}"#),
        (vec!["--fd-step", "1", "verify", "ball"], ""),
    ];
    for (args, req) in bad {
        let out = invoke(&args, req);
        assert_eq!(out.code, 2, "{args:?} {req}");
        assert!(out.stdout.is_empty());
        assert_eq!(out.stderr.trim_end().lines().count(), 1, "{}", out.stderr);
    }
}

#[test]
fn response_round_trips_and_is_reproducible() {
    let req = r#"{"center":[0.1,-0.3,0.7],"radius":0.9,"point":[1.3,2.2,-0.4],"direction":[0.2,0.1,0.3]}"#;
    let first = invoke(&["ball", "eval"], req);
    let second = invoke(&["ball", "eval"], req);
    assert_eq!(first.stdout, second.stdout);
    let resp = response(&first);
    let reserialized = serde_json::to_string_pretty(&resp).unwrap() + "\n";
    assert_eq!(reserialized, first.stdout);

    // Feeding the projection back in classifies it on the sphere.
    let again = format!(
        r#"{{"center":[0.1,-0.3,0.7],"radius":0.9,"point":{}}}"#,
        serde_json::to_string(&resp.projection).unwrap()
    );
    assert_eq!(response(&invoke(&["ball", "eval"], &again)).region.label, "boundary");
}

#[test]
fn input_and_report_files() {
    let dir = tempfile::tempdir().unwrap();
    let req_path = dir.path().join("req.json");
    let report_path = dir.path().join("out.json");
    std::fs::write(&req_path, r#"{"dimension":2,"point":[0,1]}"#).unwrap();
    let out = invoke(
        &["--input", req_path.to_str().unwrap(), "--report", report_path.to_str().unwrap(), "soc", "eval"],
        "",
    );
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.is_empty());
    let resp: Response = serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    assert!(close(&resp.projection, &[0.5, 0.5]));

    let missing = invoke(&["--input", dir.path().join("nope.json").to_str().unwrap(), "soc", "eval"], "");
    assert_eq!(missing.code, 2);
}

#[test]
fn verify_all_passes_with_seed_42() {
    let out = invoke(&["verify", "all", "--seed", "42"], "");
    assert_eq!(out.code, 0, "{}", out.stdout);
    let report: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(report["seed"], 42);
    for suite in report["suites"].as_array().unwrap() {
        for p in suite["properties"].as_array().unwrap() {
            assert_eq!(p["pass"], true, "{p}");
        }
    }
}

#[test]
fn binary_examples_are_byte_identical() {
    let bin = env!("CARGO_BIN_EXE_metproj");
    let a = Command::new(bin).arg("examples").output().unwrap();
    let b = Command::new(bin).arg("examples").output().unwrap();
    assert!(a.status.success());
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_metproj");
    let status = Command::new(bin).args(["ball", "frobnicate"]).output().unwrap().status;
    assert_eq!(status.code(), Some(2));
    let help = Command::new(bin).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&help.stdout).contains("verify"));
}
