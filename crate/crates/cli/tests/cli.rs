use std::process::Command;

use dlpq_core::expr::parse_element;
use dlpq_core::{BigRational, Signature};
use serde_json::Value;

struct Run {
    status: i32,
    out: String,
    err: String,
}

fn dlpq(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("dlpq").chain(args.iter().copied());
    let status = dlpq_cli::run(argv, &mut out, &mut err);
    Run {
        status,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut with = args.to_vec();
    with.push("--json");
    let r = dlpq(&with);
    (
        r.status,
        serde_json::from_str(&r.out).expect("one JSON document"),
    )
}

#[test]
fn documented_examples() {
    let r = dlpq(&["det", "--signature", "1,1", "1 + e1"]);
    assert_eq!((r.status, r.out.as_str()), (0, "0\n"));

    let r = dlpq(&[
        "inverse",
        "--signature",
        "0,1",
        "1 + e1",
        "--backend",
        "rational",
    ]);
    assert_eq!((r.status, r.out.as_str()), (0, "1/2 - 1/2*e1\n"));

    let r = dlpq(&["inverse", "--signature", "1,0", "1 + e1"]);
    assert_eq!(r.status, 1);
    assert!(r.out.is_empty());
    assert!(r.err.contains("NOT_INVERTIBLE"), "{}", r.err);
    assert!(r.err.contains("U * (1 - e1) = 0"), "{}", r.err);
}

#[test]
fn exit_statuses() {
    let cases: &[(&[&str], i32)] = &[
        (&["det", "1"], 2),
        (&["det", "-s", "1,1"], 2),
        (&["det", "-s", "1;1", "1"], 2),
        (&["det", "-s", "0,0", "1"], 2),
        (&["det", "-s", "1,1", "1 +* e1"], 2),
        (&["det", "-s", "1,1", "e21"], 2),
        (&["det", "-s", "1,1", "[1, 2, 3]"], 2),
        (&["det", "-s", "1,1", "e3"], 1),
        (&["det", "-s", "1,1", "--conjugate", "3", "e1"], 1),
        (&["det", "-s", "1,1", "--tol-equality", "0", "e1"], 2),
        (&["det", "-s", "1,1", "--random", "1", "e1"], 2),
        (&["matrix", "-s", "11,0", "e1"], 2),
        (&["frobnicate"], 2),
        (&["--help"], 0),
        (&["det", "--help"], 0),
        (&["--version"], 0),
        (
            &["det", "-s", "1,1", "--method", "matrix", "[1, 2, 3, 4]"],
            0,
        ),
    ];
    for (args, want) in cases {
        let r = dlpq(args);
        assert_eq!(r.status, *want, "{args:?}: {}{}", r.out, r.err);
        if *want == 2 && !args.contains(&"frobnicate") {
            assert!(r.err.starts_with("error"), "{args:?}: {}", r.err);
        }
    }
}

#[test]
fn error_messages_carry_codes() {
    let r = dlpq(&["eval", "-s", "1,1", "e31"]);
    assert!(r.err.contains("BLADE_ERROR"), "{}", r.err);
    let r = dlpq(&["eval", "-s", "1,1", "2e1"]);
    assert!(r.err.contains("SYNTAX_ERROR"), "{}", r.err);
    let r = dlpq(&["eval", "-s", "1,1", "e3"]);
    assert!(
        r.err.contains("GENERATOR_OUT_OF_RANGE") && r.err.contains("e3"),
        "{}",
        r.err
    );
}

#[test]
fn json_document_shape() {
    let (status, doc) = json(&["det", "-s", "2,1", "1 + e1 - 1/2*e23", "-b", "rational"]);
    assert_eq!(status, 0);
    assert_eq!(doc["command"], "det");
    assert_eq!(doc["signature"], "2,1");
    assert_eq!(doc["input"]["backend"], "rational");
    assert_eq!(doc["input"]["element"], "1 + e1 - 1/2*e23");
    assert_eq!(doc["input"]["coefficients"].as_array().unwrap().len(), 8);
    assert_eq!(doc["result"]["method"], "recursive");
    assert!(doc["diagnostics"].as_array().unwrap().is_empty());

    let (status, doc) = json(&["inverse", "-s", "1,0", "1 + e1"]);
    assert_eq!(status, 1);
    assert!(doc["result"].is_null());
    let diags = doc["diagnostics"].as_array().unwrap();
    assert_eq!(diags[0]["level"], "error");
    assert_eq!(diags[0]["code"], "NOT_INVERTIBLE");
    assert_eq!(diags[1]["code"], "WITNESS_HINT");
}

#[test]
fn json_coefficients_round_trip() {
    for backend in ["float64", "rational"] {
        let (_, doc) = json(&["eval", "-s", "1,2", "--random", "9", "-b", backend]);
        let coeffs = doc["result"]["coefficients"].to_string();
        let (_, again) = json(&["eval", "-s", "1,2", &coeffs, "-b", backend]);
        assert_eq!(again["result"], doc["result"], "{backend}");
        let text = doc["result"]["element"].as_str().unwrap().to_string();
        let (_, parsed) = json(&["eval", "-s", "1,2", &text, "-b", backend]);
        assert_eq!(parsed["result"], doc["result"], "{backend}");
    }
}

#[test]
fn random_inputs_are_deterministic() {
    let a = dlpq(&["adjoint", "-s", "2,2", "--random", "42"]);
    let b = dlpq(&["adjoint", "-s", "2,2", "--random", "42"]);
    let c = dlpq(&["adjoint", "-s", "2,2", "--random", "43"]);
    assert_eq!(a.out, b.out);
    assert_ne!(a.out, c.out);
    let r = dlpq(&["eval", "-s", "1,1", "--random", "5", "-b", "rational"]);
    let u = parse_element::<BigRational>(r.out.trim(), Signature::new(1, 1).unwrap()).unwrap();
    assert!(u
        .coeffs()
        .iter()
        .all(|c| c.numer().magnitude() <= &9u32.into() && c.denom() <= &9.into()));
}

#[test]
fn methods_agree() {
    let u = "3 + e1 - 2*e2 + 1/2*e12 + e3 - e123";
    let det: Vec<String> = ["recursive", "product", "fl", "matrix"]
        .iter()
        .map(|m| dlpq(&["det", "-s", "1,2", "-b", "rational", "--method", m, u]).out)
        .collect();
    assert!(det.iter().all(|d| d == &det[0]), "{det:?}");
    let cp: Vec<String> = ["recursive", "symmetric", "fl", "matrix"]
        .iter()
        .map(|m| dlpq(&["charpoly", "-s", "1,2", "-b", "rational", "--method", m, u]).out)
        .collect();
    assert!(cp.iter().all(|d| d == &cp[0]), "{cp:?}");
    let adj: Vec<String> = ["recursive", "product", "fl"]
        .iter()
        .map(|m| dlpq(&["adjoint", "-s", "1,2", "-b", "rational", "--method", m, u]).out)
        .collect();
    assert!(adj.iter().all(|d| d == &adj[0]), "{adj:?}");
}

#[test]
fn charpoly_and_trace_text() {
    assert_eq!(dlpq(&["charpoly", "-s", "0,1", "e1"]).out, "λ^2 + 1\n");
    assert_eq!(
        dlpq(&["charpoly", "-s", "1,0", "e1", "-b", "rational"]).out,
        "λ^2 - 1\n"
    );
    assert_eq!(dlpq(&["trace", "-s", "2,2", "3 + e1"]).out, "48\n");
}

#[test]
fn conjugate_flag() {
    let r = dlpq(&["eval", "-s", "1,1", "--conjugate", "1", "1 + e1 + e2 + e12"]);
    assert_eq!(r.out, "1 - e1 + e2 - e12\n");
    let r = dlpq(&[
        "eval",
        "-s",
        "1,1",
        "--conjugate",
        "{1,2}",
        "1 + e1 + e2 + e12",
    ]);
    assert_eq!(r.out, "1 - e1 - e2 + e12\n");
    let plain = dlpq(&["det", "-s", "2,1", "--random", "3", "-b", "rational"]).out;
    for list in ["1", "2,3", "e1,e3", ""] {
        let conj = dlpq(&[
            "det",
            "-s",
            "2,1",
            "--random",
            "3",
            "-b",
            "rational",
            "--conjugate",
            list,
        ]);
        assert_eq!(conj.out, plain, "--conjugate {list:?}");
    }
}

#[test]
fn matrix_formats() {
    let r = dlpq(&["matrix", "-s", "1,1", "1 + 2*e1", "--format", "csv"]);
    assert_eq!(r.out, "1,2,0,0\n2,1,0,0\n0,0,1,2\n0,0,2,1\n");
    let r = dlpq(&["matrix", "-s", "0,1", "1 + 2*e1"]);
    assert_eq!(r.out, " 1  -2\n 2   1\n");
    let (_, doc) = json(&["matrix", "-s", "0,1", "1/2 + e1", "-b", "rational"]);
    assert_eq!(doc["result"]["dim"], 2);
    assert_eq!(
        doc["result"]["rows"],
        serde_json::json!([["1/2", "-1"], ["1", "1/2"]])
    );
}

#[test]
fn witness_report() {
    let sig = Signature::new(2, 1).unwrap();
    let u_text = "(1 + e12)*(2 - e3 + e123)";
    let r = dlpq(&["witness", "-s", "2,1", "-b", "rational", u_text]);
    assert_eq!(r.status, 0);
    let mut lines = r.out.lines();
    assert_eq!(lines.next(), Some("zero divisor"));
    assert_eq!(lines.next(), Some("det: 0"));
    let v_text = lines.next().unwrap().strip_prefix("witness: ").unwrap();
    let u = parse_element::<BigRational>(u_text, sig).unwrap();
    let v = parse_element::<BigRational>(v_text, sig).unwrap();
    assert!(!v.is_zero() && (&u * &v).is_zero());

    let r = dlpq(&["witness", "-s", "0,1", "1 + e1"]);
    assert_eq!(r.out, "unit\ndet: 2\n");
}

#[test]
fn verify_suites() {
    let r = dlpq(&["verify", "-s", "0,1", "e1"]);
    assert_eq!(r.status, 0, "{}", r.out);
    assert!(
        r.out.starts_with("trace: 0\ndet: 1\ncharpoly: λ^2 + 1\n"),
        "{}",
        r.out
    );
    assert!(
        r.out.contains("summary: 21 passed, 0 failed, 0 skipped"),
        "{}",
        r.out
    );

    let r = dlpq(&["verify", "-s", "2,1", "-b", "rational", "1 + e1"]);
    assert_eq!(r.status, 0, "{}", r.out);
    assert!(r.out.contains("NOT_INVERTIBLE branch taken"));
    assert!(!r.out.contains("FAIL"));

    for suite in [
        "conjugation",
        "det",
        "charpoly",
        "inverse",
        "trace",
        "zero-divisor",
    ] {
        let (status, doc) = json(&["verify", "-s", "3,2", "--random", "11", "--suite", suite]);
        assert_eq!(status, 0, "{suite}: {doc}");
        assert_eq!(doc["result"]["suite"], suite);
        assert_eq!(doc["result"]["passed"], true);
    }
}

#[test]
fn verify_reports_skips_above_limits() {
    let r = dlpq(&[
        "verify", "-s", "0,7", "--random", "1", "--suite", "charpoly",
    ]);
    assert_eq!(r.status, 0);
    assert!(r.out.contains("SKIP"), "{}", r.out);
}

#[test]
fn overflow_is_flagged() {
    let r = dlpq(&["det", "-s", "0,10", "--random", "1"]);
    assert_eq!(r.status, 0);
    assert_eq!(r.out, "inf\n");
    assert!(r.err.contains("warning"), "{}", r.err);
    let (_, doc) = json(&["inverse", "-s", "0,10", "--random", "1"]);
    let coeffs = doc["result"]["coefficients"].as_array().unwrap();
    assert!(coeffs
        .iter()
        .all(|c| c.as_f64().is_some_and(f64::is_finite)));
}

#[test]
fn binary_and_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_dlpq"))
        .args(["inverse", "--signature", "0,1", "1 + e1"])
        .env("DLPQ_BACKEND", "rational")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "1/2 - 1/2*e1\n");

    let out = Command::new(env!("CARGO_BIN_EXE_dlpq"))
        .args(["inverse", "--signature", "1,0", "1 + e1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NOT_INVERTIBLE"));

    let out = Command::new(env!("CARGO_BIN_EXE_dlpq"))
        .arg("det")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
