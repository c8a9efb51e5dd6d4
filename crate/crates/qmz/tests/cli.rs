//! End-to-end runs of the `qmz` binary: pinned text output, JSON mode, the
//! exit-code contract (0 success, 1 domain error, 2 usage error), the
//! QMZ_PRECISION guard, and byte-identical determinism.

use std::process::{Command, Output, Stdio};

fn qmz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qmz"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn coeffs_pinned_series() {
    let out = qmz(&["coeffs", "--index", "[2;1]@2", "--order", "8"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "[2bar] = -1·q + q^2 + -4·q^3 + 5·q^4 + -6·q^5 + 4·q^6 + -8·q^7 + 13·q^8 + O(q^9)\n"
    );
    // All three routes agree on the same invocation.
    for route in ["divisor-sum", "polylog", "eulerian"] {
        let o = qmz(&["coeffs", "--index", "[2;1]@2", "--order", "8", "--route", route]);
        assert_eq!(stdout(&o), stdout(&out), "route {route}");
    }
}

#[test]
fn regmatrix_pinned_display() {
    let out = qmz(&["regmatrix", "--level", "2", "--m", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("det = 32"), "{text}");
    assert!(text.contains("16 · M^-1"), "{text}");
    assert!(text.contains("[ 3 1 0 0 ]"), "{text}");
    assert!(text.contains("[  5 -3  1  1 ]"), "{text}");
}

#[test]
fn product_self_checks_and_prints() {
    let out = qmz(&["product", "--left", "[1;1]", "--right", "[1;0]", "--level", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("[1bar] * [1]"), "{text}");
    assert!(text.contains("[1,1bar]") && text.contains("[1bar,1]"), "{text}");
}

#[test]
fn exit_codes() {
    // Domain error: divergent zeta value.
    let out = qmz(&["zeta", "--index", "[1;1]@2"]);
    assert_eq!(out.status.code(), Some(1));
    // Usage errors: arity mismatch, level conflict, unknown subcommand,
    // missing level.
    let out = qmz(&["coeffs", "--index", "[1,2;0]@2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = qmz(&["coeffs", "--index", "[2;1]@2", "--level", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = qmz(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    let out = qmz(&["coeffs", "--index", "[2;1]"]);
    assert_eq!(out.status.code(), Some(2));
    // Help is a success.
    let out = qmz(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn precision_env_guard() {
    let out = Command::new(env!("CARGO_BIN_EXE_qmz"))
        .args(["coeffs", "--index", "[2;1]@2"])
        .env("QMZ_PRECISION", "40")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("QMZ_PRECISION"), "{err}");
    let out = Command::new(env!("CARGO_BIN_EXE_qmz"))
        .args(["coeffs", "--index", "[2;1]@2"])
        .env("QMZ_PRECISION", "53")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn json_mode_and_determinism() {
    let a = qmz(&["--json", "reduce", "--index", "[1;1]@2"]);
    let b = qmz(&["--json", "reduce", "--index", "[1;1]@2"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "identical invocations must be byte-identical");
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["index"], "[1;1]@2");
    assert_eq!(v["reduced"]["terms"].as_array().unwrap().len(), 2);
}

#[test]
fn relations_verify_round_trip() {
    let mined = qmz(&[
        "--json", "relations", "--level", "2", "--weight", "3", "--cutoff", "20000",
    ]);
    assert!(mined.status.success());
    let records: serde_json::Value = serde_json::from_str(&stdout(&mined)).unwrap();
    assert!(!records.as_array().unwrap().is_empty());
    // Feed the mined records straight back through `verify` on stdin.
    let mut child = Command::new(env!("CARGO_BIN_EXE_qmz"))
        .args(["verify", "--cutoff", "20000", "--tol", "1e-3"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    use std::io::Write;
    child
        .stdin
        .take()
        .unwrap()
        .write_all(&mined.stdout)
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success(), "verify failed: {}", stdout(&out));
    assert!(stdout(&out).lines().all(|l| l.starts_with("ok ")));
}
