//! End-to-end runs of the binary: reports on stdout, exit codes, diagnostics.

use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

struct Run {
    code: i32,
    report: Option<Value>,
    stderr: String,
}

fn grtkit(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_grtkit")).args(args).output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        report: serde_json::from_slice(&out.stdout).ok(),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

fn error_kind(r: &Run) -> String {
    let v: Value = serde_json::from_str(&r.stderr).unwrap_or_else(|_| panic!("stderr is not JSON: {}", r.stderr));
    v["error"]["kind"].as_str().unwrap().to_string()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

/// `exp(c [X0,X1])` truncated at `n`, written out by hand.
fn exp_commutator(n: usize) -> String {
    // c = 1/24: c^2/2 ([X0,X1])^2 contributes at degree 4
    let mut terms = vec![r#"{"word":"","coeff":"1"}"#.to_string()];
    terms.push(r#"{"word":"X0 X1","coeff":"1/24"}"#.into());
    terms.push(r#"{"word":"X1 X0","coeff":"-1/24"}"#.into());
    if n >= 4 {
        for (w, c) in [
            ("X0 X1 X0 X1", "1/1152"),
            ("X0 X1 X1 X0", "-1/1152"),
            ("X1 X0 X0 X1", "-1/1152"),
            ("X1 X0 X1 X0", "1/1152"),
        ] {
            terms.push(format!(r#"{{"word":"{w}","coeff":"{c}"}}"#));
        }
    }
    format!(r#"{{"alphabet":["X0","X1"],"truncation":{n},"ring":"rational","terms":[{}]}}"#, terms.join(","))
}

#[test]
fn drinfeld_associator_end_to_end() {
    let dir = tempfile::tempdir().unwrap();
    let kz = dir.path().join("kz.json");
    let pair = dir.path().join("pair.json");
    assert_eq!(grtkit(&["build-kz", "--weight", "6", "--digits", "40", "-o", p(&kz)]).code, 0);
    let r = grtkit(&["check-pentagon", p(&kz)]);
    assert_eq!(r.code, 0);
    let report = r.report.unwrap();
    assert_eq!(report["verdict"], true);
    assert_eq!(report["precision"], 40);
    assert_eq!(report["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
    assert_eq!(grtkit(&["check-hexagon", p(&kz), "--mu", "2pii"]).code, 0);
    assert_eq!(grtkit(&["check-hexagon", p(&kz), "--mu", "-2pii"]).code, 0);
    assert_eq!(grtkit(&["check-hexagon", p(&kz), "--mu", "1"]).code, 1);
    assert_eq!(grtkit(&["check-assoc", p(&kz)]).code, 0);
    assert_eq!(grtkit(&["check-dmr", p(&kz)]).code, 0);
    let dmr0 = grtkit(&["check-dmr", p(&kz), "--as-dmr0"]);
    assert_eq!(dmr0.code, 1);
    let failing: Vec<_> = dmr0.report.unwrap()["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| !matches!(c["residual"].as_f64(), Some(x) if x <= 1e-25))
        .map(|c| c["equation"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(failing, ["quadratic-terms"]);
    assert_eq!(grtkit(&["kv", "from-assoc", p(&kz), "--mu", "2pii", "-o", p(&pair)]).code, 0);
    assert_eq!(grtkit(&["kv", "check-main", p(&pair)]).code, 0);
    let krv = grtkit(&["kv", "check-krv", p(&pair)]);
    assert_eq!(krv.code, 1);
    assert_eq!(krv.report.unwrap()["details"]["jacobian_condition"], "not checked");
}

#[test]
fn input_errors_exit_two_with_a_diagnostic() {
    let dir = tempfile::tempdir().unwrap();
    let garbage = write(dir.path(), "garbage.json", "{ not json");
    let r = grtkit(&["check-pentagon", p(&garbage)]);
    assert_eq!(r.code, 2);
    assert_eq!(error_kind(&r), "json");
    let y = write(
        dir.path(),
        "y.json",
        r#"{"alphabet":["Y1","Y2"],"weights":[1,2],"truncation":2,"ring":"rational","terms":[{"word":"","coeff":"1"}]}"#,
    );
    let r = grtkit(&["check-pentagon", p(&y)]);
    assert_eq!((r.code, error_kind(&r).as_str()), (2, "alphabet-mismatch"));
    let r = grtkit(&["build-kz", "--digits", "10"]);
    assert_eq!((r.code, error_kind(&r).as_str()), (2, "precision-too-low"));
    let r = grtkit(&["build-kz", "--weight", "12"]);
    assert_eq!((r.code, error_kind(&r).as_str()), (2, "precondition"));
    let r = grtkit(&["mzv", "eval", "--index", "2,1"]);
    assert_eq!((r.code, error_kind(&r).as_str()), (2, "precondition"));
    assert_eq!(grtkit(&["check-pentagon", p(&dir.path().join("missing.json"))]).code, 2);
    let r = grtkit(&["no-such-verb"]);
    assert_eq!((r.code, error_kind(&r).as_str()), (2, "usage"));
    assert_eq!(grtkit(&["--help"]).code, 0);
    assert_eq!(grtkit(&["check-hexagon", p(&y), "--mu", "pi"]).code, 2);
}

#[test]
fn exponential_of_the_commutator_fails_the_pentagon_at_degree_four() {
    let dir = tempfile::tempdir().unwrap();
    let low = write(dir.path(), "e3.json", &exp_commutator(3));
    let high = write(dir.path(), "e4.json", &exp_commutator(4));
    assert_eq!(grtkit(&["check-pentagon", p(&low)]).code, 0);
    let r = grtkit(&["check-pentagon", p(&high)]);
    assert_eq!(r.code, 1);
    let check = &r.report.unwrap()["checks"][0];
    assert!((check["residual"].as_f64().unwrap() - 1.0 / 230.4).abs() < 1e-12);
    // mu^2 = 24 * 1/24 = 1 at degree 3
    let r = grtkit(&["check-hexagon", p(&low)]);
    assert_eq!(r.code, 0);
    assert_eq!(r.report.unwrap()["details"]["mu_passing"].as_array().unwrap().len(), 2);
}

#[test]
fn solver_outputs_feed_the_checks() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.json");
    let f = dir.path().join("f.json");
    let gg = dir.path().join("gg.json");
    let r = grtkit(&["pentagon", "solve", "--degree", "6", "-o", p(&g)]);
    assert_eq!(r.code, 0);
    assert_eq!(r.report.unwrap()["details"]["dimensions"], serde_json::json!([0, 0, 1, 0, 1, 0]));
    assert_eq!(grtkit(&["check-grt1", p(&g)]).code, 0);
    assert_eq!(grtkit(&["check-dmr", p(&g), "--as-dmr0"]).code, 0);
    assert_eq!(grtkit(&["check-hexagon", p(&g), "--mu", "0"]).code, 0);
    assert_eq!(grtkit(&["grt", "mul", p(&g), p(&g), "-o", p(&gg)]).code, 0);
    assert_eq!(grtkit(&["check-grt1", p(&gg)]).code, 0);

    let r =
        grtkit(&["pentagon", "solve", "--degree", "5", "--normalization", "free", "--quadratic", "1/12", "-o", p(&f)]);
    assert_eq!(r.code, 0);
    assert_eq!(grtkit(&["check-grt1", p(&f)]).code, 1);
    let r = grtkit(&["check-hexagon", p(&f)]);
    assert_eq!(r.code, 0);
    assert!(r.report.unwrap()["details"]["mu"].as_str().unwrap().contains("sqrt(2)"));
}

#[test]
fn mzv_commands_and_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("mzv.json");
    let r = grtkit(&["mzv", "eval", "--index", "3", "--digits", "30", "--cache", p(&cache)]);
    assert_eq!(r.code, 0);
    assert!(r.report.unwrap()["details"]["value"].as_str().unwrap().starts_with("1.20205690315959428539973816"));
    assert!(cache.exists());
    let r = grtkit(&["zagier", "--a", "2", "--b", "1", "--cache", p(&cache)]);
    assert_eq!(r.code, 0);
    let r = grtkit(&["relations", "--degree", "4", "--verify-kz"]);
    assert_eq!(r.code, 0);
    assert!(r.report.unwrap()["details"]["count"].as_u64().unwrap() > 0);
}

#[test]
fn selftest_passes() {
    let r = grtkit(&["selftest"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let report = r.report.unwrap();
    assert!(report["checks"].as_array().unwrap().iter().all(|c| c["residual"] == 0.0));
}
