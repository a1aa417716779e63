use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn burau(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_burau")).args(args).output().expect("binary runs")
}

/// The last stdout line, parsed.
fn report(out: &Output) -> Value {
    let text = String::from_utf8_lossy(&out.stdout);
    let line = text.lines().last().unwrap_or_else(|| panic!("no output; stderr: {}", String::from_utf8_lossy(&out.stderr)));
    serde_json::from_str(line).expect("json report")
}

fn path(dir: &tempfile::TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_owned()
}

fn int_rows(v: &Value) -> Vec<Vec<i64>> {
    v.as_array().unwrap().iter().map(|r| r.as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect()).collect()
}

#[test]
fn eval_prints_the_generator_block() {
    let out = burau(&["eval", "--n", "3", "--word", "s1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["command"], "eval");
    assert_eq!(r["status"], "pass");
    let e = &r["payload"]["entries"];
    assert_eq!(e[0][0]["t"], serde_json::json!({"0": "1", "1": "-1"}));
    assert_eq!(e[0][1]["t"], serde_json::json!({"0": "1"}));
    assert_eq!(e[1][0]["t"], serde_json::json!({"1": "1"}));
    assert_eq!(e[1][1]["t"], serde_json::json!({}));
}

#[test]
fn alpha_binding_is_depth_three() {
    let out = burau(&[
        "--let",
        "W=[A13,A23][A24,A14][A14,A34][A34,A24]",
        "coeff",
        "--n",
        "5",
        "--word",
        "W",
        "--k",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let m = int_rows(&report(&out)["payload"]["matrix"]);
    let mut expected = vec![vec![0i64; 5]; 5];
    for (i, j, s) in [(1, 3, 1), (0, 2, -1)] {
        expected[i][i] += s;
        expected[j][j] += s;
        expected[i][j] -= s;
        expected[j][i] -= s;
    }
    assert_eq!(m, expected);
    let d = report(&burau(&["--let", "W=[A13,A23][A24,A14][A14,A34][A34,A24]", "depth", "--n", "5", "--word", "W"]));
    assert_eq!(d["payload"]["depth"], 3);
}

#[test]
fn delta_has_the_published_coefficient() {
    let r = report(&burau(&["coeff", "--n", "5", "--word", "DELTA", "--k", "5"]));
    assert_eq!(
        int_rows(&r["payload"]["matrix"]),
        vec![
            vec![0, 2, 0, 2, -4],
            vec![2, -2, -2, 1, 1],
            vec![0, -2, 0, -2, 4],
            vec![2, 1, -2, 1, -2],
            vec![-4, 1, 4, -2, 1],
        ]
    );
}

#[test]
fn identity_word_has_infinite_depth() {
    let r = report(&burau(&["depth", "--n", "4", "--word", ""]));
    assert_eq!(r["payload"]["depth"], "inf");
}

#[test]
fn usage_errors_exit_two() {
    let out = burau(&["eval", "--n", "3", "--word", "s7"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    assert_eq!(burau(&["eval", "--n", "3", "--word", "NOPE"]).status.code(), Some(2));
    assert_eq!(burau(&["check", "--matrix", "/nonexistent/file.json"]).status.code(), Some(2));
    assert_eq!(burau(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn non_members_fail_with_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = path(&dir, "bad.json");
    std::fs::write(&bad, r#"{"n":2,"entries":[[{"t":{"0":"2"}},{"t":{}}],[{"t":{}},{"t":{"0":"1"}}]]}"#).unwrap();
    let out = burau(&["check", "--matrix", &bad]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["status"], "fail");
    assert_eq!(r["payload"]["conditions"]["fixes_v"], false);
}

#[test]
fn eval_output_feeds_check_and_approximate() {
    let dir = tempfile::tempdir().unwrap();
    let gamma = path(&dir, "gamma.json");
    let out = burau(&["eval", "--n", "5", "--word", "s1 A24^-1 s3 s2^-1 [A12,A34]"]);
    std::fs::write(&gamma, &out.stdout).unwrap();
    let c = burau(&["check", "--matrix", &gamma]);
    assert_eq!(c.status.code(), Some(0), "{}", String::from_utf8_lossy(&c.stdout));
    let a = burau(&["approximate", "--gamma", &gamma, "--K", "3"]);
    assert_eq!(a.status.code(), Some(0));
    let r = report(&a);
    assert_eq!(r["status"], "pass");
    let d = &r["payload"]["achieved_depth"];
    assert!(d == "inf" || d.as_u64().is_some_and(|d| d >= 4), "{d}");
}

#[test]
fn library_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let lib = path(&dir, "lib.json");
    let b = burau(&["library-build", "--n", "5", "--max-degree", "3", "--out", &lib]);
    assert_eq!(b.status.code(), Some(0));
    assert!(Path::new(&lib).exists());
    let v = burau(&["library-verify", "--library", &lib]);
    assert_eq!(v.status.code(), Some(0));
    assert_eq!(report(&v)["payload"]["max_degree"], 3);

    let gamma = path(&dir, "alpha.json");
    std::fs::write(&gamma, burau(&["eval", "--n", "5", "--word", "ALPHA"]).stdout).unwrap();
    let a = burau(&["approximate", "--gamma", &gamma, "--K", "3", "--library", &lib]);
    assert_eq!(a.status.code(), Some(0));

    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(&lib).unwrap()).unwrap();
    doc["degrees"][0]["witnesses"][0]["word"] = Value::from("A13");
    std::fs::write(&lib, doc.to_string()).unwrap();
    assert_ne!(burau(&["library-verify", "--library", &lib]).status.code(), Some(0));
}

#[test]
fn bracket_of_inline_elements() {
    let x = |i: usize, j: usize| {
        let mut m = vec![vec![0i64; 4]; 4];
        m[i][i] = 1;
        m[j][j] = 1;
        m[i][j] = -1;
        m[j][i] = -1;
        serde_json::json!({ "degree": 1, "matrix": m }).to_string()
    };
    let out = burau(&["bracket", &x(0, 1), &x(0, 2)]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["payload"]["degree"], 2);
    let m = int_rows(&r["payload"]["matrix"]);
    assert_eq!(m[0][1], 1);
    assert_eq!(m[0][2], -1);
    assert_eq!(m[1][2], 1);
}

#[test]
fn delta_preset_search_streams_hits() {
    let out = burau(&["search", "--preset", "delta"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    let lines: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let r = lines.last().unwrap();
    assert_eq!(r["status"], "pass");
    assert!(lines.len() >= 2);
}

#[test]
fn human_output_is_plain_text() {
    let out = burau(&["--human", "depth", "--n", "5", "--word", "ALPHA"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.starts_with("pass"), "{text}");
    assert!(serde_json::from_str::<Value>(text.trim()).is_err());
}
