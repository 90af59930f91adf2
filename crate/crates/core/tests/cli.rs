use std::io::Write;
use std::process::{Command, Stdio};

use fanokit::cli::{reproduce_paper, run_to_string};
use serde_json::Value;

fn ok(args: &[&str]) -> Value {
    let argv = std::iter::once("fanokit").chain(args.iter().copied());
    let text = run_to_string(argv).unwrap_or_else(|(code, msg)| panic!("{args:?} exited {code}: {msg}"));
    serde_json::from_str(&text).unwrap()
}

fn code(args: &[&str]) -> i32 {
    let argv = std::iter::once("fanokit").chain(args.iter().copied());
    match run_to_string(argv) {
        Ok(_) => 0,
        Err((c, _)) => c,
    }
}

fn close(v: &Value, expected: f64, tol: f64) -> bool {
    (v.as_f64().unwrap() - expected).abs() <= tol
}

#[test]
fn every_subcommand_answers() {
    let cube = r#"{"dim":2,"facets":[{"normal":[1,0],"offset":"1"},{"normal":[-1,0],"offset":"1"},{"normal":[0,1],"offset":"1"},{"normal":[0,-1],"offset":"1"}]}"#;
    assert_eq!(ok(&["semistable", "--json", cube])["k_semistable"], true);
    assert_eq!(ok(&["semistable", "--json", r#"{"n":1,"weights":["1/2","1/2","0"]}"#])["kind"], "arrangement");
    assert_eq!(ok(&["volume", "--json", cube])["degree"], "8");
    assert_eq!(ok(&["barycenter", "--preset", "p3-blowup"])["barycenter"], serde_json::json!(["1/14", "1/14", "1/14"]));
    assert!(close(&ok(&["sx", "--preset", "p3-blowup"])["n_factorial_S"], 41.8, 0.05));
    let poo2 = ok(&["sx", "--preset", "p-o-o2"]);
    assert!(close(&poo2["n_factorial_S"], 30.3, 0.05));
    assert_eq!(poo2["certified"], true);
    let flags = ok(&["sx", "--a", "5", "--b", "1", "--det-correction", "2"]);
    assert!(close(&flags["n_factorial_S"], 30.3, 0.05));
    assert!(close(&ok(&["pn-height", "--n", "1"])["value"], 4.28946, 5e-6));
    assert_eq!(ok(&["scaled-height", "--n", "2", "--t", "1"])["value"], ok(&["pn-height", "--n", "2"])["value"]);
    assert_eq!(ok(&["universal-bound", "--preset", "p2"])["convention"], "BoundOnHeight");
    assert_eq!(ok(&["gap-check", "--preset", "p2xp1"])["verdict"], "SatisfiesGap");
    assert_eq!(ok(&["stability-polytope", "--n", "1", "--m", "3", "--degree", "1"])["vertex_count"], 3);
    let arr = ok(&["arrangement-bound", "--n", "2", "--weights", "1/2,1/2,1/2,1/2"]);
    assert_eq!(arr["decomposition_verified"], true);
    assert_eq!(arr["t"], "1/3");
    let diag = ok(&["diagonal", "--n", "2", "--d", "3", "--a", "1,1,1,8"]);
    assert!(close(&diag["correction"], -2.0 * 8f64.ln(), 1e-9));
    assert_eq!(diag["strict"], true);
    let neg = ok(&["diagonal", "--n", "1", "--d", "2", "--a", "-1,1,1"]);
    assert!(close(&neg["correction"], 0.0, 0.0));
    let p1 = ok(&["p1-zeta-height", "--weights", "0,0,0"]);
    assert!(close(&p1["value"], 4.28946, 5e-6));
    assert_eq!(p1["branch"], "fano");
    let cont = ok(&["p1-zeta-height", "--json", r#"{"weights":["9/10","9/10","9/10"],"precision":1e-10}"#]);
    assert_eq!(cont["branch"], "continuation");
    assert_eq!(ok(&["reproduce-paper"]).as_array().unwrap().len(), reproduce_paper(None).unwrap().len());
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["semistable", "--json", "{\"dim\":"]), 1);
    assert_eq!(code(&["semistable", "--json", "[1, 2"]), 1);
    assert_eq!(code(&["volume", "--json", r#"{"dim":2,"facets":[]}"#]), 1);
    assert_eq!(code(&["pn-height"]), 1);
    assert_eq!(code(&["no-such-command"]), 1);
    assert_eq!(code(&["sx", "--preset", "nowhere"]), 1);
    assert_eq!(code(&["pn-height", "--n", "2", "--precision", "-1"]), 1);
    assert_eq!(code(&["gap-check", "--preset", "p3-blowup"]), 1);
    assert_eq!(code(&["p1-zeta-height", "--weights", "1,1/2,1/2"]), 1);
    assert_eq!(code(&["reproduce-paper"]), 0);
    assert_eq!(code(&["reproduce-paper", "--perturb-blowup", "41/10"]), 2);
    assert_eq!(code(&["reproduce-paper", "--perturb-blowup", "4"]), 0);
}

#[test]
fn perturbation_is_detected_by_the_cut_weight_row() {
    let rows = reproduce_paper(Some(fanokit::rational::rat(41, 10))).unwrap();
    let failed: Vec<_> = rows.iter().filter(|r| !r.ok).map(|r| r.quantity.as_str()).collect();
    assert_eq!(failed, ["cut weight w, blow-up"]);
    assert!(reproduce_paper(None).unwrap().iter().all(|r| r.ok));
}

#[test]
fn deterministic_output() {
    let args = ["fanokit", "sx", "--preset", "p-o-o2"];
    let a = run_to_string(args).unwrap();
    let b = run_to_string(args).unwrap();
    assert_eq!(a, b);
    let batch = r#"[{"n":1},{"n":2},{"n":3},{"n":4},{"n":5},{"n":6}]"#;
    let one = run_to_string(["fanokit", "pn-height", "--json", batch, "--jobs", "1"]).unwrap();
    let many = run_to_string(["fanokit", "pn-height", "--json", batch, "--jobs", "4"]).unwrap();
    assert_eq!(one, many);
    let parsed: Value = serde_json::from_str(&one).unwrap();
    assert_eq!(parsed.as_array().unwrap().len(), 6);
}

#[test]
fn csv_round_trips_through_json() {
    let json: Value = serde_json::from_str(&run_to_string(["fanokit", "reproduce-paper"]).unwrap()).unwrap();
    let csv_text = run_to_string(["fanokit", "reproduce-paper", "--format", "csv"]).unwrap();
    let mut reader = csv::Reader::from_reader(csv_text.as_bytes());
    let headers: Vec<String> = reader.headers().unwrap().iter().map(str::to_string).collect();
    let rows = json.as_array().unwrap();
    let mut count = 0;
    for (record, row) in reader.records().zip(rows) {
        let record = record.unwrap();
        for (h, cell) in headers.iter().zip(record.iter()) {
            let expected = &row[h];
            match expected {
                Value::String(s) => assert_eq!(cell, s),
                Value::Bool(b) => assert_eq!(cell, b.to_string()),
                Value::Number(n) => assert_eq!(cell.parse::<f64>().unwrap(), n.as_f64().unwrap()),
                other => panic!("unexpected cell {other}"),
            }
        }
        count += 1;
    }
    assert_eq!(count, rows.len());
    let table = run_to_string(["fanokit", "reproduce-paper", "--format", "table"]).unwrap();
    assert_eq!(table.lines().count(), rows.len() + 1);
}

#[test]
fn floats_carry_twelve_significant_digits() {
    let v = ok(&["pn-height", "--n", "3"]);
    let digits: String = v["value"].to_string().chars().filter(char::is_ascii_digit).collect();
    assert!(digits.trim_start_matches('0').len() <= 12);
}

#[test]
fn binary_reads_files_and_environment() {
    let exe = env!("CARGO_BIN_EXE_fanokit");
    let dir = std::env::temp_dir().join(format!("fanokit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("weights.json");
    std::fs::File::create(&path)
        .unwrap()
        .write_all(br#"{"weights": ["0", "0", "0"]}"#)
        .unwrap();
    let out = Command::new(exe)
        .args(["p1-zeta-height", "--input"])
        .arg(&path)
        .env("FANOKIT_PRECISION", "1e-11")
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(close(&v["value"], 4.28946, 5e-6));
    let bad = Command::new(exe)
        .args(["volume", "--json", "not json"])
        .stdout(Stdio::null())
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("malformed JSON"));
    let mismatch = Command::new(exe)
        .args(["reproduce-paper", "--perturb-blowup", "41/10"])
        .output()
        .unwrap();
    assert_eq!(mismatch.status.code(), Some(2));
    assert!(!mismatch.stdout.is_empty());
    std::fs::remove_dir_all(&dir).unwrap();
}
