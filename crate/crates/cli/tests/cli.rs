use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_monolin"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

const XY2: &str = "vars: 2\ngens:\nx1^2\nx2^2\n";
const STABLE: &str = "vars: 3\ngens: x2^2*x3, x2^3, x1*x2^2, x1^2*x2, x1^3\n";

#[test]
fn betti_of_coprime_squares() {
    let out = run(&["betti", "--json"], XY2);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["command"], "betti");
    let s = &v["results"]["per_field"][0]["summary"];
    assert_eq!(s["regularity"], 3);
    assert_eq!(s["linear"], false);
    assert!(v["wall_time_ms"].as_f64().unwrap() >= 0.0);

    let text = run(&["betti", "--field", "2", "--field", "3"], XY2);
    let stdout = String::from_utf8(text.stdout).unwrap();
    assert!(stdout.contains("GF(2)") && stdout.contains("GF(3)"));
}

#[test]
fn stable_chain_round_trips_through_extend() {
    let out = run(&["stable-chain", "--json"], STABLE);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let steps = v["results"]["steps"].as_array().unwrap();
    let vs: Vec<&str> = steps.iter().map(|s| s["v"].as_str().unwrap()).collect();
    assert_eq!(vs, ["x1*x2", "x2*x3", "x1^2", "x1*x3", "x3^2"]);
    assert!(steps.iter().all(|s| s["colon"] == serde_json::json!([1, 2])));

    let chain = v["results"]["chain"].to_string();
    let replay = run(&["extend", "--json"], &chain);
    assert_eq!(replay.status.code(), Some(0));
    let r = json_of(&replay);
    assert_eq!(r["results"]["verified"], serde_json::json!(vec![true; 5]));
    assert_eq!(r["results"]["final"]["gens"].as_array().unwrap().len(), 10);
}

#[test]
fn json_ideal_input_matches_text() {
    let text = run(&["quasilinear", "--json"], "vars: 4\ngens: x1*x2, x3*x4\n");
    let json = run(&["quasilinear", "--json"], r#"{"n": 4, "gens": [[1,1,0,0],[0,0,1,1]]}"#);
    assert_eq!(json_of(&text)["results"], json_of(&json)["results"]);
    assert_eq!(json_of(&text)["results"]["report"]["quasi_linear"], false);
}

#[test]
fn exit_codes() {
    let bad = run(&["betti"], "vars: 2\ngens: x5\n");
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8(bad.stderr).unwrap().contains("monolin:"));

    let bad_json = run(&["betti", "--json"], "vars: 2\ngens: x1^\n");
    assert_eq!(bad_json.status.code(), Some(2));
    assert_eq!(json_of(&bad_json)["exit_code"], 2);

    assert_eq!(run(&["betti", "--field", "4"], XY2).status.code(), Some(2));
    assert_eq!(run(&["stronglin", "--u", "x2^2"], XY2).status.code(), Some(2));

    let capped = run(&["linquot", "--max-gens", "1"], XY2);
    assert_eq!(capped.status.code(), Some(3));
}

#[test]
fn explore_is_deterministic() {
    let args = ["explore", "--json", "--seed", "3", "--samples", "40", "--max-n", "4", "--max-d", "3"];
    let a = json_of(&run(&args, ""));
    let b = json_of(&run(&args, ""));
    assert_eq!(a["results"], b["results"]);
    assert_eq!(run(&["explore", "--kind", "nonsense"], "").status.code(), Some(2));
}

#[test]
fn complex_and_clutter() {
    let out = run(&["complex", "--json"], r#"{"n": 4, "facets": [[1,2],[3,4]]}"#);
    assert_eq!(out.status.code(), Some(0));
    let text = run(&["complex"], r#"{"n": 3, "facets": [[1,2],[2,3],[1,3]]}"#);
    assert_eq!(text.status.code(), Some(0));

    let c = r#"{"n": 4, "d": 2, "circuits": [[1,2],[1,3],[2,3],[1,4]]}"#;
    let out = run(&["clutter", "--json", "--e", "4", "--remove", "1,4"], c);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert!(v["results"].to_string().contains("predicted"));
    assert_eq!(run(&["clutter", "--e", "1", "--remove", "1,2"], c).status.code(), Some(2));
}
