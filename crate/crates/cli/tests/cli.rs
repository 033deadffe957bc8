use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_redsyl")).args(args).output().expect("binary runs");
    (out.status.code().expect("exit code"), String::from_utf8(out.stdout).expect("utf-8 output"))
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, out) = run(args);
    (code, serde_json::from_str(&out).unwrap_or_else(|e| panic!("{args:?}: {e}\n{out}")))
}

fn error_kind(v: &Value) -> &str {
    v["error"]["kind"].as_str().expect("error object")
}

#[test]
fn construct_reports_the_order_108_instance() {
    let (code, v) = json(&["construct", "--thm1", "--group", "C2^2", "--q", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], "report_v1");
    assert_eq!(v["instance"]["order"], "108");
    assert_eq!(v["sylow_count"], "27");
    assert_eq!(v["redundant"], true);
    assert_eq!(v["config"]["command"], "construct");
}

#[test]
fn construct_thm2_q8() {
    let (code, v) = json(&["construct", "--thm2", "--group", "Q8"]);
    assert_eq!(code, 0);
    assert_eq!(v["instance"]["q"], 3);
    assert_eq!(v["sylow_count"], "27");
    assert_eq!(v["redundant"], true);
}

#[test]
fn cyclic_group_is_a_configuration_error() {
    let (code, v) = json(&["construct", "--thm1", "--group", "C2", "--q", "3"]);
    assert_eq!(code, 1);
    assert_eq!(error_kind(&v), "CyclicGroup");
}

#[test]
fn thm2_rejects_q() {
    let (code, v) = json(&["construct", "--thm2", "--group", "Q8", "--q", "3"]);
    assert_eq!(code, 1);
    assert_eq!(error_kind(&v), "Usage");
}

#[test]
fn thm1_requires_q() {
    let (code, v) = json(&["construct", "--thm1", "--group", "Q8"]);
    assert_eq!(code, 1);
    assert_eq!(error_kind(&v), "Usage");
}

#[test]
fn q_equal_to_p_is_rejected() {
    let (code, v) = json(&["construct", "--thm1", "--group", "C2^2", "--q", "2"]);
    assert_eq!(code, 1);
    assert_eq!(error_kind(&v), "SamePrime");
}

#[test]
fn oversized_field_exits_with_budget_code() {
    let (code, v) = json(&["construct", "--thm1", "--group", "C2^2", "--q", "4294967311"]);
    assert_eq!(code, 3);
    assert_eq!(error_kind(&v), "FieldTooLarge");
}

#[test]
fn output_is_byte_identical_across_runs() {
    let args = ["verify", "--thm1", "--group", "C2^2", "--q", "3"];
    let (c1, a) = run(&args);
    let (c2, b) = run(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    let scan = ["scan", "--groups", "C2^2,Q8", "--qs", "3,5", "--thm2"];
    assert_eq!(run(&scan), run(&scan));
}

#[test]
fn verify_passes_and_lists_its_checks() {
    let (code, v) = json(&["verify", "--thm1", "--group", "C2^2", "--q", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["p_elements"]["total"], "76");
    assert_eq!(v["sylow_count"], "125");
    assert!(v["bounds"].as_array().unwrap().iter().all(|b| b["satisfied"] == true));
    assert!(v["oracle"].as_array().unwrap().iter().all(|o| o["agree"] == true));
}

#[test]
fn cover_command_lists_representatives() {
    let (code, v) = json(&["cover", "--thm1", "--group", "C2^2", "--q", "3"]);
    assert_eq!(code, 0);
    let improved = &v["covers"]["improved"];
    assert_eq!(improved["verified"], true);
    assert_eq!(improved["representatives"].as_array().unwrap().len() as u64, improved["size"].as_u64().unwrap());
}

#[test]
fn casolo_and_gheri_commands() {
    let (code, v) = json(&["casolo", "--thm2", "--group", "D8"]);
    assert_eq!(code, 0);
    assert_eq!(v["casolo"]["verified"], true);
    let (code, v) = json(&["gheri", "--thm1", "--group", "C2^2", "--q", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["gheri"]["lhs"], "729");
    assert_eq!(v["gheri"]["rhs"], "729");
}

#[test]
fn table_small_bounds() {
    let (code, v) = json(&["table", "--pmax", "2"]);
    assert_eq!(code, 0);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!((rows[0]["p"].as_u64(), rows[0]["q"].as_u64(), rows[0]["value"].as_str()), (Some(2), Some(3), Some("27")));
    let (_, v) = json(&["table", "--pmax", "7"]);
    let last = v["rows"].as_array().unwrap().last().unwrap().clone();
    assert_eq!((last["p"].as_u64(), last["q"].as_u64(), last["power"].as_str()), (Some(7), Some(8), Some("2^24")));
    let (code, v) = json(&["table", "--pmax", "102"]);
    assert_eq!(code, 1);
    assert_eq!(error_kind(&v), "Usage");
}

#[test]
fn empty_scan_is_ok() {
    let (code, v) = json(&["scan"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"], Value::Array(vec![]));
    assert_eq!(v["minimum"], Value::Array(vec![]));
}

#[test]
fn scan_finds_the_minimum_and_keeps_grid_order() {
    let (code, v) = json(&["scan", "--groups", "C2^2", "--qs", "3,5,7"]);
    assert_eq!(code, 0);
    let names: Vec<&str> = v["results"].as_array().unwrap().iter().map(|r| r["instance"].as_str().unwrap()).collect();
    assert_eq!(names, ["thm1 C2^2 q=3", "thm1 C2^2 q=5", "thm1 C2^2 q=7"]);
    assert_eq!(v["minimum"][0]["p"], 2);
    assert_eq!(v["minimum"][0]["sylow_count"], "27");
    assert_eq!(v["minimum"][0]["instance"], "thm1 C2^2 q=3");
}

#[test]
fn scan_records_instance_errors_and_continues() {
    let (code, v) = json(&["scan", "--groups", "C4,C4xC2,D8,Q8", "--qs", "3"]);
    assert_eq!(code, 0);
    let results = v["results"].as_array().unwrap();
    assert_eq!(results[0]["status"], "error");
    assert_eq!(results[0]["error"]["kind"], "CyclicGroup");
    assert!(results[1..].iter().all(|r| r["redundant"] == true && r["status"] == "ok"));
}

#[test]
fn group_file_matches_catalog() {
    let dir = std::env::temp_dir().join(format!("redsyl-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("klein.json");
    let table = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]];
    let doc = serde_json::json!({ "p": 2, "order": 4, "table": table, "name": "klein" });
    std::fs::write(&path, doc.to_string()).unwrap();
    let (code, v) = json(&["construct", "--thm1", "--group-file", path.to_str().unwrap(), "--q", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["sylow_count"], "27");
    assert_eq!(v["instance"]["group"], "klein");

    std::fs::write(&path, r#"{"p": 2, "order": 2, "table": [[0, 1], [1, 1]], "name": "bad"}"#).unwrap();
    let (code, v) = json(&["construct", "--thm1", "--group-file", path.to_str().unwrap(), "--q", "3"]);
    assert_eq!(code, 1);
    assert_eq!(error_kind(&v), "InvalidGroup");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn text_format_and_out_file() {
    let (code, out) = run(&["construct", "--thm1", "--group", "C2^2", "--q", "3", "--format", "text"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l == "sylow_count: 27"));
    let path = std::env::temp_dir().join(format!("redsyl-out-{}.json", std::process::id()));
    let (code, stdout) = run(&["table", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["schema"], "table_v1");
    std::fs::remove_file(&path).unwrap();
}
