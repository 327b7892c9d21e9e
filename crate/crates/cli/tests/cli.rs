use std::io::Write;
use std::process::{Command, Output, Stdio};

use latgap_cli::instance::InstanceSpec;
use latgap_cli::output::{decode_big, encode_big};
use serde_json::Value;

const P35: &str = r#"{"type":"pka","k":3,"a":5}"#;
const P46: &str = r#"{"type":"pka","k":4,"a":6}"#;
const Q18: &str = r#"{"type":"qab","a":1,"b":8}"#;
const C6: &str = r#"{"type":"edge_polytope","graph":{"n":6,"edges":[[1,2],[2,3],[3,4],[4,5],[5,6],[1,6]]}}"#;
const K4: &str = r#"{"type":"edge_polytope","graph":{"n":4,"edges":[[1,2],[1,3],[1,4],[2,3],[2,4],[3,4]]}}"#;

fn latgap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latgap")).args(args).env_remove("LATGAP_BUDGET").output().expect("run latgap")
}

fn json(args: &[&str]) -> Value {
    let out = latgap(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("JSON report")
}

fn tsv(args: &[&str]) -> String {
    let mut a = args.to_vec();
    a.extend(["--format", "tsv"]);
    let out = latgap(&a);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn gaps(v: &Value) -> Vec<u64> {
    v["gap_vector"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect()
}

#[test]
fn gap_of_p35_has_one_hole() {
    let v = json(&["gap", P35, "--max-degree", "6", "--holes"]);
    assert_eq!(gaps(&v), [0, 0, 0, 1, 0, 0, 0]);
    assert_eq!(v["holes"], serde_json::json!([[3, 1, 1, 1, 1, 1, 1, 4]]));
    assert_eq!(v["holes_truncated"], Value::Bool(false));
    let t = tsv(&["gap", P35, "--max-degree", "6", "--holes"]);
    assert_eq!(t, "degree\tpoint\n3\t1,1,1,1,1,1,4\n");
}

#[test]
fn gap_of_q18_by_both_engines() {
    for engine in ["fiber", "generic"] {
        let v = json(&["gap", Q18, "--max-degree", "9", "--engine", engine]);
        assert_eq!(gaps(&v), [0, 0, 11, 27, 42, 50, 45, 42, 28, 0]);
        assert_eq!(v["engine"], Value::String(engine.into()));
    }
}

#[test]
fn gap_of_hexagon_edge_polytope_is_zero() {
    let t = tsv(&["gap", C6, "--max-degree", "5"]);
    let mut lines = t.lines();
    assert_eq!(lines.next(), Some("degree\tlevel_points\treachable\tgap"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r.ends_with("\t0")));
}

#[test]
fn hilbert_bases() {
    let v = json(&["hilbert", P35]);
    assert_eq!((v["count"].as_u64(), v["max_degree"].as_u64()), (Some(13), Some(3)));
    assert_eq!(v["covers_degree_bound"], Value::Bool(true));
    let v = json(&["hilbert", P46]);
    assert_eq!((v["count"].as_u64(), v["max_degree"].as_u64()), (Some(17), Some(4)));
    let t = tsv(&["hilbert", K4]);
    let rows: Vec<&str> = t.lines().skip(1).collect();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r.starts_with("1\t")));
}

fn mu_triple(v: &Value) -> (u64, u64, u64) {
    (v["mu_hilb"].as_u64().unwrap(), v["mu_midp"].as_u64().unwrap(), v["mu_idp"].as_u64().unwrap())
}

#[test]
fn mu_reports() {
    assert_eq!(mu_triple(&json(&["mu", P46])), (4, 3, 3));
    assert_eq!(mu_triple(&json(&["mu", P35, "--D", "4", "--S", "5", "--M", "3"])), (3, 2, 2));
    let prod = format!(r#"{{"type":"product","factors":[{P35},{P46}]}}"#);
    let v = json(&["mu", &prod]);
    assert_eq!(v["mu_idp"].as_u64(), Some(3));
    assert_eq!(v["product_law"], Value::Bool(true));
    assert_eq!(v["mu_hilb_lower_bound"], Value::Bool(true));
}

#[test]
fn verify_targets_pass() {
    let v = json(&["verify", "pka", "--k", "3", "--a", "7"]);
    assert_eq!(v["status"], "PASS");
    let names: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"gap_vector") && names.contains(&"hilbert_basis") && names.contains(&"holes_3"));

    let v = json(&["verify", "qab", "--a", "2", "--b", "15", "--degrees", "9..11"]);
    assert_eq!(v["status"], "PASS");
    assert_eq!(v["data"]["window"], serde_json::json!([288, 270, 275]));
    assert_eq!(v["data"]["valleys"], serde_json::json!(["288 > 270 < 275"]));

    let t = tsv(&["verify", "corollary", "--k", "4", "--S", "5", "--M", "3"]);
    assert!(t.contains("dilation_2\tPASS\t2P non-normal"));
    assert!(t.contains("dilation_3\tPASS\t3P normal"));
    assert!(!t.contains("FAIL"));

    let small = r#"{"type":"pka","k":2,"a":3}"#;
    let v = json(&["verify", "product", r#"{"type":"pka","k":2,"a":4}"#, small, "--max-degree", "4"]);
    assert_eq!(v["status"], "PASS");

    let v = json(&["verify", "normal-facets", Q18]);
    assert_eq!(v["status"], "PASS");
    let v = json(&["verify", "very-ample", Q18, "--bound", "30"]);
    assert_eq!(v["data"]["verdict"]["verdict"], "very_ample_up_to");
}

#[test]
fn exit_codes() {
    assert_eq!(latgap(&["gap", r#"{"type":"pka","k":3}"#, "--max-degree", "3"]).status.code(), Some(1));
    assert_eq!(latgap(&["gap", P35]).status.code(), Some(1));
    assert_eq!(latgap(&["gap", "/no/such/file.json", "--max-degree", "2"]).status.code(), Some(1));
    let out = latgap(&["gap", P46, "--max-degree", "6", "--budget", "50"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
    let env = Command::new(env!("CARGO_BIN_EXE_latgap"))
        .args(["gap", P46, "--max-degree", "6"])
        .env("LATGAP_BUDGET", "50")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(2));
    assert_eq!(latgap(&["mu", P46, "--max-dilation", "2"]).status.code(), Some(3));
    let out = latgap(&["verify", "normal-facets", P35, "--max-degree", "3", "--expect", "some-non-normal"]);
    assert_eq!(out.status.code(), Some(4));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["status"], "FAIL");
    assert_eq!(latgap(&["--help"]).status.code(), Some(0));
}

#[test]
fn reads_instances_from_stdin_and_files() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_latgap"))
        .args(["gap", "-", "--max-degree", "4"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(P35.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(gaps(&v), [0, 0, 0, 1, 0]);

    let path = std::env::temp_dir().join(format!("latgap-cli-test-{}.json", std::process::id()));
    std::fs::write(&path, Q18).unwrap();
    let v = json(&["gap", path.to_str().unwrap(), "--max-degree", "3"]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(gaps(&v), [0, 0, 11, 27]);
}

#[test]
fn output_is_independent_of_threads() {
    let run = |threads: &str| latgap(&["gap", Q18, "--max-degree", "7", "--holes", "--threads", threads]).stdout;
    let one = run("1");
    assert!(!one.is_empty());
    assert_eq!(one, run("3"));
    assert_eq!(one, run("1"));
}

#[test]
fn reports_round_trip() {
    let v = json(&["gap", P35, "--max-degree", "4", "--holes"]);
    assert_eq!(decode_big(v.clone()).unwrap(), v);
    assert_eq!(encode_big(v.clone()), v);
    let spec: InstanceSpec = serde_json::from_value(v["instance"].clone()).unwrap();
    assert_eq!(spec, InstanceSpec::parse(P35).unwrap());
    let text = serde_json::to_string_pretty(&v).unwrap() + "\n";
    assert_eq!(text.as_bytes(), latgap(&["gap", P35, "--max-degree", "4", "--holes"]).stdout);
}
