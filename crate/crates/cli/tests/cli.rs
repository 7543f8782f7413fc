use std::process::{Command, Output};

use serde_json::Value;

fn specht(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_specht"))
        .args(args)
        .env_remove("SPECHT_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = specht(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn strip_times(mut v: Value) -> Value {
    if let Some(obj) = v.as_object_mut() {
        obj.remove("wall_time_ms");
        if let Some(s) = obj.get_mut("summary").and_then(Value::as_object_mut) {
            s.remove("wall_time_ms");
        }
    }
    v
}

fn lines(bytes: &[u8]) -> Vec<Value> {
    String::from_utf8_lossy(bytes)
        .lines()
        .map(|l| strip_times(serde_json::from_str(l).expect("json line")))
        .collect()
}

#[test]
fn invariants_examples() {
    assert_eq!(
        json(&["invariants", "-p", "3", "-l", "4,4,4", "-m", "3"])["value"],
        126
    );
    assert_eq!(
        json(&["invariants", "-p", "2", "-l", "4,4", "-m", "2"])["value"],
        9
    );
    assert_eq!(
        json(&["invariants", "-p", "5", "-l", "5", "-m", "5"])["value"],
        1
    );
    let brute = json(&[
        "invariants",
        "-p",
        "3",
        "-l",
        "4,4,4",
        "--subgroup",
        "3",
        "--method",
        "brute",
    ]);
    assert_eq!(brute["value"], 126);
    assert_eq!(brute["method"], "brute_force");
}

#[test]
fn invariants_intervals_and_csv() {
    let r = json(&[
        "invariants",
        "-p",
        "3",
        "-l",
        "4,3,2",
        "-m",
        "3",
        "--method",
        "branching",
    ]);
    assert_eq!(r["value"], serde_json::json!({"lower": 39, "upper": 47}));
    let out = specht(&["invariants", "-p", "2", "-l", "4,4", "-m", "2", "--csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("p,lambda,m,value_or_interval,method,citation\n"));
    assert!(text.contains("2,\"4,4\",2,9,"));
}

#[test]
fn cap_errors_name_the_flag() {
    let out = specht(&[
        "invariants",
        "-p",
        "5",
        "-l",
        "5,5,5",
        "-m",
        "5",
        "--method",
        "brute",
        "--cap",
        "100",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--cap"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(specht(&["dim", "-l", "3,x"]).status.code(), Some(2));
    assert_eq!(
        specht(&["core", "-l", "3,1", "-p", "4"]).status.code(),
        Some(2)
    );
    assert_eq!(specht(&["verify-paper", "-p", "7"]).status.code(), Some(2));
    assert_eq!(specht(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn small_commands() {
    assert_eq!(json(&["dim", "-l", "4,3,1"]), 70);
    assert_eq!(json(&["core", "-l", "4,3,1", "-p", "3"]), "2");
    assert_eq!(json(&["h1", "-l", "1,1,1", "-p", "3"]), 1);
    assert_eq!(
        json(&["branch", "-l", "4,4,2"]),
        serde_json::json!(["4,4,1", "4,3,2"])
    );
    let lr = json(&["lr", "-l", "3,2/1"]);
    assert_eq!(lr.as_array().unwrap().len(), 2);
    let blocks = json(&["blocks", "-r", "4", "-p", "3"]);
    assert_eq!(blocks.as_array().unwrap().len(), 3);
    assert_eq!(
        blocks[2]["partitions"],
        serde_json::json!(["4", "2,2", "1,1,1,1"])
    );
    let chop = json(&["chop", "-l", "4,4", "-p", "3", "--seed", "5"]);
    let labels: Vec<&str> = chop["factors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["label"].as_str().unwrap())
        .collect();
    assert_eq!(labels, ["6,2", "4,4"]);
}

#[test]
fn dump_writes_generators() {
    let dir = std::env::temp_dir().join(format!("specht-dump-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sp21.txt");
    let out = specht(&[
        "h1",
        "-l",
        "2,1",
        "-p",
        "3",
        "--dump",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("3 2 2"), "{text}");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn ledger_two_matches_golden_report() {
    let out = specht(&["verify-paper", "-p", "2", "--seed", "7", "--jobs", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let golden = lines(include_bytes!("golden/verify_p2_seed7.jsonl"));
    assert_eq!(lines(&out.stdout), golden);
}

#[test]
fn ledger_csv_has_one_row_per_claim() {
    let out = specht(&["verify-paper", "-p", "2", "--csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text
        .starts_with("claim_id,status,expected,computed,provenance,seed,wall_time_ms,statement"));
    assert!(text.lines().skip(1).all(|l| l.contains(",pass,")));
}

#[test]
fn ledger_fails_nonzero_under_tiny_cap() {
    let out = specht(&["verify-paper", "-p", "2", "--cap", "3"]);
    assert_eq!(out.status.code(), Some(1));
    let summary = lines(&out.stdout).pop().unwrap();
    assert!(summary["summary"]["skipped"].as_u64().unwrap() > 0);
}

#[test]
fn reports_follow_documented_schema() {
    let schema: Value =
        serde_json::from_str(include_str!("../../../docs/report-schema.json")).unwrap();
    let defs = &schema["$defs"];
    let out = specht(&["verify-paper", "-p", "2"]);
    let mut all = lines(&out.stdout);
    let summary = all.pop().unwrap();
    for (obj, def) in all
        .iter()
        .map(|r| (r, &defs["report"]))
        .chain([(&summary["summary"], &defs["summary"])])
    {
        let obj = obj.as_object().unwrap();
        let props = def["properties"].as_object().unwrap();
        for key in obj.keys() {
            assert!(props.contains_key(key), "undocumented field {key}");
        }
        for key in def["required"].as_array().unwrap() {
            let key = key.as_str().unwrap();
            assert!(
                obj.contains_key(key) || key == "wall_time_ms",
                "missing field {key}"
            );
        }
    }
    assert_eq!(
        summary["summary"]["schema_version"],
        defs["summary"]["properties"]["schema_version"]["const"]
    );
}
