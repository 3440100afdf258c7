use std::process::{Command, Output};

use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_apollonian-cf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn json(args: &[&str]) -> Value {
    let o = bin(args);
    assert!(
        o.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_str(&stdout(&o)).expect("one JSON document")
}

#[test]
fn cf_of_seven_fifths() {
    let o = bin(&["cf", "7/5"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "[1; 2, 2]\n");
    let v = json(&["cf", "sqrt(3)", "--json"]);
    assert_eq!(v["expansion"], "[1; (1, 2)]");
    assert_eq!(v["head"], serde_json::json!([1]));
    assert_eq!(v["period"], serde_json::json!([1, 2]));
}

#[test]
fn exit_codes() {
    assert_eq!(bin(&["cf", "0"]).status.code(), Some(1));
    assert_eq!(bin(&["similar", "0", "2"]).status.code(), Some(1));
    // a leading minus is a number, and flags still parse after it
    assert_eq!(
        bin(&["similar", "-1", "2", "--json"]).status.code(),
        Some(1)
    );
    assert_eq!(bin(&["cf", "-3", "--json"]).status.code(), Some(1));
    assert_eq!(bin(&["similar", "2"]).status.code(), Some(2));
    assert_eq!(bin(&["cf", "sqrt("]).status.code(), Some(2));
    assert_eq!(bin(&["nonsense"]).status.code(), Some(2));
    assert_eq!(bin(&["cf"]).status.code(), Some(2));
    assert_eq!(bin(&["cf", "--approx", "1.5"]).status.code(), Some(2));
    let o = bin(&["render", "2", "--window", "5", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert_eq!(err.lines().count(), 1, "{err}");
}

#[test]
fn similar_json() {
    let v = json(&["similar", "sqrt(2)", "1+sqrt(2)", "--json"]);
    assert_eq!(v["similar"], true);
    assert_eq!(v["witness"], serde_json::json!([[1, 1], [0, 1]]));
    assert_eq!(v["det"], 1);
    let v = json(&["similar", "(1+sqrt(5))/2", "(1+sqrt(3))/2", "--json"]);
    assert_eq!(v["similar"], false);
    assert_eq!(v["witness"], Value::Null);
    assert_eq!(v["orientations"], "none");
}

#[test]
fn symm_json_schema() {
    let v = json(&["symm", "(1+sqrt(5))/2", "--json"]);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(|k| k.as_str()).collect();
    assert_eq!(
        keys,
        [
            "kind",
            "generator",
            "det",
            "scale_sq",
            "pell",
            "orientation_reversing",
            "class"
        ]
    );
    assert_eq!(v["kind"], "cyclic");
    assert_eq!(v["generator"], serde_json::json!([[1, 1], [1, 0]]));
    assert_eq!(v["det"], -1);
    assert_eq!(v["scale_sq"], "(3+sqrt(5))/2");
    assert_eq!(v["pell"], serde_json::json!({"x": 1, "y": 1, "rhs": -4}));
    assert_eq!(v["orientation_reversing"], true);
    assert_eq!(v["class"], serde_json::json!([1]));
    let v = json(&["symm", "7/5", "--json"]);
    assert_eq!(v["kind"], "strip");
    assert_eq!(v["class"], "strip");
    let v = json(&["symm", "(1+sqrt(3))/2", "--json"]);
    assert_eq!(v["orientation_reversing"], false);
    assert_eq!(v["det"], 1);
}

#[test]
fn huge_pell_solutions_stay_exact() {
    // x^2 - 94 y^2 = 1 has fundamental solution x = 2143295
    let v = json(&["symm", "sqrt(94)", "--json"]);
    let x = v["pell"]["x"].to_string();
    assert_eq!(x, "4286590");
    assert_eq!(v["pell"]["rhs"], 4);
}

#[test]
fn circles_ndjson_schema() {
    let o = bin(&[
        "circles",
        "7/5",
        "--generations",
        "3",
        "--offline",
        "--json",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    let records: Vec<Value> = text
        .lines()
        .map(|l| serde_json::from_str(l).expect("one record per line"))
        .collect();
    assert_eq!(records.len(), 3 + 2 + 6 + 18);
    for r in &records {
        let keys: Vec<&str> = r.as_object().unwrap().keys().map(|k| k.as_str()).collect();
        assert_eq!(
            keys,
            [
                "label",
                "sqrt_curv",
                "curv_f64",
                "center",
                "radius",
                "line_height",
                "generation"
            ]
        );
        assert_eq!(r["center"].is_null(), r["line_height"].is_number());
        assert_eq!(r["radius"].is_null(), r["center"].is_null());
        if let (Some(c), Some(rad)) = (r["center"].as_array(), r["radius"].as_f64()) {
            let tangent = (c[1].as_f64().unwrap() - rad).abs() <= 1e-9 * rad;
            assert_eq!(tangent, !r["label"].is_null(), "{r}");
        }
        if let Some(s) = r["sqrt_curv"].as_str() {
            let k: apollonian_cf::exactnum::ExactReal = s.parse().unwrap();
            let f = r["curv_f64"].as_f64().unwrap();
            assert!((k.square().to_f64() - f).abs() <= 1e-12 * f.max(1.0));
        } else {
            assert!(r["label"].is_null());
        }
    }
    let lines = records.iter().filter(|r| r["line_height"].is_number());
    assert!(lines.clone().all(|r| r["sqrt_curv"] == "0"));
    assert_eq!(lines.count(), 1);
    let o = bin(&["circles", "7/5", "--generations", "5", "--json"]);
    let top: Vec<Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str::<Value>(l).unwrap())
        .filter(|r| r["line_height"].is_number() && !r["label"].is_null())
        .collect();
    assert_eq!(top.len(), 1);
    assert_eq!(top[0]["label"], serde_json::json!([5, -7]));
    assert_eq!(top[0]["line_height"], 50.0);
}

#[test]
fn replace_trace_lines() {
    let o = bin(&["replace", "7/5", "--trace"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 8);
    assert_eq!(lines[0], "0  A  (1,0)  (0,1)  7/5  1.4");
    assert_eq!(lines[7], "7  C  (5,-7)  (-2,3)  0  0");
    let ratios: Vec<&str> = lines
        .iter()
        .map(|l| l.split("  ").nth(4).unwrap())
        .collect();
    assert_eq!(ratios, ["7/5", "2/5", "5/2", "3/2", "1/2", "2", "1", "0"]);
    let v = json(&["replace", "(1+sqrt(5))/2", "--max-steps", "4", "--json"]);
    assert_eq!(v["trace"], "ABAB");
    assert_eq!(v["halted"], false);
}

#[test]
fn steps_and_class() {
    assert_eq!(stdout(&bin(&["steps", "7/5"])), "ABAABAAC\n");
    assert_eq!(
        stdout(&bin(&["steps", "sqrt(2)", "--max-steps", "5"])),
        "ABAAB\n"
    );
    assert_eq!(stdout(&bin(&["class", "sqrt(3)"])), "(1, 2)\n");
    assert_eq!(stdout(&bin(&["class", "22/7"])), "strip\n");
    let v = json(&["convergents", "(1+sqrt(5))/2", "-n", "5", "--json"]);
    let qs: Vec<i64> = v["convergents"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["q"].as_i64().unwrap())
        .collect();
    assert_eq!(qs, [1, 1, 2, 3, 5, 8], "indices 0..=n");
}

#[test]
fn render_to_file_is_deterministic() {
    let dir = std::env::temp_dir().join(format!("apollonian-cf-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let a = dir.join("a.svg");
    let b = dir.join("b.svg");
    for p in [&a, &b] {
        let o = bin(&[
            "render",
            "1+sqrt(2)",
            "--generations",
            "5",
            "--highlight",
            "3",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert!(o.status.success());
        assert!(o.stdout.is_empty());
    }
    let sa = std::fs::read_to_string(&a).unwrap();
    assert_eq!(sa, std::fs::read_to_string(&b).unwrap());
    assert!(sa.starts_with("<?xml"));
    assert_eq!(
        sa.matches("<circle ").count() + sa.matches("<line ").count(),
        3 + 2 + 6 + 18 + 54 + 162
    );
    assert!(!sa.contains('\r'));
    let v = json(&["render", "1", "--generations", "1", "--json"]);
    assert_eq!(v["lines"], 2);
    assert!(v["svg"].as_str().unwrap().ends_with("</svg>\n"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn unsafe_approx_warns() {
    let o = bin(&[
        "--unsafe-approx",
        "--approx",
        "1.41421356",
        "--digits",
        "4",
        "cf",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "[1; 2, 2, 2, 2, 2, 2]\n");
    assert!(String::from_utf8(o.stderr).unwrap().starts_with("warning:"));
}
