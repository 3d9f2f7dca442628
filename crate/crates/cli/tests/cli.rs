use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn seed(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../seeds").join(format!("{name}.json"));
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wallcross")).args(args).output().expect("binary runs")
}

fn json(o: &Output) -> Value {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("wallcross-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn a2_has_three_walls() {
    let doc = json(&run(&["scatter", &seed("a2"), "--order", "6"]));
    assert_eq!(doc["walls"].as_array().unwrap().len(), 3);
}

#[test]
fn theta_of_zero_is_one() {
    let doc = json(&run(&["theta", &seed("kronecker"), "--m0", "0,0", "--order", "4"]));
    assert_eq!(doc["polynomial"], "1");
}

#[test]
fn swapped_product_is_byte_identical() {
    let a = run(&["product", &seed("a2"), "--p1", "1,0", "--p2", "-1,0", "--order", "4"]);
    let b = run(&["product", &seed("a2"), "--p1", "-1,0", "--p2", "1,0", "--order", "4"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn scatter_is_deterministic_across_thread_counts() {
    let one = Command::new(env!("CARGO_BIN_EXE_wallcross"))
        .env("WALLCROSS_THREADS", "1")
        .args(["scatter", &seed("g2"), "--order", "6"])
        .output()
        .unwrap();
    let many = run(&["scatter", &seed("g2"), "--order", "6"]);
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn corrupted_diagram_fails_verification() {
    let good = tmp("a2.json");
    assert!(run(&["scatter", &seed("a2"), "--order", "4", "--out", good.to_str().unwrap()]).status.success());
    let ok = run(&["verify", &seed("a2"), "--order", "4", "--suite", "consistency", "--diagram", good.to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0));

    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(&good).unwrap()).unwrap();
    doc["walls"][0]["coeffs"][0] = Value::String("2".into());
    let bad = tmp("a2-bad.json");
    std::fs::write(&bad, serde_json::to_string(&doc).unwrap()).unwrap();
    let o = run(&["verify", &seed("a2"), "--order", "4", "--suite", "consistency", "--diagram", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let rep: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(rep["pass"], false);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["scatter", "/nonexistent/seed.json"]).status.code(), Some(2));
    assert_eq!(run(&["theta", &seed("a2"), "--m0", "1"]).status.code(), Some(2));
    assert_eq!(run(&["verify", &seed("a2"), "--suite", "nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let junk = tmp("junk.json");
    std::fs::write(&junk, "{\"rank\": 2}").unwrap();
    assert_eq!(run(&["scatter", junk.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn svg_and_mutation_round_trip() {
    let d = tmp("a2m.json");
    assert!(run(&["scatter", &seed("a2"), "--order", "4", "--out", d.to_str().unwrap()]).status.success());
    let m = run(&["mutate", d.to_str().unwrap(), "--k", "0"]);
    let doc = json(&m);
    // the piecewise linear map splits the full wall that crosses the mutation hyperplane
    assert_eq!(doc["walls"].as_array().unwrap().len(), 4);
    assert_eq!(doc["seed"]["path"], serde_json::json!([0]));
    let s = run(&["svg", d.to_str().unwrap(), "--plane", "0,1", "--window", "2"]);
    let text = String::from_utf8(s.stdout).unwrap();
    assert!(text.starts_with("<svg") && text.trim_end().ends_with("</svg>"));
    assert_eq!(text.matches("<line").count(), 2 + 3);
}

#[test]
fn gvectors_of_a2() {
    let o = run(&["gvector", &seed("a2"), "--m", "1,1"]);
    assert_eq!(String::from_utf8(o.stdout).unwrap().trim(), "[1, 1]");
    let c = run(&["cvectors", &seed("a2"), "--path", ""]);
    assert_eq!(String::from_utf8(c.stdout).unwrap(), "[1, 0]\n[0, 1]\n");
}
