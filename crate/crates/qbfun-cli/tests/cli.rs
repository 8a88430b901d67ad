use std::process::{Command, Output};

use serde_json::Value;

const EQ: [&str; 4] = ["--quiver", "1->2->3->4->5", "--dims", "2,5,6,6,2"];
const ALT: [&str; 4] = ["--quiver", "1->2<-3->4<-5", "--dims", "2,5,7,4,2"];

fn run(args: &[&str]) -> Output {
    run_env(args, &[])
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qbfun"));
    cmd.args(args).env_remove("QBFUN_BUDGET");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn with<'a>(head: &[&'a str], instance: &[&'a str], tail: &[&'a str]) -> Vec<&'a str> {
    head.iter().chain(instance).chain(tail).copied().collect()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    assert_eq!(o.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn lists_invariants_in_sorted_order() {
    assert_eq!(json(&run(&with(&["invariants"], &EQ, &[]))), serde_json::json!([[1, 5], [3, 4]]));
    assert_eq!(json(&run(&with(&["invariants"], &ALT, &[]))), serde_json::json!([[1, 4], [2, 5]]));
}

#[test]
fn one_variable_text_and_json() {
    let o = run(&with(&["--format", "text", "bfun"], &EQ, &["--pq", "1,5"]));
    assert_eq!(stdout(&o).trim(), "(s+1) (s+2) (s+4) (s+5)^3 (s+6)^2");
    let o = run(&with(&["--format", "text", "bfun"], &ALT, &["--pq", "2,5"]));
    assert_eq!(stdout(&o).trim(), "(s+1) (s+2) (s+3)^2 (s+4)^2 (s+5) (s+6) (s+7)");
    let v = json(&run(&with(&["bfun"], &EQ, &["--pq", "3,4"])));
    assert_eq!(v["variables"], serde_json::json!(["s"]));
    let constants: Vec<i64> = v["factors"].as_array().unwrap().iter().map(|f| f["constant"].as_i64().unwrap()).collect();
    assert_eq!(constants, vec![1, 2, 3, 4, 5, 6]);
}

#[test]
fn several_variable_brackets() {
    let o = run(&with(&["--format", "text", "bfun-multi"], &EQ, &[]));
    let text = stdout(&o);
    assert!(text.starts_with("s1 = (1,5), s2 = (3,4)\n"), "{text}");
    assert!(text.contains("[s1+5]_{m1}^2"));
    assert!(text.contains("[s1+s2+6]_{m1+m2}"));
    let v = json(&run(&with(&["bfun-multi"], &EQ, &[])));
    let joint: Vec<&Value> = v["factors"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|f| f["support"] == serde_json::json!(["m1", "m2"]))
        .collect();
    assert_eq!(joint.len(), 2);
    assert_eq!(joint[0]["coeffs"], serde_json::json!({"s1": 1, "s2": 1}));
}

#[test]
fn a_function_text() {
    let o = run(&with(&["--format", "text", "afun"], &ALT, &[]));
    assert_eq!(stdout(&o).trim(), "s1^{4m1} s2^{4m2} (s1+s2)^{5m1+5m2}");
}

#[test]
fn ranks_and_slices() {
    let v = json(&run(&with(&["ranks"], &EQ, &["--pq", "3,4"])));
    assert_eq!(v["rows"], serde_json::json!([[2, 0, 0, 0, 0], [5, 0, 0, 0], [6, 6, 0], [6, 0], [2]]));
    let o = run(&with(&["slice"], &EQ, &["--pq", "3,4"]));
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_passes_on_a_small_instance() {
    let o = run(&["--format", "text", "verify", "--quiver", "1->2->3->4", "--dims", "1,2,2,1", "--check", "all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn exit_codes() {
    // unparsable quiver
    assert_eq!(run(&["invariants", "--quiver", "1=>2", "--dims", "1,1"]).status.code(), Some(2));
    // missing required flag
    assert_eq!(run(&["bfun", "--quiver", "1->2", "--dims", "1,1"]).status.code(), Some(2));
    // not an invariant
    assert_eq!(run(&with(&["bfun"], &EQ, &["--pq", "1,2"])).status.code(), Some(3));
    // over budget, from the flag and from the environment
    let args = ["verify", "--quiver", "1->2", "--dims", "3,3", "--check", "bfun"];
    assert_eq!(run(&[&args[..], &["--budget", "5"]].concat()).status.code(), Some(4));
    assert_eq!(run_env(&args, &[("QBFUN_BUDGET", "5")]).status.code(), Some(4));
    assert_eq!(run(&args).status.code(), Some(0));
}

#[test]
fn svg_goes_to_the_output_file() {
    let dir = std::env::temp_dir().join(format!("qbfun-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("superposed.svg");
    let path_text = path.to_str().unwrap();
    let o = run(&with(&["--format", "svg", "--out", path_text, "diagram"], &EQ, &["--superposed"]));
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<?xml") && svg.trim_end().ends_with("</svg>"));
    assert!(svg.contains("s1+s2+6"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_is_deterministic() {
    for args in [
        with(&["--format", "text", "diagram"], &ALT, &["--superposed"]),
        with(&["--format", "svg", "diagram"], &EQ, &["--pq", "1,5"]),
        with(&["bfun-multi"], &ALT, &[]),
    ] {
        assert_eq!(run(&args).stdout, run(&args).stdout);
    }
}
