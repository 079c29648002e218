use serde_json::{json, Value};
use teter_core::cli;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("teter").chain(args.iter().copied());
    let code = cli::run(argv.map(std::ffi::OsString::from), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn run_json(args: &[&str]) -> Value {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn trace_report() {
    let v = run_json(&["trace", "x^3, y^3, x*y"]);
    assert_eq!(v["trace_generators"], json!([[1, 0], [0, 1]]));
    assert_eq!(v["teter_type_multigraded"], "no");
    assert_eq!(v["teter_number_multigraded"], 2);
    assert_eq!(v["nearly_gorenstein"], true);

    let (code, out, _) = run(&["--format", "text", "trace", "x^4,y^4,x^2y^2"]);
    assert_eq!(code, 0);
    assert!(out.contains("trace: (x^2, y^2)"));
    assert!(out.contains("witness degree: x^3*y^3"));
}

#[test]
fn senses() {
    assert_eq!(run_json(&["teter-type", "x^3,y^3,xy"])["verdict"], "no");
    let g = run_json(&["teter-type", "--sense", "graded", "x^3,y^3,xy"]);
    assert_eq!(g["verdict"], "yes");
    assert_eq!(g["witness_total_degree"], 3);
    assert_eq!(run_json(&["teter-type", "--sense", "local", "x^3,y^3,xy"])["verdict"], "yes");
    assert_eq!(run_json(&["teter-type", "x^2,y^3"])["verdict"], "gorenstein");
    assert_eq!(run_json(&["teter-number", "x^4,y^4,x^2*y^2"])["teter_number"], 1);
}

#[test]
fn symmetric_and_companion() {
    let s = run_json(&["symmetric", "--gens", "x", "x^3,y^4,x*y^2"]);
    assert_eq!(s["symmetric"], true);
    assert_eq!(s["degree"], json!([3, 1]));
    let c = run_json(&["companion", "--i", "x", "--j", "y^2", "x^3,y^4,x*y^2"]);
    assert_eq!(c["companions"], false);
}

#[test]
fn families() {
    let p = run_json(&["family", "path", "--n", "7"]);
    assert_eq!(p["permissible"], json!([[1, 3, 6], [1, 4, 6], [1, 4, 7], [2, 4, 6], [2, 4, 7], [2, 5, 7], [1, 3, 5, 7]]));
    assert_eq!(p["tau_permissible"].as_array().unwrap().len(), 9);
    let c = run_json(&["family", "cycle", "--n", "5", "--verify"]);
    assert_eq!(c["verified"], true);
    let l = run_json(&["family", "lattice", "--verify", r#"{"elements":["a","b"],"relations":[]}"#]);
    assert_eq!(l["verified"], true);
    assert_eq!(l["interval_decomposition"]["intervals"], 2);
}

#[test]
fn poset_dot() {
    let (code, out, _) = run(&["poset", "--format", "dot", "x^2,y^2"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("digraph"));
}

#[test]
fn exit_codes() {
    let (code, out, err) = run(&["trace", "x^2, x*y"]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    let e: Value = serde_json::from_str(&err).unwrap();
    assert_eq!(e["error"]["kind"], "not_artinian");

    let (code, _, err) = run(&["teter-type", "--sense", "graded", "--prime", "100", "x^2,y^2,xy"]);
    assert_eq!(code, 1);
    assert!(err.contains("composite_modulus"));

    assert_eq!(run(&["no-such-command"]).0, 2);
    assert_eq!(run(&["trace"]).0, 2);
    assert_eq!(run(&["family", "path", "--n", "seven"]).0, 2);

    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("Usage"));
}
