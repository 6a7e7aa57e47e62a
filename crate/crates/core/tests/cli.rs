//! The command-line front end: exit codes, round trips, determinism and
//! schema conformance of every output.

use std::io::Write;
use std::process::{Command, Stdio};

use minuscule::catalog::{build, instances};
use minuscule::cli::{run, EXIT_AFFIRMATIVE, EXIT_INPUT_ERROR, EXIT_NEGATIVE};
use minuscule::io::poset_to_json;
use serde_json::Value;

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Outcome {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("{e}: {}", self.stdout))
    }
}

fn invoke(args: &[&str], stdin: &str) -> Outcome {
    let argv = std::iter::once("minuscule").chain(args.iter().copied());
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    Outcome { code, stdout: String::from_utf8(out).unwrap(), stderr: String::from_utf8(err).unwrap() }
}

fn family_json(family: &str) -> String {
    let out = invoke(&["catalog", "--family", family, "--json"], "");
    assert_eq!(out.code, EXIT_AFFIRMATIVE, "{}", out.stderr);
    out.stdout
}

#[test]
fn catalog_classify_round_trip() {
    for f in instances(8) {
        let name = f.to_string();
        let doc = family_json(&name);
        let out = invoke(&["classify", "-"], &doc);
        assert_eq!(out.code, EXIT_AFFIRMATIVE, "{name}: {}", out.stderr);
        let v = out.json();
        assert_eq!(v["families"], serde_json::json!([f.canonical().to_string()]), "{name}");
    }
}

#[test]
fn exit_codes() {
    // affirmative and negative verdicts
    assert_eq!(invoke(&["classify", "-"], &family_json("E7")).code, EXIT_AFFIRMATIVE);
    assert_eq!(invoke(&["extend", "--shape", "2,2,2", "--trace"], "").code, EXIT_NEGATIVE);
    assert_eq!(invoke(&["extend", "--shape", "3,1,2"], "").code, EXIT_AFFIRMATIVE);
    assert_eq!(invoke(&["window", "--cyclic", "4,3"], "").code, EXIT_AFFIRMATIVE);
    let dual = invoke(&["verify", "-"], &poset_to_json(&build("B(3)".parse().unwrap()).unwrap().order_dual()));
    assert_eq!(dual.code, EXIT_AFFIRMATIVE);
    let shape = invoke(&["catalog", "--shape", "2,2,2"], "");
    assert_eq!(invoke(&["verify", "-p", "UCB1", "-"], &shape.stdout).code, EXIT_AFFIRMATIVE);
    assert_eq!(invoke(&["verify", "-p", "LCB1", "-"], &shape.stdout).code, EXIT_NEGATIVE);

    // input errors
    for (args, stdin) in [
        (vec!["classify", "/nonexistent/poset.json"], ""),
        (vec!["classify", "-"], "not json"),
        (vec!["classify", "-"], r#"{"diagram":{"colors":["a"],"theta":[[2]]},"elements":[],"covers":[]}"#),
        (vec!["catalog", "--family", "B3"], ""),
        (vec!["catalog", "--family", "C(2)"], ""),
        (vec!["verify", "-p", "XYZ", "-"], "{}"),
        (vec!["window", "--cyclic", "2,3"], ""),
        (vec!["frobnicate"], ""),
    ] {
        let out = invoke(&args, stdin);
        assert_eq!(out.code, EXIT_INPUT_ERROR, "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn documented_outputs() {
    let blocked = invoke(&["extend", "--shape", "2,2,2", "--trace"], "").json();
    assert_eq!(blocked["verdict"], "blocked");
    assert_eq!(blocked["assessments"], 3);
    assert!(blocked["reasons"].as_array().unwrap().iter().any(|r| r["census"] == 3));

    let coroots = invoke(&["coroots", "--type", "A", "--n", "4", "--j", "2"], "").json();
    let colors: Vec<&str> =
        coroots["coroots"].as_array().unwrap().iter().map(|c| c["color"].as_str().unwrap()).collect();
    assert_eq!(colors, ["2", "1", "3", "2", "4", "3"]);

    let dot = invoke(&["catalog", "--family", "E6", "--dot"], "");
    assert!(dot.stdout.starts_with("digraph"));
}

#[test]
fn binary_pipeline_is_deterministic() {
    let bin = env!("CARGO_BIN_EXE_minuscule");
    let pipe = |family: &str| {
        let doc = Command::new(bin).args(["catalog", "--family", family]).output().unwrap();
        assert!(doc.status.success());
        let mut child =
            Command::new(bin).args(["classify", "-"]).stdin(Stdio::piped()).stdout(Stdio::piped()).spawn().unwrap();
        child.stdin.take().unwrap().write_all(&doc.stdout).unwrap();
        let out = child.wait_with_output().unwrap();
        assert_eq!(out.status.code(), Some(EXIT_AFFIRMATIVE));
        out.stdout
    };
    let first = pipe("DSpin(6)");
    assert_eq!(first, pipe("DSpin(6)"));
    assert!(String::from_utf8(first).unwrap().contains("DSpin(6)"));
}

/// Outputs of every verb and most flags.
fn sample_outputs() -> Vec<Value> {
    let e6 = family_json("E6");
    let c3 = family_json("C(3)");
    let a42 = invoke(&["catalog", "--indexed", "A,4,2"], "").stdout;
    let window = invoke(&["window", "--cyclic", "3,3", "--emit"], "").json()["window"].to_string();
    let tree = invoke(&["catalog", "--shape", "2,2,2"], "").stdout;
    let calls: Vec<(Vec<&str>, &str)> = vec![
        (vec!["catalog", "--family", "E6"], ""),
        (vec!["catalog", "--list", "5"], ""),
        (vec!["catalog", "--shape", "2,2,2"], ""),
        (vec!["verify", "-"], &e6),
        (vec!["verify", "-p", "S4", "--ambient", "induced", "-"], &c3),
        (vec!["classify", "-"], &e6),
        (vec!["classify", "-"], &window),
        (vec!["extend", "--shape", "2,2,2", "--trace", "--poset"], ""),
        (vec!["extend", "--shape", "4,1,2", "--trace"], ""),
        (vec!["represent", "--relations", "--weights", "--matrices", "-"], &a42),
        (vec!["represent", "--relations", "--full-sweep", "-"], &c3),
        (vec!["coroots", "--type", "E", "--n", "7", "--j", "6"], ""),
        (vec!["coroots", "--psi", "-"], &c3),
        (vec!["coroots", "--psi", "-"], &tree),
        (vec!["window", "-"], &window),
        (vec!["window", "--cyclic", "5,3", "--emit"], ""),
        (vec!["window", "-"], &e6),
    ];
    calls
        .into_iter()
        .map(|(args, stdin)| {
            let out = invoke(&args, stdin);
            assert_ne!(out.code, EXIT_INPUT_ERROR, "{args:?}: {}", out.stderr);
            out.json()
        })
        .collect()
}

const VALIDATOR: &str = r#"
import json, sys
from jsonschema import Draft202012Validator
schema = json.load(open(sys.argv[1]))
Draft202012Validator.check_schema(schema)
v = Draft202012Validator(schema)
bad = 0
for i, doc in enumerate(json.load(sys.stdin)):
    for e in v.iter_errors(doc):
        bad += 1
        print(i, e.message[:300])
sys.exit(1 if bad else 0)
"#;

#[test]
fn outputs_match_published_schema() {
    let docs = Value::Array(sample_outputs());
    let schema = concat!(env!("CARGO_MANIFEST_DIR"), "/schema/minuscule.schema.json");
    let has_validator =
        Command::new("python3").args(["-c", "import jsonschema"]).output().map(|o| o.status.success()).unwrap_or(false);
    if !has_validator {
        eprintln!("skipping schema validation: python3 with jsonschema is not available");
        return;
    }
    let mut child = Command::new("python3")
        .args(["-c", VALIDATOR, schema])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(docs.to_string().as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
}
