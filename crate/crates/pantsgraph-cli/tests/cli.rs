use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

const BASE: &str = "{DT[g=2; (0,1) (0,0) (0,0)]; DT[g=2; (0,0) (0,1) (0,0)]; DT[g=2; (0,0) (0,0) (0,1)]}";

struct Out {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Out {
    let o = Command::new(env!("CARGO_BIN_EXE_pantsgraph")).args(args).output().unwrap();
    Out {
        code: o.status.code().unwrap(),
        stdout: String::from_utf8(o.stdout).unwrap(),
        stderr: String::from_utf8(o.stderr).unwrap(),
    }
}

fn schema_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas")
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../pantsgraph/tests/fixtures/genus2").join(name).display().to_string()
}

fn validate(schema: &str, doc: &Value) {
    let s: Value = serde_json::from_str(&std::fs::read_to_string(schema_dir().join(schema)).unwrap()).unwrap();
    let v = jsonschema::validator_for(&s).unwrap();
    let errors: Vec<String> = v.iter_errors(doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{schema}: {errors:?}\n{doc:#}");
}

fn ok(schema: &str, args: &[&str]) -> Value {
    let o = run(args);
    assert_eq!(o.code, 0, "{args:?}: {}{}", o.stdout, o.stderr);
    let doc: Value = serde_json::from_str(&o.stdout).unwrap();
    validate(schema, &doc);
    doc["result"].clone()
}

#[test]
fn documented_examples() {
    let r = ok("intersect.json", &["intersect", "--model", "punctured-torus", "--a", "0/1", "--b", "1/0"]);
    assert_eq!(r["intersection"], 1);
    let r = ok("dist.json", &["dist", "--model", "punctured-torus", "--from", "{0/1}", "--to", "{0/1}"]);
    assert_eq!(r["distance"], 0);
    let o = run(&["intersect", "--a", "0/1"]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("Grammars:"));
}

#[test]
fn genus2_commands() {
    let r = ok("intersect.json", &["intersect", "--a", "DT[g=2; (0,1) (0,0) (0,0)]", "--b", "DT[g=2; (1,-1) (0,0) (0,0)]"]);
    assert_eq!(r["intersection"], 1);
    let r = ok("twist.json", &["twist", "--word", "t5^3", "--curve", "DT[g=2; (0,1) (0,0) (0,0)]"]);
    assert_eq!(r["image"], "DT[g=2; (0,1) (0,0) (0,0)]");
    let r = ok("neighbors.json", &["neighbors", "--pants", BASE, "--max-twist", "1"]);
    assert!(r["count"].as_u64().unwrap() > 0);
    let to = "{DT[g=2; (1,-1) (0,0) (0,0)]; DT[g=2; (0,0) (0,1) (0,0)]; DT[g=2; (0,0) (0,0) (0,1)]}";
    let r = ok("dist.json", &["dist", "--from", BASE, "--to", to]);
    assert_eq!(r["distance"], 1);
    assert_eq!(r["path"].as_array().unwrap().len(), 2);
    let r = ok("translation-length.json", &["translation-length", "--word", "t1 t5^-1", "--n-max", "2"]);
    assert_eq!(r["estimate"]["upper_estimate"], "0/1");
    assert_eq!(r["heuristic"]["verdict"], "reducible_detected");
}

#[test]
fn torus_translation_length() {
    let r = ok("translation-length.json", &["--model", "punctured-torus", "translation-length", "--word", "R L", "--n-max", "4", "--max-twist", "60", "--probe-depth", "6"]);
    assert_eq!(r["estimate"]["upper_estimate"], "1/1");
    assert_eq!(r["heuristic"]["verdict"], "probably_pseudo_anosov");
}

#[test]
fn domain_errors_are_structured() {
    let crossing = "{DT[g=2; (0,1) (0,0) (0,0)]; DT[g=2; (1,-1) (0,0) (0,0)]; DT[g=2; (0,0) (0,0) (0,1)]}";
    let o = run(&["dist", "--from", crossing, "--to", BASE]);
    assert_eq!(o.code, 1);
    let doc: Value = serde_json::from_str(&o.stdout).unwrap();
    validate("error.json", &doc);
    assert_eq!(doc["error"]["kind"], "intersecting_curves");

    let o = run(&["--genus", "3", "translation-length", "--word", "t1"]);
    assert_eq!(o.code, 1);
    let doc: Value = serde_json::from_str(&o.stdout).unwrap();
    validate("error.json", &doc);
    assert_eq!(doc["error"]["kind"], "unsupported_genus");
}

#[test]
fn usage_errors() {
    for args in [
        vec!["dist", "--from", "{0/1}", "--to", "{1/0}", "--max-twist", "0"],
        vec!["intersect", "--a", "DT[g=2; (0,1)", "--b", "DT[g=2; (0,1) (0,0) (0,0)]"],
        vec!["--model", "punctured-torus", "twist", "--word", "t1", "--curve", "0/1"],
        vec!["--format", "yaml", "intersect", "--a", "0/1", "--b", "1/0"],
        vec!["frobnicate"],
    ] {
        let o = run(&args);
        assert_eq!(o.code, 2, "{args:?}");
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn json_output_is_deterministic() {
    let to = "{DT[g=2; (0,1) (0,0) (0,0)]; DT[g=2; (0,0) (2,0) (0,0)]; DT[g=2; (0,0) (0,0) (0,1)]}";
    let args = ["dist", "--from", BASE, "--to", to, "--max-twist", "2"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn help_documents_grammars() {
    for args in [vec!["--help"], vec!["dist", "--help"], vec!["translation-length", "--help"]] {
        let o = run(&args);
        assert_eq!(o.code, 0);
        for needle in ["DT[g=2; (m1,t1) (m2,t2) (m3,t3)]", "{curve; curve; curve}", "t{2g+1}", "lowest terms"] {
            assert!(o.stdout.contains(needle), "{args:?} lacks {needle}");
        }
    }
}

#[test]
fn text_format_renders_the_payload() {
    let o = run(&["--format", "text", "intersect", "--model", "punctured-torus", "--a", "2/3", "--b", "5/7"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("result.intersection: 1\n"));
}

#[test]
fn export_and_volume_tables() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.monodromy");
    let p = path.display().to_string();
    let r = ok("export.json", &["export", "--word", "t1 t2^-1", "--out", &p]);
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, "fibered-monodromy v1\nsurface: closed genus=2\nword: t1 t2^-1\n");
    assert_eq!(r["exchange"], written.as_str());
    let o = run(&["--format", "text", "--model", "punctured-torus", "export", "--word", "R L"]);
    assert_eq!(o.stdout, "fibered-monodromy v1\nsurface: punctured-torus\nword: R L\n");

    let r = ok("power-check.json", &["power-check", "--volumes", &fixture("volumes.csv")]);
    assert_eq!(r["all_pass"], true);

    let table = dir.path().join("torus.csv");
    std::fs::write(&table, "name,genus,word,volume\nfig8,1,\"R L\",2.029883212819307\n").unwrap();
    let r = ok("compare.json", &["compare", "--volumes", &table.display().to_string(), "--max-twist", "8"]);
    assert_eq!(r["records"][0]["length"], "1/1");
    assert_eq!(r["empirical_K"], 2.029883212819307);
}
