use std::io::Write;
use std::process::{Command, Output};

use morse_smale::{emit_document, examples};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_morse-smale"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn temp_document(name: &str, contents: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("morse-smale-{}-{name}.json", std::process::id()));
    std::fs::File::create(&path)
        .and_then(|mut f| f.write_all(contents.as_bytes()))
        .unwrap();
    path
}

#[test]
fn pixton_energy_not_exists_with_sigma() {
    let out = run(&["energy", "--example", "pixton", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["energy"]["verdict"]["status"], "NotExists");
    assert_eq!(v["energy"]["verdict"]["reasons"][0]["rule"], "ThmNecessity");
    assert_eq!(v["energy"]["verdict"]["reasons"][0]["witness"]["orbit"], "sigma");
}

#[test]
fn north_south_classifies_as_sphere() {
    let out = run(&["classify", "--example", "north-south", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["classification"]["manifold"]["class"], "Sphere3");
    assert_eq!(v["classification"]["manifold"]["m"], 0);
}

#[test]
fn s2xs1_filtration_row_two_has_genus_one() {
    let out = run(&["filtration", "--example", "s2xs1-basic", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let row = &v["filtration"]["attractors"][1];
    assert_eq!(row["i"], 2);
    assert_eq!(row["g"], 1);
    let text = String::from_utf8(run(&["filtration", "--example", "s2xs1-basic"]).stdout).unwrap();
    assert!(
        text.lines()
            .any(|l| l.split_whitespace().collect::<Vec<_>>() == ["2", "1", "1", "1", "1", "s"]),
        "{text}"
    );
}

#[test]
fn curves_make_classification_not_applicable() {
    let doc = emit_document(&examples::four_orbit_chain());
    let path = temp_document("curves", &doc);
    let out = run(&["classify", "--input", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["classification"]["status"], "not_applicable");
}

#[test]
fn violations_exit_two() {
    let mut d = examples::pixton();
    d.orbits.retain(|o| o.id.as_str() != "w2");
    d.edges.retain(|e| e.lower.as_str() != "w2");
    let path = temp_document("violations", &emit_document(&d));
    for sub in ["validate", "order", "energy", "report"] {
        let out = run(&[sub, "--input", path.to_str().unwrap(), "--format", "json"]);
        assert_eq!(out.status.code(), Some(2), "{sub}");
        assert!(!json(&out)["validation"].as_array().unwrap().is_empty());
    }
}

#[test]
fn parse_errors_exit_one() {
    let path = temp_document("broken", "{\"schema_version\": 1, \"name\": ");
    let out = run(&["validate", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));
    assert_eq!(
        run(&["validate", "--format", "yaml", "--example", "pixton"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn examples_round_trip_through_input() {
    let listed = String::from_utf8(run(&["examples"]).stdout).unwrap();
    assert!(listed.lines().any(|l| l == "chain-N"));
    for name in ["north-south", "pixton", "pixton-strong", "s2xs1-basic", "chain-4"] {
        let emitted = run(&["examples", "--example", name]);
        assert_eq!(emitted.status.code(), Some(0), "{name}");
        let path = temp_document(name, &String::from_utf8(emitted.stdout).unwrap());
        let from_file = run(&["report", "--input", path.to_str().unwrap(), "--format", "json"]);
        let builtin = run(&["report", "--example", name, "--format", "json"]);
        assert_eq!(from_file.status.code(), Some(0), "{name}");
        assert_eq!(from_file.stdout, builtin.stdout, "{name}");
    }
}

#[test]
fn strong_pixton_certificate() {
    let out = run(&["energy", "--example", "pixton-strong", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["energy"]["verdict"]["status"], "Exists");
    let levels = v["energy"]["certificate"]["critical_levels"].as_array().unwrap();
    let ids: Vec<&str> = levels.iter().map(|l| l["orbit"].as_str().unwrap()).collect();
    assert_eq!(ids, ["w1", "w2", "sigma", "alpha"]);
    assert!(v["energy"].get("schedule_violations").is_none());
}

#[test]
fn dot_format() {
    let out = run(&["report", "--example", "pixton", "--format", "dot"]);
    assert_eq!(out.status.code(), Some(0));
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot_parser::ast::Graph::try_from(dot.as_str()).is_ok(), "{dot}");
    assert!(dot.contains("(sigma, q=1, b=1, #3)"));
}
