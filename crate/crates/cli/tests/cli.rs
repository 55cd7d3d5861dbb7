use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

const Z2_DIAGONAL: &str = r#"{"group": {"standard": {"family": "cyclic", "n": 2}},
    "omega": {"cyclic_class": {"p": 1}}, "subgroup": "diagonal"}"#;
const Z2_FULL: &str = r#"{"group": {"standard": {"family": "cyclic", "n": 2}},
    "omega": {"cyclic_class": {"p": 1}}, "subgroup": {"pairs": [[0,0],[0,1],[1,0],[1,1]]}}"#;

struct Run {
    dir: TempDir,
}

impl Run {
    fn new() -> Self {
        Run { dir: tempfile::tempdir().unwrap() }
    }

    fn file(&self, name: &str, text: &str) -> PathBuf {
        let p = self.dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p
    }

    fn run(&self, args: &[&str], doc: &str) -> Output {
        let p = self.file("input.json", doc);
        Command::new(env!("CARGO_BIN_EXE_dwtrace")).args(args).arg(p).output().unwrap()
    }
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn structured(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn check_valid_datum() {
    let o = Run::new().run(&["check"], Z2_DIAGONAL);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("admitted: true"));
}

#[test]
fn check_names_the_failing_slot() {
    // omega(1, 0, 0) = 1/2 breaks normalization in the slots holding the identity
    let doc = r#"{"group": {"standard": {"family": "cyclic", "n": 2}},
        "omega": {"values": ["0","0","0","0","1/2","0","0","0"]}, "subgroup": "trivial", "theta": "trivial"}"#;
    let o = Run::new().run(&["check"], doc);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    assert!(out.contains("omega normalized:     FAIL (slots [1, 2] at [1, 0, 0])"), "{out}");
}

#[test]
fn malformed_exponent_is_a_parse_error() {
    let doc = Z2_DIAGONAL.replace(r#"{"cyclic_class": {"p": 1}}"#, r#"{"values": ["0","0","0","0","0","0","0","3/2"]}"#);
    let o = Run::new().run(&["--format", "structured", "check"], &doc);
    assert_eq!(code(&o), 2);
    let v = structured(&o);
    assert_eq!(v["error"]["kind"], "parse_error");
    assert!(v["error"]["message"].as_str().unwrap().contains("3/2"));

    let o = Run::new().run(&["check"], r#"{"group": 1}"#);
    assert_eq!(code(&o), 2);
}

#[test]
fn trace_agrees_on_twisted_z2() {
    let o = Run::new().run(&["--format", "structured", "trace"], Z2_DIAGONAL);
    assert_eq!(code(&o), 0);
    let v = structured(&o);
    assert_eq!(v["status"], "agreement");
    assert_eq!(v["result"]["agreement"], true);
    assert_eq!(v["result"]["gauge"]["count"], 4);
    assert_eq!(v["version"], v["result"]["version"]);
    assert_eq!(v["fingerprint"].as_str().unwrap().len(), 64);
}

#[test]
fn center_of_s3() {
    let doc = r#"{"group": {"standard": {"family": "s3"}}, "omega": "trivial"}"#;
    let o = Run::new().run(&["--format", "structured", "center"], doc);
    assert_eq!(code(&o), 0);
    let v = structured(&o);
    assert_eq!(v["result"]["trace"]["gauge"]["count"], 8);
    assert_eq!(v["result"]["conjugation"]["total_dims"], serde_json::json!([1, 1, 2, 2, 2, 2, 3, 3]));
}

#[test]
fn solve_theta_obstruction_exits_3() {
    let o = Run::new().run(&["solve-theta"], Z2_FULL);
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).starts_with("obstructed"));
    let o = Run::new().run(&["solve-theta"], Z2_DIAGONAL);
    assert_eq!(code(&o), 0);
    // trace of a datum whose theta must be solved for
    let o = Run::new().run(&["trace"], Z2_FULL);
    assert_eq!(code(&o), 3);
}

#[test]
fn cohomology_and_budget() {
    let r = Run::new();
    let o = r.run(&["--format", "structured", "cohomology"], r#"{"group": {"standard": {"family": "cyclic", "n": 4}}, "degree": 3}"#);
    assert_eq!(code(&o), 0);
    assert_eq!(structured(&o)["result"]["invariant_factors"], serde_json::json!([4]));
    let o = r.run(&["cohomology"], r#"{"group": {"standard": {"family": "dihedral", "n": 6}}, "degree": 3}"#);
    assert_eq!(code(&o), 4);
}

#[test]
fn symmetrize_outcomes() {
    let r = Run::new();
    let z4 = r#"{"group": {"standard": {"family": "cyclic", "n": 4}}, "degree": 3, "cyclic_class": 2}"#;
    let o = r.run(&["--format", "structured", "symmetrize"], z4);
    assert_eq!(code(&o), 0);
    assert_eq!(structured(&o)["result"]["kind"], "symmetric");
    let z2 = r#"{"group": {"standard": {"family": "cyclic", "n": 2}}, "degree": 3, "cyclic_class": 1}"#;
    assert_eq!(code(&r.run(&["symmetrize"], z2)), 3);
}

#[test]
fn cyclic_three_defects() {
    let doc = r#"{"group": {"standard": {"family": "cyclic", "n": 2}},
        "defects": [{"subgroup": "diagonal"}, {"subgroup": "trivial"}, {"subgroup": "diagonal"}]}"#;
    let o = Run::new().run(&["cyclic"], doc);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("cyclically invariant: true"));
}

#[test]
fn structured_output_is_deterministic() {
    let r = Run::new();
    let doc = r#"{"group": {"standard": {"family": "cyclic", "n": 4}},
        "omega": {"cyclic_class": {"p": 2}}, "symmetrize_omega": true, "subgroup": {"generated_by": [[0, 2]]}}"#;
    let a = r.run(&["--format", "structured", "--seed", "5", "trace"], doc);
    let b = r.run(&["--format", "structured", "--seed", "5", "trace"], doc);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let c = r.run(&["--format", "structured", "--seed", "6", "trace"], doc);
    assert_ne!(structured(&a)["fingerprint"], structured(&c)["fingerprint"]);
}

#[test]
fn output_file() {
    let r = Run::new();
    let out = r.dir.path().join("report.json");
    let o = r.run(&["--format", "structured", "--output", out.to_str().unwrap(), "check"], Z2_DIAGONAL);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["result"]["admitted"], true);
}

#[test]
fn sample_inputs() {
    let root = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../inputs");
    for (cmd, file, expected) in [
        ("trace", "z2_twisted_diagonal.json", 0),
        ("trace", "z4_intermediate.json", 0),
        ("center", "s3_center.json", 0),
        ("solve-theta", "z2_full_obstructed.json", 3),
        ("cohomology", "z4_cohomology.json", 0),
        ("symmetrize", "z4_symmetrize.json", 0),
        ("cyclic", "z2_three_defects.json", 0),
    ] {
        let o = Command::new(env!("CARGO_BIN_EXE_dwtrace")).arg(cmd).arg(root.join(file)).output().unwrap();
        assert_eq!(code(&o), expected, "{cmd} {file}: {}", stdout(&o));
    }
}
