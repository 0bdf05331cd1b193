use std::path::PathBuf;
use std::process::{Command, Output};

use diffgalois::difference::y_ring;
use diffgalois::groebner::{parse_poly, PolyIdeal, TermOrder};
use diffgalois::RatFunc;

fn system_file(name: &str, json: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("diffgalois-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, json).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_diffgalois")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const FIB: &str = r#"{"n": 2, "A": [["0", "1"], ["1", "1"]]}"#;
const BLOCK: &str = r#"{"n": 3, "A": [["0", "1", "0"], ["x", "0", "0"], ["0", "0", "1/x"]]}"#;

#[test]
fn relations_of_fibonacci() {
    let f = system_file("fib.json", FIB);
    let o = run(&["relations", "--input", f.to_str().unwrap(), "--degree", "2", "--coeff-degree", "0"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let line = text.lines().next().unwrap();
    let r = y_ring(2, TermOrder::GrevLex);
    let body = line.trim_start_matches('<').trim_end_matches('>');
    let got: PolyIdeal<RatFunc> =
        PolyIdeal::new(&r, body.split(", ").map(|g| parse_poly(&r, g).unwrap()).collect());
    let want = PolyIdeal::new(&r, vec![parse_poly(&r, "y21 - y12").unwrap(), parse_poly(&r, "y22 - y12 - y11").unwrap()]);
    assert!(got.equals(&want));
}

#[test]
fn compute_block_system_text_and_transcript() {
    let f = system_file("block.json", BLOCK);
    let t = f.with_file_name("block-transcript.json");
    let o = run(&["compute", "--input", f.to_str().unwrap(), "--transcript", t.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let comps: Vec<&str> = text.lines().filter(|l| l.starts_with("component ")).collect();
    assert_eq!(comps.len(), 2);
    assert!(comps.iter().all(|l| l.ends_with("with a*b*c = 1")));
    let records: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&t).unwrap()).unwrap();
    let steps: Vec<&str> = records.as_array().unwrap().iter().map(|r| r["step"].as_str().unwrap()).collect();
    assert_eq!(steps, ["i", "ii", "iii", "iv", "v", "vi", "vii", "bound"]);
}

#[test]
fn json_output_round_trips_and_is_deterministic() {
    let f = system_file("block-json.json", BLOCK);
    let args = ["compute", "--input", f.to_str().unwrap(), "--format", "json", "--check-points", "0"];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    let v: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    let r = y_ring(3, TermOrder::GrevLex);
    let gens: Vec<_> =
        v["maximal_sigma_ideal"].as_array().unwrap().iter().map(|g| parse_poly(&r, g.as_str().unwrap()).unwrap()).collect();
    assert_eq!(gens.len(), 11);
    let reparsed: PolyIdeal<RatFunc> = PolyIdeal::new(&r, gens);
    assert!(reparsed.contains(&parse_poly(&r, "y12*y21*y33 + y11*y22*y33 - 1").unwrap()));
    assert_eq!(v["lattice"]["basis"], serde_json::json!([[1, 1, 1]]));
    assert_eq!(v["delta"], 2);
}

#[test]
fn lattice_and_stab_commands() {
    let o = run(&["lattice", "--cert", "x+2", "--cert", "x", "--cert", "x+1", "--delta", "3"]);
    assert_eq!(stdout(&o).trim(), "{0}");
    let o = run(&["stab", "--n", "1", "--ideal", "<y11^2 - 1>"]);
    let text = stdout(&o);
    assert!(text.starts_with("stabilizer: <g11^2 - 1>"));
    assert!(text.contains("group axioms at 20 sampled points: ok"));
}

#[test]
fn bound_summary_for_one_by_one() {
    let o = run(&["bound", "--n", "1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("I(n) = 384064"));
    assert!(text.contains("d~ = kappa3^384063"));
}

#[test]
fn exit_codes_by_error_class() {
    let bad = system_file("bad.json", r#"{"n": 2, "A": [["0""#);
    assert_eq!(run(&["relations", "--input", bad.to_str().unwrap()]).status.code(), Some(2));
    let sixth = system_file("sixth.json", r#"{"n": 2, "A": [["0", "1"], ["-1", "1"]]}"#);
    assert_eq!(run(&["decompose", "--input", sixth.to_str().unwrap()]).status.code(), Some(3));
    let rot = system_file("rot.json", r#"{"n": 2, "A": [["0", "-x"], ["x", "0"]]}"#);
    let o = run(&["hyper", "--input", rot.to_str().unwrap(), "--degree", "1"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("z^2+1"));
    let o = run(&["bound", "--n", "3"]);
    assert_eq!(o.status.code(), Some(1));
}
