use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn hurwitz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hurwitz"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hurwitz-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn json_of(o: &Output) -> Value {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn nielsen_cyclic() {
    let d = scratch("c5.json", r#"{"classes":[{"element":1,"mult":1},{"element":2,"mult":2}]}"#);
    let v = json_of(&hurwitz(&["nielsen", "--group", "C5", "--genus-base", "0", "--datum", d.to_str().unwrap()]));
    assert_eq!(v["nielsen_number"], 1);
    assert_eq!(v["hurwitz_number"], 1);
}

#[test]
fn s3_orbits_and_tuples_file() {
    let d = scratch(
        "s3.json",
        r#"{"group":"S3","classes":[{"element":"(1 2)","mult":4}]}"#,
    );
    let out = d.with_file_name("tuples.json");
    let v = json_of(&hurwitz(&[
        "nielsen",
        "--datum",
        d.to_str().unwrap(),
        "--orbits",
        "--tuples-out",
        out.to_str().unwrap(),
    ]));
    assert_eq!(v["nielsen_number"], 1);
    let orbits: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(orbits, v["orbits"]);
}

#[test]
fn identical_across_jobs() {
    let d = scratch("c6.json", r#"{"classes":[{"element":1,"mult":2},{"element":2,"mult":2}]}"#);
    let p = d.to_str().unwrap();
    let a = hurwitz(&["nielsen", "--group", "C6", "--datum", p, "--orbits"]);
    let b = hurwitz(&["--jobs", "4", "nielsen", "--group", "C6", "--datum", p, "--orbits"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn tau_renders_integer() {
    let v = json_of(&hurwitz(&["hodge", "tau", "--a", "1", "--n", "6"]));
    assert_eq!(v["value"], "6");
}

#[test]
fn rationals_as_strings() {
    let v = json_of(&hurwitz(&["hodge", "recursion", "--p", "3", "--g", "1", "--nu", "1,1,1"]));
    assert_eq!(v["value"], "1/18");
    let v = json_of(&hurwitz(&["hodge", "hyperelliptic", "--g", "3", "--a", "1"]));
    assert_eq!(v["agree"], true);
}

#[test]
fn malformed_json_is_a_usage_error() {
    let d = scratch("bad.json", "{\"classes\": [\n  {\"element\": 1,\n");
    let o = hurwitz(&["cw", "--group", "C5", "--datum", d.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 3"), "{}", err);
    assert!(err.contains("column"), "{}", err);
}

#[test]
fn exit_codes() {
    assert_eq!(hurwitz(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(hurwitz(&["hodge", "tau", "--a", "1", "--n", "6", "--x"]).status.code(), Some(2));
    let o = hurwitz(&["hodge", "recursion", "--p", "4", "--g", "1", "--nu", "1,1,2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("p prime"));
    assert_eq!(hurwitz(&["--version"]).status.code(), Some(0));
}

#[test]
fn explain_every_subcommand() {
    for s in ["group", "datum", "nielsen", "cw", "cw-invert", "graphs", "boundary", "taut", "hodge"] {
        let v = json_of(&hurwitz(&["--explain", s]));
        assert!(v["explain"].as_str().unwrap().len() > 20);
    }
}

#[test]
fn cw_invert_round_trip() {
    let d = scratch("c7.json", r#"{"classes":[{"element":1,"mult":1},{"element":3,"mult":1},{"element":3,"mult":1}]}"#);
    let v = json_of(&hurwitz(&["cw-invert", "--group", "C7", "--oracle-from", d.to_str().unwrap()]));
    assert_eq!(v["round_trip"], true);
}

#[test]
fn graphs_and_boundary() {
    let v = json_of(&hurwitz(&["graphs", "build", "--kind", "hexagon", "--group", "C2"]));
    assert_eq!(v["exactness"]["exact"], true);
    let v = json_of(&hurwitz(&["graphs", "build", "--kind", "level-loop", "--n", "3", "--genus", "2"]));
    assert_eq!(v["level"]["pass"], true);
    let g = scratch("graph.json", &v["graph"].to_string());
    let w = json_of(&hurwitz(&["graphs", "level", "--group", "Ab[3,3,3,3]", "--graph", g.to_str().unwrap(), "--n", "3"]));
    assert_eq!(w, v["level"]);
    let v = json_of(&hurwitz(&["boundary", "--n", "2", "--points", "2:1,2:1,2:1,2:1,2:1,2:1"]));
    assert_eq!(v["count"], 25);
}

#[test]
fn taut_subcommands() {
    let v = json_of(&hurwitz(&["taut", "ch", "--p", "2", "--g", "3"]));
    assert_eq!(v["lambda"], "56");
    let v = json_of(&hurwitz(&["taut", "classify", "--coeffs", "1,0,-2,0,1"]));
    assert_eq!(v["stratum_dim"], 3);
    let v = json_of(&hurwitz(&["taut", "relations", "--n", "3", "--points", "3:1,3:1,3:1,3:2,3:2,3:2"]));
    assert!(v["summed"]["relation"].is_object());
}

#[test]
fn table_output() {
    let o = hurwitz(&["--format", "table", "group", "--group", "S3"]);
    assert!(o.status.success());
    let s = String::from_utf8_lossy(&o.stdout);
    assert!(s.lines().any(|l| l.starts_with("order") && l.trim_end().ends_with('6')));
}
