use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn hd1(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hd1"))
        .args(args)
        .env_remove("HD1_SAT_SOLVER")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn gen_dn_lists_the_points() {
    let o = hd1(&["gen", "dn", "--n", "4"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["n"], 4);
    assert_eq!(v["points"].as_array().unwrap().len(), 28);
}

#[test]
fn gen_with_axis_emits_a_grid() {
    let o = hd1(&["gen", "dn", "--n", "3", "--axis", "1"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["m"], 2);
    assert_eq!(v["collapse_axis"], 1);
}

#[test]
fn show_renders_nine_blocks_for_x4() {
    let o = hd1(&["show", "x4"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let bands: Vec<&str> = text.trim_end().split("\n\n").collect();
    assert_eq!(bands.len(), 3);
    let mut blocks = 0;
    let mut points = 0;
    for band in bands {
        assert_eq!(band.lines().count(), 3);
        for line in band.lines() {
            let cells: Vec<&str> = line.split(' ').collect();
            assert_eq!(cells.len(), 3);
            assert!(cells.iter().all(|c| c.len() == 3));
            points += line.matches('o').count();
        }
        blocks += 3;
    }
    assert_eq!(blocks, 9);
    assert_eq!(points, 29);
}

#[test]
fn unsorted_set_json_reports_the_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("s.json");
    std::fs::write(&p, r#"{"n":3,"points":[5,3,4]}"#).unwrap();
    let o = hd1(&["canon", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!String::from_utf8_lossy(&o.stderr).contains("neither"));
}

#[test]
fn verify_skew_three_passes() {
    let o = hd1(&["verify", "skew", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let r = &v[0];
    assert_eq!(r["status"], "pass");
    assert_eq!(r["measured"]["families"], 28);
    assert_eq!(r["measured"]["models"], 44);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(hd1(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(hd1(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(hd1(&["gen", "dn"]).status.code(), Some(2));
    assert_eq!(hd1(&["--help"]).status.code(), Some(0));
}

#[test]
fn external_engine_without_solver_exits_3() {
    let o = hd1(&["search", "--n", "2", "--engine", "external"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("HD1_SAT_SOLVER"));
}

#[test]
fn external_engine_uses_explicit_solver_path() {
    let script = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/dpll_solver.py");
    let o = hd1(&[
        "search",
        "--n",
        "2",
        "--engine",
        "external",
        "--solver-path",
        script.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json(&o)["best"], 4);
}

#[test]
fn encode_is_byte_stable_and_solvable() {
    let a = hd1(&["encode", "deg1", "--n", "2"]);
    let b = hd1(&["encode", "deg1", "--n", "2"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("p cnf "));

    let dir = tempfile::tempdir().unwrap();
    let cnf = dir.path().join("m1.cnf");
    let models = dir.path().join("m1.models");
    let e = hd1(&["encode", "deg1", "--n", "1", "--out", cnf.to_str().unwrap()]);
    assert!(e.status.success());
    let s = hd1(&[
        "solve",
        cnf.to_str().unwrap(),
        "--limit",
        "1000",
        "--out",
        models.to_str().unwrap(),
    ]);
    assert!(s.status.success());
    let r = json(&s);
    let count = r["model_count"].as_u64().unwrap();
    assert!(count > 0);
    let lines = std::fs::read_to_string(&models).unwrap();
    assert_eq!(
        lines.lines().filter(|l| l.starts_with('v')).count() as u64,
        count
    );
}

#[test]
fn iso_and_canon_agree() {
    let dir = tempfile::tempdir().unwrap();
    let shifted = dir.path().join("d3.json");
    // D_3 translated by e_2
    let d3 = hd1(&["gen", "dn", "--n", "3"]);
    let v = json(&d3);
    let mut pts: Vec<u64> = v["points"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| {
            let i = p.as_u64().unwrap();
            let d2 = i / 3 % 3;
            i - 3 * d2 + 3 * ((d2 + 1) % 3)
        })
        .collect();
    pts.sort();
    std::fs::write(
        &shifted,
        serde_json::json!({"n": 3, "points": pts}).to_string(),
    )
    .unwrap();

    let yes = hd1(&["iso", "extra6_n5", "extra6_n5"]);
    assert_eq!(yes.status.code(), Some(0));
    let d3_file = dir.path().join("d3_orig.json");
    std::fs::write(&d3_file, &d3.stdout).unwrap();
    let same = hd1(&["iso", d3_file.to_str().unwrap(), shifted.to_str().unwrap()]);
    assert_eq!(same.status.code(), Some(0));
    assert_eq!(json(&same)["isomorphic"], true);

    let no = hd1(&["iso", d3_file.to_str().unwrap(), "extremal3_alt"]);
    assert_eq!(no.status.code(), Some(1));

    let c1 = json(&hd1(&["canon", d3_file.to_str().unwrap()]));
    let c2 = json(&hd1(&["canon", shifted.to_str().unwrap()]));
    assert_eq!(c1["canonical"], c2["canonical"]);
}
