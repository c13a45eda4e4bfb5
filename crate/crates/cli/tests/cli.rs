use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn ivi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ivi")).args(args).output().expect("binary runs")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ivi-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn bounds() {
    let o = ivi(&["bound", "cktm", "--h20", "3", "--h11", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), "4");
    assert_eq!(stdout_json(&ivi(&["bound", "symmetric", "--n", "6"])), 7);
    assert_eq!(stdout_json(&ivi(&["bound", "ct", "--n", "6"])), 6);
    assert_eq!(ivi(&["bound", "cktm", "--h20", "0", "--h11", "3"]).status.code(), Some(2));
}

#[test]
fn every_build_verifies() {
    let cases: [(&[&str], &str); 5] = [
        (&["cktm", "--h20", "3", "--h11", "3"], "ivi"),
        (&["cktm", "--h20", "1", "--h11", "1"], "ivi"),
        (&["hodge-tate", "--k", "3", "--n", "2"], "orbit"),
        (&["sym-family", "--d", "2"], "ivi"),
        (&["diag-cone", "--d", "1"], "ivi"),
    ];
    for (i, (args, kind)) in cases.iter().enumerate() {
        let file = scratch(&format!("build{i}.json"));
        let mut full = vec!["build"];
        full.extend_from_slice(args);
        full.extend_from_slice(&["--out", path(&file)]);
        assert_eq!(ivi(&full).status.code(), Some(0), "{args:?}");
        let v = ivi(&["verify", kind, path(&file)]);
        assert_eq!(v.status.code(), Some(0), "{args:?}");
        assert_eq!(stdout_json(&v)["summary"], "pass");
    }
}

#[test]
fn broken_ivi_names_the_pair() {
    let file = scratch("broken.json");
    let o = ivi(&["build", "cktm", "--h20", "2", "--h11", "3"]);
    let mut v = stdout_json(&o);
    let n = v["nilpotents"][0].as_array().unwrap().clone();
    let dim = n.len();
    let transposed: Vec<Value> = (0..dim)
        .map(|i| Value::Array((0..dim).map(|j| n[j][i].clone()).collect()))
        .collect();
    v["abelian_basis"].as_array_mut().unwrap().push(Value::Array(transposed));
    let last = v["abelian_basis"].as_array().unwrap().len() - 1;
    std::fs::write(&file, serde_json::to_string(&v).unwrap()).unwrap();

    let out = ivi(&["verify", "ivi", path(&file)]);
    assert_eq!(out.status.code(), Some(1));
    let rep = stdout_json(&out);
    assert_eq!(rep["summary"], "fail");
    let pair = rep["data"]["noncommuting_pair"].as_array().unwrap();
    assert_eq!(pair[1], last);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains(&format!("abelian_basis[{last}]")));
}

#[test]
fn catalog_rows() {
    let out = ivi(&["catalog", "table1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let maxima: Vec<u64> = v["rows"].as_array().unwrap().iter().map(|r| r["max_dim"].as_u64().unwrap()).collect();
    assert_eq!(maxima, vec![4, 4, 3, 3, 3, 3]);
}

#[test]
fn malformed_input_exits_two() {
    assert_eq!(ivi(&["frobnicate"]).status.code(), Some(2));
    let bad = scratch("bad.json");
    std::fs::write(&bad, "{\"weight\": 1,").unwrap();
    assert_eq!(ivi(&["verify", "pmhs", path(&bad)]).status.code(), Some(2));
    assert_eq!(ivi(&["verify", "orbit", "/nonexistent/file.json"]).status.code(), Some(2));
    std::fs::write(&bad, r#"{"weight": 1, "form": [["0","1"],["1","0"]], "F": {}, "nilpotents": []}"#).unwrap();
    assert_eq!(ivi(&["verify", "orbit", path(&bad)]).status.code(), Some(2));
}

#[test]
fn golden_outputs_are_byte_stable() {
    let o = ivi(&["build", "hodge-tate", "--k", "2", "--n", "1"]);
    assert_eq!(o.stdout, std::fs::read(golden("hodge_tate_k2_n1.json")).unwrap());
    let o = ivi(&["verify", "orbit", path(&golden("hodge_tate_k2_n1.json"))]);
    assert_eq!(o.stdout, std::fs::read(golden("hodge_tate_k2_n1.report.json")).unwrap());
    let o = ivi(&["verify", "pmhs", path(&golden("pmhs_weight1.json"))]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(o.stdout, std::fs::read(golden("pmhs_weight1.report.json")).unwrap());
}

#[test]
fn filtrations_of_a_file() {
    let file = golden("pmhs_weight1.json");
    let w = stdout_json(&ivi(&["wfilt", path(&file)]));
    assert_eq!(w["summary"], "pass");
    assert_eq!(w["data"]["W"]["-1"].as_array().unwrap().len(), 1);
    let d = stdout_json(&ivi(&["deligne", path(&file)]));
    assert_eq!(d["data"]["dims"]["0,0"], 1);
    assert_eq!(d["data"]["dims"]["1,1"], 1);
}

#[test]
fn integrate_and_search() {
    let orbit = scratch("orbit.json");
    let poly = scratch("poly.json");
    let ivi_file = scratch("sym.json");
    ivi(&["build", "hodge-tate", "--k", "2", "--n", "3", "--out", path(&orbit)]);
    ivi(&["build", "sym-family", "--d", "1", "--out", path(&ivi_file)]);

    let o = ivi(&["integrate", path(&ivi_file), "--out", path(&poly)]);
    assert_eq!(o.status.code(), Some(0));
    let p: Value = serde_json::from_str(&std::fs::read_to_string(&poly).unwrap()).unwrap();
    assert_eq!(p["z_part"].as_array().unwrap().len(), 1);
    assert_eq!(p["t_linear"].as_array().unwrap().len(), 1);

    let args = ["search", path(&orbit), "--restarts", "8", "--seed", "5"];
    let a = ivi(&args);
    let b = ivi(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout_json(&a)["data"]["dim"], 3);
}
