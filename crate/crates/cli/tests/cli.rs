use std::process::{Command, Output};

fn voa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_voa")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn list_names_every_suite() {
    let o = voa(&["list"]);
    assert_eq!(o.status.code(), Some(0));
    for s in ["sugawara", "n2-universal", "parafermion-sl2"] {
        assert!(stdout(&o).contains(s), "{s} missing");
    }
}

#[test]
fn suite_json_reports_pass() {
    let o = voa(&["--format", "json", "suite", "sugawara"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).expect("json");
    assert_eq!(v["suite"], "sugawara");
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
}

#[test]
fn normal_form_of_odd_square_vanishes() {
    let o = voa(&["normal-form", "--algebra", "bc:1", "--expr", ":b b:"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "0");
}

#[test]
fn bad_input_exits_with_two() {
    let o = voa(&["suite", "no-such-suite"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
    let o = voa(&["normal-form", "--algebra", "affine:sl2@k", "--expr", ":e q:"]);
    assert_eq!(o.status.code(), Some(2));
}

fn write_definition(name: &str, central_charge: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("voa-cli-{}-{name}.json", std::process::id()));
    let text = format!(
        r#"{{
            "lie": {{"name": "u1", "basis": [{{"name": "J"}}], "form": [["1"]]}},
            "algebra": "affine:custom@k",
            "elements": {{"L": "(1/(2*k))*:J J:"}},
            "checks": [{{"kind": "virasoro", "element": "L", "central_charge": "{central_charge}"}}]
        }}"#
    );
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn define_runs_file_checks() {
    let good = write_definition("good", "1");
    let o = voa(&["define", "--file", good.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let bad = write_definition("bad", "2");
    let o = voa(&["define", "--file", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    let _ = std::fs::remove_file(good);
    let _ = std::fs::remove_file(bad);
}
