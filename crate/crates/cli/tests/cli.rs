use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn opetope(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_opetope"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    fs::write(&p, contents).unwrap();
    p
}

fn dump(name: &str) -> String {
    let o = opetope(&["fixtures", "dump", name]);
    assert!(o.status.success());
    stdout(&o)
}

#[test]
fn fixtures_list_and_validate() {
    let names = stdout(&opetope(&["fixtures", "list"]));
    assert_eq!(names.lines().count(), 10);
    for name in names.lines() {
        let p = scratch(&format!("{}.json", name.replace('*', "_star")), &dump(name));
        let o = opetope(&["validate", p.to_str().unwrap()]);
        assert!(
            o.status.success(),
            "{name}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        assert!(stdout(&o).starts_with("valid"));
    }
}

#[test]
fn dual_of_o2_is_t2() {
    let p = scratch("o2_dual_in.json", &dump("O2"));
    let out = PathBuf::from(env!("CARGO_TARGET_TMPDIR"))
        .join("cli")
        .join("o2_dual.json");
    let o = opetope(&["dual", p.to_str().unwrap(), "-o", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(fs::read_to_string(&out).unwrap(), dump("T2"));
}

#[test]
fn dual_map_of_f32() {
    let p = scratch("f32.json", &dump("F32"));
    let o = opetope(&["dual-map", p.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), dump("F32*"));
}

#[test]
fn roundtrip_reports_a_witness() {
    let p = scratch("t3.json", &dump("T3"));
    let o = opetope(&["roundtrip", p.to_str().unwrap()]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["witness"], "eta");
    assert_eq!(v["components"].as_array().unwrap().len(), 4);
}

#[test]
fn exit_codes() {
    let bad_syntax = scratch("bad_syntax.json", "{ \"levels\": [ }");
    let o = opetope(&["validate", bad_syntax.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    let missing = opetope(&["validate", "/nonexistent/file.json"]);
    assert_eq!(missing.status.code(), Some(2));

    let mut v: serde_json::Value = serde_json::from_str(&dump("T2")).unwrap();
    v["constellations"][1]["b"] = serde_json::json!(["y_3"]);
    let invalid = scratch("t2_not_top.json", &v.to_string());
    let o = opetope(&[
        "--diagnostics",
        "json",
        "validate",
        invalid.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert!(!report["diagnostics"].as_array().unwrap().is_empty());
}

#[test]
fn check_map_flags_a_broken_iota_map() {
    let mut v: serde_json::Value = serde_json::from_str(&dump("F32")).unwrap();
    v["assignment"]["y_6"] = "y_1".into();
    let p = scratch("f32_broken.json", &v.to_string());
    let o = opetope(&["check-map", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("codomain"));
}

#[test]
fn enumerate_streams_records() {
    let o = opetope(&["enumerate", "--kind", "tree", "--max-nodes", "5"]);
    assert!(o.status.success());
    let text = stdout(&o);
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["kind"], "tree");
    }
    assert_eq!(
        text,
        stdout(&opetope(&[
            "enumerate",
            "--kind",
            "tree",
            "--max-nodes",
            "5"
        ]))
    );
    let duals = stdout(&opetope(&[
        "enumerate",
        "--kind",
        "thicket",
        "--max-nodes",
        "4",
        "--dim",
        "2",
        "--dualize",
    ]));
    assert!(duals.lines().count() > 0);
    assert!(duals.lines().all(|l| l.contains("\"faces\"")));
}

#[test]
fn render_formats() {
    let p = scratch("t2_render.json", &dump("T2"));
    let ascii = stdout(&opetope(&["render", p.to_str().unwrap()]));
    assert!(ascii.starts_with("level 0"));
    let dot = stdout(&opetope(&[
        "render",
        p.to_str().unwrap(),
        "--format",
        "dot",
    ]));
    assert!(dot.contains("subgraph cluster_"));
    let svg = stdout(&opetope(&[
        "render",
        p.to_str().unwrap(),
        "--format",
        "svg",
        "--labels",
        "gamma",
    ]));
    assert!(svg.starts_with("<svg"));
}

#[test]
fn omega_on_scard_and_the_set_level_switch() {
    let p = scratch("scard.json", &dump("SCARD"));
    let o = opetope(&["--quiet", "omega", p.to_str().unwrap(), "--max-level", "3"]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let o = opetope(&[
        "--quiet",
        "omega",
        p.to_str().unwrap(),
        "--iota",
        "set-level",
    ]);
    assert!(o.status.success());

    // Two 2-cells whiskered along the point q.
    let whisker = r#"{"delta": {"A": ["f1"], "B": ["f2"], "f1": ["q"], "f2": ["r"], "g1": ["q"], "g2": ["r"]},
        "faces": [["p", "q", "r"], ["f1", "f2", "g1", "g2"], ["A", "B"]],
        "gamma": {"A": "g1", "B": "g2", "f1": "p", "f2": "q", "g1": "p", "g2": "q"},
        "kind": "cardinal"}"#;
    let w = scratch("whisker.json", whisker);
    assert!(opetope(&["omega", w.to_str().unwrap()]).status.success());
    let o = opetope(&["omega", w.to_str().unwrap(), "--iota", "set-level"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("boundary-cardinal"));
}

#[test]
fn morphism_endpoints_by_path() {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"))
        .join("cli")
        .join("refs");
    fs::create_dir_all(&dir).unwrap();
    fs::write(dir.join("t2.json"), dump("T2")).unwrap();
    fs::write(dir.join("t3.json"), dump("T3")).unwrap();
    let doc = r#"{"assignment": {"b": "b_2", "t_3": "t_4", "y_2": "y_4", "y_3": "y_6"},
                  "kind": "complex", "source": "t2.json", "target": "fixture:T3"}"#;
    fs::write(dir.join("m.json"), doc).unwrap();
    let o = opetope(&["check-map", dir.join("m.json").to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn fixture_names_stand_in_for_files() {
    let o = opetope(&["dual", "fixture:O2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), dump("T2"));
    assert_eq!(
        opetope(&["validate", "fixture:NOPE"]).status.code(),
        Some(2)
    );
}
