use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn envelope(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_envelope")).args(args).current_dir(dir).output().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn masked(path: &Path) -> Value {
    let mut v = read_json(path);
    v.as_object_mut().unwrap().remove("timestamp");
    v
}

const O3: &str = r#"{"category":{"flavor":"brauer","field":{"kind":"Q"},"t":"3"},"job":{"check":"strongly-faithful","degree":4}}"#;
const GL0: &str = r#"{"category":{"flavor":"walled-brauer","field":{"kind":"ext","minpoly":[-2,0,1]},"t":"0","restricted_unit":true},"job":{"degree":0}}"#;

#[test]
fn certified_run_writes_certificate() {
    let dir = TempDir::new().unwrap();
    let cfg = write(dir.path(), "o3.json", O3);
    let out = envelope(&["certify", "--config", &cfg, "--out", "cert.json"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = read_json(&dir.path().join("cert.json"));
    assert_eq!(v["schema"], "v1");
    assert_eq!(v["verdict"], "certified");
    assert!(v["timestamp"].is_string());
    assert_eq!(v["bound"]["degree"], 4);
}

#[test]
fn restricted_counterexample_is_refuted() {
    let dir = TempDir::new().unwrap();
    let cfg = write(dir.path(), "gl0.json", GL0);
    let out = envelope(&["certify", "strongly-faithful-mn", "--config", &cfg, "--out", "c.json"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    let v = read_json(&dir.path().join("c.json"));
    assert_eq!(v["verdict"], "refuted");
    assert_eq!(v["cases"][0]["dims"], serde_json::json!([1, 2, 4]));
    assert_eq!(v["cases"][0]["defect"], 1);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("first failure, defect 1"), "{text}");

    let out = envelope(&["certify", "faithful", "--config", &cfg, "--degree", "4"], dir.path());
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn invalid_inputs_exit_three() {
    let dir = TempDir::new().unwrap();
    let bad = write(dir.path(), "bad.json", r#"{"category":{"flavor":"brauer","field":{"kind":"R"},"t":"1"}}"#);
    let out = envelope(&["homdim", "--config", &bad], dir.path());
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("kind"));

    let cfg = write(dir.path(), "o3.json", O3);
    let out = envelope(&["certify", "faithful", "--config", &cfg, "--p", "4"], dir.path());
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("category.field"));

    let out = envelope(&["certify", "frobnicate", "--config", &cfg], dir.path());
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("job.check"));

    let out = envelope(&["certify", "faithful", "--config", &cfg, "--cap", "0"], dir.path());
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("caps.max_hom_dim"));

    let out = envelope(&["homdim"], dir.path());
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("category.t"));

    let out = envelope(&["sl2", "st-faithful", "--p", "2"], dir.path());
    assert_eq!(out.status.code(), Some(3));

    let fake = write(dir.path(), "fake.json", r#"{"schema":"v0","verdict":"certified"}"#);
    let out = envelope(&["report", &fake], dir.path());
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("schema"));
}

#[test]
fn reruns_agree_modulo_timestamp() {
    let dir = TempDir::new().unwrap();
    let cfg = write(dir.path(), "o3.json", O3);
    for name in ["a.json", "b.json"] {
        let out = envelope(&["certify", "gamma-splitexact", "--config", &cfg, "--out", name], dir.path());
        assert_eq!(out.status.code(), Some(0));
    }
    assert_eq!(masked(&dir.path().join("a.json")), masked(&dir.path().join("b.json")));
    let r1 = envelope(&["report", "a.json"], dir.path()).stdout;
    let r2 = envelope(&["report", "a.json"], dir.path()).stdout;
    let r3 = envelope(&["report", "b.json"], dir.path()).stdout;
    assert_eq!(r1, r2);
    assert_eq!(r1, r3);
}

#[test]
fn report_shapes() {
    let dir = TempDir::new().unwrap();
    let small = write(dir.path(), "env_cfg.json", r#"{"job":{"check":"envelope","p":3,"r":1}}"#);
    let out = envelope(&["sl2", "--config", &small, "--out", "env.json"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let cfg = write(dir.path(), "o3.json", O3);
    let out = envelope(&["certify", "gamma-splitexact", "--config", &cfg, "--out", "g.json"], dir.path());
    assert_eq!(out.status.code(), Some(0));

    let text = String::from_utf8(envelope(&["report", "env.json"], dir.path()).stdout).unwrap();
    assert!(text.starts_with("== envelope-hypothesis-sl2 =="));
    assert!(text.contains("-- section 1 --"));
    assert!(text.contains("== st-strongly-faithful =="));

    let text = String::from_utf8(envelope(&["report", "g.json"], dir.path()).stdout).unwrap();
    let v = read_json(&dir.path().join("g.json"));
    let cases = v["cases"].as_array().unwrap();
    assert!(!cases.is_empty());
    // header, rule, then one row per case
    let rows = text.lines().skip_while(|l| !l.trim_start().starts_with("object") || !l.contains("| dims")).skip(2);
    assert_eq!(rows.take_while(|l| l.starts_with("  ")).count(), cases.len());
}

#[test]
fn tables_and_sl2_subchecks() {
    let dir = TempDir::new().unwrap();
    let out = envelope(&["homdim", "--t", "3", "--degree", "3"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = v["tables"]["hom_dims"].as_array().unwrap();
    let uu = rows.iter().find(|r| r["source"] == "++" && r["target"] == "++").unwrap();
    assert_eq!(uu["dim"], 3);

    let cfg = write(
        dir.path(),
        "neg.json",
        r#"{"category":{"flavor":"brauer","field":{"kind":"Q"},"t":"1","ideal":"negligible"},"job":{"degree":2}}"#,
    );
    let out = envelope(&["ideal", "--config", &cfg], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = v["tables"]["ideal_dims"].as_array().unwrap();
    let uu = rows.iter().find(|r| r["source"] == "++" && r["target"] == "++").unwrap();
    assert_eq!((uu["dim_hom"].as_u64(), uu["dim_ideal"].as_u64()), (Some(3), Some(2)));

    let out = envelope(&["sl2", "decompose", "--p", "3", "--degree", "4"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let out = envelope(&["sl2", "linkage", "--p", "5"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let tc = write(dir.path(), "tc.json", r#"{"job":{"check":"tilting-char","i":4,"r":2,"p":3}}"#);
    let out = envelope(&["sl2", "--config", &tc], dir.path());
    assert_eq!(out.status.code(), Some(0));
}
