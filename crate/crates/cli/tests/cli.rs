use std::path::PathBuf;
use std::process::{Command, Output};

fn workdir(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("dpff-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    d
}

fn dpff(dir: &PathBuf, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dpff")).env("DPFF_WORKDIR", dir).args(args).output().unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn weyl_table_csv() {
    let o = dpff(&workdir("weyl"), &["weyl-table", "e6"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("id,alias,order"));
    assert_eq!(lines.count(), 25);
}

#[test]
fn classify_reads_signed_coefficients() {
    // x0^3 + x1^3 + x2^3 + x3^3 over GF(7), written with a -6
    let mut c = vec!["0"; 20];
    for i in [0, 10, 16, 19] {
        c[i] = "1";
    }
    c[0] = "-6";
    let dir = workdir("classify");
    let v = json(&dpff(&dir, &["classify", "--q", "7", "--coeffs", &c.join(",")]));
    assert_eq!(v["schema"], "dpff.cubic-certificate/1");
    assert_eq!(v["smoothness"]["smooth"], true);
}

#[test]
fn singular_input_fails() {
    let mut c = vec!["0"; 20];
    c[0] = "1";
    let o = dpff(&workdir("singular"), &["classify", "--q", "5", "--coeffs", &c.join(",")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("singular"));
}

#[test]
fn construct_c14_writes_a_certificate() {
    let dir = workdir("c14");
    let v = json(&dpff(&dir, &["construct-c14", "--q", "4", "--seed", "3"]));
    assert_eq!(v["surface"]["alias"], "C14");
    assert_eq!(v["blowup"]["twist_alias"], "56");
    let saved: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.join("c14_q4.json")).unwrap()).unwrap();
    assert_eq!(saved, v);
}

#[test]
fn dp2_reference() {
    let v = json(&dpff(&workdir("dp2"), &["verify-dp2"]));
    assert_eq!(v["alias"], "35");
    assert_eq!(v["twist_alias"], "28");
    assert_eq!(v["brute_force_counts"].as_array().unwrap().len(), 2);
}

#[test]
fn arc_search_exit_codes() {
    let v = json(&dpff(&workdir("arcs5"), &["arc-search", "--q", "5"]));
    assert!(v["witness"].is_null());
    let v = json(&dpff(&workdir("arcs7"), &["arc-search", "--q", "7"]));
    assert_eq!(v["witness"].as_array().unwrap().len(), 6);
}

#[test]
fn census_rejects_large_fields() {
    let o = dpff(&workdir("census3"), &["census", "--q", "3"]);
    assert_eq!(o.status.code(), Some(2));
    let o = dpff(&workdir("sample3"), &["census", "--q", "3", "--sample", "20"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}
