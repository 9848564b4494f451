use std::process::{Command, Output};

use serde_json::Value;

fn anick(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_anick")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp_path(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("anick-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn groebner_presets() {
    let o = anick(&["groebner", "--preset", "tl3", "--format", "json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"]["complete"], true);
    assert_eq!(v["result"]["basis"].as_array().unwrap().len(), 4);
    assert!(v["engine"].as_str().unwrap().starts_with("anick "));
    assert_eq!(v["config"]["degree_cap"], 6);

    let o = anick(&["groebner", "--preset", "b3-monoid", "--degree-cap", "8", "--format", "json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"]["complete"], false);
    assert_eq!(v["result"]["pending_degree"], 9);
    assert_eq!(v["result"]["basis"].as_array().unwrap().len(), 5);
}

#[test]
fn chain_counts() {
    let o = anick(&["chains", "--preset", "tl3", "--max-level", "3", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let counts: Vec<u64> = v["result"]["counts"].as_array().unwrap().iter().map(|c| c[1].as_u64().unwrap()).collect();
    assert_eq!(counts, [1, 2, 4, 8, 16]);
}

#[test]
fn homology_table_has_flags_and_index_map() {
    let o = anick(&["homology", "--preset", "tl3", "--max-level", "3", "--tau", "generic", "--tau", "0"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("Tor_n is read off chain level n-1"));
    let o = anick(&["homology", "--preset", "tl3", "--tau", "generic", "--tau", "0", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"]["betti"]["differs"].as_array().unwrap().len(), 2);
    assert_eq!(v["result"]["betti"]["index_map"][1]["chain_level"], 0);
}

#[test]
fn oracle_matches_homology() {
    let dims = |cmd: &str| {
        let o = anick(&[cmd, "--preset", "tl3", "--max-level", "3", "--tau", "1", "--format", "json"]);
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        v["result"]["betti"]["tables"][0]["dims"].clone()
    };
    assert_eq!(dims("homology"), dims("oracle"));
}

#[test]
fn braid_relation_through_cli() {
    let image = |w: &str| {
        let o = anick(&["braid-image", "--preset", "tl3", "--word", w, "--format", "json"]);
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        v["result"]["image"].as_str().unwrap().to_string()
    };
    assert_eq!(image("s1 s2 s1"), image("s2 s1 s2"));
    assert_eq!(image("s2 s2'"), "1");
}

#[test]
fn exit_codes() {
    assert_eq!(anick(&["groebner"]).status.code(), Some(1));
    assert_eq!(anick(&["groebner", "--preset", "tl9x"]).status.code(), Some(1));
    assert_eq!(anick(&["nonsense"]).status.code(), Some(1));
    let o = anick(&["resolution", "--preset", "b3-monoid", "--degree-cap", "8"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap 8"));
    assert_eq!(anick(&["groebner", "--preset", "tl3", "--degree-cap", "2"]).status.code(), Some(2));
    assert_eq!(anick(&["braid-image", "--preset", "tl3", "--word", "s3"]).status.code(), Some(1));
    assert_eq!(anick(&["--help"]).status.code(), Some(0));
}

#[test]
fn file_round_trip_and_output_flag() {
    let tl3 = anick::tlmap::preset(anick::tlmap::PresetId::Tl(3)).unwrap();
    let file = temp_path("tl3.json");
    std::fs::write(&file, serde_json::to_string_pretty(&tl3.to_file()).unwrap()).unwrap();
    let from_file = anick(&["groebner", "--file", file.to_str().unwrap(), "--format", "json"]);
    let from_preset = anick(&["groebner", "--preset", "tl3", "--format", "json"]);
    let result = |o: &Output| serde_json::from_str::<Value>(&stdout(o)).unwrap()["result"].clone();
    assert_eq!(result(&from_file), result(&from_preset));

    let out = temp_path("report.txt");
    let o = anick(&["groebner", "--preset", "tl3", "--output", out.to_str().unwrap()]);
    assert!(o.status.success() && o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&out).unwrap(), stdout(&anick(&["groebner", "--preset", "tl3"])));
}

#[test]
fn bad_file_gives_position() {
    let file = temp_path("bad.json");
    std::fs::write(&file, "{\n  \"format\": 1,\n  \"generators\": [\"x\"],\n  \"relations\": [\"x*(x\"]\n}\n").unwrap();
    let o = anick(&["groebner", "--file", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr).to_string();
    assert!(err.contains("bad.json:4:"), "{err}");
    let missing = anick(&["groebner", "--file", "/nonexistent/p.json"]);
    assert_eq!(missing.status.code(), Some(1));
}

#[test]
fn hilbert_report() {
    let o = anick(&["hilbert", "--preset", "tl4", "--degree-cap", "8", "--length", "6", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"]["total"], 14);
    assert_eq!(v["result"]["euler"]["holds"], true);
}
