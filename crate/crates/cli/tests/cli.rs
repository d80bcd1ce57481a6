use std::path::PathBuf;
use std::process::{Command, Output};

fn lmkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lmkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn corpus_file(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("corpus")
        .join(name)
        .display()
        .to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn validate_exit_codes() {
    let ok = lmkit(&["validate", &corpus_file("lm3_c3.json")]);
    assert!(ok.status.success());
    assert!(stdout(&ok).contains("valid LM_3 algebra with 3 elements"));

    let bad = lmkit(&["validate", &corpus_file("corrupt_swapped_phi.json")]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("L4"));

    let missing = lmkit(&["validate", "no-such-algebra"]);
    assert_eq!(missing.status.code(), Some(3));
}

#[test]
fn gen_round_trips_through_validate() {
    let dir = std::env::temp_dir().join(format!("lmkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("p.json");
    let out = lmkit(&["gen", "product", "2", "3", "--out", file.to_str().unwrap()]);
    assert!(out.status.success());
    let v = lmkit(&["validate", file.to_str().unwrap()]);
    assert!(stdout(&v).contains("6 elements, 4 Boolean"), "{}", stdout(&v));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn congruences_of_c3_squared() {
    let out = lmkit(&["con", "product-3x3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 4);
    assert!(!text.contains("not principal"));
}

#[test]
fn check_report_is_reproducible() {
    let dir = std::env::temp_dir().join(format!("lmkit-check-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let run = |file: &str, seed: &str| {
        let path = dir.join(file);
        let o = lmkit(&[
            "check", "--suite", "boolean", "--no-timing", "--seed", seed, "chain-3", "product-2x3",
            "--out", path.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", stdout(&o));
        std::fs::read_to_string(path).unwrap()
    };
    let a = run("a.json", "1");
    let b = run("b.json", "1");
    assert_eq!(a, b);
    assert!(a.trim_start().starts_with("{\n  \"format\": \"lmkit-report/1\""), "{a}");
    std::fs::remove_dir_all(&dir).ok();
}
