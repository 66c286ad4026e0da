//! End-to-end runs of the `fforge` binary against the golden corpus.
//!
//! Each `golden/<name>.fforge` has one `golden/<name>.<command>.out` per
//! command, holding the exit status, stdout and stderr. Set
//! `FFORGE_BLESS=1` to rewrite them.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const COMMANDS: [&str; 5] = ["check", "pack", "trim", "augment", "verify"];

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fforge"))
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn instances() -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> =
        fs::read_dir(golden_dir()).unwrap().map(|e| e.unwrap().path()).filter(|p| p.extension().is_some_and(|x| x == "fforge")).collect();
    v.sort();
    v
}

fn transcript(out: &Output) -> String {
    format!(
        "exit {}\n--- stdout\n{}--- stderr\n{}",
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    )
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

#[test]
fn golden_transcripts() {
    let bless = std::env::var_os("FFORGE_BLESS").is_some();
    let mut checked = 0;
    for path in instances() {
        let stem = path.file_stem().unwrap().to_str().unwrap().to_string();
        for cmd in COMMANDS {
            let got = transcript(&run(&[cmd, path.to_str().unwrap()]));
            let expected_path = golden_dir().join(format!("{stem}.{cmd}.out"));
            if bless {
                fs::write(&expected_path, &got).unwrap();
            } else {
                let expected = fs::read_to_string(&expected_path).unwrap_or_else(|_| panic!("missing {}", expected_path.display()));
                assert_eq!(got, expected, "{stem} {cmd}");
            }
            checked += 1;
        }
    }
    assert!(checked >= 60, "only {checked} transcripts");
}

#[test]
fn exit_statuses() {
    let g = golden_dir();
    let code = |args: &[&str]| run(args).status.code().unwrap();
    assert_eq!(code(&["pack", g.join("k4_spanning.fforge").to_str().unwrap()]), 0);
    assert_eq!(code(&["check", g.join("c4_spanning.fforge").to_str().unwrap()]), 1);
    assert_eq!(code(&["trim", g.join("c4_spanning.fforge").to_str().unwrap()]), 2);
    assert_eq!(code(&["check", g.join("no_such_file.fforge").to_str().unwrap()]), 2);
}

#[test]
fn certificates_survive_verify_against() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    for path in instances() {
        let inst = path.to_str().unwrap();
        for cmd in ["check", "pack", "trim", "augment"] {
            let out = run(&[cmd, inst]);
            if out.status.code() == Some(2) {
                continue;
            }
            let result = dir.join("result.txt");
            fs::write(&result, &out.stdout).unwrap();
            let v = run(&["verify", inst, "--against", result.to_str().unwrap()]);
            assert_eq!(v.status.code(), Some(0), "{inst} {cmd}\n{}", transcript(&v));
            assert!(String::from_utf8_lossy(&v.stdout).contains("report ok"));
        }
    }
}

#[test]
fn tampered_certificates_fail() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let g = golden_dir();
    let k4 = g.join("k4_spanning.fforge");
    let packed = String::from_utf8(run(&["pack", k4.to_str().unwrap()]).stdout).unwrap();
    let broken = packed.replace("tree 1 roots t1@a edges 2:a-d", "tree 1 roots t1@a edges 0:a-b");
    assert_ne!(packed, broken);
    let result = dir.join("broken.txt");
    fs::write(&result, broken).unwrap();
    let v = run(&["verify", k4.to_str().unwrap(), "--against", result.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(1), "{}", transcript(&v));

    let c4 = g.join("c4_spanning.fforge");
    let refuted = String::from_utf8(run(&["check", c4.to_str().unwrap()]).stdout).unwrap();
    fs::write(&result, refuted.replace("deficit 2", "deficit 3")).unwrap();
    let v = run(&["verify", c4.to_str().unwrap(), "--against", result.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(1), "{}", transcript(&v));
}

#[test]
fn oversized_instance_names_the_cap() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let names: Vec<String> = (0..13).map(|i| format!("\"v{i}\"")).collect();
    let edges: Vec<String> = (0..12).map(|i| format!("[\"v{i}\", \"v{}\"]", i + 1)).collect();
    let text = format!(
        "fforge-v1\n{{\"problem\": \"spanning\", \"vertices\": [{}], \"hyperedges\": [{}], \"k\": 1}}\n",
        names.join(", "),
        edges.join(", ")
    );
    let path = dir.join("big.fforge");
    fs::write(&path, text).unwrap();
    let out = run(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("cap of 12"), "{err}");
}

#[test]
fn malformed_input_reports_position() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let path = dir.join("bad.fforge");
    fs::write(&path, "fforge-v1\n{\n  \"problem\": \"spanning\",\n  \"vertices\": [\"a\" \"b\"]\n}\n").unwrap();
    let out = run(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 4"), "{err}");
}

#[test]
fn random_verification_is_clean() {
    let out = run(&["verify", "--random", "40", "--seed", "11"]);
    assert_eq!(out.status.code(), Some(0), "{}", transcript(&out));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("seed 11\n"));
    let indices: std::collections::BTreeSet<&str> = text.lines().filter_map(|l| l.strip_prefix("instance ")?.split(' ').next()).collect();
    assert_eq!(indices.len(), 40);
    assert!(!text.contains(" failed\n"));
}
