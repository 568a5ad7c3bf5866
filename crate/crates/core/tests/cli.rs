use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use symdual::algebra::{Caps, Group};
use symdual::vertex::{prefactor_dual, prefactor_x};

fn symdual(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symdual")).args(args).env_remove("SYMDUAL_JOBS").output().expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    symdual(args).status.code().expect("exit code")
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

/// Compares `text` with a committed file, or rewrites it when
/// `SYMDUAL_RECORD` is set.
fn assert_golden(name: &str, text: &str) {
    let path = golden(name);
    if std::env::var_os("SYMDUAL_RECORD").is_some() {
        std::fs::write(&path, text).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(text, want, "{name} differs from its golden file");
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["check", "diagonal", "--k", "2", "--d", "1", "--mu", "2,1"]), 0);
    assert_eq!(code(&["check", "main", "--k", "9", "--n", "4"]), 2);
    assert_eq!(code(&["check", "insertion", "--d", "one"]), 2);
    assert_eq!(code(&["check", "no-such-check"]), 2);
    assert_eq!(code(&["suite", "no-such-suite"]), 2);
    assert_eq!(code(&["vertex", "lambda"]), 2);
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn usage_errors_name_the_constraint() {
    let out = symdual(&["check", "main", "--k", "9", "--n", "4"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("require 2k ≤ n"));
}

#[test]
fn json_report_shape() {
    let out = symdual(&["check", "prform", "--k", "1", "--n", "2", "--rcap", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["check"], "prform");
    assert_eq!(v["status"], "pass");
    assert_eq!(v["k"], 1);
    assert_eq!(v["elapsed_ms"], 0);
    assert!(v["mismatches"].as_array().unwrap().is_empty());
}

#[test]
fn jobs_do_not_change_output() {
    let args = ["suite", "paper-all", "--profile", "weak", "--format", "json"];
    let one = symdual(&[&args[..], &["--jobs", "1"]].concat()).stdout;
    let four = symdual(&[&args[..], &["--jobs", "4"]].concat()).stdout;
    assert_eq!(one, four);
    let env = Command::new(env!("CARGO_BIN_EXE_symdual")).args(args).env("SYMDUAL_JOBS", "3").output().unwrap().stdout;
    assert_eq!(one, env);
}

#[test]
fn committed_golden_files() {
    let cases: &[(&str, &[&str])] = &[
        ("vertex_x_2_4.txt", &["vertex", "x", "--k", "2", "--n", "4", "--zcap", "1"]),
        ("vertex_dual_1_2.txt", &["vertex", "dual", "--k", "1", "--n", "2", "--zcap", "3", "--ucap", "3"]),
        ("vertex_lambda_2_2.txt", &["vertex", "lambda", "--partition", "2,2", "--zcap", "3"]),
        ("product_2_2.txt", &["vertex", "lambda", "--partition", "2,2", "--zcap", "3", "--product"]),
        ("macdonald_2_k2.txt", &["macdonald", "--mu", "2", "--k", "2"]),
        ("check_main_1_2.json", &["check", "main", "--k", "1", "--n", "2", "--format", "json"]),
        ("suite_weak.json", &["suite", "paper-all", "--profile", "weak", "--format", "json"]),
    ];
    for (file, args) in cases {
        let out = symdual(args);
        assert_eq!(out.status.code(), Some(0), "{file}");
        assert_golden(file, &String::from_utf8(out.stdout).unwrap());
        let path = golden(file);
        assert_eq!(code(&[*args, &["--golden", path.to_str().unwrap()]].concat()), 0, "{file}");
    }
}

#[test]
fn golden_mismatch_exits_one() {
    let dir = std::env::temp_dir().join(format!("symdual-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("m.txt");
    let p = path.to_str().unwrap();
    let args = ["macdonald", "--mu", "1,1", "--k", "2", "--golden", p];
    assert_eq!(code(&[&args[..], &["--record"]].concat()), 0);
    assert_eq!(code(&args), 0);
    std::fs::write(&path, "x1*x2 \n").unwrap();
    assert_eq!(code(&args), 1);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(code(&args), 2);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn prefactor_golden() {
    let text = format!(
        "{}\n{}\n",
        prefactor_dual(2, &Caps::new().with(Group::Spectral, 2)).unwrap().simplify(),
        prefactor_x(2, &Caps::new().with(Group::Kahler, 2)).unwrap().simplify(),
    );
    assert_golden("prefactor_k2.txt", &text);
}
