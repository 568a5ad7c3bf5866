//! Acceptance run: criteria 1 to 7, one status line each. Exits nonzero
//! if any criterion fails.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use symdual::algebra::text::parse_expr;
use symdual::algebra::{Caps, Group};
use symdual::cli::suite::{run_criterion, CriterionResult};
use symdual::cli::{paper_all, run_all, CheckName, CheckRequest, Params, Profile};
use symdual::report::{CheckReport, Status};
use symdual::vertex::vertex_xdual;

struct Outcome {
    id: u32,
    title: String,
    ok: bool,
    detail: String,
}

fn failures(results: &[CheckReport]) -> String {
    results.iter().filter(|r| !r.passed()).map(|r| format!("\n    {r}")).collect()
}

fn run_numbered(id: u32, criteria: &[symdual::cli::Criterion], extra: impl FnOnce(&CriterionResult) -> Result<(), String>) -> Outcome {
    let c = criteria.iter().find(|c| c.id == id).expect("criterion exists");
    let start = Instant::now();
    let result = run_criterion(c, false);
    let mut ok = result.status == Status::Pass;
    let mut detail = format!("{} checks, {:.1}s", result.reports.len(), start.elapsed().as_secs_f64());
    detail.push_str(&failures(&result.reports));
    if let Err(e) = extra(&result) {
        ok = false;
        detail.push_str(&format!("\n    {e}"));
    }
    Outcome { id, title: c.title.to_string(), ok, detail }
}

fn req(name: CheckName, k: usize, n: usize, params: Params) -> CheckRequest {
    CheckRequest::new(name, Params { k: Some(k), n: Some(n), ..params })
}

/// `main` passes exactly when every ingredient of its proof passes at the
/// same `(k, n)` and caps.
fn main_factorization(result: &CriterionResult) -> Result<(), String> {
    for main in &result.reports {
        let (k, n) = (main.k.expect("k recorded") as usize, main.n.expect("n recorded") as usize);
        let (zcap, rcap) = if (k, n) == (2, 5) { (2, 3) } else { (3, 4) };
        let mut parts = vec![
            req(CheckName::Prform, k, n, Params { rcap: Some(rcap), ..Params::default() }),
            req(CheckName::Vgrcoeff, k, n, Params { dmax: Some(3), ..Params::default() }),
            req(CheckName::Reduce, k, n, Params { zcap: Some(zcap), ucap: Some(zcap), ..Params::default() }),
        ];
        for d in 0..=2 {
            parts.push(req(CheckName::Insertion, k, n, Params { d: Some(d.to_string()), rcap: Some(rcap), ..Params::default() }));
        }
        let ingredients = parts.iter().all(|p| p.run().passed());
        if main.passed() != ingredients {
            return Err(format!("main at k={k} n={n} is {} but its ingredients {}", main.status, if ingredients { "pass" } else { "do not" }));
        }
    }
    Ok(())
}

fn selberg_point_present(result: &CriterionResult) -> Result<(), String> {
    match result.reports.iter().find(|r| r.check == "selberg-point" && r.k == Some(2)) {
        Some(r) if r.passed() => Ok(()),
        Some(_) => Err("the empty-partition integral differs from the T*Gr(2,2) vertex".into()),
        None => Err("no selberg-point check at k=2".into()),
    }
}

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_symdual")
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn run_bin(args: &[&str]) -> Result<(i32, String), String> {
    let out = Command::new(bin()).args(args).env_remove("SYMDUAL_JOBS").output().map_err(|e| e.to_string())?;
    Ok((out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned()))
}

/// Serialization round trip, determinism across runs and worker counts,
/// and golden files that survive two consecutive runs.
fn infrastructure(earlier: &[CheckReport]) -> Outcome {
    let start = Instant::now();
    let mut problems = Vec::new();

    for r in earlier {
        let json = r.to_json();
        match CheckReport::from_json(&json) {
            Ok(back) if back.to_json() == json => {}
            Ok(_) => problems.push(format!("report changes on reload: {r}")),
            Err(e) => problems.push(format!("report does not reload: {e}")),
        }
    }
    let caps = Caps::new().with(Group::Kahler, 2).with(Group::Spectral, 2);
    let series = vertex_xdual(1, 2, &caps).expect("dual vertex");
    for (m, c) in series.terms() {
        match parse_expr(&c.to_string()) {
            Ok(back) if back.equals(c) && back.to_string() == c.to_string() => {}
            _ => problems.push(format!("coefficient of {m} does not reparse")),
        }
    }

    let criteria = paper_all(Profile::Default);
    let subset: Vec<_> = criteria.iter().filter(|c| [1, 3, 4].contains(&c.id)).cloned().collect();
    let runs: Vec<String> = [1, 1, 4, 4]
        .iter()
        .map(|&jobs| {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().expect("pool");
            pool.install(|| run_all("subset", Profile::Default, &subset, false).to_json())
        })
        .collect();
    if runs.windows(2).any(|w| w[0] != w[1]) {
        problems.push("suite reports differ between runs or worker counts".into());
    }

    let dir = std::env::temp_dir().join(format!("symdual-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    let cases: &[(&str, &[&str])] = &[
        ("vertex_dual_1_2.txt", &["vertex", "dual", "--k", "1", "--n", "2", "--zcap", "3", "--ucap", "3"]),
        ("vertex_lambda_2_2.txt", &["vertex", "lambda", "--partition", "2,2", "--zcap", "3"]),
        ("macdonald_2_k2.txt", &["macdonald", "--mu", "2", "--k", "2"]),
        ("check_main_1_2.json", &["check", "main", "--k", "1", "--n", "2", "--format", "json"]),
        ("suite_weak.json", &["suite", "paper-all", "--profile", "weak", "--format", "json", "--jobs", "2"]),
    ];
    for (file, args) in cases {
        let path = dir.join(file);
        let path_s = path.to_string_lossy().into_owned();
        let with = |extra: &'static [&'static str]| -> Vec<&str> { [*args, &["--golden", &path_s], extra].concat() };
        match (run_bin(&with(&["--record"])), run_bin(&with(&[]))) {
            (Ok((0, first)), Ok((0, second))) if first == second => {}
            (a, b) => problems.push(format!("{file}: record {a:?}, compare {b:?}")),
        }
        let committed = golden_dir().join(file);
        if committed.exists() {
            match run_bin(&[*args, &["--golden", &committed.to_string_lossy()]].concat()) {
                Ok((0, _)) => {}
                other => problems.push(format!("{file}: committed golden file no longer matches ({other:?})")),
            }
        }
        let text = std::fs::read_to_string(&path).unwrap_or_default();
        std::fs::write(&path, format!("{text} ")).expect("write");
        if !matches!(run_bin(&with(&[])), Ok((1, _))) {
            problems.push(format!("{file}: an altered golden file was not reported"));
        }
    }
    let _ = std::fs::remove_dir_all(&dir);

    let mut detail = format!("{} reports reloaded, {:.1}s", earlier.len(), start.elapsed().as_secs_f64());
    for p in &problems {
        detail.push_str(&format!("\n    {p}"));
    }
    Outcome { id: 7, title: "infrastructure".into(), ok: problems.is_empty(), detail }
}

fn print_line(o: &Outcome) {
    println!("criterion {} {}: {} ({})", o.id, o.title, if o.ok { "pass" } else { "FAIL" }, o.detail);
}

fn main() {
    let criteria = paper_all(Profile::Default);
    let mut outcomes = Vec::new();
    let mut reports = Vec::new();
    for id in 1..=6 {
        let o = run_numbered(id, &criteria, |r| {
            reports.extend(r.reports.iter().cloned());
            match id {
                3 => selberg_point_present(r),
                6 => main_factorization(r),
                _ => Ok(()),
            }
        });
        print_line(&o);
        outcomes.push(o.ok);
    }
    let o = infrastructure(&reports);
    print_line(&o);
    outcomes.push(o.ok);

    let passed = outcomes.iter().filter(|&&b| b).count();
    println!("acceptance: {passed}/{} criteria pass", outcomes.len());
    if passed != outcomes.len() {
        std::process::exit(1);
    }
}
