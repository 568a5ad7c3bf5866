//! Command-line front end. Exit status 0 on pass, 1 on a mismatch, 2 on a
//! usage or internal error.

pub mod suite;

use std::fmt;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::algebra::{AlgebraError, Caps, Group, TruncatedSeries};
use crate::duality::{check_insertion, check_main, check_prform, check_vgrcoeff, check_vgrcoeff_upto};
use crate::macdonald::{check_extensions, check_orthogonality, check_qbinomial, check_unitriangularity, macdonald_p};
use crate::qcomb::Partition;
use crate::qdiff::{check_commute, check_diagonal, check_diagonal2, check_lemma_rewrite, qselberg_check_at, ParamSlot};
use crate::report::{CheckReport, Status};
use crate::vertex::{
    check_cone_vanishing, check_reducetopoint, check_selberg_point, check_verpoint, vertex_product, VertexSpec,
};

pub use suite::{paper_all, run_all, Criterion, Profile, SuiteSummary};

#[derive(Parser, Debug)]
#[command(name = "symdual", version, about = "Exact vertex functions, Macdonald operators and duality checks")]
pub struct Cli {
    /// Worker threads.
    #[arg(long, env = "SYMDUAL_JOBS", global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run one identity check.
    Check {
        name: CheckName,
        #[command(flatten)]
        params: Params,
        #[command(flatten)]
        out: Output,
    },
    /// Print a vertex function.
    Vertex {
        variety: VarietyArg,
        #[command(flatten)]
        params: Params,
        /// For `lambda`: print the φ-product instead of the sum.
        #[arg(long)]
        product: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Print `P_μ(x; q, t)` in the monomial basis.
    Macdonald {
        #[arg(long)]
        mu: Partition,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Run a named suite of checks.
    Suite {
        name: String,
        #[arg(long, value_enum, default_value_t = Profile::Default)]
        profile: Profile,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckName {
    Orthogonality,
    Unitriangularity,
    Extensions,
    Qbinomial,
    Diagonal,
    Diagonal2,
    Commute,
    LemmaRewrite,
    Selberg,
    SelbergPoint,
    Verpoint,
    Cone,
    Prform,
    Reduce,
    Insertion,
    Vgrcoeff,
    Main,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VarietyArg {
    #[value(name = "x", alias = "X")]
    X,
    Dual,
    Lambda,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Slot {
    /// `P_μ(x; q, q/t)`
    QOverT,
    /// `P_μ(x; q, t)`
    T,
}

/// Parameters shared by the checks; each check reads the ones it needs.
#[derive(Args, Clone, Debug, Default, PartialEq)]
pub struct Params {
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Degree, or a comma-separated degree tuple for `vgrcoeff`.
    #[arg(long)]
    pub d: Option<String>,
    #[arg(long)]
    pub dmax: Option<u32>,
    #[arg(long)]
    pub mu: Option<Partition>,
    #[arg(long)]
    pub partition: Option<Partition>,
    #[arg(long)]
    pub size: Option<u32>,
    #[arg(long)]
    pub zcap: Option<u32>,
    #[arg(long)]
    pub ucap: Option<u32>,
    #[arg(long)]
    pub rcap: Option<u32>,
    #[arg(long)]
    pub ycap: Option<u32>,
    #[arg(long, value_enum)]
    pub slot: Option<Slot>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Args, Clone, Debug, Default)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Compare the output with this file, or write it with `--record`.
    #[arg(long)]
    pub golden: Option<PathBuf>,
    #[arg(long, requires = "golden")]
    pub record: bool,
    /// Fill in `elapsed_ms`.
    #[arg(long)]
    pub timing: bool,
}

/// A check with its parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckRequest {
    pub name: CheckName,
    pub params: Params,
}

fn usage(msg: String) -> AlgebraError {
    AlgebraError::Length(msg)
}

impl Params {
    fn k(&self) -> usize {
        self.k.unwrap_or(2)
    }

    fn n(&self) -> usize {
        self.n.unwrap_or(4)
    }

    fn mu(&self) -> Partition {
        self.mu.clone().unwrap_or_default()
    }

    fn degree(&self, default: u32) -> Result<u32, AlgebraError> {
        match &self.d {
            None => Ok(default),
            Some(s) => s.trim().parse().map_err(|_| usage(format!("--d expects an integer, got `{s}`"))),
        }
    }

    fn tuple(&self) -> Result<Option<Vec<u32>>, AlgebraError> {
        let Some(s) = &self.d else {
            return Ok(None);
        };
        s.split(',')
            .map(|p| p.trim().parse().map_err(|_| usage(format!("--d expects integers, got `{s}`"))))
            .collect::<Result<Vec<u32>, _>>()
            .map(Some)
    }

    fn slot(&self) -> ParamSlot {
        match self.slot {
            Some(Slot::T) => ParamSlot::T,
            _ => ParamSlot::QOverT,
        }
    }
}

impl CheckRequest {
    pub fn new(name: CheckName, params: Params) -> CheckRequest {
        CheckRequest { name, params }
    }

    pub fn run(&self) -> CheckReport {
        let p = &self.params;
        let failed = |e: AlgebraError| CheckReport::new(&self.to_string()).with_error(&e);
        let (k, n) = (p.k(), p.n());
        match self.name {
            CheckName::Orthogonality => check_orthogonality(p.size.unwrap_or(4), k),
            CheckName::Unitriangularity => check_unitriangularity(p.size.unwrap_or(4), k),
            CheckName::Extensions => check_extensions(p.size.unwrap_or(4), k),
            CheckName::Qbinomial => check_qbinomial(k, p.ycap.unwrap_or(3)),
            CheckName::Diagonal => match p.degree(1) {
                Ok(d) => check_diagonal(&p.mu(), d, k),
                Err(e) => failed(e),
            },
            CheckName::Diagonal2 => check_diagonal2(&p.mu(), k, p.zcap.unwrap_or(3)),
            CheckName::Commute => check_commute(k, p.dmax.unwrap_or(2)),
            CheckName::LemmaRewrite => check_lemma_rewrite(k, p.dmax.unwrap_or(2)),
            CheckName::Selberg => qselberg_check_at(&p.mu(), k, p.zcap.unwrap_or(3), p.slot()),
            CheckName::SelbergPoint => check_selberg_point(k, p.zcap.unwrap_or(3)),
            CheckName::Verpoint => check_verpoint(&p.partition.clone().unwrap_or_else(|| Partition::new([2, 2])), p.zcap.unwrap_or(4)),
            CheckName::Cone => {
                let cap = p.zcap.unwrap_or(3);
                let spec = match &p.partition {
                    Some(l) => Ok(VertexSpec::lambda(l.clone(), cap)),
                    None => VertexSpec::dual(k, n, cap, 0),
                };
                match spec {
                    Ok(s) => check_cone_vanishing(&s, cap, p.samples.unwrap_or(50), p.seed.unwrap_or(0)),
                    Err(e) => failed(e),
                }
            }
            CheckName::Prform => check_prform(k, n, p.rcap.unwrap_or(4)),
            CheckName::Reduce => check_reducetopoint(k, n, p.zcap.unwrap_or(3), p.ucap.unwrap_or(3)),
            CheckName::Insertion => match p.degree(1) {
                Ok(d) => check_insertion(k, n, d, p.rcap.unwrap_or(4)),
                Err(e) => failed(e),
            },
            CheckName::Vgrcoeff => match p.tuple() {
                Ok(Some(d)) => check_vgrcoeff(k, n, &d),
                Ok(None) => check_vgrcoeff_upto(k, n, p.dmax.unwrap_or(3)),
                Err(e) => failed(e),
            },
            CheckName::Main => check_main(k, n, p.zcap.unwrap_or(3), p.rcap.unwrap_or(4)),
        }
    }

    /// Runs the check, recording wall time only when asked.
    pub fn run_timed(&self, timing: bool) -> CheckReport {
        let start = Instant::now();
        let mut report = self.run();
        report.elapsed_ms = if timing { start.elapsed().as_millis() as u64 } else { 0 };
        report
    }
}

impl fmt::Display for CheckRequest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = self.name.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
        f.write_str(&name)
    }
}

/// Exit status of a report.
pub fn exit_code(status: Status) -> i32 {
    match status {
        Status::Pass => 0,
        Status::Fail => 1,
        Status::Error => 2,
    }
}

fn render_report(report: &CheckReport, format: Format) -> String {
    match format {
        Format::Text => format!("{report}\n"),
        Format::Json => format!("{}\n", report.to_json()),
    }
}

#[derive(Serialize)]
struct SeriesTerm {
    monomial: String,
    coefficient: String,
}

#[derive(Serialize)]
struct SeriesDoc {
    object: String,
    caps: String,
    terms: Vec<SeriesTerm>,
}

fn render_series(object: String, s: &TruncatedSeries, format: Format) -> String {
    match format {
        Format::Text => format!("{}\n", s.simplify()),
        Format::Json => {
            let terms = s
                .terms()
                .map(|(m, c)| SeriesTerm { monomial: if m.is_one() { "1".into() } else { m.to_string() }, coefficient: c.to_string() })
                .collect();
            let doc = SeriesDoc { object, caps: s.caps().to_string(), terms };
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("series serializes"))
        }
    }
}

fn vertex_output(variety: VarietyArg, p: &Params, product: bool, format: Format) -> Result<String, AlgebraError> {
    let zcap = p.zcap.unwrap_or(3);
    let spec = match variety {
        VarietyArg::X => VertexSpec::x(p.k(), p.n(), zcap)?,
        VarietyArg::Dual => VertexSpec::dual(p.k(), p.n(), zcap, p.ucap.unwrap_or(3))?,
        VarietyArg::Lambda => {
            let l = p.partition.clone().ok_or_else(|| usage("vertex lambda needs --partition".into()))?;
            VertexSpec::lambda(l, zcap)
        }
    };
    let (label, series) = if product && variety == VarietyArg::Lambda {
        (format!("product lambda={}", spec.lambda), vertex_product(&spec.lambda, &Caps::new().with(Group::Kahler, zcap))?)
    } else {
        (spec.to_string(), spec.generate()?)
    };
    Ok(render_series(label, &series, format))
}

#[derive(Serialize)]
struct SymDoc {
    mu: String,
    k: usize,
    terms: Vec<SeriesTerm>,
}

fn macdonald_output(mu: &Partition, k: usize, format: Format) -> Result<String, AlgebraError> {
    let p = macdonald_p(mu, k)?;
    Ok(match format {
        Format::Text => format!("{p}\n"),
        Format::Json => {
            let terms = p
                .expanded_terms()
                .into_iter()
                .map(|(m, c)| SeriesTerm { monomial: if m.is_one() { "1".into() } else { m.to_string() }, coefficient: c.to_string() })
                .collect();
            let doc = SymDoc { mu: mu.to_string(), k, terms };
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("polynomial serializes"))
        }
    })
}

/// Prints `text`, then records or compares it against the golden file.
/// Returns the adjusted exit code.
fn emit(text: &str, out: &Output, code: i32) -> i32 {
    print!("{text}");
    let Some(path) = &out.golden else {
        return code;
    };
    if out.record {
        if let Err(e) = std::fs::write(path, text) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return 2;
        }
        return code;
    }
    match std::fs::read_to_string(path) {
        Ok(want) if want == text => code,
        Ok(_) => {
            eprintln!("golden mismatch: {}", path.display());
            code.max(1)
        }
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", path.display());
            2
        }
    }
}

/// Runs a parsed command line and returns the exit status.
pub fn run(cli: Cli) -> i32 {
    if let Some(j) = cli.jobs {
        // a second initialisation in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global();
    }
    match cli.command {
        Command::Check { name, params, out } => {
            let report = CheckRequest::new(name, params).run_timed(out.timing);
            if let Some(e) = &report.error {
                eprintln!("error: {e}");
            }
            emit(&render_report(&report, out.format), &out, exit_code(report.status))
        }
        Command::Vertex { variety, params, product, out } => match vertex_output(variety, &params, product, out.format) {
            Ok(text) => emit(&text, &out, 0),
            Err(e) => {
                eprintln!("error: {e}");
                2
            }
        },
        Command::Macdonald { mu, k, out } => match macdonald_output(&mu, k, out.format) {
            Ok(text) => emit(&text, &out, 0),
            Err(e) => {
                eprintln!("error: {e}");
                2
            }
        },
        Command::Suite { name, profile, out } => {
            let Some(criteria) = suite::by_name(&name, profile) else {
                eprintln!("error: unknown suite `{name}` (known: {})", suite::SUITES.join(", "));
                return 2;
            };
            let summary = run_all(&name, profile, &criteria, out.timing);
            let text = match out.format {
                Format::Text => summary.to_text(),
                Format::Json => format!("{}\n", summary.to_json()),
            };
            emit(&text, &out, summary.exit_code())
        }
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    match Cli::try_parse() {
        Ok(cli) => run(cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("symdual").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn parses_check_flags() {
        let cli = parse(&["check", "diagonal", "--k", "2", "--d", "1", "--mu", "1"]);
        let Command::Check { name, params, .. } = cli.command else { panic!() };
        assert_eq!(name, CheckName::Diagonal);
        assert_eq!(params.mu, Some(Partition::new([1])));
        assert!(CheckRequest::new(name, params).run().passed());
    }

    #[test]
    fn accepts_upper_case_x() {
        let cli = parse(&["vertex", "X", "--k", "1", "--n", "2", "--zcap", "1"]);
        assert!(matches!(cli.command, Command::Vertex { variety: VarietyArg::X, .. }));
    }

    #[test]
    fn wide_grassmannian_is_a_usage_error() {
        let params = Params { k: Some(9), n: Some(4), ..Params::default() };
        let r = CheckRequest::new(CheckName::Main, params).run();
        assert_eq!(exit_code(r.status), 2);
        assert!(r.error.unwrap().contains("require 2k ≤ n"));
    }

    #[test]
    fn bad_degree_is_an_error() {
        let params = Params { d: Some("x".into()), ..Params::default() };
        assert_eq!(CheckRequest::new(CheckName::Diagonal, params).run().status, Status::Error);
    }

    #[test]
    fn timing_is_off_by_default() {
        let r = CheckRequest::new(CheckName::Prform, Params { k: Some(1), n: Some(2), ..Params::default() }).run_timed(false);
        assert_eq!(r.elapsed_ms, 0);
    }
}
