//! Named batches of checks.

use clap::ValueEnum;
use rayon::prelude::*;
use serde::Serialize;

use crate::qcomb::Partition;
use crate::qdiff::compositions;
use crate::report::{CheckReport, Status};

use super::{exit_code, CheckName, CheckRequest, Params, Slot};

pub const SUITES: &[&str] = &["paper-all"];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    /// The full caps.
    #[default]
    Default,
    /// Every cap zero and the smallest algebraic cases: only degree-zero
    /// comparisons are made.
    Weak,
}

/// One numbered group of checks.
#[derive(Clone, Debug)]
pub struct Criterion {
    pub id: u32,
    pub title: &'static str,
    pub checks: Vec<CheckRequest>,
}

pub fn by_name(name: &str, profile: Profile) -> Option<Vec<Criterion>> {
    match name {
        "paper-all" => Some(paper_all(profile)),
        _ => None,
    }
}

fn req(name: CheckName, params: Params) -> CheckRequest {
    CheckRequest::new(name, params)
}

fn kn(k: usize, n: usize) -> Params {
    Params { k: Some(k), n: Some(n), ..Params::default() }
}

const DUAL_CASES: [(usize, usize); 3] = [(1, 2), (1, 3), (2, 4)];

/// Every `μ` inside `box_` with at most `k` parts.
fn partitions_inside(box_: &Partition, k: usize) -> Vec<Partition> {
    let mut out: Vec<Partition> = box_.subdiagrams().into_iter().filter(|p| p.len() <= k).collect();
    out.sort();
    out
}

/// The acceptance matrix.
pub fn paper_all(profile: Profile) -> Vec<Criterion> {
    let weak = profile == Profile::Weak;
    let cap = |full: u32| if weak { 0 } else { full };
    let size = if weak { 2 } else { 5 };
    let dmax = if weak { 1 } else { 3 };

    let mut c1 = Vec::new();
    for k in 1..=3 {
        let p = Params { k: Some(k), size: Some(size), ycap: Some(cap(6)), ..Params::default() };
        c1.push(req(CheckName::Orthogonality, p.clone()));
        c1.push(req(CheckName::Unitriangularity, p.clone()));
        c1.push(req(CheckName::Qbinomial, p));
    }

    let mut c2 = Vec::new();
    let big = if weak { Partition::new([1]) } else { Partition::new([3, 3, 3]) };
    for k in 1..=3 {
        for mu in partitions_inside(&big, k) {
            for d in 1..=dmax {
                let p = Params { k: Some(k), d: Some(d.to_string()), mu: Some(mu.clone()), ..Params::default() };
                c2.push(req(CheckName::Diagonal, p));
            }
        }
        c2.push(req(CheckName::LemmaRewrite, Params { k: Some(k), dmax: Some(dmax), ..Params::default() }));
    }
    c2.push(req(CheckName::Commute, Params { k: Some(2), dmax: Some(dmax.min(2)), ..Params::default() }));

    let mut c3 = Vec::new();
    for k in 1..=2 {
        for mu in partitions_inside(&Partition::new([2, 2]), k) {
            let p = Params { k: Some(k), mu: Some(mu), zcap: Some(cap(3)), slot: Some(Slot::QOverT), ..Params::default() };
            c3.push(req(CheckName::Selberg, p));
        }
    }
    c3.push(req(CheckName::SelbergPoint, Params { k: Some(2), zcap: Some(cap(3)), ..Params::default() }));

    let mut c4 = Vec::new();
    let shapes: [&[u32]; 5] = [&[1], &[2], &[1, 1], &[2, 2], &[3, 3]];
    for l in shapes {
        let partition = Some(Partition::new(l.iter().copied()));
        c4.push(req(CheckName::Verpoint, Params { partition, zcap: Some(cap(4)), ..Params::default() }));
    }
    for (k, n) in DUAL_CASES {
        c4.push(req(CheckName::Prform, Params { rcap: Some(cap(4)), ..kn(k, n) }));
    }
    let cone_shapes: [&[u32]; 4] = [&[2, 1], &[2, 2], &[3, 2], &[3, 3]];
    for l in cone_shapes {
        let partition = Some(Partition::new(l.iter().copied()));
        c4.push(req(CheckName::Cone, Params { partition, zcap: Some(cap(3)), samples: Some(50), seed: Some(1), ..Params::default() }));
    }
    for (k, n) in [(2, 4), (2, 5)] {
        c4.push(req(CheckName::Cone, Params { zcap: Some(cap(3)), samples: Some(50), seed: Some(1), ..kn(k, n) }));
    }

    let mut c5 = Vec::new();
    for (k, n) in DUAL_CASES {
        c5.push(req(CheckName::Reduce, Params { zcap: Some(cap(3)), ucap: Some(cap(3)), ..kn(k, n) }));
        for d in 0..=2u32.min(dmax) {
            c5.push(req(CheckName::Insertion, Params { d: Some(d.to_string()), rcap: Some(cap(4)), ..kn(k, n) }));
        }
        for total in 0..=dmax {
            for d in compositions(total, k) {
                let d = d.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
                c5.push(req(CheckName::Vgrcoeff, Params { d: Some(d), ..kn(k, n) }));
            }
        }
    }

    let mut c6 = Vec::new();
    for (k, n) in DUAL_CASES {
        c6.push(req(CheckName::Main, Params { zcap: Some(cap(3)), rcap: Some(cap(4)), ..kn(k, n) }));
    }
    c6.push(req(CheckName::Main, Params { zcap: Some(cap(2)), rcap: Some(cap(3)), ..kn(2, 5) }));

    vec![
        Criterion { id: 1, title: "Macdonald polynomials", checks: c1 },
        Criterion { id: 2, title: "operator spectrum", checks: c2 },
        Criterion { id: 3, title: "q-Selberg evaluation", checks: c3 },
        Criterion { id: 4, title: "vertex identities", checks: c4 },
        Criterion { id: 5, title: "descendant chain", checks: c5 },
        Criterion { id: 6, title: "main theorem", checks: c6 },
    ]
}

/// Runs independent checks on the worker pool; results keep input order.
pub fn run_checks(checks: &[CheckRequest], timing: bool) -> Vec<CheckReport> {
    checks.par_iter().map(|c| c.run_timed(timing)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub title: String,
    pub status: Status,
    pub reports: Vec<CheckReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteSummary {
    pub suite: String,
    pub profile: Profile,
    pub weak: bool,
    pub status: Status,
    pub criteria: Vec<CriterionResult>,
}

fn worst(statuses: impl IntoIterator<Item = Status>) -> Status {
    statuses.into_iter().fold(Status::Pass, |acc, s| match (acc, s) {
        (Status::Error, _) | (_, Status::Error) => Status::Error,
        (Status::Fail, _) | (_, Status::Fail) => Status::Fail,
        _ => Status::Pass,
    })
}

pub fn run_criterion(c: &Criterion, timing: bool) -> CriterionResult {
    let reports = run_checks(&c.checks, timing);
    CriterionResult { id: c.id, title: c.title.to_string(), status: worst(reports.iter().map(|r| r.status)), reports }
}

pub fn run_all(name: &str, profile: Profile, criteria: &[Criterion], timing: bool) -> SuiteSummary {
    let results: Vec<CriterionResult> = criteria.iter().map(|c| run_criterion(c, timing)).collect();
    SuiteSummary {
        suite: name.to_string(),
        profile,
        weak: profile == Profile::Weak,
        status: worst(results.iter().map(|r| r.status)),
        criteria: results,
    }
}

impl SuiteSummary {
    pub fn exit_code(&self) -> i32 {
        exit_code(self.status)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.criteria {
            s.push_str(&format!("criterion {} {}: {} ({} checks)\n", c.id, c.title, c.status, c.reports.len()));
            for r in c.reports.iter().filter(|r| !r.passed()) {
                s.push_str(&format!("  {r}\n"));
            }
        }
        let weak = if self.weak { " [weak]" } else { "" };
        s.push_str(&format!("{}{weak}: {}\n", self.suite, self.status));
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weak_profile_passes_and_is_flagged() {
        let summary = run_all("paper-all", Profile::Weak, &paper_all(Profile::Weak), false);
        assert_eq!(summary.status, Status::Pass, "{}", summary.to_text());
        assert!(summary.weak);
        assert!(summary.to_text().contains("[weak]"));
    }

    #[test]
    fn unknown_suite() {
        assert!(by_name("nope", Profile::Default).is_none());
    }

    #[test]
    fn matrix_covers_every_criterion() {
        let all = paper_all(Profile::Default);
        assert_eq!(all.iter().map(|c| c.id).collect::<Vec<_>>(), vec![1, 2, 3, 4, 5, 6]);
        assert!(all.iter().all(|c| !c.checks.is_empty()));
    }
}
