//! Machine-readable outcome of a verification run.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraError, Monomial, RatFunc, TruncatedSeries};

/// Reports keep at most this many mismatch entries.
pub const MAX_MISMATCHES: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        })
    }
}

/// One differing coefficient, both sides in canonical text.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub monomial: String,
    pub left: String,
    pub right: String,
}

impl Mismatch {
    pub fn new(monomial: impl fmt::Display, left: impl fmt::Display, right: impl fmt::Display) -> Mismatch {
        Mismatch { monomial: monomial.to_string(), left: left.to_string(), right: right.to_string() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub k: Option<u32>,
    pub n: Option<u32>,
    pub caps: String,
    /// Remaining parameters such as `mu=2,1 d=2`.
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub params: String,
    pub status: Status,
    pub mismatches: Vec<Mismatch>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub elapsed_ms: u64,
}

impl CheckReport {
    pub fn new(check: &str) -> CheckReport {
        CheckReport {
            check: check.to_string(),
            k: None,
            n: None,
            caps: String::new(),
            params: String::new(),
            status: Status::Pass,
            mismatches: Vec::new(),
            error: None,
            elapsed_ms: 0,
        }
    }

    pub fn k(mut self, k: usize) -> CheckReport {
        self.k = Some(k as u32);
        self
    }

    pub fn n(mut self, n: usize) -> CheckReport {
        self.n = Some(n as u32);
        self
    }

    pub fn caps(mut self, caps: impl fmt::Display) -> CheckReport {
        self.caps = caps.to_string();
        self
    }

    pub fn params(mut self, params: impl fmt::Display) -> CheckReport {
        self.params = params.to_string();
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Records a mismatch and marks the report failed.
    pub fn push(&mut self, m: Mismatch) {
        self.status = Status::Fail;
        if self.mismatches.len() < MAX_MISMATCHES {
            self.mismatches.push(m);
        }
    }

    /// Compares two rational functions; `label` names the coefficient.
    pub fn compare(&mut self, label: impl fmt::Display, left: &RatFunc, right: &RatFunc) {
        if left != right {
            self.push(Mismatch::new(label, left.simplify(), right.simplify()));
        }
    }

    /// Coefficient-by-coefficient comparison of two series.
    pub fn compare_series(&mut self, left: &TruncatedSeries, right: &TruncatedSeries) {
        for (m, l, r) in left.diff(right) {
            self.push(Mismatch::new(monomial_label(&m), l.simplify(), r.simplify()));
        }
    }

    /// Folds a sub-report in; its mismatches are labelled with its params.
    pub fn absorb(&mut self, other: &CheckReport) {
        if let Some(e) = &other.error {
            self.status = Status::Error;
            self.error.get_or_insert_with(|| format!("{}: {e}", other.params));
            return;
        }
        for m in &other.mismatches {
            let label = if other.params.is_empty() { m.monomial.clone() } else { format!("{} {}", other.params, m.monomial) };
            self.push(Mismatch::new(label, &m.left, &m.right));
        }
        if other.status == Status::Fail && other.mismatches.is_empty() {
            self.status = Status::Fail;
        }
    }

    pub fn with_error(mut self, e: &AlgebraError) -> CheckReport {
        self.status = Status::Error;
        self.error = Some(e.to_string());
        self
    }

    /// Folds the outcome of a fallible check body into the report.
    pub fn finish(self, body: Result<CheckReport, AlgebraError>) -> CheckReport {
        match body {
            Ok(r) => r,
            Err(e) => self.with_error(&e),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<CheckReport, serde_json::Error> {
        serde_json::from_str(s)
    }
}

fn monomial_label(m: &Monomial) -> String {
    if m.is_one() {
        "1".to_string()
    } else {
        m.to_string()
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.check, self.status)?;
        if let Some(k) = self.k {
            write!(f, " k={k}")?;
        }
        if let Some(n) = self.n {
            write!(f, " n={n}")?;
        }
        if !self.params.is_empty() {
            write!(f, " {}", self.params)?;
        }
        if !self.caps.is_empty() {
            write!(f, " caps={}", self.caps)?;
        }
        if let Some(e) = &self.error {
            write!(f, "\n  error: {e}")?;
        }
        for m in &self.mismatches {
            write!(f, "\n  at {}: left {} right {}", m.monomial, m.left, m.right)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let mut r = CheckReport::new("diagonal").k(2).caps("kahler=3").params("mu=2,1 d=2");
        r.push(Mismatch::new("z", "1", "2"));
        let back = CheckReport::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.status, Status::Fail);
        assert!(r.to_json().contains("\"status\": \"fail\""));
    }

    #[test]
    fn absorb_labels_and_escalates() {
        let mut all = CheckReport::new("vgrcoeff");
        all.absorb(&CheckReport::new("vgrcoeff").params("d=1"));
        assert!(all.passed());
        let mut bad = CheckReport::new("vgrcoeff").params("d=2");
        bad.push(Mismatch::new("summand", "a", "b"));
        all.absorb(&bad);
        assert_eq!(all.mismatches[0].monomial, "d=2 summand");
        all.absorb(&CheckReport::new("x").params("d=3").with_error(&AlgebraError::Pole("p".into())));
        assert_eq!(all.status, Status::Error);
    }
}
