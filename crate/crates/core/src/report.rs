//! Verification reports.

use std::time::Instant;

use serde::Serialize;

use crate::gt_basis::HighestWeight;
use crate::numerics::Field;
use crate::rep::PatternMatrix;

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Check {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight: Option<String>,
    pub status: Status,
    pub residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Check {
    pub fn new(name: impl Into<String>, weight: Option<&HighestWeight>, passed: bool, residual: f64) -> Self {
        Check {
            name: name.into(),
            weight: weight.map(|w| w.to_string()),
            status: if passed { Status::Pass } else { Status::Fail },
            residual,
            detail: None,
            elapsed_ms: None,
        }
    }

    /// Passes iff the matrix is exactly zero.
    pub fn exact_zero<T: Field>(name: impl Into<String>, weight: &HighestWeight, residual: &PatternMatrix<T>) -> Self {
        Check::new(name, Some(weight), residual.is_zero(), residual.max_abs())
    }

    /// Passes iff every entry is within `tol`.
    pub fn within(name: impl Into<String>, weight: Option<&HighestWeight>, err: f64, tol: f64) -> Self {
        Check::new(name, weight, err <= tol, err)
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Report {
    pub suite: String,
    pub status: Status,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report {
            suite: suite.into(),
            status: Status::Pass,
            checks: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        if !check.passed() {
            self.status = Status::Fail;
        }
        self.checks.push(check);
    }

    /// Runs `f`, recording its wall time on the produced check.
    pub fn timed(&mut self, f: impl FnOnce() -> Check) {
        let start = Instant::now();
        let mut c = f();
        c.elapsed_ms = Some(start.elapsed().as_secs_f64() * 1e3);
        self.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        for c in other.checks {
            self.push(c);
        }
        self.notes.extend(other.notes);
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn strip_timings(&mut self) {
        for c in &mut self.checks {
            c.elapsed_ms = None;
        }
    }
}
