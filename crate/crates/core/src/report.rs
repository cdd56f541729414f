//! Pass/fail records shared by every verification routine.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub equation: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<i64>,
    pub residual_zero: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn new(equation: impl Into<String>, degree: Option<i64>, ok: bool) -> Check {
        Check { equation: equation.into(), degree, residual_zero: ok, detail: None }
    }

    pub fn at(equation: impl Into<String>, degree: usize, ok: bool) -> Check {
        Check::new(equation, Some(degree as i64), ok)
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Check {
        self.detail = Some(detail.into());
        self
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub name: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(name: impl Into<String>) -> Report {
        Report { name: name.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.residual_zero)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.residual_zero)
    }
}
