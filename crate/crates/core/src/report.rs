use serde::Serialize;

use crate::graded::{GradedMatrix, Residual};

/// One named identity and whether it held.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub residual_summary: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, residual_summary: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            pass,
            residual_summary: residual_summary.into(),
        }
    }

    /// Passes iff `residual` is the zero matrix.
    pub fn vanishing(name: impl Into<String>, residual: &GradedMatrix) -> Self {
        let r = Residual::of(residual);
        Check::new(name, r.is_zero(), r.summary())
    }

    /// Passes iff `a == b` entrywise.
    pub fn equal(name: impl Into<String>, a: &GradedMatrix, b: &GradedMatrix) -> Self {
        if a.dim() != b.dim() {
            return Check::new(
                name,
                false,
                format!("dimensions {} vs {}", a.dim(), b.dim()),
            );
        }
        Check::vanishing(name, &(a - b))
    }

    /// A check that the named computation failed with an error.
    pub fn errored(name: impl Into<String>, err: &crate::Error) -> Self {
        Check::new(name, false, format!("error: {err}"))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report {
            suite: suite.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        self.checks.extend(checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("suite {}\n", self.suite);
        for c in &self.checks {
            let tag = if c.pass { "PASS" } else { "FAIL" };
            out.push_str(&format!("  [{tag}] {}", c.name));
            if !c.pass || c.residual_summary != "0" {
                out.push_str(&format!("  ({})", c.residual_summary));
            }
            out.push('\n');
        }
        let passed = self.checks.iter().filter(|c| c.pass).count();
        out.push_str(&format!("  {passed}/{} checks passed\n", self.checks.len()));
        out
    }
}
