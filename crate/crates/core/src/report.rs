//! Pass/fail check collections rendered as `CHECK <id> PASS|FAIL [witness]` lines.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub id: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        if self.detail.is_empty() {
            write!(f, "CHECK {} {}", self.id, verdict)
        } else {
            write!(f, "CHECK {} {} {}", self.id, verdict, self.detail)
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, id: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            id: id.into(),
            passed,
            detail: detail.into(),
        });
    }

    /// Records a check whose witness is `None` on success.
    pub fn record(&mut self, id: impl Into<String>, witness: Option<String>) {
        match witness {
            None => self.push(id, true, ""),
            Some(w) => self.push(id, false, w),
        }
    }

    pub fn merge(&mut self, prefix: &str, other: Report) {
        for c in other.checks {
            let id = if prefix.is_empty() {
                c.id
            } else {
                format!("{prefix}.{}", c.id)
            };
            self.checks.push(Check { id, ..c });
        }
    }

    pub fn checks(&self) -> &[Check] {
        &self.checks
    }

    pub fn get(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn passed(&self, id: &str) -> bool {
        self.get(id).is_some_and(|c| c.passed)
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}
