use std::fmt;

use serde::Serialize;

/// Outcome of one verification suite.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: String,
    /// Number of individual identities checked.
    pub checked: u64,
    pub violations: Vec<Violation>,
    /// Free-form facts worth printing alongside the verdict.
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub context: String,
    pub detail: String,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report {
            suite: suite.into(),
            checked: 0,
            violations: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Records one check; `detail` is only built when the check fails.
    pub fn check<C, D>(&mut self, ok: bool, context: C, detail: D)
    where
        C: FnOnce() -> String,
        D: FnOnce() -> String,
    {
        self.checked += 1;
        if !ok {
            self.violations.push(Violation {
                context: context(),
                detail: detail(),
            });
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn merge(&mut self, other: Report) {
        self.checked += other.checked;
        self.violations.extend(other.violations);
        self.notes.extend(other.notes);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{}: {} ({} checks, {} violations)",
            self.suite,
            verdict,
            self.checked,
            self.violations.len()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_verdict() {
        let mut r = Report::new("demo");
        r.check(true, || "a".into(), || unreachable!());
        assert!(r.passed());
        r.check(false, || "b".into(), || "broken".into());
        assert!(!r.passed());
        assert_eq!(r.checked, 2);
        assert_eq!(r.to_string(), "demo: FAIL (2 checks, 1 violations)");
    }
}
