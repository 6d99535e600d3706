//! Named pass/fail checks shared by the verification suites and the CLI.

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub witness: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, witness: impl Into<String>) -> Self {
        Check { name: name.into(), passed, witness: witness.into() }
    }

    pub fn pass(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Self::new(name, true, witness)
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Self::new(name, false, witness)
    }

    /// Turns `Ok(())` into a pass and `Err(w)` into a failure with witness `w`.
    pub fn from_result(name: impl Into<String>, r: std::result::Result<(), String>) -> Self {
        match r {
            Ok(()) => Self::pass(name, ""),
            Err(w) => Self::fail(name, w),
        }
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}
