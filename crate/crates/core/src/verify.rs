use std::fmt;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

/// An ordered list of named checks; `overall` holds iff every check passes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    pub overall: bool,
}

impl VerificationReport {
    pub fn new() -> Self {
        VerificationReport {
            checks: Vec::new(),
            overall: true,
        }
    }

    pub fn push(&mut self, name: impl Into<String>, expected: impl fmt::Display, actual: impl fmt::Display, pass: bool) {
        self.overall &= pass;
        self.checks.push(Check {
            name: name.into(),
            expected: expected.to_string(),
            actual: actual.to_string(),
            pass,
        });
    }

    /// Records a check that passes iff the rendered values agree.
    pub fn push_eq<T: fmt::Display + PartialEq>(&mut self, name: impl Into<String>, expected: T, actual: T) {
        let pass = expected == actual;
        self.push(name, expected, actual, pass);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.overall &= other.overall;
        self.checks.extend(other.checks);
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}
