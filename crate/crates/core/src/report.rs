use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// One violated clause, identified by a short stable code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub code: String,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub subject: String,
    pub diagnostics: Vec<Diagnostic>,
    pub notes: Vec<String>,
}

impl ValidationReport {
    pub fn new(subject: impl Into<String>) -> Self {
        ValidationReport {
            subject: subject.into(),
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.diagnostics.is_empty()
    }

    pub fn fail(&mut self, code: &str, message: impl Into<String>) {
        self.diagnostics.push(Diagnostic {
            code: code.to_string(),
            message: message.into(),
        });
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn has(&self, code: &str) -> bool {
        self.diagnostics.iter().any(|d| d.code == code)
    }

    /// Merges `other` into `self`, prefixing its messages with `context`.
    pub fn absorb(&mut self, context: &str, other: ValidationReport) {
        for d in other.diagnostics {
            self.diagnostics.push(Diagnostic {
                code: d.code,
                message: format!("{context}: {}", d.message),
            });
        }
        for n in other.notes {
            self.notes.push(format!("{context}: {n}"));
        }
    }

    pub fn into_result(self) -> Result<ValidationReport> {
        if self.passed() {
            Ok(self)
        } else {
            Err(Error::Invalid(self))
        }
    }

    /// Like `into_result`, but a failure is reported as an internal error.
    pub fn expect_internal(self) -> Result<ValidationReport> {
        if self.passed() {
            Ok(self)
        } else {
            Err(Error::Internal(self.to_string()))
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "pass" } else { "FAIL" };
        write!(f, "{}: {verdict}", self.subject)?;
        for d in &self.diagnostics {
            write!(f, "\n  [{}] {}", d.code, d.message)?;
        }
        for n in &self.notes {
            write!(f, "\n  note: {n}")?;
        }
        Ok(())
    }
}
