//! Verdicts and theorem reports shared by the checkers.

use std::fmt;

use serde::Serialize;

use crate::kernel::{Category, MorphismId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Outcome {
    Pass,
    Fail,
    NotApplicable,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::NotApplicable => "NOT APPLICABLE",
        })
    }
}

/// Morphisms exhibiting a failure, with their labels in the category they live in.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub morphisms: Vec<MorphismId>,
    pub labels: Vec<String>,
    pub reason: String,
}

impl Witness {
    pub fn new(c: &dyn Category, morphisms: &[MorphismId], reason: impl Into<String>) -> Witness {
        Witness {
            morphisms: morphisms.to_vec(),
            labels: morphisms.iter().map(|&m| c.morphism_label(m)).collect(),
            reason: reason.into(),
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.labels.join(" ; "), self.reason)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Scope notes or the failing witness.
    pub detail: String,
}

/// Outcome of a theorem verification: hypotheses first, then assertions.
/// A failed hypothesis makes the report not applicable; assertions are then
/// skipped by the verifiers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub theorem: String,
    pub subject: String,
    pub outcome: Outcome,
    pub hypotheses: Vec<Check>,
    pub assertions: Vec<Check>,
    pub notes: Vec<String>,
}

impl TheoremReport {
    pub fn new(theorem: impl Into<String>, subject: impl Into<String>) -> TheoremReport {
        TheoremReport {
            theorem: theorem.into(),
            subject: subject.into(),
            outcome: Outcome::Pass,
            hypotheses: Vec::new(),
            assertions: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// Records a hypothesis; returns whether it holds.
    pub fn hypothesis(&mut self, name: impl Into<String>, holds: bool, detail: impl Into<String>) -> bool {
        self.hypotheses.push(Check {
            name: name.into(),
            passed: holds,
            detail: detail.into(),
        });
        if !holds {
            self.outcome = Outcome::NotApplicable;
        }
        holds
    }

    pub fn assert(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> bool {
        self.assertions.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
        if !passed && self.outcome == Outcome::Pass {
            self.outcome = Outcome::Fail;
        }
        passed
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn applicable(&self) -> bool {
        self.hypotheses.iter().all(|h| h.passed)
    }

    /// Folds another report in as a block of assertions.
    pub fn absorb(&mut self, other: &TheoremReport) {
        for h in &other.hypotheses {
            self.hypothesis(format!("{}: {}", other.theorem, h.name), h.passed, h.detail.clone());
        }
        for a in &other.assertions {
            self.assert(format!("{}: {}", other.theorem, a.name), a.passed, a.detail.clone());
        }
        self.notes.extend(other.notes.iter().cloned());
    }
}

impl fmt::Display for TheoremReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} on {}: {}", self.theorem, self.subject, self.outcome)?;
        for (kind, checks) in [("hypothesis", &self.hypotheses), ("assert", &self.assertions)] {
            for c in checks {
                let mark = if c.passed { "ok  " } else { "FAIL" };
                write!(f, "  [{mark}] {kind} {}", c.name)?;
                if c.detail.is_empty() {
                    writeln!(f)?;
                } else {
                    writeln!(f, ": {}", c.detail)?;
                }
            }
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}
