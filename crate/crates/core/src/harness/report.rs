use std::fmt;

use num_traits::Zero;

use crate::rational::{Exact, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Lt,
    Ge,
    Gt,
    Eq,
}

impl Relation {
    pub fn holds(self, lhs: &Rational, rhs: &Rational) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Lt => lhs < rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Gt => lhs > rhs,
            Relation::Eq => lhs == rhs,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "≤",
            Relation::Lt => "<",
            Relation::Ge => "≥",
            Relation::Gt => ">",
            Relation::Eq => "=",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    /// Recorded for reference; never affects the verdict.
    Info,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skipped => "skipped",
            Status::Info => "info",
        }
    }
}

/// One exact comparison `lhs relation rhs` and its outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckRecord {
    pub name: String,
    pub lhs_label: String,
    pub lhs: Rational,
    pub relation: Relation,
    /// Empty when `rhs` is a plain constant.
    pub rhs_label: String,
    pub rhs: Rational,
    pub status: Status,
    pub note: Option<String>,
}

impl CheckRecord {
    /// Evaluates the comparison; the status is pass or fail accordingly.
    pub fn compare(
        name: impl Into<String>,
        lhs_label: impl Into<String>,
        lhs: Rational,
        relation: Relation,
        rhs_label: impl Into<String>,
        rhs: Rational,
    ) -> Self {
        let status = if relation.holds(&lhs, &rhs) {
            Status::Pass
        } else {
            Status::Fail
        };
        CheckRecord {
            name: name.into(),
            lhs_label: lhs_label.into(),
            lhs,
            relation,
            rhs_label: rhs_label.into(),
            rhs,
            status,
            note: None,
        }
    }

    /// A yes/no property recorded as `violations ≤ 0`.
    pub fn property(name: impl Into<String>, holds: bool) -> Self {
        Self::count(name, "violations", usize::from(!holds))
    }

    /// `label = count ≤ 0`.
    pub fn count(name: impl Into<String>, label: impl Into<String>, count: usize) -> Self {
        Self::compare(
            name,
            label,
            Rational::from_integer(count.into()),
            Relation::Le,
            "",
            Rational::zero(),
        )
    }

    pub fn skipped(name: impl Into<String>, note: impl Into<String>) -> Self {
        CheckRecord {
            name: name.into(),
            lhs_label: String::new(),
            lhs: Rational::zero(),
            relation: Relation::Eq,
            rhs_label: String::new(),
            rhs: Rational::zero(),
            status: Status::Skipped,
            note: Some(note.into()),
        }
    }

    /// Same as [`compare`](Self::compare) but informational.
    pub fn info(
        name: impl Into<String>,
        lhs_label: impl Into<String>,
        lhs: Rational,
        relation: Relation,
        rhs_label: impl Into<String>,
        rhs: Rational,
    ) -> Self {
        CheckRecord {
            status: Status::Info,
            ..Self::compare(name, lhs_label, lhs, relation, rhs_label, rhs)
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    /// Pass and fail records must agree with their recorded values.
    pub fn is_reproducible(&self) -> bool {
        match self.status {
            Status::Pass => self.relation.holds(&self.lhs, &self.rhs),
            Status::Fail => !self.relation.holds(&self.lhs, &self.rhs),
            Status::Skipped | Status::Info => true,
        }
    }
}

impl fmt::Display for CheckRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<7} {}", self.status.label(), self.name)?;
        if self.status != Status::Skipped {
            write!(
                f,
                ": {} = {} {} ",
                self.lhs_label,
                Exact(&self.lhs),
                self.relation.symbol()
            )?;
            if self.rhs_label.is_empty() {
                write!(f, "{}", Exact(&self.rhs))?;
            } else {
                write!(f, "{} = {}", self.rhs_label, Exact(&self.rhs))?;
            }
        }
        match (&self.note, self.status) {
            (Some(note), Status::Skipped) => write!(f, ": {note}"),
            (Some(note), _) => write!(f, " ({note})"),
            (None, _) => Ok(()),
        }
    }
}

/// Every check run on one stack or trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub subject: String,
    pub records: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn new(subject: impl Into<String>) -> Self {
        VerificationReport {
            subject: subject.into(),
            records: Vec::new(),
        }
    }

    pub fn push(&mut self, record: CheckRecord) {
        self.records.push(record);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.records.extend(other.records);
    }

    /// No record failed.
    pub fn passed(&self) -> bool {
        self.records.iter().all(CheckRecord::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| r.status == Status::Fail)
    }

    pub fn find(&self, name: &str) -> Option<&CheckRecord> {
        self.records.iter().find(|r| r.name == name)
    }

    pub fn is_reproducible(&self) -> bool {
        self.records.iter().all(CheckRecord::is_reproducible)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "report for {}", self.subject)?;
        for r in &self.records {
            writeln!(f, "  {r}")?;
        }
        write!(
            f,
            "verdict: {}",
            if self.passed() { "pass" } else { "fail" }
        )
    }
}
