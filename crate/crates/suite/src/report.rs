use std::collections::BTreeMap;
use std::fmt;
use std::time::Duration;

use fano_core::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Pass,
    Fail,
    /// The printed form is contradicted while a minimal correction passes.
    Discrepancy,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Discrepancy => "discrepancy",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Evidence attached to a result.
#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    /// A polynomial that should have vanished.
    Polynomial(String),
    /// Components `i < j` of two tuples whose cross product is nonzero.
    Pair { i: usize, j: usize, cross: String },
    /// A sample point, usually from the numeric oracle.
    Point(Vec<Rat>),
    /// Several pieces of evidence, or free-form findings.
    Note(String),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Polynomial(p) => write!(f, "nonzero: {p}"),
            Witness::Pair { i, j, cross } => write!(f, "pair ({i},{j}): {cross}"),
            Witness::Point(p) => {
                let parts: Vec<String> = p.iter().map(ToString::to_string).collect();
                write!(f, "point ({})", parts.join(","))
            }
            Witness::Note(s) => f.write_str(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub check_id: String,
    pub status: Status,
    pub witness: Option<Witness>,
    /// Parameter substitutions actually applied, by name.
    pub bindings: BTreeMap<String, Rat>,
    pub duration: Duration,
}

impl CheckResult {
    /// Equality ignoring the measured duration.
    pub fn same_outcome(&self, other: &Self) -> bool {
        self.check_id == other.check_id
            && self.status == other.status
            && self.witness == other.witness
            && self.bindings == other.bindings
    }
}

/// Results sorted by check id.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub results: Vec<CheckResult>,
}

impl Report {
    pub fn count(&self, status: Status) -> usize {
        self.results.iter().filter(|r| r.status == status).count()
    }

    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|r| r.status == Status::Pass)
    }

    pub fn get(&self, id: &str) -> Option<&CheckResult> {
        self.results.iter().find(|r| r.check_id == id)
    }
}
