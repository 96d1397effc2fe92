//! Structured pass/fail evidence for verification runs.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    /// The cell had nothing to check (e.g. an empty admissible residue set);
    /// recorded explicitly so vacuous cells never masquerade as passes.
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED",
        };
        write!(f, "{s}")
    }
}

/// The smallest counterexample found in a failing cell.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// The progression residue the counterexample lives in, when applicable.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residue: Option<u64>,
    /// Index within the progression.
    pub n: u64,
    /// The original series exponent step*n + residue.
    pub exponent: u64,
    /// Offending coefficient value(s), rendered as text.
    pub value: String,
}

/// One verified grid cell. The k and j columns are grid labels: the lifting
/// parameters where the family has them, otherwise row/iteration indices as
/// documented per family kind.
#[derive(Clone, Debug, Serialize)]
pub struct CellReport {
    pub family: String,
    pub p: u64,
    pub k: u32,
    pub j: u32,
    pub residues: Vec<u64>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Wall-clock milliseconds spent on this cell (not deterministic).
    pub ms: u64,
}

/// Aggregated outcome of a verification run.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub cells: Vec<CellReport>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub wall_ms: u64,
}

impl VerificationReport {
    /// Assemble and deterministically order a report: cells sort by
    /// (family, p, k, j, residues) regardless of completion order.
    pub fn from_cells(mut cells: Vec<CellReport>, wall_ms: u64) -> Self {
        cells.sort_by(|a, b| {
            (a.family.as_str(), a.p, a.k, a.j, &a.residues)
                .cmp(&(b.family.as_str(), b.p, b.k, b.j, &b.residues))
        });
        let passed = cells.iter().filter(|c| c.status == Status::Pass).count();
        let failed = cells.iter().filter(|c| c.status == Status::Fail).count();
        let skipped = cells.iter().filter(|c| c.status == Status::Skipped).count();
        VerificationReport {
            cells,
            passed,
            failed,
            skipped,
            wall_ms,
        }
    }

    /// True when no cell failed; skipped cells do not count as passes but do
    /// not fail the run.
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}
