//! Pass/fail records shared by the verification entry points.

use crate::ncalg::NcPoly;
use crate::relations::RelationReport;

/// One named check: an identity that either holds or leaves a residual.
#[derive(Debug, Clone)]
pub struct Check {
    pub id: String,
    /// `(i, j, k, l)` for relation-instance checks.
    pub indices: Option<(usize, usize, usize, usize)>,
    pub holds: bool,
    /// Residual or computed value, rendered in the canonical text format.
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Default)]
pub struct CheckReport {
    pub checks: Vec<Check>,
}

impl CheckReport {
    pub fn new() -> CheckReport {
        CheckReport { checks: Vec::new() }
    }

    pub fn push(&mut self, id: impl Into<String>, holds: bool, detail: Option<String>) {
        self.checks.push(Check {
            id: id.into(),
            indices: None,
            holds,
            detail,
        });
    }

    /// Record an identity whose residual must be zero.
    pub fn push_residual(&mut self, id: impl Into<String>, residual: &NcPoly) {
        let holds = residual.is_zero();
        let detail = if holds {
            None
        } else {
            Some(residual.to_string())
        };
        self.push(id, holds, detail);
    }

    /// Record a computed value (always passing).
    pub fn push_value(&mut self, id: impl Into<String>, value: impl Into<String>) {
        self.push(id, true, Some(value.into()));
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.checks.extend(other.checks);
    }

    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failed(&self) -> usize {
        self.checks.iter().filter(|c| !c.holds).count()
    }

    /// Flatten a relation report into prefixed records carrying the
    /// instance indices.
    pub fn from_relations(prefix: &str, report: &RelationReport) -> CheckReport {
        let mut out = CheckReport::new();
        for rec in &report.records {
            let inst = rec.instance;
            out.push_residual(
                format!(
                    "{prefix}.{}[i={},j={},k={},l={}]",
                    inst.family.label(),
                    inst.i,
                    inst.j,
                    inst.k,
                    inst.l
                ),
                &rec.residual,
            );
            out.checks.last_mut().unwrap().indices = Some((inst.i, inst.j, inst.k, inst.l));
        }
        out
    }
}
