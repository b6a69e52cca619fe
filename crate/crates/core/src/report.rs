//! Machine-readable records of identity checks.
//!
//! A report carries no timestamps so identical inputs produce identical bytes.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::quadrature::QuadratureConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    /// `Pass` iff `residual <= tolerance`; a NaN residual fails.
    pub fn judge(residual: f64, tolerance: f64) -> Self {
        if residual <= tolerance {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        })
    }
}

/// One verified identity: what was compared, how far apart, and the verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub identity: String,
    /// Equation label in the source numbering, e.g. `"Eq 3.3"`.
    pub equation: String,
    pub parameters: BTreeMap<String, Value>,
    pub lhs: Value,
    pub rhs: Value,
    pub residual: f64,
    pub tolerance: f64,
    pub verdict: Verdict,
}

impl ReportEntry {
    pub fn new(
        identity: impl Into<String>,
        equation: impl Into<String>,
        residual: f64,
        tolerance: f64,
    ) -> Self {
        Self {
            identity: identity.into(),
            equation: equation.into(),
            parameters: BTreeMap::new(),
            lhs: Value::Null,
            rhs: Value::Null,
            residual,
            tolerance,
            verdict: Verdict::judge(residual, tolerance),
        }
    }

    pub fn param(mut self, name: &str, value: impl Into<Value>) -> Self {
        self.parameters.insert(name.to_string(), value.into());
        self
    }

    pub fn sides(mut self, lhs: impl Into<Value>, rhs: impl Into<Value>) -> Self {
        self.lhs = lhs.into();
        self.rhs = rhs.into();
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict.passed()
    }

    /// Re-judge against a different tolerance.
    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self.verdict = Verdict::judge(self.residual, tolerance);
        self
    }
}

impl fmt::Display for ReportEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} [{}] residual={:.3e} tol={:.1e}",
            self.verdict, self.identity, self.equation, self.residual, self.tolerance
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub tool: String,
    pub version: String,
    pub config: QuadratureConfig,
    pub entries: Vec<ReportEntry>,
}

impl IdentityReport {
    pub fn new(config: QuadratureConfig) -> Self {
        Self {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            entries: Vec::new(),
        }
    }

    pub fn push(&mut self, entry: ReportEntry) {
        self.entries.push(entry);
    }

    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(ReportEntry::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportEntry> {
        self.entries.iter().filter(|e| !e.passed())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is always serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_matches_residual() {
        assert_eq!(Verdict::judge(1e-4, 1e-3), Verdict::Pass);
        assert_eq!(Verdict::judge(1e-3, 1e-3), Verdict::Pass);
        assert_eq!(Verdict::judge(2e-3, 1e-3), Verdict::Fail);
        assert_eq!(Verdict::judge(f64::NAN, 1.0), Verdict::Fail);
    }

    #[test]
    fn report_is_deterministic_json() {
        let mut r = IdentityReport::new(QuadratureConfig::default());
        r.push(
            ReportEntry::new("x", "Eq 0", 0.5, 1.0)
                .param("a", 2.0)
                .sides(1.0, 1.5),
        );
        r.push(ReportEntry::new("y", "Eq 0", 2.0, 1.0));
        assert!(!r.all_pass());
        assert_eq!(r.failures().count(), 1);
        let json = r.to_json();
        assert_eq!(json, r.clone().to_json());
        let back: IdentityReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }
}
