//! Numeric and exact checks of the analytic inequalities behind the counting
//! and optimization results, plus cross-checks between independent counters.

mod cross;
mod fq;
mod inequalities;

pub use cross::cross_check_counting;
pub use fq::{check_fq, fq, fq_g, fq_h};
pub use inequalities::{
    check_claim5_inequality, check_claim5_inequality_seeded, check_partition_colors, check_turan_routine,
    claim5_s, turan_routine_holds, PartitionColorsGrid,
};

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

/// Comparison guard band for real-valued checks.
pub const GUARD: f64 = 1e-12;
/// Default seed for sampled checks.
pub const DEFAULT_SEED: u64 = 20_160_301;

/// Input at which a check came closest to failing, and by how much.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WorstCase {
    pub input: String,
    /// Positive (or zero, for exact agreement checks) when the check holds.
    pub margin: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub grid: String,
    pub worst_case: WorstCase,
    pub passed: bool,
    /// Thresholds found by scans and other informational findings.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckResult {
    fn new(name: &str, grid: String) -> Self {
        CheckResult {
            name: name.to_string(),
            grid,
            worst_case: WorstCase {
                input: "none".into(),
                margin: f64::INFINITY,
            },
            passed: true,
            notes: Vec::new(),
        }
    }

    /// Records `margin` at `input` if it is the smallest so far. Grids are
    /// visited in canonical order, so the first minimum is kept.
    fn observe(&mut self, input: impl FnOnce() -> String, margin: f64) {
        if margin < self.worst_case.margin {
            self.worst_case = WorstCase { input: input(), margin };
        }
    }
}

/// All checks with their default grids.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn from_checks(checks: Vec<CheckResult>) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        VerifyReport { checks, passed }
    }

    /// Plain-text table: one row per check.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let w = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(4).max(5);
        let _ = writeln!(out, "{:<w$}  {:<6}  {:>12}  worst input", "check", "result", "margin");
        for c in &self.checks {
            let _ = writeln!(
                out,
                "{:<w$}  {:<6}  {:>12.4e}  {}",
                c.name,
                if c.passed { "PASS" } else { "FAIL" },
                c.worst_case.margin,
                c.worst_case.input
            );
            for note in &c.notes {
                let _ = writeln!(out, "{:<w$}  {}", "", note);
            }
        }
        out
    }
}

pub fn run_all(seed: u64) -> VerifyReport {
    VerifyReport::from_checks(vec![
        check_fq(200, 100),
        check_partition_colors(3..=8, &PartitionColorsGrid::default()),
        check_claim5_inequality_seeded(100_000, seed),
        check_turan_routine(4..=8, 200),
        cross_check_counting(12),
    ])
}
