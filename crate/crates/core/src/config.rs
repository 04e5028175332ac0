//! Tunable limits and default thresholds.
//!
//! Every number an experiment or check compares against lives here. The
//! thresholds marked "frozen" were fixed after running the exhaustive
//! oracles over the acceptance configurations; see the README for the
//! observed values.

/// Largest supported field size.
pub const MAX_FIELD_SIZE: u64 = 1 << 16;

/// Root counting modulo `P` scans every residue when `deg P` is at most this.
pub const EXHAUSTIVE_ROOT_MAX_DEG: usize = 4;

/// Default cap on the number of residues scanned modulo `P^2`.
pub const DEFAULT_LOCAL_SCAN_BUDGET: u64 = 1 << 20;

/// Default cap on the number of polynomials enumerated by an experiment.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 1 << 24;

/// Number of monic polynomials handed to one parallel work item.
pub const ENUMERATION_CHUNK: u64 = 1 << 10;

/// Frozen tolerance on `|fraction - c_trunc|` used by the convergence check.
pub const SCAN_TOLERANCE: f64 = 0.05;

/// Frozen growth factor allowed on remainder ratios relative to the
/// smallest degree measured.
pub const REMAINDER_RATIO_GROWTH: f64 = 2.0;

/// Significant digits used when reporting floating-point results.
pub const REPORT_SIGNIFICANT_DIGITS: usize = 12;

/// Default slack for the prime-counting check in arithmetic progressions:
/// `2 (deg Q + 1) / deg Q`.
pub fn default_weil_slack(deg_q: usize) -> f64 {
    let d = deg_q.max(1) as f64;
    2.0 * (d + 1.0) / d
}

/// Work limits applied to exhaustive scans.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of polynomials an experiment may enumerate.
    pub enumeration: u64,
    /// Maximum number of residues scanned modulo a prime square.
    pub local_scan: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumeration: DEFAULT_ENUMERATION_BUDGET,
            local_scan: DEFAULT_LOCAL_SCAN_BUDGET,
        }
    }
}

impl Limits {
    /// Both caps set to the same value, as the `--budget` flag does.
    pub fn uniform(budget: u64) -> Self {
        Limits {
            enumeration: budget,
            local_scan: budget,
        }
    }

    pub fn check_enumeration(&self, needed: u128) -> crate::Result<()> {
        if needed > self.enumeration as u128 {
            return Err(crate::Error::BudgetExceeded {
                needed,
                budget: self.enumeration,
            });
        }
        Ok(())
    }

    pub fn check_local(&self, needed: u128) -> crate::Result<()> {
        if needed > self.local_scan as u128 {
            return Err(crate::Error::BudgetExceeded {
                needed,
                budget: self.local_scan,
            });
        }
        Ok(())
    }
}
