//! Work-budget guard for combinatorial enumerations.
//!
//! Exact discrepancy, cover evaluation, and chain enumeration all walk grids
//! whose size is exponential in the dimension. Before starting such a walk,
//! callers estimate the elementary-step count in `u128` and check it against
//! a budget so an over-large request fails fast instead of running for hours.

use crate::error::{Error, Result};

/// Default cap on elementary steps for grid enumerations.
pub const DEFAULT_WORK_BUDGET: u64 = 1_000_000_000;

/// Environment variable that overrides the default budget.
pub const BUDGET_ENV_VAR: &str = "STARDISC_BUDGET";

/// Resolves the effective budget: explicit value, else environment, else default.
///
/// A malformed environment value is an input error, not a silent fallback.
pub fn resolve_budget(explicit: Option<u64>) -> Result<u64> {
    if let Some(b) = explicit {
        return Ok(b);
    }
    match std::env::var(BUDGET_ENV_VAR) {
        Ok(raw) => raw.trim().parse::<u64>().map_err(|_| {
            Error::InvalidInput(format!(
                "{BUDGET_ENV_VAR} must be a non-negative integer, got {raw:?}"
            ))
        }),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_WORK_BUDGET),
        Err(e) => Err(Error::InvalidInput(format!("{BUDGET_ENV_VAR}: {e}"))),
    }
}

/// Errors unless `required <= budget`.
pub fn check_budget(required: u128, budget: u64) -> Result<()> {
    check_budget_hint(
        required,
        budget,
        "; raise the budget with --budget or STARDISC_BUDGET, or shrink the problem",
    )
}

/// `check_budget` with a caller-supplied remedy appended to the error text.
pub fn check_budget_hint(required: u128, budget: u64, hint: &'static str) -> Result<()> {
    if required > budget as u128 {
        Err(Error::BudgetExceeded {
            required,
            budget,
            hint,
        })
    } else {
        Ok(())
    }
}

/// `base^exp` in u128, saturating at `u128::MAX` instead of overflowing.
pub fn saturating_pow(base: u128, exp: u32) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
    }
    acc
}
