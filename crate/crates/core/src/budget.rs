//! Resource accounting for long verification sweeps.
//!
//! The core has no clock, so budgets are charged in abstract work units
//! (roughly: spanning elements or stored monomials). Callers with a clock can
//! implement [`Budget`] to add a deadline.

use alloc::format;

use crate::error::Error;

pub trait Budget {
    /// Records `units` of work. Fails once the budget is exhausted.
    fn charge(&mut self, units: u64) -> Result<(), Error>;
}

/// No limit.
#[derive(Clone, Copy, Debug, Default)]
pub struct Unlimited;

impl Budget for Unlimited {
    fn charge(&mut self, _units: u64) -> Result<(), Error> {
        Ok(())
    }
}

/// Fails after a fixed number of work units.
#[derive(Clone, Copy, Debug)]
pub struct WorkBudget {
    pub limit: u64,
    pub used: u64,
}

impl WorkBudget {
    pub fn new(limit: u64) -> Self {
        WorkBudget { limit, used: 0 }
    }
}

impl Budget for WorkBudget {
    fn charge(&mut self, units: u64) -> Result<(), Error> {
        self.used = self.used.saturating_add(units);
        if self.used > self.limit {
            Err(Error::BudgetExceeded(format!("work limit {} reached", self.limit)))
        } else {
            Ok(())
        }
    }
}
