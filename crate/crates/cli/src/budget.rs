//! Work budget with an optional wall-clock deadline.

use std::time::{Duration, Instant};

use rumin_core::budget::Budget;
use rumin_core::Error;

/// Charges work units against `max_units` and checks a deadline. The
/// deadline makes runs that hit it timing-dependent; runs that finish
/// within it are unaffected.
#[derive(Clone, Debug)]
pub struct ClockBudget {
    deadline: Option<Instant>,
    seconds: Option<f64>,
    max_units: Option<u64>,
    used: u64,
}

impl ClockBudget {
    pub fn new(seconds: Option<f64>, max_units: Option<u64>) -> Self {
        ClockBudget {
            deadline: seconds.map(|s| Instant::now() + Duration::from_secs_f64(s)),
            seconds,
            max_units,
            used: 0,
        }
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    /// Fails up front when a known amount of work already exceeds the limit.
    pub fn reserve(&self, units: u64, what: &str) -> Result<(), Error> {
        match self.max_units {
            Some(m) if units > m => Err(Error::BudgetExceeded(format!("{} needs {} monomials, limit {}", what, units, m))),
            _ => Ok(()),
        }
    }
}

impl Budget for ClockBudget {
    fn charge(&mut self, units: u64) -> Result<(), Error> {
        self.used = self.used.saturating_add(units);
        if let Some(m) = self.max_units {
            if self.used > m {
                return Err(Error::BudgetExceeded(format!("monomial limit {} reached", m)));
            }
        }
        if let Some(d) = self.deadline {
            if Instant::now() > d {
                return Err(Error::BudgetExceeded(format!("time limit {}s reached", self.seconds.unwrap_or(0.0))));
            }
        }
        Ok(())
    }
}
