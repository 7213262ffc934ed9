use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_ORACLE_NODES: u64 = 100_000_000;
pub const DEFAULT_CYCLE_PAIRS: u64 = 10_000_000;
pub const DEFAULT_WALL_CLOCK_SECS: u64 = 60;

/// Search limits shared by the exponential routines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub oracle_nodes: u64,
    pub cycle_pairs: u64,
    /// Per-call wall-clock limit in seconds; 0 disables it.
    pub wall_clock_secs: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            oracle_nodes: DEFAULT_ORACLE_NODES,
            cycle_pairs: DEFAULT_CYCLE_PAIRS,
            wall_clock_secs: DEFAULT_WALL_CLOCK_SECS,
        }
    }
}

impl Budget {
    /// Defaults overridden by `DEMING_ORACLE_NODES`, `DEMING_CYCLE_PAIRS` and `DEMING_WALL_CLOCK_SECS`.
    pub fn from_env() -> Self {
        let get = |k: &str, d: u64| std::env::var(k).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(d);
        Budget {
            oracle_nodes: get("DEMING_ORACLE_NODES", DEFAULT_ORACLE_NODES),
            cycle_pairs: get("DEMING_CYCLE_PAIRS", DEFAULT_CYCLE_PAIRS),
            wall_clock_secs: get("DEMING_WALL_CLOCK_SECS", DEFAULT_WALL_CLOCK_SECS),
        }
    }

    /// No wall-clock limit, so results depend only on the input.
    pub fn deterministic() -> Self {
        Budget { wall_clock_secs: 0, ..Budget::default() }
    }

    pub fn with_oracle_nodes(mut self, nodes: u64) -> Self {
        self.oracle_nodes = nodes;
        self
    }

    pub fn with_cycle_pairs(mut self, pairs: u64) -> Self {
        self.cycle_pairs = pairs;
        self
    }

    pub(crate) fn meter(&self, limit: u64) -> Meter {
        Meter::new(limit, self.wall_clock_secs)
    }
}

/// Counts work against a limit and an optional deadline.
#[derive(Debug)]
pub(crate) struct Meter {
    pub used: u64,
    limit: u64,
    deadline: Option<Instant>,
}

impl Meter {
    pub fn new(limit: u64, secs: u64) -> Self {
        let deadline = (secs > 0).then(|| Instant::now() + Duration::from_secs(secs));
        Meter { used: 0, limit, deadline }
    }

    #[cfg(test)]
    pub fn unlimited() -> Self {
        Meter { used: 0, limit: u64::MAX, deadline: None }
    }

    #[inline]
    pub fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            return Err(Error::BudgetExceeded);
        }
        if self.used & 0xfff == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() > d {
                    return Err(Error::BudgetExceeded);
                }
            }
        }
        Ok(())
    }
}
