use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Budget for exhaustive searches. `None` means unbounded.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_nodes: Option<u64>,
    pub time_limit: Option<Duration>,
}

impl SearchLimits {
    pub const UNLIMITED: SearchLimits = SearchLimits {
        max_nodes: None,
        time_limit: None,
    };

    pub fn with_time_limit(time_limit: Duration) -> Self {
        SearchLimits {
            max_nodes: None,
            time_limit: Some(time_limit),
        }
    }

    pub fn with_max_nodes(max_nodes: u64) -> Self {
        SearchLimits {
            max_nodes: Some(max_nodes),
            time_limit: None,
        }
    }
}

/// Counters reported by the search routines.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub backtracks: u64,
    pub elapsed_ms: u64,
}

impl SearchStats {
    pub fn absorb(&mut self, other: &SearchStats) {
        self.nodes += other.nodes;
        self.backtracks += other.backtracks;
        self.elapsed_ms += other.elapsed_ms;
    }
}

/// Tracks node counts and wall time against a [`SearchLimits`].
pub(crate) struct Budget {
    limits: SearchLimits,
    start: Instant,
    pub(crate) stats: SearchStats,
}

impl Budget {
    pub(crate) fn new(limits: SearchLimits) -> Self {
        Budget {
            limits,
            start: Instant::now(),
            stats: SearchStats::default(),
        }
    }

    /// Counts one search node; errors once the budget is exhausted.
    pub(crate) fn tick(&mut self) -> Result<()> {
        self.stats.nodes += 1;
        if let Some(max) = self.limits.max_nodes {
            if self.stats.nodes > max {
                return Err(Error::Timeout(self.finish()));
            }
        }
        if let Some(limit) = self.limits.time_limit {
            if self.stats.nodes.is_multiple_of(1024) && self.start.elapsed() > limit {
                return Err(Error::Timeout(self.finish()));
            }
        }
        Ok(())
    }

    pub(crate) fn backtrack(&mut self) {
        self.stats.backtracks += 1;
    }

    pub(crate) fn finish(&self) -> SearchStats {
        SearchStats {
            elapsed_ms: self.start.elapsed().as_millis() as u64,
            ..self.stats
        }
    }
}
