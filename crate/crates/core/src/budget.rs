//! Node-count and wall-clock caps for exhaustive searches.

use std::time::{Duration, Instant};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
}

impl Budget {
    pub const UNLIMITED: Budget = Budget { max_nodes: None, max_time: None };

    pub fn nodes(max_nodes: u64) -> Self {
        Budget { max_nodes: Some(max_nodes), max_time: None }
    }

    pub fn with_time(mut self, limit: Duration) -> Self {
        self.max_time = Some(limit);
        self
    }

    pub fn meter(&self) -> Meter {
        Meter { budget: *self, nodes: 0, start: Instant::now(), exhausted: false }
    }
}

/// Running count against a [`Budget`]. Once exhausted it stays exhausted.
#[derive(Debug, Clone)]
pub struct Meter {
    budget: Budget,
    nodes: u64,
    start: Instant,
    exhausted: bool,
}

impl Meter {
    /// Counts one search node; returns `false` once the budget is spent.
    #[inline]
    pub fn tick(&mut self) -> bool {
        if self.exhausted {
            return false;
        }
        self.nodes += 1;
        if let Some(max) = self.budget.max_nodes {
            if self.nodes > max {
                self.exhausted = true;
                return false;
            }
        }
        // Clock reads are comparatively slow; sample them.
        if self.nodes & 1023 == 0 {
            if let Some(limit) = self.budget.max_time {
                if self.start.elapsed() > limit {
                    self.exhausted = true;
                    return false;
                }
            }
        }
        true
    }

    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    pub fn exhausted(&self) -> bool {
        self.exhausted
    }

    pub fn elapsed(&self) -> Duration {
        self.start.elapsed()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn node_cap_is_sticky() {
        let mut m = Budget::nodes(3).meter();
        assert!(m.tick() && m.tick() && m.tick());
        assert!(!m.tick());
        assert!(!m.tick());
        assert!(m.exhausted());
    }

    #[test]
    fn unlimited_never_exhausts() {
        let mut m = Budget::UNLIMITED.meter();
        assert!((0..10_000).all(|_| m.tick()));
    }
}
