use std::time::{Duration, Instant};

use iterqc_core::Budget;

/// Wall-clock budget starting at construction.
#[derive(Clone, Copy, Debug)]
pub struct WallClock {
    start: Instant,
    limit: Option<Duration>,
}

impl WallClock {
    pub fn new(limit: Option<Duration>) -> Self {
        WallClock {
            start: Instant::now(),
            limit,
        }
    }

    pub fn unlimited() -> Self {
        Self::new(None)
    }

    /// `None` and non-positive values mean no limit.
    pub fn from_secs(secs: Option<f64>) -> Self {
        Self::new(secs.filter(|s| *s > 0.0).map(Duration::from_secs_f64))
    }

    pub fn elapsed(&self) -> Duration {
        self.start.elapsed()
    }
}

impl Budget for WallClock {
    fn expired(&self) -> bool {
        self.limit.is_some_and(|l| self.start.elapsed() >= l)
    }

    fn elapsed_ms(&self) -> u64 {
        self.start.elapsed().as_millis() as u64
    }
}
