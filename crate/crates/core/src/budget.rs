//! Cooperative time limits.
//!
//! The core has no clock of its own. Long-running searches poll a [`Budget`]
//! between node expansions; the std companion crate supplies a wall-clock
//! implementation.

/// Source of elapsed time and of the stop signal for a single solve.
pub trait Budget {
    /// Whether the search should stop now.
    fn expired(&self) -> bool;

    /// Milliseconds since the solve started, used for trace timestamps.
    fn elapsed_ms(&self) -> u64 {
        0
    }
}

/// Never expires and reports no elapsed time.
#[derive(Clone, Copy, Debug, Default)]
pub struct Unlimited;

impl Budget for Unlimited {
    fn expired(&self) -> bool {
        false
    }
}

impl<B: Budget + ?Sized> Budget for &B {
    fn expired(&self) -> bool {
        (**self).expired()
    }

    fn elapsed_ms(&self) -> u64 {
        (**self).elapsed_ms()
    }
}
