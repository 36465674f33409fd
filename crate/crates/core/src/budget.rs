//! Node budgets shared by the parallel searches.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use crate::error::{Error, Result};

pub(crate) struct Budget {
    explored: AtomicU64,
    stop: AtomicBool,
    limit: Option<u64>,
}

impl Budget {
    pub fn new(limit: Option<u64>) -> Self {
        Budget {
            explored: AtomicU64::new(0),
            stop: AtomicBool::new(false),
            limit,
        }
    }

    /// True once the flushed node count has passed the limit.
    pub fn exhausted(&self) -> bool {
        self.stop.load(Ordering::Relaxed)
    }

    pub fn error(&self) -> Error {
        Error::BudgetExceeded {
            budget: self.limit.unwrap_or(0),
            explored: self.explored.load(Ordering::Relaxed),
        }
    }
}

/// Per-worker node counter, folded into the shared [`Budget`] in blocks so
/// the hot loop never touches an atomic.
pub(crate) struct Meter<'a> {
    budget: &'a Budget,
    local: u64,
}

const FLUSH: u64 = 1 << 14;

impl<'a> Meter<'a> {
    pub fn new(budget: &'a Budget) -> Self {
        Meter { budget, local: 0 }
    }

    #[inline]
    pub fn tick(&mut self) -> Result<()> {
        self.local += 1;
        if self.local == FLUSH {
            self.flush();
            if self.budget.exhausted() {
                return Err(self.budget.error());
            }
        }
        Ok(())
    }

    /// Flushes and reports whether the whole run stayed within budget.
    pub fn finish(mut self) -> Result<()> {
        self.flush();
        if self.budget.exhausted() {
            Err(self.budget.error())
        } else {
            Ok(())
        }
    }

    pub fn flush(&mut self) {
        let total = self.budget.explored.fetch_add(self.local, Ordering::Relaxed) + self.local;
        self.local = 0;
        if matches!(self.budget.limit, Some(b) if total > b) {
            self.budget.stop.store(true, Ordering::Relaxed);
        }
    }
}

impl Drop for Meter<'_> {
    fn drop(&mut self) {
        self.flush();
    }
}
