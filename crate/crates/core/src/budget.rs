//! Size guards for exhaustive enumerations.

use crate::error::{Error, Result};

/// Default bound on enumeration candidates.
pub const DEFAULT_MAX_CANDIDATES: u64 = 1_000_000;

/// Environment variable read by the CLI for the default guard.
pub const MAX_CANDIDATES_ENV: &str = "DESCENT_MAX_CANDIDATES";

/// Upper bound on the number of candidates an enumeration may visit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_candidates: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Self { max_candidates: DEFAULT_MAX_CANDIDATES }
    }
}

impl Budget {
    pub fn new(max_candidates: u64) -> Self {
        Self { max_candidates }
    }

    pub(crate) fn meter(self, what: &'static str) -> Meter {
        Meter { what, limit: self.max_candidates, used: 0 }
    }
}

/// Running count of visited candidates for one enumeration.
#[derive(Debug)]
pub(crate) struct Meter {
    what: &'static str,
    limit: u64,
    used: u64,
}

impl Meter {
    pub(crate) fn tick(&mut self, n: u64) -> Result<()> {
        self.used = self.used.saturating_add(n);
        if self.used > self.limit {
            return Err(Error::SizeGuard { what: self.what, limit: self.limit });
        }
        Ok(())
    }
}
