//! Node-expansion budgets for the exponential searches.

/// Upper bound on the number of search nodes an exhaustive procedure may
/// expand. Counting nodes instead of wall-clock time keeps results
/// reproducible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Budget {
    limit: Option<u64>,
}

impl Budget {
    pub const fn unlimited() -> Self {
        Budget { limit: None }
    }

    pub const fn nodes(limit: u64) -> Self {
        Budget { limit: Some(limit) }
    }

    pub fn limit(&self) -> Option<u64> {
        self.limit
    }

    pub(crate) fn meter(&self) -> Meter {
        Meter {
            limit: self.limit,
            used: 0,
        }
    }
}

#[derive(Debug)]
pub(crate) struct Meter {
    limit: Option<u64>,
    used: u64,
}

impl Meter {
    /// Charges one node; returns false once the budget is spent.
    pub(crate) fn tick(&mut self) -> bool {
        self.used += 1;
        match self.limit {
            Some(limit) => self.used <= limit,
            None => true,
        }
    }

    pub(crate) fn used(&self) -> u64 {
        self.used
    }
}

/// Result of a budgeted search. `Exhausted` is never a verdict about the
/// instance; it only says the search stopped early.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome<T> {
    Complete(T),
    Exhausted { expanded: u64 },
}

impl<T> Outcome<T> {
    pub fn complete(self) -> Option<T> {
        match self {
            Outcome::Complete(value) => Some(value),
            Outcome::Exhausted { .. } => None,
        }
    }

    pub fn is_exhausted(&self) -> bool {
        matches!(self, Outcome::Exhausted { .. })
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Outcome<U> {
        match self {
            Outcome::Complete(value) => Outcome::Complete(f(value)),
            Outcome::Exhausted { expanded } => Outcome::Exhausted { expanded },
        }
    }
}
