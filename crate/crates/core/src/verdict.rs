use std::fmt;

/// Outcome of an exhaustive check: either the property holds, or it fails with
/// a concrete witness. Scans visit candidates in canonical order, so the
/// witness is always the least violation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<W> {
    Holds,
    Fails(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }

    pub fn into_witness(self) -> Option<W> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }

    pub fn map<U>(self, f: impl FnOnce(W) -> U) -> Verdict<U> {
        match self {
            Verdict::Holds => Verdict::Holds,
            Verdict::Fails(w) => Verdict::Fails(f(w)),
        }
    }

    /// Returns `Fails` with the first witness produced by the iterator.
    pub fn first_failure(mut candidates: impl Iterator<Item = W>) -> Self {
        match candidates.next() {
            Some(w) => Verdict::Fails(w),
            None => Verdict::Holds,
        }
    }
}

impl<W: fmt::Display> fmt::Display for Verdict<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Holds => f.write_str("HOLDS"),
            Verdict::Fails(w) => write!(f, "FAILS {w}"),
        }
    }
}

/// Which clause of a two-clause order condition was violated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Clause {
    /// The weak (`>=` implies `>=`) clause.
    Weak,
    /// The strict (`>` implies `>`) clause.
    Strict,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Clause::Weak => f.write_str("weak"),
            Clause::Strict => f.write_str("strict"),
        }
    }
}
