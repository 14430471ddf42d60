//! Pass/fail outcome of an identity check, carrying a witness on failure.

use serde::Serialize;

/// Result of sweeping an identity over a finite set of instances.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict<W> {
    Pass,
    Fail(W),
}

impl<W> Verdict<W> {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(w) => Some(w),
        }
    }

    pub fn into_witness(self) -> Option<W> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(w) => Some(w),
        }
    }

    pub fn map<V>(self, f: impl FnOnce(W) -> V) -> Verdict<V> {
        match self {
            Verdict::Pass => Verdict::Pass,
            Verdict::Fail(w) => Verdict::Fail(f(w)),
        }
    }
}

impl<W> From<Option<W>> for Verdict<W> {
    fn from(witness: Option<W>) -> Self {
        match witness {
            None => Verdict::Pass,
            Some(w) => Verdict::Fail(w),
        }
    }
}
