//! AND-propagation of interval-valued probabilities.
//!
//! When the marginals and the correlation are only known up to intervals,
//! guaranteed bounds on the joint probability come from evaluating the
//! copula at the two monotone corners: the value is nondecreasing in each
//! marginal and in the correlation, so the corner evaluation is both
//! sound and tight. Interval arithmetic on the raw formula would widen
//! the result through the square-root term.

use serde::{Deserialize, Serialize};

use crate::copula::{CorrelationCopula, UnitPoint};
use crate::error::{Error, Result};

/// An interval `[lo, hi]` of probabilities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbInterval {
    pub lo: f64,
    pub hi: f64,
}

/// An interval `[lo, hi]` of correlations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RhoInterval {
    pub lo: f64,
    pub hi: f64,
}

impl ProbInterval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&lo) && (0.0..=1.0).contains(&hi) && lo <= hi {
            Ok(Self { lo, hi })
        } else {
            Err(Error::InvalidInterval { lo, hi })
        }
    }

    /// The degenerate interval `[p, p]`.
    pub fn point(p: f64) -> Result<Self> {
        Self::new(p, p)
    }

    pub fn contains(self, p: f64) -> bool {
        self.lo <= p && p <= self.hi
    }
}

impl RhoInterval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if (-1.0..=1.0).contains(&lo) && (-1.0..=1.0).contains(&hi) && lo <= hi {
            Ok(Self { lo, hi })
        } else {
            Err(Error::InvalidInterval { lo, hi })
        }
    }

    /// The full range `[-1, 1]`, representing an unknown correlation.
    pub fn full() -> Self {
        Self { lo: -1.0, hi: 1.0 }
    }
}

/// Bounds on the joint probability over all selections from the three
/// intervals: the copula evaluated at the all-lower and all-upper corners.
pub fn and_envelope(a: ProbInterval, b: ProbInterval, r: RhoInterval) -> ProbInterval {
    let lo = CorrelationCopula::new(r.lo)
        .expect("interval invariant")
        .eval(UnitPoint::new(a.lo, b.lo).expect("interval invariant"));
    let hi = CorrelationCopula::new(r.hi)
        .expect("interval invariant")
        .eval(UnitPoint::new(a.hi, b.hi).expect("interval invariant"));
    ProbInterval { lo, hi }
}

/// The distribution-free bounds `[max(a.lo + b.lo - 1, 0), min(a.hi, b.hi)]`;
/// identical to [`and_envelope`] with the full correlation range.
pub fn frechet_envelope(a: ProbInterval, b: ProbInterval) -> ProbInterval {
    ProbInterval {
        lo: (a.lo + b.lo - 1.0).max(0.0).min(a.lo.min(b.lo)),
        hi: a.hi.min(b.hi),
    }
}
