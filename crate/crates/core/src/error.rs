//! Error type shared by the whole crate.

use crate::copula::Region;

/// Errors produced by constructors and operations with restricted domains.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A correlation parameter outside `[-1, 1]` (or NaN).
    #[error("correlation {0} is outside [-1, 1]")]
    RhoOutOfRange(f64),

    /// A probability argument outside `[0, 1]` (or NaN).
    #[error("{name} = {value} is outside [0, 1]")]
    ProbabilityOutOfRange { name: &'static str, value: f64 },

    /// Rectangle bounds that are unordered or outside the unit square.
    #[error("invalid rectangle [{a_lo}, {a_hi}] x [{b_lo}, {b_hi}]")]
    InvalidRect {
        a_lo: f64,
        a_hi: f64,
        b_lo: f64,
        b_hi: f64,
    },

    /// Interval bounds that are unordered or outside the allowed range.
    #[error("invalid interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },

    /// A closed-form derivative was requested on the unit-square edge,
    /// where it is not defined.
    #[error("{name} = {value} lies on the unit-interval edge; the closed form is undefined there")]
    EdgeUndefined { name: &'static str, value: f64 },

    /// An operation that is only defined on the interior region was
    /// called at a point classified into a clamped region.
    #[error("operation requires an interior-region point, found {0}")]
    NotInterior(Region),

    /// A boundary curve was requested for a correlation of the wrong sign.
    #[error("boundary curve requires a {expected} correlation, got {rho}")]
    WrongRhoSign { expected: &'static str, rho: f64 },

    /// A subdivision split point outside the open interior of its rectangle.
    #[error("split point ({split_a}, {split_b}) is not strictly inside the rectangle")]
    SplitOutsideRect { split_a: f64, split_b: f64 },

    /// Bisection failed to shrink its bracket to the requested tolerance.
    #[error("bisection bracket failed to reach tolerance after {0} iterations")]
    BracketStall(u32),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
