//! A one-parameter family of and-operations `f_rho(a, b)` that estimate
//! the joint probability of two events from their marginal probabilities
//! and the correlation of their indicators, truncated into the Fréchet
//! band so the estimate is always a feasible probability. Every member is
//! a copula: `f_-1` is the countermonotone bound `max(a+b-1, 0)`, `f_0`
//! the product `a*b`, `f_1` the comonotone bound `min(a, b)`, and
//! intermediate members interpolate between them.
//!
//! The crate provides:
//!
//! - [`copula`]: closed-form evaluation, region classification, the first
//!   partial derivative, and the mixed density;
//! - [`boundary`]: the exact curves separating the interior region from
//!   the clamped regions;
//! - [`volume`]: numerical 2-increasing certification by grid sweeps and
//!   adaptive subdivision;
//! - [`sampler`]: conditional-inverse sampling of dependent uniform pairs
//!   and joint Bernoulli tables;
//! - [`envelope`]: guaranteed AND-bounds under interval-valued inputs.
//!
//! All operations are pure functions of immutable values and safe to call
//! concurrently.

pub mod boundary;
pub mod copula;
pub mod envelope;
pub mod error;
pub mod sampler;
pub mod volume;

pub use copula::{
    clamp_to_frechet, frechet_lower, frechet_upper, CorrelationCopula, Rect, Region, UnitPoint,
};
pub use error::{Error, Result};
