//! Closed-form evaluation of the correlation-based and-operation.
//!
//! Given marginal probabilities `a` and `b` of two events and the
//! correlation `rho` between their indicators, the joint probability is
//! estimated by
//!
//! ```text
//! raw(a, b) = a*b + rho * sqrt(a*(1-a) * b*(1-b))
//! ```
//!
//! The raw estimate can leave the feasible range for a joint probability,
//! so it is truncated into the Fréchet band
//! `[max(a+b-1, 0), min(a, b)]`. The truncated function is a copula for
//! every `rho` in `[-1, 1]`: it is grounded, has uniform margins, and is
//! 2-increasing (the latter is certified numerically by [`crate::volume`]).
//!
//! Each point of the unit square falls into one of three [`Region`]s
//! depending on which branch of the truncation is active; the interior
//! region is where the raw formula is used unchanged and where the closed
//! forms for the first partial derivative and the mixed density apply.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A member of the copula family, identified by its correlation parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationCopula {
    rho: f64,
}

/// A point `(a, b)` of the unit square; both coordinates are probabilities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitPoint {
    a: f64,
    b: f64,
}

/// Which branch of the Fréchet truncation is active at a point.
///
/// Boundary points report `Interior`: the truncation keeps any value that
/// is not strictly outside the band, so a raw value equal to a bound is
/// passed through unchanged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Region {
    /// The raw estimate fell below `max(a+b-1, 0)` and is clamped up.
    LowerClamp,
    /// The raw estimate lies inside the Fréchet band and is used as is.
    Interior,
    /// The raw estimate exceeded `min(a, b)` and is clamped down.
    UpperClamp,
}

impl std::fmt::Display for Region {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Region::LowerClamp => "LowerClamp",
            Region::Interior => "Interior",
            Region::UpperClamp => "UpperClamp",
        };
        f.write_str(s)
    }
}

/// An axis-aligned rectangle inside the unit square.
///
/// Rectangles are the unit of 2-increasing checks: a copula assigns every
/// rectangle a non-negative mass (its C-volume).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub a_lo: f64,
    pub a_hi: f64,
    pub b_lo: f64,
    pub b_hi: f64,
}

impl CorrelationCopula {
    /// Builds the family member for `rho`.
    ///
    /// Rejects values outside `[-1, 1]` (including NaN) instead of
    /// clipping them; a silently adjusted correlation would mask caller
    /// bugs.
    pub fn new(rho: f64) -> Result<Self> {
        if (-1.0..=1.0).contains(&rho) {
            Ok(Self { rho })
        } else {
            Err(Error::RhoOutOfRange(rho))
        }
    }

    /// The correlation parameter.
    pub fn rho(self) -> f64 {
        self.rho
    }

    /// The raw joint-probability estimate `a*b + rho*sqrt(a(1-a)b(1-b))`.
    ///
    /// The result may lie outside `[0, 1]`; that is the reason the family
    /// truncates it (see [`CorrelationCopula::eval`]).
    pub fn raw_and(self, p: UnitPoint) -> f64 {
        let (a, b) = (p.a, p.b);
        a * b + self.rho * sqrt_nonneg(variance_product(a, b))
    }

    /// The copula value: the raw estimate truncated into the Fréchet band.
    ///
    /// Always lies in `[max(a+b-1, 0), min(a, b)]` and is symmetric in
    /// `(a, b)` bit for bit.
    pub fn eval(self, p: UnitPoint) -> f64 {
        clamp_to_frechet(self.raw_and(p), p)
    }

    /// Classifies which truncation branch `eval` takes at `p`.
    ///
    /// Uses exact floating comparison of the raw value against the band;
    /// callers that need fuzzing around the boundary apply their own
    /// epsilon. The tag is guaranteed to agree with the branch taken by
    /// [`clamp_to_frechet`], which uses the same comparisons.
    pub fn classify_region(self, p: UnitPoint) -> Region {
        let raw = self.raw_and(p);
        if raw < frechet_lower(p) {
            Region::LowerClamp
        } else if raw > frechet_upper(p) {
            Region::UpperClamp
        } else {
            Region::Interior
        }
    }

    /// First partial derivative of the copula with respect to `a`, valid
    /// on the interior region away from the edges `a = 0` and `a = 1`:
    ///
    /// ```text
    /// d/da = b + rho * (1-2a) / (2*sqrt(a(1-a))) * sqrt(b(1-b))
    /// ```
    ///
    /// On its domain the value lies in `[0, 1]` up to rounding; the upper
    /// bound is what makes boundary-crossing rectangles mass-positive.
    pub fn partial_a(self, p: UnitPoint) -> Result<f64> {
        if p.a == 0.0 || p.a == 1.0 {
            return Err(Error::EdgeUndefined {
                name: "a",
                value: p.a,
            });
        }
        let region = self.classify_region(p);
        if region != Region::Interior {
            return Err(Error::NotInterior(region));
        }
        let (a, b) = (p.a, p.b);
        let d = b + self.rho * (1.0 - 2.0 * a) / (2.0 * sqrt_nonneg(a * (1.0 - a)))
            * sqrt_nonneg(b * (1.0 - b));
        debug_assert!(d <= 1.0 + 1e-9, "interior partial derivative {d} > 1");
        debug_assert!(d >= -1e-9, "interior partial derivative {d} < 0");
        Ok(d)
    }

    /// Mixed density `d²C/(da db)` on the open interior region:
    ///
    /// ```text
    /// 1 + rho * (1-2a)(1-2b) / (4*sqrt(a(1-a)b(1-b)))
    /// ```
    ///
    /// Non-negative on its domain; that sign is the differential form of
    /// the 2-increasing property.
    pub fn mixed_density(self, p: UnitPoint) -> Result<f64> {
        if p.a == 0.0 || p.a == 1.0 {
            return Err(Error::EdgeUndefined {
                name: "a",
                value: p.a,
            });
        }
        if p.b == 0.0 || p.b == 1.0 {
            return Err(Error::EdgeUndefined {
                name: "b",
                value: p.b,
            });
        }
        let region = self.classify_region(p);
        if region != Region::Interior {
            return Err(Error::NotInterior(region));
        }
        let (a, b) = (p.a, p.b);
        let d = 1.0
            + self.rho * (1.0 - 2.0 * a) * (1.0 - 2.0 * b)
                / (4.0 * sqrt_nonneg(variance_product(a, b)));
        debug_assert!(d >= -1e-12, "interior mixed density {d} < 0");
        Ok(d)
    }
}

impl UnitPoint {
    /// Builds a point, rejecting coordinates outside `[0, 1]` or NaN.
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&a) {
            return Err(Error::ProbabilityOutOfRange { name: "a", value: a });
        }
        if !(0.0..=1.0).contains(&b) {
            return Err(Error::ProbabilityOutOfRange { name: "b", value: b });
        }
        Ok(Self { a, b })
    }

    pub fn a(self) -> f64 {
        self.a
    }

    pub fn b(self) -> f64 {
        self.b
    }

    /// The point with coordinates exchanged.
    pub fn swapped(self) -> Self {
        Self {
            a: self.b,
            b: self.a,
        }
    }
}

impl Rect {
    /// Builds a rectangle, validating `a_lo <= a_hi`, `b_lo <= b_hi` and
    /// containment in the unit square.
    pub fn new(a_lo: f64, a_hi: f64, b_lo: f64, b_hi: f64) -> Result<Self> {
        let ordered = (0.0..=1.0).contains(&a_lo)
            && (0.0..=1.0).contains(&a_hi)
            && (0.0..=1.0).contains(&b_lo)
            && (0.0..=1.0).contains(&b_hi)
            && a_lo <= a_hi
            && b_lo <= b_hi;
        if ordered {
            Ok(Self {
                a_lo,
                a_hi,
                b_lo,
                b_hi,
            })
        } else {
            Err(Error::InvalidRect {
                a_lo,
                a_hi,
                b_lo,
                b_hi,
            })
        }
    }

    /// The full unit square.
    pub fn unit_square() -> Self {
        Self {
            a_lo: 0.0,
            a_hi: 1.0,
            b_lo: 0.0,
            b_hi: 1.0,
        }
    }

    /// Corner points in the order (lo,lo), (lo,hi), (hi,lo), (hi,hi).
    pub fn corners(self) -> [UnitPoint; 4] {
        [
            UnitPoint {
                a: self.a_lo,
                b: self.b_lo,
            },
            UnitPoint {
                a: self.a_lo,
                b: self.b_hi,
            },
            UnitPoint {
                a: self.a_hi,
                b: self.b_lo,
            },
            UnitPoint {
                a: self.a_hi,
                b: self.b_hi,
            },
        ]
    }
}

/// Lower Fréchet bound `max(a+b-1, 0)`.
///
/// The result is additionally capped at [`frechet_upper`] so that the pair
/// of bounds stays ordered under rounding. In real arithmetic
/// `max(a+b-1, 0) <= min(a, b)` always holds, but `a + b - 1` evaluated in
/// floating point can exceed `min(a, b)` by one ulp at degenerate margins
/// such as `(1, b)`; the cap restores the ordering there and never binds
/// anywhere else.
pub fn frechet_lower(p: UnitPoint) -> f64 {
    (p.a + p.b - 1.0).max(0.0).min(frechet_upper(p))
}

/// Upper Fréchet bound `min(a, b)`.
pub fn frechet_upper(p: UnitPoint) -> f64 {
    p.a.min(p.b)
}

/// Truncates `value` into the Fréchet band at `p`.
///
/// Values strictly below the band go to the lower bound, values strictly
/// above go to the upper bound, and everything else (bounds included)
/// passes through unchanged.
pub fn clamp_to_frechet(value: f64, p: UnitPoint) -> f64 {
    let lo = frechet_lower(p);
    let hi = frechet_upper(p);
    if value < lo {
        lo
    } else if value > hi {
        hi
    } else {
        value
    }
}

/// `(a(1-a)) * (b(1-b))`, grouped so the expression is bitwise symmetric
/// under swapping `a` and `b`.
fn variance_product(a: f64, b: f64) -> f64 {
    (a * (1.0 - a)) * (b * (1.0 - b))
}

/// Square root with the argument floored at zero, absorbing `-1e-17`-style
/// rounding residue that would otherwise produce NaN.
fn sqrt_nonneg(x: f64) -> f64 {
    x.max(0.0).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(rho: f64) -> CorrelationCopula {
        CorrelationCopula::new(rho).unwrap()
    }

    fn pt(a: f64, b: f64) -> UnitPoint {
        UnitPoint::new(a, b).unwrap()
    }

    #[test]
    fn raw_and_matches_hand_computed_values() {
        // rho = -1, a = b = 0.1: 0.01 - 0.09 (up to one rounding of 0.1*0.9).
        assert!((c(-1.0).raw_and(pt(0.1, 0.1)) - (-0.08)).abs() < 1e-15);
        // rho = 0 gives the plain product.
        assert_eq!(c(0.0).raw_and(pt(0.3, 0.7)), 0.3 * 0.7);
        // 0.0625 + 0.5 * 0.1875
        assert_eq!(c(0.5).raw_and(pt(0.25, 0.25)), 0.15625);
    }

    #[test]
    fn frechet_bounds_examples() {
        assert_eq!(frechet_lower(pt(0.1, 0.1)), 0.0);
        assert_eq!(frechet_upper(pt(0.1, 0.1)), 0.1);
        assert!((frechet_lower(pt(1.0, 0.4)) - 0.4).abs() < 1e-15);
        assert_eq!(frechet_upper(pt(1.0, 0.4)), 0.4);
        assert!((frechet_lower(pt(0.8, 0.5)) - 0.3).abs() < 1e-15);
        assert_eq!(frechet_upper(pt(0.8, 0.5)), 0.5);
    }

    #[test]
    fn frechet_bounds_stay_ordered_at_degenerate_margins() {
        // Without the cap, (a+b)-1 rounds above min(a,b) at points like (1, 0.3).
        for b in [0.1, 0.3, 0.7, 0.9] {
            let p = pt(1.0, b);
            assert!(frechet_lower(p) <= frechet_upper(p));
            let q = pt(b, 1.0);
            assert!(frechet_lower(q) <= frechet_upper(q));
        }
    }

    #[test]
    fn clamp_examples() {
        // The raw estimate -0.08 is a meaningless negative probability.
        assert_eq!(clamp_to_frechet(-0.08, pt(0.1, 0.1)), 0.0);
        // Inside the band: unchanged.
        assert_eq!(clamp_to_frechet(0.21, pt(0.3, 0.7)), 0.21);
        // raw(0.5, 0.1, 0.4) = 0.11348469228349535 exceeds min(a, b) = 0.1.
        let raw = c(0.5).raw_and(pt(0.1, 0.4));
        assert!((raw - 0.11348469228349535).abs() < 1e-15);
        assert_eq!(clamp_to_frechet(raw, pt(0.1, 0.4)), 0.1);
    }

    #[test]
    fn eval_examples() {
        assert_eq!(c(1.0).eval(pt(0.3, 0.7)), 0.3);
        assert_eq!(c(0.0).eval(pt(0.3, 0.7)), 0.3 * 0.7);
        // Interior point: raw value passes through.
        assert!((c(-0.5).eval(pt(0.3, 0.4)) - 0.0077502783967817596).abs() < 1e-15);
        // Lower clamp: raw 0.0567 < a+b-1 = 0.1.
        assert!((c(-1.0).eval(pt(0.3, 0.8)) - 0.1).abs() < 1e-15);
    }

    #[test]
    fn classify_region_examples() {
        assert_eq!(c(0.5).classify_region(pt(0.1, 0.4)), Region::UpperClamp);
        assert_eq!(c(0.0).classify_region(pt(0.37, 0.92)), Region::Interior);
        assert_eq!(c(-0.5).classify_region(pt(0.2, 0.3)), Region::LowerClamp);
    }

    #[test]
    fn classify_agrees_with_clamp_branch() {
        // The tag must name exactly the branch the truncation takes.
        let mut k = 0u64;
        for _ in 0..2000 {
            let rho = crate::sampler::unit_open(crate::sampler::stream_u64(11, k)) * 2.0 - 1.0;
            let a = crate::sampler::unit_open(crate::sampler::stream_u64(11, k + 1));
            let b = crate::sampler::unit_open(crate::sampler::stream_u64(11, k + 2));
            k += 3;
            let cop = c(rho);
            let p = pt(a, b);
            let raw = cop.raw_and(p);
            let v = cop.eval(p);
            match cop.classify_region(p) {
                Region::LowerClamp => {
                    assert!(raw < frechet_lower(p));
                    assert_eq!(v, frechet_lower(p));
                }
                Region::UpperClamp => {
                    assert!(raw > frechet_upper(p));
                    assert_eq!(v, frechet_upper(p));
                }
                Region::Interior => assert_eq!(v, raw),
            }
        }
    }

    #[test]
    fn partial_a_examples() {
        assert_eq!(c(0.5).partial_a(pt(0.25, 0.25)).unwrap(), 0.375);
        assert_eq!(c(0.0).partial_a(pt(0.6, 0.3)).unwrap(), 0.3);
        // (1 - 2a) = 0 kills the correction term.
        assert_eq!(c(0.5).partial_a(pt(0.5, 0.5)).unwrap(), 0.5);
    }

    #[test]
    fn partial_a_rejects_edges_and_clamped_regions() {
        assert_eq!(
            c(0.5).partial_a(pt(0.0, 0.5)),
            Err(Error::EdgeUndefined {
                name: "a",
                value: 0.0
            })
        );
        assert_eq!(
            c(0.5).partial_a(pt(1.0, 0.5)),
            Err(Error::EdgeUndefined {
                name: "a",
                value: 1.0
            })
        );
        assert_eq!(
            c(0.5).partial_a(pt(0.1, 0.4)),
            Err(Error::NotInterior(Region::UpperClamp))
        );
        assert_eq!(
            c(-0.5).partial_a(pt(0.2, 0.3)),
            Err(Error::NotInterior(Region::LowerClamp))
        );
    }

    #[test]
    fn mixed_density_examples() {
        // (1 - 2a) = 0 kills the correction for any rho that keeps the
        // point interior.
        for rho in [-0.6, -0.2, 0.2, 0.6] {
            assert_eq!(c(rho).mixed_density(pt(0.5, 0.3)).unwrap(), 1.0);
        }
        assert_eq!(c(0.0).mixed_density(pt(0.81, 0.13)).unwrap(), 1.0);
        // 1 + 0.5 * 0.25 / 0.75 = 7/6. A second-order finite difference of
        // eval confirms this value; see the derivative agreement suite.
        let d = c(0.5).mixed_density(pt(0.25, 0.25)).unwrap();
        assert!((d - 7.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn mixed_density_rejects_edges() {
        assert!(matches!(
            c(0.2).mixed_density(pt(0.3, 0.0)),
            Err(Error::EdgeUndefined { name: "b", .. })
        ));
        assert!(matches!(
            c(0.2).mixed_density(pt(1.0, 0.3)),
            Err(Error::EdgeUndefined { name: "a", .. })
        ));
    }

    #[test]
    fn constructors_reject_invalid_values() {
        assert!(CorrelationCopula::new(1.0000001).is_err());
        assert!(CorrelationCopula::new(-1.5).is_err());
        assert!(CorrelationCopula::new(f64::NAN).is_err());
        assert!(UnitPoint::new(-0.1, 0.5).is_err());
        assert!(UnitPoint::new(0.5, 1.1).is_err());
        assert!(UnitPoint::new(f64::NAN, 0.5).is_err());
        assert!(Rect::new(0.4, 0.2, 0.0, 1.0).is_err());
        assert!(Rect::new(0.0, 1.0, 0.5, 0.4).is_err());
        assert!(Rect::new(0.0, 1.2, 0.0, 1.0).is_err());
    }

    #[test]
    fn grounded_and_uniform_margins_are_exact() {
        for rho in [-1.0, -0.5, 0.0, 0.5, 1.0] {
            for t in [0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0] {
                assert_eq!(c(rho).eval(pt(0.0, t)), 0.0);
                assert_eq!(c(rho).eval(pt(t, 0.0)), 0.0);
                assert_eq!(c(rho).eval(pt(t, 1.0)), t);
                assert_eq!(c(rho).eval(pt(1.0, t)), t);
            }
        }
    }

    #[test]
    fn eval_is_bitwise_symmetric() {
        let mut k = 0u64;
        for _ in 0..500 {
            let rho = crate::sampler::unit_open(crate::sampler::stream_u64(13, k)) * 2.0 - 1.0;
            let a = crate::sampler::unit_open(crate::sampler::stream_u64(13, k + 1));
            let b = crate::sampler::unit_open(crate::sampler::stream_u64(13, k + 2));
            k += 3;
            let p = pt(a, b);
            assert_eq!(c(rho).eval(p), c(rho).eval(p.swapped()));
        }
    }
}
