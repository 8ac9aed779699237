//! Closed-form curves separating the interior region from the clamped
//! regions.
//!
//! For `rho > 0` only the upper clamp can fire; the separating curve on
//! the `a <= b` side is `b = a / (a + rho^2 (1-a))`, and the `b <= a` side
//! follows from the symmetry of the raw estimate under swapping `a` and
//! `b`. For `rho < 0` only the lower clamp can fire, and the interior is
//! the band between two curves, one below the anti-diagonal `a + b = 1`
//! and one above it. For `rho = 0` the raw estimate is the product, which
//! never leaves the Fréchet band, so the interior covers the whole square.
//!
//! [`interior_band`] is the single source of truth for region geometry in
//! tests; [`crate::CorrelationCopula::classify_region`] is the single
//! source of truth at runtime. An agreement test ties the two together.

use crate::copula::CorrelationCopula;
use crate::error::{Error, Result};

/// The interior slice `{b : b_lo <= b <= b_hi}` at a fixed abscissa `a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InteriorBand {
    pub b_lo: f64,
    pub b_hi: f64,
}

impl InteriorBand {
    /// Whether `b` lies in the band (bounds included).
    pub fn contains(self, b: f64) -> bool {
        self.b_lo <= b && b <= self.b_hi
    }
}

fn check_probability(name: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::ProbabilityOutOfRange { name, value })
    }
}

/// For `rho > 0`: the ordinate where the raw estimate meets `min(a, b)`
/// on the `a <= b` side, `b = a / (a + rho^2 (1-a))`.
///
/// At that ordinate the raw estimate equals the upper Fréchet bound; above
/// it the point is upper-clamped. The curve passes through `(0, 0)` and
/// `(1, 1)`, stays on or above the diagonal, and increases in `a`. For
/// `rho = 1` it degenerates to the diagonal `b = a`.
pub fn upper_boundary_pos_rho(c: CorrelationCopula, a: f64) -> Result<f64> {
    if c.rho() <= 0.0 {
        return Err(Error::WrongRhoSign {
            expected: "positive",
            rho: c.rho(),
        });
    }
    check_probability("a", a)?;
    let r2 = c.rho() * c.rho();
    Ok(a / (a + r2 * (1.0 - a)))
}

/// For `rho < 0`: the curve where the raw estimate reaches zero,
/// `b = rho^2 (1-a) / (rho^2 (1-a) + a)`.
///
/// Below it the raw estimate is negative and the point is lower-clamped.
/// The curve lies in `a + b <= 1` and decreases in `a`; at `rho = -1` it
/// is the anti-diagonal `b = 1 - a`. Endpoints take the algebraic limit
/// values `b(0) = 1` and `b(1) = 0`.
pub fn lower_boundary_neg_rho(c: CorrelationCopula, a: f64) -> Result<f64> {
    if c.rho() >= 0.0 {
        return Err(Error::WrongRhoSign {
            expected: "negative",
            rho: c.rho(),
        });
    }
    check_probability("a", a)?;
    let r2 = c.rho() * c.rho();
    Ok(r2 * (1.0 - a) / (r2 * (1.0 - a) + a))
}

/// For `rho < 0`: the curve where the raw estimate reaches `a + b - 1`,
/// `b = (1-a) / (rho^2 a + (1-a))`.
///
/// Above it the point is lower-clamped. The curve lies in `a + b >= 1`
/// and decreases in `a`; at `rho = -1` it coincides with
/// [`lower_boundary_neg_rho`] on the anti-diagonal.
pub fn upper_boundary_neg_rho(c: CorrelationCopula, a: f64) -> Result<f64> {
    if c.rho() >= 0.0 {
        return Err(Error::WrongRhoSign {
            expected: "negative",
            rho: c.rho(),
        });
    }
    check_probability("a", a)?;
    let r2 = c.rho() * c.rho();
    Ok((1.0 - a) / (r2 * a + (1.0 - a)))
}

/// The interior slice at abscissa `a` for any `rho`.
///
/// For `rho > 0` the lower edge is the reflection of
/// [`upper_boundary_pos_rho`] through the diagonal,
/// `b = rho^2 a / (1 - a + rho^2 a)`; for `rho = 0` the band is the whole
/// interval `[0, 1]`.
pub fn interior_band(c: CorrelationCopula, a: f64) -> Result<InteriorBand> {
    check_probability("a", a)?;
    let rho = c.rho();
    let band = if rho == 0.0 {
        InteriorBand { b_lo: 0.0, b_hi: 1.0 }
    } else if rho > 0.0 {
        let r2 = rho * rho;
        InteriorBand {
            b_lo: r2 * a / (1.0 - a + r2 * a),
            b_hi: upper_boundary_pos_rho(c, a)?,
        }
    } else {
        InteriorBand {
            b_lo: lower_boundary_neg_rho(c, a)?,
            b_hi: upper_boundary_neg_rho(c, a)?,
        }
    };
    debug_assert!(band.b_lo <= band.b_hi);
    Ok(band)
}
