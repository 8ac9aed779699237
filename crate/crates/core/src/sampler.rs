//! Conditional-inverse sampling of dependent uniform pairs, and joint
//! Bernoulli event tables.
//!
//! A pair is drawn by taking `u` uniform, then inverting the conditional
//! CDF `v -> dC/du (u, v)` at a second uniform draw. The conditional CDF
//! is piecewise: the closed-form interior derivative where the raw
//! estimate is active, and 0/1 steps on the clamped sides, where the
//! copula locally equals `min(a, b)` or `max(a+b-1, 0)` and the
//! conditional mass concentrates on the region boundary. Inversion uses
//! bisection, which is unconditionally convergent on monotone functions
//! and lands on the jump abscissa where the conditional CDF jumps.
//!
//! # Randomness
//!
//! All draws come from SplitMix64 used as a counter-based generator: the
//! value at stream position `i` under a seed is the SplitMix64 finalizer
//! applied to `seed + (i+1) * 0x9E3779B97F4A7C15`. Pair `i` consumes
//! positions `2i` and `2i+1` only, so identical `(seed, i)` always yields
//! the identical pair, any index range can be generated independently,
//! and sequences are reproducible across platforms.

use serde::{Deserialize, Serialize};

use crate::copula::{CorrelationCopula, Region, UnitPoint};
use crate::error::{Error, Result};

/// Hard cap on bisection iterations; the bracket reaches one ulp long
/// before this for any tolerance that is representable.
const MAX_BISECTION_ITERS: u32 = 200;

/// Bracket width used by [`sample_pairs`] when inverting the conditional CDF.
pub const SAMPLE_INVERSION_TOL: f64 = 1e-10;

/// Joint probability table of two Bernoulli events with marginals `a`, `b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JointTable {
    pub p11: f64,
    pub p10: f64,
    pub p01: f64,
    pub p00: f64,
}

/// Seeded sampling request.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleConfig {
    pub seed: u64,
    /// Number of pairs to draw; must be at least 1.
    pub count: usize,
}

/// SplitMix64 finalizer.
fn splitmix64_mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The `index`-th output of the SplitMix64 stream keyed by `seed`.
pub fn stream_u64(seed: u64, index: u64) -> u64 {
    const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;
    splitmix64_mix(seed.wrapping_add(index.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)))
}

/// Maps a 64-bit word to the open interval `(0, 1)` on a grid of 2^52
/// cell midpoints, so neither endpoint is ever produced.
pub fn unit_open(x: u64) -> f64 {
    ((x >> 12) as f64 + 0.5) * (1.0 / 4_503_599_627_370_496.0)
}

/// Conditional CDF `t = dC/du (u, v)` of `V` given `U = u`.
///
/// Piecewise in the region of `(u, v)`: the interior closed form, or the
/// constant 0/1 slopes of the clamped branches. Nondecreasing in `v`,
/// with values in `[0, 1]` up to rounding slack.
///
/// Errors on `u` in `{0, 1}`, where no one-sided derivative exists.
pub fn conditional_cdf(c: CorrelationCopula, u: f64, v: f64) -> Result<f64> {
    if u == 0.0 || u == 1.0 {
        return Err(Error::EdgeUndefined { name: "u", value: u });
    }
    let p = UnitPoint::new(u, v)?;
    let t = match c.classify_region(p) {
        Region::Interior => {
            v + c.rho() * (1.0 - 2.0 * u) / (2.0 * (u * (1.0 - u)).sqrt())
                * (v * (1.0 - v)).max(0.0).sqrt()
        }
        // C = min(u, v) locally; slope 1 below the diagonal, 0 above.
        // Exact diagonal points always classify Interior, so u == v is
        // unreachable here.
        Region::UpperClamp => {
            if u < v {
                1.0
            } else {
                0.0
            }
        }
        // C = max(u+v-1, 0) locally; u + v == 1 is likewise unreachable.
        Region::LowerClamp => {
            if u + v > 1.0 {
                1.0
            } else {
                0.0
            }
        }
    };
    debug_assert!(
        (-1e-9..=1.0 + 1e-9).contains(&t),
        "conditional cdf {t} outside [0, 1]"
    );
    Ok(t)
}

/// Generalized inverse of [`conditional_cdf`] in `v` by bisection.
///
/// Returns the midpoint of a bracket of width at most `tol` that spans
/// `t`; where the conditional CDF jumps across `t`, the bracket collapses
/// onto the jump location.
pub fn invert_conditional(c: CorrelationCopula, u: f64, t: f64, tol: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::ProbabilityOutOfRange { name: "t", value: t });
    }
    assert!(tol > 0.0, "tolerance must be positive");
    let mut lo = 0.0f64;
    let mut hi = 1.0f64;
    let mut iterations = 0u32;
    while hi - lo > tol {
        iterations += 1;
        if iterations > MAX_BISECTION_ITERS {
            return Err(Error::BracketStall(MAX_BISECTION_ITERS));
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            // The bracket is down to adjacent floats; it cannot shrink to
            // a sub-ulp tolerance.
            return Err(Error::BracketStall(iterations));
        }
        if conditional_cdf(c, u, mid)? < t {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// The pair at stream index `i`: `u` from position `2i`, the conditional
/// draw from position `2i + 1`.
///
/// `sample_pairs` is exactly the concatenation of `sample_pair_at` over
/// `0..count`, so index ranges can be generated independently (and in
/// parallel) without changing the sequence.
pub fn sample_pair_at(c: CorrelationCopula, seed: u64, i: u64) -> Result<(f64, f64)> {
    let u = unit_open(stream_u64(seed, 2 * i));
    let t = unit_open(stream_u64(seed, 2 * i + 1));
    let v = invert_conditional(c, u, t, SAMPLE_INVERSION_TOL)?;
    Ok((u, v))
}

/// Draws `cfg.count` dependent uniform pairs, deterministically in
/// `cfg.seed`.
///
/// # Panics
///
/// Panics if `cfg.count` is zero.
pub fn sample_pairs(c: CorrelationCopula, cfg: SampleConfig) -> Result<Vec<(f64, f64)>> {
    assert!(cfg.count >= 1, "count must be at least 1");
    (0..cfg.count as u64)
        .map(|i| sample_pair_at(c, cfg.seed, i))
        .collect()
}

/// Joint event table for marginals `(a, b)`: `p11` is the copula value,
/// the rest follow from the marginals, with `-1e-15`-scale rounding
/// residue floored at zero. The Fréchet band guarantees all four entries
/// are non-negative in real arithmetic.
pub fn joint_table(c: CorrelationCopula, p: UnitPoint) -> JointTable {
    let p11 = c.eval(p);
    let p10 = p.a() - p11;
    let p01 = p.b() - p11;
    let p00 = 1.0 - p.a() - p.b() + p11;
    for x in [p10, p01, p00] {
        debug_assert!(x >= -1e-15, "joint table entry {x} below rounding floor");
    }
    JointTable {
        p11: p11.max(0.0),
        p10: p10.max(0.0),
        p01: p01.max(0.0),
        p00: p00.max(0.0),
    }
}
