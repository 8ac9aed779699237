//! Numerical certification that family members are 2-increasing.
//!
//! A copula assigns every axis-aligned rectangle the non-negative mass
//! `C(a_hi,b_hi) + C(a_lo,b_lo) - C(a_hi,b_lo) - C(a_lo,b_hi)`. This
//! module computes those rectangle volumes, sweeps dense uniform grids,
//! and adaptively quadrisects rectangles whose corners straddle region
//! boundaries, mirroring the case split that makes the property provable
//! piece by piece: a cell whose four corners share one region tag is
//! governed by a single closed-form branch and needs no splitting.
//!
//! Volumes are additive over subdivisions, so certifying every leaf
//! certifies the union.

use serde::{Deserialize, Serialize};

use crate::copula::{CorrelationCopula, Rect, UnitPoint};
use crate::error::{Error, Result};

/// A rectangle whose volume fell below `-tolerance`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub rect: Rect,
    pub volume: f64,
}

/// Outcome of a verification scan.
///
/// `violations` is empty exactly when `min_volume >= -tolerance`. The
/// worst cell is reported even on success so regressions in the margin
/// can be tracked. Serializes to JSON with snake_case keys and a
/// `schema_version` field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VolumeReport {
    pub schema_version: u32,
    pub rho_values: Vec<f64>,
    pub grid_n: usize,
    pub min_volume: f64,
    pub worst_cell: Rect,
    pub violations: Vec<Violation>,
    pub tolerance: f64,
}

/// The mass the copula assigns to `r`:
/// `C(a_hi,b_hi) + C(a_lo,b_lo) - C(a_hi,b_lo) - C(a_lo,b_hi)`.
pub fn c_volume(c: CorrelationCopula, r: Rect) -> f64 {
    let [ll, lh, hl, hh] = r.corners();
    c.eval(hh) + c.eval(ll) - c.eval(hl) - c.eval(lh)
}

/// Splits `r` at an interior point and returns the absolute difference
/// between the volume of `r` and the sum over the four sub-rectangles.
///
/// The difference is an algebraic telescoping identity, so anything above
/// a few ulps indicates an evaluation bug.
pub fn additivity_check(
    c: CorrelationCopula,
    r: Rect,
    split_a: f64,
    split_b: f64,
) -> Result<f64> {
    if !(split_a > r.a_lo && split_a < r.a_hi && split_b > r.b_lo && split_b < r.b_hi) {
        return Err(Error::SplitOutsideRect { split_a, split_b });
    }
    let whole = c_volume(c, r);
    let mut parts = 0.0;
    for (alo, ahi) in [(r.a_lo, split_a), (split_a, r.a_hi)] {
        for (blo, bhi) in [(r.b_lo, split_b), (split_b, r.b_hi)] {
            parts += c_volume(c, Rect::new(alo, ahi, blo, bhi)?);
        }
    }
    Ok((whole - parts).abs())
}

/// Accumulates scan results with a deterministic merge: the running
/// minimum keeps the first cell encountered in scan order, and violations
/// are sorted by cell coordinates at the end.
struct ScanState {
    min_volume: f64,
    worst_cell: Rect,
    violations: Vec<Violation>,
    tolerance: f64,
}

impl ScanState {
    fn new(tolerance: f64) -> Self {
        Self {
            min_volume: f64::INFINITY,
            worst_cell: Rect::unit_square(),
            violations: Vec::new(),
            tolerance,
        }
    }

    fn record(&mut self, rect: Rect, volume: f64) {
        if volume < self.min_volume {
            self.min_volume = volume;
            self.worst_cell = rect;
        }
        if volume < -self.tolerance {
            self.violations.push(Violation { rect, volume });
        }
    }

    fn into_report(mut self, rho_values: Vec<f64>, grid_n: usize) -> VolumeReport {
        self.violations.sort_by(|x, y| {
            (x.rect.a_lo, x.rect.b_lo, x.rect.a_hi, x.rect.b_hi).partial_cmp(&(
                y.rect.a_lo,
                y.rect.b_lo,
                y.rect.a_hi,
                y.rect.b_hi,
            ))
            .expect("cell coordinates are never NaN")
        });
        VolumeReport {
            schema_version: 1,
            rho_values,
            grid_n,
            min_volume: self.min_volume,
            worst_cell: self.worst_cell,
            violations: self.violations,
            tolerance: self.tolerance,
        }
    }
}

/// Checks every cell of the `grid_n` x `grid_n` uniform partition of the
/// unit square for every supplied family member.
///
/// Corner values are computed once per grid node and shared between the
/// four adjacent cells, so the scan costs `O(grid_n^2)` evaluations per
/// member. Deterministic for fixed inputs. Cell evaluations are
/// independent, so the scan could be partitioned across workers; the
/// merge (minimum plus coordinate-sorted violations) does not depend on
/// evaluation order.
///
/// # Panics
///
/// Panics if `grid_n < 2` or `tolerance < 0`.
pub fn verify_grid(members: &[CorrelationCopula], grid_n: usize, tolerance: f64) -> VolumeReport {
    assert!(grid_n >= 2, "grid_n must be at least 2");
    assert!(tolerance >= 0.0, "tolerance must be non-negative");
    let nodes: Vec<f64> = (0..=grid_n).map(|i| i as f64 / grid_n as f64).collect();
    let mut state = ScanState::new(tolerance);
    let mut values = vec![0.0f64; (grid_n + 1) * (grid_n + 1)];
    for c in members {
        for (i, &a) in nodes.iter().enumerate() {
            for (j, &b) in nodes.iter().enumerate() {
                values[i * (grid_n + 1) + j] = c.eval(UnitPoint::new(a, b).expect("grid node"));
            }
        }
        let at = |i: usize, j: usize| values[i * (grid_n + 1) + j];
        for i in 0..grid_n {
            for j in 0..grid_n {
                let volume = at(i + 1, j + 1) + at(i, j) - at(i + 1, j) - at(i, j + 1);
                let rect = Rect {
                    a_lo: nodes[i],
                    a_hi: nodes[i + 1],
                    b_lo: nodes[j],
                    b_hi: nodes[j + 1],
                };
                state.record(rect, volume);
            }
        }
    }
    state.into_report(members.iter().map(|c| c.rho()).collect(), grid_n)
}

/// Recursively quadrisects `r` until every leaf has its four corners in a
/// single region (or `max_depth` is reached), checking the volume of each
/// leaf.
///
/// Uniform-corner cells are checked once and not split: on such a cell the
/// copula follows a single closed-form branch. Mixed-corner cells that hit
/// the depth limit are still checked and included in the report rather
/// than treated as fatal.
pub fn subdivide_and_check(
    c: CorrelationCopula,
    r: Rect,
    max_depth: u32,
    tolerance: f64,
) -> VolumeReport {
    assert!(tolerance >= 0.0, "tolerance must be non-negative");
    let mut state = ScanState::new(tolerance);
    subdivide_into(c, r, max_depth, &mut state);
    state.into_report(vec![c.rho()], 1)
}

fn subdivide_into(c: CorrelationCopula, r: Rect, depth: u32, state: &mut ScanState) {
    let regions = r.corners().map(|p| c.classify_region(p));
    let uniform = regions.iter().all(|&t| t == regions[0]);
    if uniform || depth == 0 {
        state.record(r, c_volume(c, r));
        return;
    }
    let mid_a = 0.5 * (r.a_lo + r.a_hi);
    let mid_b = 0.5 * (r.b_lo + r.b_hi);
    // Degenerate rectangles cannot shrink further; check them directly.
    if mid_a <= r.a_lo || mid_a >= r.a_hi || mid_b <= r.b_lo || mid_b >= r.b_hi {
        state.record(r, c_volume(c, r));
        return;
    }
    for (alo, ahi) in [(r.a_lo, mid_a), (mid_a, r.a_hi)] {
        for (blo, bhi) in [(r.b_lo, mid_b), (mid_b, r.b_hi)] {
            let sub = Rect {
                a_lo: alo,
                a_hi: ahi,
                b_lo: blo,
                b_hi: bhi,
            };
            subdivide_into(c, sub, depth - 1, state);
        }
    }
}
