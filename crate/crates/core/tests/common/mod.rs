//! Shared test-only helpers: an independently coded brute-force copy of
//! the and-operation, and deterministic pseudo-random input generation.
//!
//! The oracle deliberately repeats no production code: the square-root
//! term is factored differently, the truncation is an explicit branch
//! ladder over independently computed bounds, and nothing is shared with
//! the crate's evaluation path.

#![allow(dead_code)]

use corrcopula::sampler::{stream_u64, unit_open};

/// Brute-force and-operation: raw estimate plus explicit truncation.
pub fn oracle_copula(rho: f64, a: f64, b: f64) -> f64 {
    let raw = oracle_raw(rho, a, b);
    let lower = if a + b - 1.0 > 0.0 { a + b - 1.0 } else { 0.0 };
    let upper = if a < b { a } else { b };
    if raw < lower {
        if lower > upper {
            upper
        } else {
            lower
        }
    } else if raw > upper {
        upper
    } else {
        raw
    }
}

/// Raw estimate with the square roots taken factor by factor.
pub fn oracle_raw(rho: f64, a: f64, b: f64) -> f64 {
    a * b + rho * (a.sqrt() * (1.0 - a).sqrt() * b.sqrt() * (1.0 - b).sqrt())
}

/// Deterministic pseudo-random scalar in `(0, 1)` for test point
/// generation; `stream` separates independent test suites.
pub fn uniform(stream: u64, index: u64) -> f64 {
    unit_open(stream_u64(stream, index))
}

/// Uniform value in `[lo, hi]`.
pub fn uniform_in(stream: u64, index: u64, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * uniform(stream, index)
}

/// A sequential source of deterministic uniforms.
pub struct UniformSource {
    stream: u64,
    next: u64,
}

impl UniformSource {
    pub fn new(stream: u64) -> Self {
        Self { stream, next: 0 }
    }

    pub fn next_unit(&mut self) -> f64 {
        let v = uniform(self.stream, self.next);
        self.next += 1;
        v
    }

    pub fn next_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_unit()
    }
}
