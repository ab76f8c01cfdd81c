//! The basic algebra on the real unit interval with `n(x) = sqrt(1 - x^2)`,
//! `x*y = x` for `y = 1` and `x*y = max(y - n(x), 0)` otherwise.
//!
//! It is monotone but has no right residuum: for `0 < x < 1` and
//! `y = 1 - n(x)` the set `{z : x*z <= y}` is `[0, 1)`.
//!
//! Grid checks are evidence, not proofs.

use std::fmt;
use thiserror::Error;

pub const TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum ContinuumError {
    #[error("argument {0} is outside [0, 1]")]
    Domain(f64),
    #[error("x = {0} must lie strictly between 0 and 1")]
    Degenerate(f64),
    #[error("grid step {0} must lie strictly between 0 and 1")]
    Step(f64),
    #[error("{op} takes {expected} argument(s), got {got}")]
    Arity { op: UaOp, expected: usize, got: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UaOp {
    Neg,
    Mult,
    Oplus,
}

impl fmt::Display for UaOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UaOp::Neg => "neg",
            UaOp::Mult => "mult",
            UaOp::Oplus => "oplus",
        })
    }
}

fn check(x: f64) -> Result<f64, ContinuumError> {
    if (0.0..=1.0).contains(&x) {
        Ok(x)
    } else {
        Err(ContinuumError::Domain(x))
    }
}

#[inline]
fn neg(x: f64) -> f64 {
    (1.0 - x * x).max(0.0).sqrt()
}

#[inline]
fn mult(x: f64, y: f64) -> f64 {
    if y == 1.0 {
        x
    } else {
        (y - neg(x)).max(0.0)
    }
}

#[inline]
fn oplus(x: f64, y: f64) -> f64 {
    neg(mult(neg(x), neg(y)))
}

pub fn ua_neg(x: f64) -> Result<f64, ContinuumError> {
    Ok(neg(check(x)?))
}

pub fn ua_mult(x: f64, y: f64) -> Result<f64, ContinuumError> {
    Ok(mult(check(x)?, check(y)?))
}

pub fn ua_oplus(x: f64, y: f64) -> Result<f64, ContinuumError> {
    Ok(oplus(check(x)?, check(y)?))
}

pub fn ua_eval(op: UaOp, args: &[f64]) -> Result<f64, ContinuumError> {
    let expected = if op == UaOp::Neg { 1 } else { 2 };
    if args.len() != expected {
        return Err(ContinuumError::Arity {
            op,
            expected,
            got: args.len(),
        });
    }
    match op {
        UaOp::Neg => ua_neg(args[0]),
        UaOp::Mult => ua_mult(args[0], args[1]),
        UaOp::Oplus => ua_oplus(args[0], args[1]),
    }
}

/// `0, step, 2 step, ...` up to and including `1`.
pub fn grid(step: f64) -> Result<Vec<f64>, ContinuumError> {
    if !(step > 0.0 && step < 1.0) {
        return Err(ContinuumError::Step(step));
    }
    let k = (1.0 / step).round() as usize;
    let mut pts: Vec<f64> = (0..=k).map(|i| (i as f64 * step).min(1.0)).collect();
    if (1.0 / step - k as f64).abs() > 1e-9 {
        pts.retain(|&p| p < 1.0);
        pts.push(1.0);
    }
    *pts.last_mut().expect("nonempty grid") = 1.0;
    Ok(pts)
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneReport {
    pub points: usize,
    pub triples: usize,
    /// Largest `z*x - z*y` over grid triples with `x <= y`.
    pub max_violation: f64,
    /// Triples where that difference exceeds [`TOLERANCE`].
    pub violations: usize,
    pub worst: Option<(f64, f64, f64)>,
}

fn monotone_on(pts: &[f64]) -> MonotoneReport {
    let mut report = MonotoneReport {
        points: pts.len(),
        triples: 0,
        max_violation: 0.0,
        violations: 0,
        worst: None,
    };
    for (i, &x) in pts.iter().enumerate() {
        for &y in &pts[i..] {
            for &z in pts {
                report.triples += 1;
                let d = mult(z, x) - mult(z, y);
                if d > report.max_violation {
                    report.max_violation = d;
                    report.worst = Some((x, y, z));
                }
                if d > TOLERANCE {
                    report.violations += 1;
                }
            }
        }
    }
    report
}

/// Checks `x <= y => z*x <= z*y` on all grid triples.
pub fn check_monotone_grid(step: f64) -> Result<MonotoneReport, ContinuumError> {
    Ok(monotone_on(&grid(step)?))
}

/// Largest `|n(n(x)) - x|` over the grid.
pub fn involution_error(step: f64) -> Result<f64, ContinuumError> {
    Ok(grid(step)?.into_iter().map(|x| (neg(neg(x)) - x).abs()).fold(0.0, f64::max))
}

#[derive(Debug, Clone, PartialEq)]
pub struct NoResiduumWitness {
    pub x: f64,
    /// `1 - n(x)`.
    pub y: f64,
    /// `x*1`, equal to `x` and strictly above `y`.
    pub x_times_one: f64,
    /// Number of sampled `z < 1`.
    pub samples: usize,
    /// Largest `x*z - y` over the samples.
    pub max_excess: f64,
}

impl NoResiduumWitness {
    /// `x*1 > y` and `x*z <= y` (within [`TOLERANCE`]) at every sample.
    pub fn is_valid(&self) -> bool {
        self.x_times_one > self.y && self.max_excess <= TOLERANCE
    }
}

/// Certifies that `{z : x*z <= 1 - n(x)}` contains the sampled `z < 1` but not
/// `1`, so it has no greatest element. Samples are the grid of `step` below 1
/// together with `1 - 2^-k` for `k = 1..=52`.
pub fn witness_no_right_residuum(x: f64, step: f64) -> Result<NoResiduumWitness, ContinuumError> {
    check(x)?;
    if x == 0.0 || x == 1.0 {
        return Err(ContinuumError::Degenerate(x));
    }
    let y = 1.0 - neg(x);
    let mut zs: Vec<f64> = grid(step)?.into_iter().filter(|&z| z < 1.0).collect();
    zs.extend((1..=52).map(|k| 1.0 - (0.5f64).powi(k)));
    let max_excess = zs.iter().map(|&z| mult(x, z) - y).fold(f64::NEG_INFINITY, f64::max);
    Ok(NoResiduumWitness {
        x,
        y,
        x_times_one: mult(x, 1.0),
        samples: zs.len(),
        max_excess,
    })
}

/// A grid triple where `+` is not associative beyond [`TOLERANCE`].
pub fn find_nonassociative_triple(step: f64) -> Result<Option<(f64, f64, f64)>, ContinuumError> {
    let pts = grid(step)?;
    for &x in &pts {
        for &y in &pts {
            for &z in &pts {
                if (oplus(oplus(x, y), z) - oplus(x, oplus(y, z))).abs() > TOLERANCE {
                    return Ok(Some((x, y, z)));
                }
            }
        }
    }
    Ok(None)
}
