//! Ground-truth global minimization by exhaustive critical-point
//! enumeration. Every other method in this crate is checked against it.

use crate::error::{Error, Result};
use crate::polynomial::{real_roots, Polynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum CriticalKind {
    Min,
    Max,
    /// Critical point where the first nonvanishing higher derivative has odd
    /// order (a horizontal inflection).
    InflectionCritical,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct CriticalPoint {
    pub x: f64,
    pub value: f64,
    pub kind: CriticalKind,
}

/// Exhaustive critical-point table with the set of global minimizers.
/// Ties within `1e-9 * (1 + |value|)` are all reported; a symmetric
/// double-well legitimately has two.
#[derive(Debug, Clone, serde::Serialize)]
pub struct OracleResult {
    pub minimizers: Vec<f64>,
    pub value: f64,
    pub critical_points: Vec<CriticalPoint>,
}

/// Classifies and evaluates every real critical point, then selects the
/// global minimum set. Requires even degree >= 2 with positive leading
/// coefficient (otherwise the polynomial is unbounded below).
pub fn brute_force_min(p: &Polynomial) -> Result<OracleResult> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = p.degree();
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::OddDegree(n));
    }
    if p.leading() <= 0.0 {
        return Err(Error::NegativeLeading(p.leading()));
    }
    let dp = p.derivative(1);
    let crit = real_roots(&dp, 1e-12)?;
    let mut critical_points = Vec::with_capacity(crit.roots.len());
    for r in &crit.roots {
        let x = r.value;
        let mut kind = CriticalKind::InflectionCritical;
        for order in 2..=n {
            let d = p.derivative(order);
            let v = d.eval(x);
            if v.abs() > 1e-9 * d.eval_scale(x) {
                kind = if order.is_multiple_of(2) {
                    if v > 0.0 {
                        CriticalKind::Min
                    } else {
                        CriticalKind::Max
                    }
                } else {
                    CriticalKind::InflectionCritical
                };
                break;
            }
        }
        critical_points.push(CriticalPoint {
            x,
            value: p.eval(x),
            kind,
        });
    }
    let value = critical_points
        .iter()
        .map(|c| c.value)
        .fold(f64::INFINITY, f64::min);
    let tie_tol = 1e-9 * (1.0 + value.abs());
    let minimizers: Vec<f64> = critical_points
        .iter()
        .filter(|c| c.value <= value + tie_tol)
        .map(|c| c.x)
        .collect();
    Ok(OracleResult {
        minimizers,
        value,
        critical_points,
    })
}

/// Default distance for accepting a candidate minimizer as matching the
/// oracle.
pub const MATCH_TOL: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Verify {
    Match,
    Mismatch { distance: f64 },
}

/// Checks a candidate minimizer against the oracle set within [`MATCH_TOL`].
pub fn verify_method(p: &Polynomial, candidate: f64) -> Result<Verify> {
    let oracle = brute_force_min(p)?;
    let distance = oracle
        .minimizers
        .iter()
        .map(|m| (m - candidate).abs())
        .fold(f64::INFINITY, f64::min);
    Ok(if distance <= MATCH_TOL {
        Verify::Match
    } else {
        Verify::Mismatch { distance }
    })
}
