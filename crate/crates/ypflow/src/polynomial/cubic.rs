//! Closed-form real solution of the cubic `x^3 + a x^2 + b x + g = 0` and
//! the Newton power-sum identities used to cross-check it.
//!
//! The case split runs on the reduced discriminant
//! `delta = g'^2/4 + f^3/27` with `f = b - a^2/3` and
//! `g' = 2a^3/27 - a b/3 + g`: negative means three distinct real roots
//! (trigonometric form), zero a repeated real root, positive a single real
//! root. Cube roots of negative reals are taken sign-preserving throughout.

use super::roots::{RealRoot, RootSet};
use crate::error::Result;

/// Sign of the reduced cubic discriminant, which fixes the real-root
/// structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum CubicCase {
    /// `delta < 0`: three distinct real roots.
    ThreeDistinctReal,
    /// `delta = 0`: a repeated real root (double, or triple when also f = 0).
    RepeatedReal,
    /// `delta > 0`: one real root and a complex pair.
    OneReal,
}

/// Result of [`solve_cubic`]: the real roots plus the discriminant case tag.
#[derive(Debug, Clone)]
pub struct CubicRoots {
    pub roots: RootSet,
    pub case: CubicCase,
    pub delta: f64,
}

/// Real roots of `x^3 + alpha x^2 + beta x + gamma = 0`.
pub fn solve_cubic(alpha: f64, beta: f64, gamma: f64) -> Result<CubicRoots> {
    let f = beta - alpha * alpha / 3.0;
    let g = 2.0 * alpha.powi(3) / 27.0 - alpha * beta / 3.0 + gamma;
    let delta = g * g / 4.0 + f.powi(3) / 27.0;
    let scale = g * g / 4.0 + (f.abs().powi(3)) / 27.0;
    let tol = 1e-12 * (1.0 + scale);
    let shift = -alpha / 3.0;

    // one Newton correction on the monic cubic recovers the digits the
    // trigonometric/radical forms lose near a repeated root
    let refine = |x: f64| -> f64 {
        let mut x = x;
        for _ in 0..3 {
            let fx = ((x + alpha) * x + beta) * x + gamma;
            let dx = (3.0 * x + 2.0 * alpha) * x + beta;
            if dx == 0.0 {
                break;
            }
            let step = fx / dx;
            if !step.is_finite() || step.abs() > 1.0 {
                break;
            }
            x -= step;
        }
        x
    };

    let (mut vals, case): (Vec<RealRoot>, CubicCase) = if delta < -tol {
        // three distinct real roots; delta < 0 forces f < 0
        let s = (-f).sqrt();
        let theta = ((3.0 * 3f64.sqrt() * g) / (2.0 * s.powi(3)))
            .clamp(-1.0, 1.0)
            .asin()
            / 3.0;
        let amp = 2.0 / 3f64.sqrt() * s;
        let r1 = refine(amp * theta.sin() + shift);
        let r2 = refine(-amp * (theta + std::f64::consts::PI / 3.0).sin() + shift);
        let r3 = refine(amp * (theta + std::f64::consts::PI / 6.0).cos() + shift);
        (
            vec![
                RealRoot {
                    value: r1,
                    multiplicity: 1,
                },
                RealRoot {
                    value: r2,
                    multiplicity: 1,
                },
                RealRoot {
                    value: r3,
                    multiplicity: 1,
                },
            ],
            CubicCase::ThreeDistinctReal,
        )
    } else if delta > tol {
        let sq = delta.sqrt();
        let x = refine((-g / 2.0 + sq).cbrt() + (-g / 2.0 - sq).cbrt() + shift);
        (
            vec![RealRoot {
                value: x,
                multiplicity: 1,
            }],
            CubicCase::OneReal,
        )
    } else {
        // repeated root; when f = g = 0 the two values coincide and the
        // dedup pass below accumulates them into a triple
        let c = (g / 2.0).cbrt();
        let single = -2.0 * c + shift;
        let double = c + shift;
        (
            vec![
                RealRoot {
                    value: single,
                    multiplicity: 1,
                },
                RealRoot {
                    value: double,
                    multiplicity: 2,
                },
            ],
            CubicCase::RepeatedReal,
        )
    };

    vals.sort_by(|u, v| u.value.total_cmp(&v.value));
    vals.dedup_by(|u, v| {
        if (u.value - v.value).abs() <= 1e-12 * (1.0 + v.value.abs()) {
            v.multiplicity += u.multiplicity;
            true
        } else {
            false
        }
    });
    Ok(CubicRoots {
        roots: RootSet { roots: vals },
        case,
        delta,
    })
}

/// Elementary symmetric functions and power sums of three numbers.
///
/// For roots of `x^3 + alpha x^2 + beta x + gamma`, these satisfy
/// `e1 = -alpha`, `e2 = beta`, `e3 = -gamma`, `p2 = alpha^2 - 2 beta`,
/// `p3 = -alpha^3 + 3 alpha beta - 3 gamma` and
/// `p4 = alpha^4 - 4 alpha^2 beta + 4 alpha gamma + 2 beta^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerSums {
    pub e1: f64,
    pub e2: f64,
    pub e3: f64,
    pub p2: f64,
    pub p3: f64,
    pub p4: f64,
}

pub fn power_sums_check(x1: f64, x2: f64, x3: f64) -> PowerSums {
    PowerSums {
        e1: x1 + x2 + x3,
        e2: x1 * x2 + x2 * x3 + x3 * x1,
        e3: x1 * x2 * x3,
        p2: x1 * x1 + x2 * x2 + x3 * x3,
        p3: x1.powi(3) + x2.powi(3) + x3.powi(3),
        p4: x1.powi(4) + x2.powi(4) + x3.powi(4),
    }
}
