//! Closed-form scale-space analysis of the monic quartic
//! `x^4 + a x^3 + b x^2 + c x + d`.
//!
//! Everything of interest has an explicit formula. Writing
//! `s = a^3 - 4ab + 8c` (all fractional powers sign-preserving real):
//!
//! - convexity threshold `t* = a^2/16 - b/6`;
//! - merge time `t_u = t* - s^(2/3)/16`, the unique zero of the (monotone)
//!   discriminant of the critical-point cubic — always `t_u <= t*`;
//! - merge abscissa `x(t_u) = (s/64)^(1/3) - a/4`, where a local min/max
//!   pair annihilates;
//! - the surviving critical point at the merge scale,
//!   `x_init = -3a/4 - 2 x(t_u)`, recovered from the `t`-invariant root sum;
//! - confinement zone `[-a/4 - sqrt(3 t*), -a/4 + sqrt(3 t*)]` when
//!   `t* >= 0`.
//!
//! Two quartic-only minimizers fall out: a plain Euler descent from the
//! fixed start `-a/4` (no smoothing needed — the global minimizer is always
//! downhill from the inflection centroid), and the explicit backward Euler
//! iteration on the trajectory equation from `(x_init, t_u)`. The constant
//! coefficient `d` shifts values only and never enters a formula.

use crate::error::{Error, Result};
use crate::polynomial::{solve_cubic, CubicCase, Polynomial};
use serde::Serialize;

/// Which side of `-a/4` holds the global minimizer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    /// Leftmost critical point is the global minimizer (`x_2 > -a/4`).
    Left,
    /// Rightmost critical point is the global minimizer (`x_2 < -a/4`).
    Right,
    /// `x_2 = -a/4`: two symmetric global minimizers with equal values.
    Both,
    /// Fewer than three distinct critical points.
    SingleCritical,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct QuarticReport {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub t_star: f64,
    pub t_u: f64,
    /// Abscissa of the min/max annihilation.
    pub merge_x: f64,
    /// The surviving critical point at `t = t_u`; start of the backward run.
    pub x_init: f64,
    /// Present when `t_star >= 0`.
    pub confinement: Option<(f64, f64)>,
    pub side: Side,
}

fn tol_side(a: f64, b: f64, c: f64, d: f64) -> f64 {
    1e-9 * (1.0 + a.abs().max(b.abs()).max(c.abs()).max(d.abs()))
}

fn poly(a: f64, b: f64, c: f64, d: f64) -> Polynomial {
    Polynomial::new(vec![d, c, b, a, 1.0])
}

/// Full closed-form report for `x^4 + a x^3 + b x^2 + c x + d`.
pub fn analyze(a: f64, b: f64, c: f64, d: f64) -> QuarticReport {
    let s = a.powi(3) - 4.0 * a * b + 8.0 * c;
    let t_star = a * a / 16.0 - b / 6.0;
    let cb = s.cbrt();
    let t_u = t_star - cb * cb / 16.0;
    let merge_x = (s / 64.0).cbrt() - a / 4.0;
    let x_init = -a / 4.0 - 2.0 * (s / 64.0).cbrt();
    let confinement = if t_star >= 0.0 {
        let w = (3.0 * t_star).sqrt();
        Some((-a / 4.0 - w, -a / 4.0 + w))
    } else {
        None
    };
    QuarticReport {
        a,
        b,
        c,
        d,
        t_star,
        t_u,
        merge_x,
        x_init,
        confinement,
        side: global_min_side(a, b, c, d),
    }
}

/// Position test for the global minimizer: with three distinct critical
/// points `x1 < x2 < x3`, the rightmost is global iff `x2 < -a/4`, the
/// leftmost iff `x2 > -a/4`, and both (equal values) iff `x2 = -a/4`.
pub fn global_min_side(a: f64, b: f64, c: f64, d: f64) -> Side {
    let crit = solve_cubic(3.0 * a / 4.0, b / 2.0, c / 4.0).expect("finite coefficients");
    if crit.case != CubicCase::ThreeDistinctReal {
        return Side::SingleCritical;
    }
    let x2 = crit.roots.roots[1].value;
    let gap = x2 + a / 4.0;
    let tol = tol_side(a, b, c, d);
    if gap.abs() <= tol {
        Side::Both
    } else if gap < 0.0 {
        Side::Right
    } else {
        Side::Left
    }
}

/// Euler gradient descent from the fixed start `x = -a/4`, which always
/// reaches a global minimizer of the quartic. In the symmetric case the
/// gradient vanishes at the start; the two global minimizers are then the
/// roots of the quadratic `p'(x) / (4 (x + a/4))`, returned together.
///
/// `step` defaults to `1e-3 / (1 + max|coeff|)`; the returned set is sorted.
pub fn fixed_start_descent(a: f64, b: f64, c: f64, d: f64, step: Option<f64>) -> Result<Vec<f64>> {
    let p = poly(a, b, c, d);
    let dp = p.derivative(1);
    let x0 = -a / 4.0;
    let tol = tol_side(a, b, c, d);
    if dp.eval(x0).abs() <= tol {
        if global_min_side(a, b, c, d) == Side::SingleCritical {
            // -a/4 is itself the unique critical point
            return Ok(vec![x0]);
        }
        // p'(x) = 4(x + a/4)(x^2 + (a/2) x + b/2 - a^2/8)
        let q = Polynomial::new(vec![b / 2.0 - a * a / 8.0, a / 2.0, 1.0]);
        let disc = (a * a / 4.0 - 4.0 * (b / 2.0 - a * a / 8.0))
            .max(0.0)
            .sqrt();
        let r1 = (-a / 2.0 - disc) / 2.0;
        let r2 = (-a / 2.0 + disc) / 2.0;
        debug_assert!(q.eval(r1).abs() <= 1e-6 * q.eval_scale(r1));
        return Ok(vec![r1, r2]);
    }
    let step = step.unwrap_or(1e-3 / (1.0 + p.max_abs_coeff()));
    let mut x = x0;
    let max_iter = 1_000_000;
    let mut converged = false;
    for _ in 0..max_iter {
        if !x.is_finite() {
            return Err(Error::NonConvergence(max_iter));
        }
        let g = dp.eval(x);
        if g.is_finite() && g.abs() <= 1e-10 * dp.eval_scale(x) {
            converged = true;
            break;
        }
        x -= step * g;
    }
    if !converged {
        return Err(Error::NonConvergence(max_iter));
    }
    // Newton polish to tighten the Euler endpoint
    let d2 = p.derivative(2);
    for _ in 0..8 {
        let dd = d2.eval(x);
        if dd <= 0.0 {
            break;
        }
        x -= dp.eval(x) / dd;
    }
    Ok(vec![x])
}

/// Explicit Euler iteration of the trajectory equation
/// `dx/dt = -(12x + 3a) / (12x^2 + 6ax + 2b + 12t)` backward from
/// `(x_init, t_u)` to `t = 0`, polished by Newton on `p'`. Reaches the
/// global minimizer whenever `t_u > 0` and `-a/4` is not critical.
///
/// With a single critical point (`t_u <= 0`) the unique zero of `p'` is
/// returned directly. When `-a/4` is critical the backward start is the
/// degenerate triple merge and the iteration does not apply; the symmetric
/// two-minimizer quadratic of [`fixed_start_descent`] covers that case.
pub fn backward_iteration(a: f64, b: f64, c: f64, d: f64, dt: Option<f64>) -> Result<f64> {
    let p = poly(a, b, c, d);
    let dp = p.derivative(1);
    let report = analyze(a, b, c, d);
    if report.t_u <= 0.0 {
        let crit = solve_cubic(3.0 * a / 4.0, b / 2.0, c / 4.0)?;
        return Ok(crit.roots.roots[0].value);
    }
    if dp.eval(-a / 4.0).abs() <= tol_side(a, b, c, d) {
        return Err(Error::NotApplicable(
            "-a/4 is a critical point; the two global minimizers are the roots of p'(x)/(4(x+a/4))"
                .into(),
        ));
    }
    let dt = dt.unwrap_or(report.t_u / 1e5);
    if dt <= 0.0 {
        return Err(Error::NotApplicable("step must be positive".into()));
    }
    let mut x = report.x_init;
    let mut t = report.t_u;
    while t > 0.0 {
        let h = dt.min(t);
        let denom = 12.0 * x * x + 6.0 * a * x + 2.0 * b + 12.0 * t;
        x += h * (12.0 * x + 3.0 * a) / denom;
        t -= h;
    }
    // Newton polish on p'
    let d2 = p.derivative(2);
    for _ in 0..50 {
        let f = dp.eval(x);
        let dd = d2.eval(x);
        if dd == 0.0 {
            break;
        }
        let step = f / dd;
        x -= step;
        if step.abs() <= f64::EPSILON * (1.0 + x.abs()) {
            break;
        }
    }
    Ok(x)
}

/// Coefficients `(a, b, c)` of the monic quartic `x^4 + ax^3 + bx^2 + cx`
/// whose critical points are exactly `{x1, x2, x3}`:
/// `a = -4/3 (x1+x2+x3)`, `b = 2 (x1x2+x2x3+x3x1)`, `c = -4 x1x2x3`.
pub fn coeffs_from_critical_points(x1: f64, x2: f64, x3: f64) -> (f64, f64, f64) {
    (
        -4.0 / 3.0 * (x1 + x2 + x3),
        2.0 * (x1 * x2 + x2 * x3 + x3 * x1),
        -4.0 * x1 * x2 * x3,
    )
}

/// Value gap between the two local minima of that quartic:
/// `p(x3) - p(x1) = -(x3 - x1)^3 (x1 + x3 - 2 x2) / 3`. Zero exactly in the
/// symmetric (equal-peaks) case `x1 + x3 = 2 x2`.
pub fn value_gap(x1: f64, x2: f64, x3: f64) -> f64 {
    -(x3 - x1).powi(3) * (x1 + x3 - 2.0 * x2) / 3.0
}

/// `t*` and `t_u` expressed through the critical points:
/// `t* = ((x1+x2+x3)/3)^2 - (x1x2+x2x3+x3x1)/3` and
/// `t_u = t* - [(32/27)(2x1-x2-x3)(2x2-x3-x1)(2x3-x1-x2)]^(2/3) / 16`.
pub fn t_times_from_critical_points(x1: f64, x2: f64, x3: f64) -> (f64, f64) {
    let e1 = x1 + x2 + x3;
    let e2 = x1 * x2 + x2 * x3 + x3 * x1;
    let t_star = (e1 / 3.0).powi(2) - e2 / 3.0;
    let prod = (2.0 * x1 - x2 - x3) * (2.0 * x2 - x3 - x1) * (2.0 * x3 - x1 - x2);
    let cb = (32.0 / 27.0 * prod).cbrt();
    (t_star, t_star - cb * cb / 16.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::brute_force_min;

    const T_U4: f64 = 2.358_411_166_387_220_7; // 7 - 640^(2/3)/16
    const MERGE_X4: f64 = -0.154_434_690_031_883_81; // 2 - 10^(1/3)

    #[test]
    fn analyze_asymmetric_example() {
        let r = analyze(-8.0, -18.0, 56.0, 0.0);
        assert_eq!(r.t_star, 7.0);
        assert!((r.t_u - T_U4).abs() < 1e-12);
        assert!((r.merge_x - MERGE_X4).abs() < 1e-12);
        assert!((r.x_init - 6.308_869_380_063_768).abs() < 1e-12);
        let (lo, hi) = r.confinement.unwrap();
        assert!((lo - (2.0 - 21f64.sqrt())).abs() < 1e-12);
        assert!((hi - (2.0 + 21f64.sqrt())).abs() < 1e-12);
        assert_eq!(r.side, Side::Right);
    }

    #[test]
    fn analyze_symmetric_example() {
        // a^3 - 4ab + 8c = -64 - 32 + 96 = 0, so t* = t_u and the merge sits
        // at -a/4
        let r = analyze(-4.0, -2.0, 12.0, 0.0);
        assert!((r.t_star - 4.0 / 3.0).abs() < 1e-15);
        assert!((r.t_u - 4.0 / 3.0).abs() < 1e-15);
        assert!((r.merge_x - 1.0).abs() < 1e-15);
        assert_eq!(r.side, Side::Both);
    }

    #[test]
    fn analyze_pure_power() {
        let r = analyze(0.0, 0.0, 0.0, 0.0);
        assert_eq!(r.t_star, 0.0);
        assert_eq!(r.t_u, 0.0);
        assert_eq!(r.side, Side::SingleCritical);
        assert_eq!(r.confinement, Some((0.0, 0.0)));
    }

    #[test]
    fn side_examples() {
        assert_eq!(global_min_side(-8.0, -18.0, 56.0, 0.0), Side::Right);
        assert_eq!(global_min_side(-4.0, -2.0, 12.0, 0.0), Side::Both);
        assert_eq!(
            global_min_side(0.2114, -2.6841, -0.1110, 1.2406),
            Side::Left
        );
    }

    #[test]
    fn descent_examples() {
        let r = fixed_start_descent(-8.0, -18.0, 56.0, 0.0, None).unwrap();
        assert_eq!(r.len(), 1);
        assert!((r[0] - 7.0).abs() < 1e-6);

        let r = fixed_start_descent(0.2114, -2.6841, -0.1110, 1.2406, None).unwrap();
        assert_eq!(r.len(), 1);
        assert!((r[0] + 1.2307).abs() < 1e-3);

        let r = fixed_start_descent(-4.0, -2.0, 12.0, 0.0, None).unwrap();
        assert_eq!(r.len(), 2);
        assert!((r[0] + 1.0).abs() < 1e-12);
        assert!((r[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn backward_iteration_examples() {
        let x = backward_iteration(-8.0, -18.0, 56.0, 0.0, None).unwrap();
        assert!((x - 7.0).abs() < 1e-5, "{x}");

        let x = backward_iteration(0.2114, -2.6841, -0.1110, 1.2406, None).unwrap();
        assert!((x + 1.2307).abs() < 1e-3, "{x}");

        // x^4 + x has t_u < 0; fall back to the unique zero of 4x^3 + 1
        let x = backward_iteration(0.0, 0.0, 1.0, 0.0, None).unwrap();
        assert!((x - (-0.25f64).cbrt()).abs() < 1e-12);

        assert!(matches!(
            backward_iteration(-4.0, -2.0, 12.0, 0.0, None),
            Err(Error::NotApplicable(_))
        ));
    }

    #[test]
    fn oversized_step_reported() {
        assert!(matches!(
            fixed_start_descent(-8.0, -18.0, 56.0, 0.0, Some(10.0)),
            Err(Error::NonConvergence(_))
        ));
    }

    #[test]
    fn critical_point_reconstruction() {
        assert_eq!(
            coeffs_from_critical_points(-2.0, 1.0, 7.0),
            (-8.0, -18.0, 56.0)
        );
        assert_eq!(
            coeffs_from_critical_points(-1.0, 1.0, 3.0),
            (-4.0, -2.0, 12.0)
        );
        assert_eq!(coeffs_from_critical_points(0.0, 0.0, 0.0), (0.0, 0.0, 0.0));
    }

    #[test]
    fn value_gap_examples() {
        assert_eq!(value_gap(-2.0, 1.0, 7.0), -729.0);
        // cross-check against direct evaluation: p(7) - p(-2) = -833 + 104
        let p = poly(-8.0, -18.0, 56.0, 0.0);
        assert_eq!(p.eval(7.0) - p.eval(-2.0), -729.0);
        assert_eq!(value_gap(-1.0, 1.0, 3.0), 0.0);
        assert_eq!(value_gap(0.0, 1.0, 2.0), 0.0);
    }

    #[test]
    fn t_times_from_roots_examples() {
        let (ts, tu) = t_times_from_critical_points(-2.0, 1.0, 7.0);
        assert!((ts - 7.0).abs() < 1e-12);
        assert!((tu - T_U4).abs() < 1e-12);

        let (ts, tu) = t_times_from_critical_points(-1.0, 1.0, 3.0);
        assert!((ts - 4.0 / 3.0).abs() < 1e-15);
        assert!((tu - 4.0 / 3.0).abs() < 1e-15);

        let (ts, tu) = t_times_from_critical_points(0.0, 0.0, 0.0);
        assert_eq!((ts, tu), (0.0, 0.0));
    }

    #[test]
    fn descent_agrees_with_oracle_on_example_pair() {
        for (a, b, c, d) in [(-8.0, -18.0, 56.0, 0.0), (0.2114, -2.6841, -0.1110, 1.2406)] {
            let got = fixed_start_descent(a, b, c, d, None).unwrap();
            let oracle = brute_force_min(&poly(a, b, c, d)).unwrap();
            assert_eq!(got.len(), oracle.minimizers.len());
            for (g, o) in got.iter().zip(&oracle.minimizers) {
                assert!((g - o).abs() < 1e-6);
            }
        }
    }
}
