//! Degree-6 specialization: depression of the `x^5` term, the explicit
//! merge-time discriminant, and recovery of the merge abscissa.
//!
//! For the depressed sextic `x^6 + b x^4 + c x^3 + d x^2 + e x + f`, the
//! second derivative of the evolution is (up to the factor 30) the
//! depressed quartic with
//!
//! ```text
//! beta = 2b/5 + 6t,  gamma = c/5,  delta = d/15 + 2bt/5 + 3t^2
//! ```
//!
//! so merge scales are the zeros of its discriminant `delta6(t)`, a degree-6
//! polynomial in `t` whose coefficients are tabulated here in closed form
//! (only `b`, `c`, `d` enter). The same polynomial arises as the resultant
//! of the second and third derivatives; the two routes are cross-validated
//! on every analysis. At a merge scale the double-root abscissa follows
//! from two Euclidean reductions of the quartic/cubic pair:
//!
//! ```text
//! x(t) = -c (1800 t'^2 - 4h) / (36000 t'^3 + 80 h t' + 45 c^2),
//! t' = t + b/15,  h = b^2 - 5d
//! ```
//!
//! which degenerates when `c = 0`; the common-root extraction then falls
//! back to the generic fingerprint machinery.

use crate::error::{Error, Result};
use crate::fingerprint::{fp2_fp3_intersections, MergeKind};
use crate::heat::evolve_symbolic;
use crate::polynomial::{
    classify_depressed_quartic_with_tol, real_roots, resultant_in_t, DoubleRootClass, Polynomial,
};
use serde::Serialize;

/// A monic sextic with the `x^5` term removed by `x -> x + shift`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SexticForm {
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub f: f64,
    /// The substitution applied: `depressed(x) = p(x + shift)`.
    pub shift: f64,
}

impl SexticForm {
    pub fn polynomial(&self) -> Polynomial {
        Polynomial::new(vec![self.f, self.e, self.d, self.c, self.b, 0.0, 1.0])
    }

    /// Undoes the depression: `reconstruct()(x) = depressed(x - shift)`.
    pub fn reconstruct(&self) -> Polynomial {
        self.polynomial().taylor_shift(-self.shift)
    }
}

/// Removes the `x^5` term of a degree-6 polynomial (normalizing to monic
/// first) with the shift `-(coefficient of x^5)/6`.
pub fn depress(p: &Polynomial) -> Result<SexticForm> {
    if p.degree() != 6 {
        return Err(Error::WrongDegree {
            expected: 6,
            got: p.degree(),
        });
    }
    let m = p.monic();
    let shift = -m.coeff(5) / 6.0 + 0.0; // canonical zero, not -0
    let dep = m.taylor_shift(shift);
    debug_assert!(dep.coeff(5).abs() <= 1e-9 * (1.0 + dep.max_abs_coeff()));
    Ok(SexticForm {
        b: dep.coeff(4),
        c: dep.coeff(3),
        d: dep.coeff(2),
        e: dep.coeff(1),
        f: dep.coeff(0),
        shift,
    })
}

/// The merge-time discriminant `delta6(t)` of the depressed sextic, from
/// the closed-form coefficient table. Its nonnegative real zeros are the
/// candidate scales where the second derivative acquires a double root.
pub fn delta_t(b: f64, c: f64, d: f64) -> Polynomial {
    let c0 = 27648.0;
    let c1 = 55296.0 * b / 5.0;
    let c2 = 9216.0 * b * b / 5.0;
    let c3 = (4096.0 * b.powi(3) + 1728.0 * c * c) / 25.0;
    let c4 = 4864.0 * b.powi(4) / 625.0 + (512.0 * d * b * b + 1728.0 * b * c * c) / 125.0
        - 256.0 * d * d / 25.0;
    let c5 = 32.0 * (b * b + 5.0 * d) * (48.0 * b.powi(3) - 80.0 * d * b + 135.0 * c * c) / 9375.0;
    let c6 = 256.0 * b.powi(4) * d / 9375.0
        - 32.0 * b.powi(3) * c * c / 3125.0
        - 512.0 * b * b * d * d / 5625.0
        + 96.0 * b * c * c * d / 625.0
        - 27.0 * c.powi(4) / 625.0
        + 256.0 * d.powi(3) / 3375.0;
    Polynomial::new(vec![c6, c5, c4, c3, c2, c1, c0])
}

/// The same discriminant computed as the resultant in `t` of the second and
/// third derivatives of the evolution, normalized to the table's leading
/// coefficient.
pub fn delta_t_via_resultant(b: f64, c: f64, d: f64) -> Result<Polynomial> {
    let p = SexticForm {
        b,
        c,
        d,
        e: 0.0,
        f: 0.0,
        shift: 0.0,
    }
    .polynomial();
    let sym = evolve_symbolic(&p).sym().clone();
    let res = resultant_in_t(&sym.derivative_x(2), &sym.derivative_x(3))?;
    if res.is_zero() || res.degree() == 0 {
        return Ok(res);
    }
    Ok(res.scale(27648.0 / res.leading()))
}

/// Asserts that the coefficient table and the generic resultant agree (up
/// to normalization) for these parameters.
pub fn validate_delta(b: f64, c: f64, d: f64) -> Result<()> {
    let table = delta_t(b, c, d);
    let generic = delta_t_via_resultant(b, c, d)?;
    let scale = table.max_abs_coeff().max(1.0);
    for k in 0..=6 {
        let diff = (table.coeff(k) - generic.coeff(k)).abs();
        if diff > 1e-8 * scale {
            return Err(Error::ConsistencyViolation(format!(
                "merge discriminant mismatch at t^{k}: table {} vs resultant {}",
                table.coeff(k),
                generic.coeff(k)
            )));
        }
    }
    Ok(())
}

/// Double-root abscissa of the second derivative at a merge scale `t`.
pub fn x_of_t(b: f64, c: f64, d: f64, t: f64) -> Result<f64> {
    let tp = t + b / 15.0;
    let h = b * b - 5.0 * d;
    let num = -c * (1800.0 * tp * tp - 4.0 * h);
    let den = 36000.0 * tp.powi(3) + 80.0 * h * tp + 45.0 * c * c;
    let den_scale = 36000.0 * tp.abs().powi(3) + 80.0 * h.abs() * tp.abs() + 45.0 * c * c;
    if den.abs() <= 1e-12 * (den_scale + f64::MIN_POSITIVE) {
        return Err(Error::DegenerateDenominator(t));
    }
    Ok(num / den)
}

/// Root structure of the second-derivative quartic at a merge scale,
/// delegated to the depressed-quartic classifier after the substitution
/// above. `t` is polished onto the nearest discriminant zero first; a `t`
/// that is not near a zero at all is rejected.
pub fn merge_case(b: f64, c: f64, d: f64, t: f64) -> Result<DoubleRootClass> {
    let delta = delta_t(b, c, d);
    // homogeneous term-magnitude scale (the coefficients here are tiny, so
    // an absolute floor would swamp the residual)
    let scale = delta.eval_scale(t) - 1.0 + f64::MIN_POSITIVE;
    let residual = delta.eval(t).abs() / scale;
    let t_polished = polish_on(&delta, t);
    if residual > 1e-2 || (t_polished - t).abs() > 1e-3 * (1.0 + t.abs()) {
        return Err(Error::NotAMergeTime { t, residual });
    }
    let (beta, gamma, dlt) = substitution(b, c, d, t_polished);
    Ok(classify_depressed_quartic_with_tol(beta, gamma, dlt, 1e-6))
}

fn substitution(b: f64, c: f64, d: f64, t: f64) -> (f64, f64, f64) {
    (
        2.0 * b / 5.0 + 6.0 * t,
        c / 5.0,
        d / 15.0 + 2.0 * b * t / 5.0 + 3.0 * t * t,
    )
}

fn polish_on(q: &Polynomial, t0: f64) -> f64 {
    let dq = q.derivative(1);
    let mut t = t0;
    for _ in 0..30 {
        let f = q.eval(t);
        let d = dq.eval(t);
        if d == 0.0 {
            break;
        }
        let step = f / d;
        t -= step;
        if step.abs() <= f64::EPSILON * (1.0 + t.abs()) {
            break;
        }
    }
    if q.eval(t).abs() <= q.eval(t0).abs() {
        t
    } else {
        t0
    }
}

/// One confirmed merge of the second-derivative zero curves.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SexticMerge {
    pub t: f64,
    pub x: f64,
    pub case: DoubleRootClass,
    /// Set when the discriminant zero has multiplicity > 1 (coincident
    /// merge scales deduplicated into one entry).
    pub degenerate: bool,
}

/// Full merge structure of a depressed sextic: nonnegative discriminant
/// zeros with their double-root abscissas and case tags, plus any negative
/// zeros kept for diagnostics. The table/resultant cross-validation runs
/// first.
pub fn merge_structure(b: f64, c: f64, d: f64) -> Result<(Vec<SexticMerge>, Vec<f64>)> {
    validate_delta(b, c, d)?;
    let delta = delta_t(b, c, d);
    let roots = real_roots(&delta, 1e-12)?;
    let mut merges = Vec::new();
    let mut negative = Vec::new();
    for r in roots.roots {
        let t = if r.value.abs() <= 1e-12 { 0.0 } else { r.value };
        if t < 0.0 {
            negative.push(t);
            continue;
        }
        let degenerate = r.multiplicity > 1;
        let x = if c.abs() > 1e-12 {
            match x_of_t(b, c, d, t) {
                Ok(x) => Some(x),
                Err(_) => common_root_fallback(b, c, d, t),
            }
        } else {
            common_root_fallback(b, c, d, t)
        };
        // a discriminant zero whose double root is complex has no real
        // merge point; skip it
        let Some(x) = x else { continue };
        let (beta, gamma, dlt) = substitution(b, c, d, t);
        let quartic = Polynomial::new(vec![dlt, gamma, beta, 0.0, 1.0]);
        if quartic.eval(x).abs() > 1e-6 * quartic.eval_scale(x) {
            continue;
        }
        let case = merge_case(b, c, d, t)?;
        merges.push(SexticMerge {
            t,
            x,
            case,
            degenerate,
        });
    }
    Ok((merges, negative))
}

fn common_root_fallback(b: f64, c: f64, d: f64, t: f64) -> Option<f64> {
    let p = SexticForm {
        b,
        c,
        d,
        e: 0.0,
        f: 0.0,
        shift: 0.0,
    }
    .polynomial();
    fp2_fp3_intersections(&p)
        .ok()?
        .into_iter()
        .filter(|m| m.kind == MergeKind::Fp2Fp3 && (m.t - t).abs() <= 1e-6 * (1.0 + t))
        .map(|m| m.x)
        .next()
}
