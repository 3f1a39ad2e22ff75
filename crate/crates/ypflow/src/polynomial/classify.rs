//! Root-structure classification of the depressed quartic
//! `x^4 + beta x^2 + gamma x + delta`.
//!
//! The discriminant used here is the standard depressed-quartic form
//! `256 d^3 - 128 b^2 d^2 + 144 b g^2 d - 27 g^4 + 16 b^4 d - 4 b^3 g^2`,
//! together with the auxiliary quantities `P = 8b`, `R = 8g`,
//! `D0 = b^2 + 12 d` and `D = 64 d - 16 b^2` that decide the repeated-root
//! cases. All zero tests are relative to the term-magnitude scale of the
//! quantity being tested, so the classifier is usable on coefficients that
//! are themselves results of floating computation.

use serde::Serialize;

/// Root structure of a depressed quartic, as decided by the discriminant
/// case table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DoubleRootClass {
    NoRepeatedRoot,
    /// One real double root and two other distinct real roots.
    DoublePlusTwoDistinctReal,
    /// One real double root and a conjugate complex pair.
    DoublePlusComplexPair,
    TwoRealDoubles,
    /// Two conjugate complex double roots (e.g. `(x^2+1)^2`).
    TwoComplexDoubles,
    /// A real triple root and a simple real root.
    TripleRoot,
    QuadrupleRoot,
}

/// Classifies with the default relative tolerance of `1e-6` on the
/// discriminant and `1e-9` on the auxiliary sign tests.
pub fn classify_depressed_quartic(beta: f64, gamma: f64, delta: f64) -> DoubleRootClass {
    classify_depressed_quartic_with_tol(beta, gamma, delta, 1e-6)
}

/// Same classification with an explicit relative tolerance for the
/// discriminant zero test. Callers that already polished their input to a
/// discriminant root can pass a loose tolerance here.
pub fn classify_depressed_quartic_with_tol(
    beta: f64,
    gamma: f64,
    delta: f64,
    disc_rel_tol: f64,
) -> DoubleRootClass {
    let b = beta;
    let g = gamma;
    let d = delta;

    let disc = 256.0 * d.powi(3) - 128.0 * b * b * d * d + 144.0 * b * g * g * d - 27.0 * g.powi(4)
        + 16.0 * b.powi(4) * d
        - 4.0 * b.powi(3) * g * g;
    let disc_scale = 256.0 * d.abs().powi(3)
        + 128.0 * b * b * d * d
        + 144.0 * b.abs() * g * g * d.abs()
        + 27.0 * g.powi(4)
        + 16.0 * b.powi(4) * d.abs()
        + 4.0 * b.abs().powi(3) * g * g;
    if disc.abs() > disc_rel_tol * (disc_scale + f64::MIN_POSITIVE) {
        return DoubleRootClass::NoRepeatedRoot;
    }

    let aux_tol = 1e-9;
    let p_cap = 8.0 * b;
    let r_cap = 8.0 * g;
    let d0 = b * b + 12.0 * d;
    let d0_scale = b * b + 12.0 * d.abs();
    let d_cap = 64.0 * d - 16.0 * b * b;
    let d_scale = 64.0 * d.abs() + 16.0 * b * b;

    let d0_zero = d0.abs() <= aux_tol * (d0_scale + f64::MIN_POSITIVE);
    let d_zero = d_cap.abs() <= aux_tol * (d_scale + f64::MIN_POSITIVE);
    let p_zero = p_cap.abs() <= aux_tol * (8.0 * b.abs() + f64::MIN_POSITIVE) || b == 0.0;
    let r_zero = r_cap.abs() <= aux_tol * (8.0 * g.abs() + f64::MIN_POSITIVE) || g == 0.0;

    if d_zero {
        if d0_zero {
            return DoubleRootClass::QuadrupleRoot;
        }
        if !p_zero && p_cap < 0.0 {
            return DoubleRootClass::TwoRealDoubles;
        }
        if !p_zero && p_cap > 0.0 && r_zero {
            return DoubleRootClass::TwoComplexDoubles;
        }
        // D = 0, P > 0, R != 0 falls to the complex-pair clause below
    }
    if d0_zero {
        return DoubleRootClass::TripleRoot;
    }
    if p_cap < 0.0 && d_cap < 0.0 {
        return DoubleRootClass::DoublePlusTwoDistinctReal;
    }
    // remaining: D > 0, or P > 0 with (D != 0 or R != 0)
    DoubleRootClass::DoublePlusComplexPair
}
