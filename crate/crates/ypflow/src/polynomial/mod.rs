//! Dense univariate real polynomials.
//!
//! Coefficients are stored lowest power first, with the invariant that the
//! last stored coefficient is nonzero unless the polynomial is identically
//! zero. All arithmetic is plain `f64`; the numerically delicate pieces
//! (root isolation, resultants) live in the submodules.

mod classify;
mod cubic;
mod roots;
mod tpoly;

pub use classify::{
    classify_depressed_quartic, classify_depressed_quartic_with_tol, DoubleRootClass,
};
pub use cubic::{power_sums_check, solve_cubic, CubicCase, CubicRoots, PowerSums};
pub use roots::{real_roots, sturm_count, RealRoot, RootSet, TOL_MULT, TOL_RESIDUAL};
pub use tpoly::{resultant_in_t, TPoly};

use std::fmt;

/// Dense univariate polynomial with real coefficients, lowest power first.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    /// Builds a polynomial from ascending coefficients, trimming exact
    /// trailing zeros so the leading coefficient is nonzero.
    pub fn new(coeffs: Vec<f64>) -> Self {
        let mut p = Polynomial { coeffs };
        p.trim();
        p
    }

    /// Coefficients given highest power first (the order used on the CLI
    /// and in written notation).
    pub fn from_descending(coeffs: &[f64]) -> Self {
        let mut c: Vec<f64> = coeffs.to_vec();
        c.reverse();
        Polynomial::new(c)
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial { coeffs: vec![1.0] }
    }

    pub fn constant(c: f64) -> Self {
        Polynomial::new(vec![c])
    }

    /// The monomial `c * x^k`.
    pub fn monomial(c: f64, k: usize) -> Self {
        if c == 0.0 {
            return Polynomial::zero();
        }
        let mut coeffs = vec![0.0; k + 1];
        coeffs[k] = c;
        Polynomial { coeffs }
    }

    /// Monic polynomial with the given real roots.
    pub fn from_roots(roots: &[f64]) -> Self {
        let mut p = Polynomial::one();
        for &r in roots {
            p = &p * &Polynomial::new(vec![-r, 1.0]);
        }
        p
    }

    fn trim(&mut self) {
        while let Some(&last) = self.coeffs.last() {
            if last == 0.0 {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial; 0 for constants and for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Coefficient of `x^k`, zero beyond the stored degree.
    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    pub fn leading(&self) -> f64 {
        self.coeffs.last().copied().unwrap_or(0.0)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Horner evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// Magnitude scale of an evaluation at `x`: `1 + sum |c_k| |x|^k`.
    /// Residual tests compare `|p(x)|` against `tol * eval_scale(x)`.
    pub fn eval_scale(&self, x: f64) -> f64 {
        let ax = x.abs();
        1.0 + self
            .coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * ax + c.abs())
    }

    /// Exact coefficient-wise `k`-th derivative.
    pub fn derivative(&self, k: usize) -> Polynomial {
        if k == 0 {
            return self.clone();
        }
        if self.coeffs.len() <= k {
            return Polynomial::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - k);
        for (i, &c) in self.coeffs.iter().enumerate().skip(k) {
            // falling factorial i * (i-1) * ... * (i-k+1)
            let mut m = 1.0;
            for j in 0..k {
                m *= (i - j) as f64;
            }
            out.push(c * m);
        }
        Polynomial::new(out)
    }

    pub fn scale(&self, s: f64) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        self.scale(1.0 / self.leading())
    }

    /// Scales so the largest coefficient magnitude is 1. Roots are unchanged.
    pub fn scaled_to_unit(&self) -> Polynomial {
        let m = self.max_abs_coeff();
        if m == 0.0 {
            Polynomial::zero()
        } else {
            self.scale(1.0 / m)
        }
    }

    /// Drops leading coefficients with `|c| <= tol * max_abs` and zeroes the
    /// rest below that threshold. Used to clean numerically-zero results of
    /// remainder sequences and fraction-free elimination.
    pub fn truncate_small(&self, rel_tol: f64) -> Polynomial {
        let m = self.max_abs_coeff();
        if m == 0.0 {
            return Polynomial::zero();
        }
        let cut = rel_tol * m;
        let mut coeffs = self.coeffs.clone();
        while let Some(&last) = coeffs.last() {
            if last.abs() <= cut {
                coeffs.pop();
            } else {
                break;
            }
        }
        Polynomial::new(coeffs)
    }

    /// Cauchy root bound: every real root lies in `(-B, B)`.
    pub fn cauchy_bound(&self) -> f64 {
        if self.coeffs.len() <= 1 {
            return 1.0;
        }
        let lc = self.leading().abs();
        let m = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .fold(0.0f64, |m, c| m.max(c.abs()));
        1.0 + m / lc
    }

    /// Taylor shift: the polynomial `q(x) = p(x + h)`.
    pub fn taylor_shift(&self, h: f64) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        // repeated synthetic division by (x - (-h))
        let mut work = self.coeffs.clone();
        let n = work.len();
        let mut out = vec![0.0; n];
        for item in out.iter_mut().take(n) {
            // divide work by (x + h) in place; remainder is next coefficient
            let mut rem = 0.0;
            for c in work.iter_mut().rev() {
                let tmp = *c + rem * h;
                rem = tmp;
                *c = tmp;
            }
            // after the pass, work[0] holds the remainder and work[1..] the quotient
            *item = work.remove(0);
            if work.is_empty() {
                break;
            }
        }
        Polynomial::new(out)
    }

    /// Quotient and remainder of dense division.
    pub fn div_rem(&self, divisor: &Polynomial) -> (Polynomial, Polynomial) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if self.degree() < divisor.degree() || self.is_zero() {
            return (Polynomial::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let dn = divisor.degree();
        let lead = divisor.leading();
        let qlen = rem.len() - dn;
        let mut q = vec![0.0; qlen];
        for i in (0..qlen).rev() {
            let f = rem[i + dn] / lead;
            q[i] = f;
            if f != 0.0 {
                for (j, &dc) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= f * dc;
                }
            }
        }
        rem.truncate(dn);
        (Polynomial::new(q), Polynomial::new(rem))
    }

    // Operator implementations on references keep call sites allocation-aware.
    fn add_impl(&self, rhs: &Polynomial, sign: f64) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![0.0; n];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.coeff(i) + sign * rhs.coeff(i);
        }
        Polynomial::new(out)
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.add_impl(rhs, 1.0)
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.add_impl(rhs, -1.0)
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![0.0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(-1.0)
    }
}

/// Renders in conventional descending notation, e.g. `x^4-8x^3-18x^2+56x`.
/// Coefficients print with shortest round-trip formatting, so
/// `parse(format!("{p}"))` recovers the coefficient vector exactly.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0.0 {
                continue;
            }
            let mag = c.abs();
            if first {
                if c < 0.0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < 0.0 {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            if mag != 1.0 || k == 0 {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}
