//! Polynomials in `x` whose coefficients are themselves polynomials in `t`,
//! and their Sylvester resultant eliminating `x`.
//!
//! This is the representation produced by the closed-form heat evolution:
//! the coefficient of `x^(n-2k)` picks up a degree-`k` polynomial in `t`.
//! The resultant is computed by fraction-free (Bareiss) elimination over the
//! polynomial ring in `t`, so no interpolation degree has to be guessed; the
//! intermediate exact divisions are performed as dense division with the
//! numerically-zero remainder discarded.

use super::Polynomial;
use crate::error::{Error, Result};

/// A polynomial in `x` with coefficients that are polynomials in `t`.
/// Entry `k` of `tcoeffs` is the coefficient of `x^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct TPoly {
    tcoeffs: Vec<Polynomial>,
}

impl TPoly {
    /// Builds from per-power coefficients, trimming identically-zero leading
    /// entries.
    pub fn new(tcoeffs: Vec<Polynomial>) -> Self {
        let mut t = TPoly { tcoeffs };
        while t.tcoeffs.last().is_some_and(Polynomial::is_zero) {
            t.tcoeffs.pop();
        }
        t
    }

    /// A polynomial in `x` alone, viewed as constant in `t`.
    pub fn from_x_poly(p: &Polynomial) -> Self {
        TPoly::new(
            p.coeffs()
                .iter()
                .map(|&c| Polynomial::constant(c))
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.tcoeffs.is_empty()
    }

    /// Degree in `x`.
    pub fn degree_x(&self) -> usize {
        self.tcoeffs.len().saturating_sub(1)
    }

    /// Largest degree in `t` over all coefficients.
    pub fn degree_t(&self) -> usize {
        self.tcoeffs
            .iter()
            .map(Polynomial::degree)
            .max()
            .unwrap_or(0)
    }

    pub fn tcoeffs(&self) -> &[Polynomial] {
        &self.tcoeffs
    }

    pub fn tcoeff(&self, k: usize) -> Polynomial {
        self.tcoeffs
            .get(k)
            .cloned()
            .unwrap_or_else(Polynomial::zero)
    }

    pub fn leading(&self) -> Polynomial {
        self.tcoeffs
            .last()
            .cloned()
            .unwrap_or_else(Polynomial::zero)
    }

    /// Evaluates the `t` variable, leaving a polynomial in `x`.
    pub fn eval_t(&self, t: f64) -> Polynomial {
        Polynomial::new(self.tcoeffs.iter().map(|c| c.eval(t)).collect())
    }

    /// Full two-variable evaluation.
    pub fn eval_xt(&self, x: f64, t: f64) -> f64 {
        self.tcoeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.eval(t))
    }

    /// `k`-th derivative in `x`.
    pub fn derivative_x(&self, k: usize) -> TPoly {
        if k == 0 {
            return self.clone();
        }
        if self.tcoeffs.len() <= k {
            return TPoly::new(Vec::new());
        }
        let mut out = Vec::with_capacity(self.tcoeffs.len() - k);
        for (i, c) in self.tcoeffs.iter().enumerate().skip(k) {
            let mut m = 1.0;
            for j in 0..k {
                m *= (i - j) as f64;
            }
            out.push(c.scale(m));
        }
        TPoly::new(out)
    }

    /// Derivative in `t`, coefficient-wise.
    pub fn derivative_t(&self) -> TPoly {
        TPoly::new(self.tcoeffs.iter().map(|c| c.derivative(1)).collect())
    }

    /// Multiplies each coefficient by `t` (shift up in `t`).
    pub fn mul_t(&self) -> TPoly {
        let t = Polynomial::new(vec![0.0, 1.0]);
        TPoly::new(self.tcoeffs.iter().map(|c| c * &t).collect())
    }

    pub fn scale(&self, s: f64) -> TPoly {
        TPoly::new(self.tcoeffs.iter().map(|c| c.scale(s)).collect())
    }

    /// Product as polynomials in `x` over the ring of polynomials in `t`.
    pub fn mul(&self, rhs: &TPoly) -> TPoly {
        if self.is_zero() || rhs.is_zero() {
            return TPoly::new(Vec::new());
        }
        let mut out = vec![Polynomial::zero(); self.tcoeffs.len() + rhs.tcoeffs.len() - 1];
        for (i, a) in self.tcoeffs.iter().enumerate() {
            for (j, b) in rhs.tcoeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        TPoly::new(out)
    }

    pub fn sub(&self, rhs: &TPoly) -> TPoly {
        let n = self.tcoeffs.len().max(rhs.tcoeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(&self.tcoeff(k) - &rhs.tcoeff(k));
        }
        TPoly::new(out)
    }
}

// exact division used inside Bareiss elimination; the remainder is rounding
// noise by construction and is dropped after a magnitude check
fn div_exact(num: &Polynomial, den: &Polynomial) -> Polynomial {
    if num.is_zero() {
        return Polynomial::zero();
    }
    let (q, r) = num.div_rem(den);
    debug_assert!(
        r.max_abs_coeff() <= 1e-6 * (1.0 + num.max_abs_coeff()),
        "inexact division in fraction-free elimination: |r|={}",
        r.max_abs_coeff()
    );
    q.truncate_small(1e-12)
}

fn is_num_zero(p: &Polynomial, scale: f64) -> bool {
    p.max_abs_coeff() <= 1e-14 * scale
}

/// Sylvester resultant of `P` and `Q` eliminating `x`, as a polynomial in
/// `t`. Vanishes exactly at the `t` where `P(., t)` and `Q(., t)` share a
/// root in `x` (or where a leading coefficient degenerates).
pub fn resultant_in_t(p: &TPoly, q: &TPoly) -> Result<Polynomial> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.leading().is_zero() || q.leading().is_zero() {
        return Err(Error::DegenerateLeading);
    }
    let m = p.degree_x();
    let n = q.degree_x();
    if m == 0 {
        // Res(c, Q) = c^n
        let mut r = Polynomial::one();
        for _ in 0..n {
            r = &r * &p.tcoeff(0);
        }
        return Ok(r);
    }
    if n == 0 {
        let mut r = Polynomial::one();
        for _ in 0..m {
            r = &r * &q.tcoeff(0);
        }
        return Ok(r);
    }

    let size = m + n;
    let mut mat = vec![vec![Polynomial::zero(); size]; size];
    for row in 0..n {
        for k in 0..=m {
            mat[row][row + k] = p.tcoeff(m - k);
        }
    }
    for row in 0..m {
        for k in 0..=n {
            mat[n + row][row + k] = q.tcoeff(n - k);
        }
    }

    let scale = mat
        .iter()
        .flatten()
        .fold(0.0f64, |s, e| s.max(e.max_abs_coeff()))
        .max(1.0);

    let mut sign = 1.0f64;
    let mut prev = Polynomial::one();
    for k in 0..size - 1 {
        if is_num_zero(&mat[k][k], scale) {
            let swap = (k + 1..size).find(|&i| !is_num_zero(&mat[i][k], scale));
            match swap {
                Some(i) => {
                    mat.swap(k, i);
                    sign = -sign;
                }
                None => return Ok(Polynomial::zero()),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let a = &mat[i][j] * &mat[k][k];
                let b = &mat[i][k] * &mat[k][j];
                mat[i][j] = div_exact(&(&a - &b), &prev);
            }
            mat[i][k] = Polynomial::zero();
        }
        prev = mat[k][k].clone();
    }
    Ok(mat[size - 1][size - 1].scale(sign).truncate_small(1e-13))
}
