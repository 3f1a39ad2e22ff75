//! Real root isolation by Sturm sign counting, refined by bisection and
//! Newton polishing.
//!
//! Sturm sequences are used instead of companion-matrix eigenvalues because
//! the same exact sign-count machinery also certifies convexity (no real
//! zeros of a second derivative over an interval). The chain is built over
//! unit-scaled coefficients with relative truncation of numerically-zero
//! remainders, which keeps the count correct for the moderate degrees
//! (<= 12) this crate works with.

use super::Polynomial;
use crate::error::{Error, Result};

/// Default relative residual tolerance for accepting a polished root.
pub const TOL_RESIDUAL: f64 = 1e-10;

/// A root of `p` is assigned multiplicity `m` when it is also a root of the
/// first `m-1` derivatives within this relative residual.
pub const TOL_MULT: f64 = 1e-7;

const CHAIN_ZERO: f64 = 1e-11;
const CHAIN_TRUNC: f64 = 1e-12;

/// One real root with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealRoot {
    pub value: f64,
    pub multiplicity: usize,
}

/// Sorted real roots of a polynomial. Values are strictly increasing and
/// multiplicities sum to at most the degree.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RootSet {
    pub roots: Vec<RealRoot>,
}

impl RootSet {
    pub fn values(&self) -> Vec<f64> {
        self.roots.iter().map(|r| r.value).collect()
    }

    pub fn distinct_count(&self) -> usize {
        self.roots.len()
    }

    pub fn total_multiplicity(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }
}

struct SturmChain {
    seq: Vec<Polynomial>,
}

impl SturmChain {
    fn new(p: &Polynomial) -> SturmChain {
        let p0 = p.scaled_to_unit();
        let mut seq = vec![p0.clone()];
        if p0.degree() >= 1 {
            seq.push(p0.derivative(1).scaled_to_unit());
            loop {
                let n = seq.len();
                let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
                if r.max_abs_coeff() <= CHAIN_ZERO {
                    break;
                }
                let r = (-&r).truncate_small(CHAIN_TRUNC).scaled_to_unit();
                if r.is_zero() {
                    break;
                }
                let last = r.degree() == 0;
                seq.push(r);
                if last {
                    break;
                }
            }
        }
        SturmChain { seq }
    }

    fn variations(&self, x: f64) -> usize {
        let mut count = 0;
        let mut prev = 0.0f64;
        for q in &self.seq {
            let v = q.eval(x);
            if v == 0.0 {
                continue;
            }
            if prev != 0.0 && (v > 0.0) != (prev > 0.0) {
                count += 1;
            }
            prev = v;
        }
        count
    }

    /// Number of distinct real roots in `(a, b]`.
    fn count(&self, a: f64, b: f64) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }
}

/// Number of distinct real roots of `p` in the open interval `(a, b)`.
/// Endpoints landing exactly on a root are nudged by a machine-scale step.
pub fn sturm_count(p: &Polynomial, a: f64, b: f64) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let chain = SturmChain::new(p);
    // nudge inward so endpoint roots stay outside the open interval
    let a = nudge_off_root(p, a, 1.0);
    let b = nudge_off_root(p, b, -1.0);
    Ok(chain.count(a, b))
}

fn nudge_off_root(p: &Polynomial, x: f64, dir: f64) -> f64 {
    let mut x = x;
    let mut step = f64::EPSILON * (1.0 + x.abs());
    while p.eval(x) == 0.0 {
        x += dir * step;
        step *= 2.0;
    }
    x
}

/// All real roots of `p` with multiplicities.
///
/// Exact zero roots are stripped first and the variable is rescaled by the
/// geometric balance `(|c_0|/|c_n|)^(1/n)` so polynomials with a wide
/// coefficient range (resultants, discriminants) isolate reliably. Distinct
/// roots are isolated by Sturm bisection over the Cauchy bound interval,
/// polished by Newton on the lowest derivative that is regular at the root,
/// then assigned multiplicities by derivative residuals: the multiplicity
/// is `m` when the first `m-1` derivatives also vanish within [`TOL_MULT`]
/// of their evaluation scale.
pub fn real_roots(p: &Polynomial, tol: f64) -> Result<RootSet> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.degree() == 0 {
        return Ok(RootSet::default());
    }
    let zero_mult = p.coeffs().iter().take_while(|c| **c == 0.0).count();
    let stripped = Polynomial::new(p.coeffs()[zero_mult..].to_vec());
    let mut rs = if stripped.degree() == 0 {
        RootSet::default()
    } else {
        let n = stripped.degree();
        let sigma = (stripped.coeff(0).abs() / stripped.leading().abs())
            .powf(1.0 / n as f64)
            .clamp(1e-6, 1e6);
        let balanced = Polynomial::new(
            stripped
                .coeffs()
                .iter()
                .enumerate()
                .map(|(k, &c)| c * sigma.powi(k as i32))
                .collect(),
        );
        let mut inner = real_roots_balanced(&balanced, tol)?;
        for r in &mut inner.roots {
            r.value *= sigma;
        }
        inner
    };
    if zero_mult > 0 {
        rs.roots.push(RealRoot {
            value: 0.0,
            multiplicity: zero_mult,
        });
        rs.roots.sort_by(|u, v| u.value.total_cmp(&v.value));
        rs.roots.dedup_by(|u, v| {
            if (u.value - v.value).abs() <= 1e-12 {
                v.multiplicity += u.multiplicity;
                true
            } else {
                false
            }
        });
    }
    Ok(rs)
}

fn real_roots_balanced(p: &Polynomial, tol: f64) -> Result<RootSet> {
    let work = p.scaled_to_unit();
    let chain = SturmChain::new(&work);
    let bound = work.cauchy_bound();
    let a = -bound - 1e-6 * (1.0 + bound);
    let b = bound + 1e-6 * (1.0 + bound);
    let total = chain.count(a, b);
    if total == 0 {
        return Ok(RootSet::default());
    }

    let width_min = 1e-13 * (1.0 + bound);
    let mut stack = vec![(a, b, total)];
    let mut isolated: Vec<(f64, f64)> = Vec::new();
    while let Some((lo, hi, cnt)) = stack.pop() {
        if cnt == 0 {
            continue;
        }
        if cnt == 1 || hi - lo < width_min {
            // clusters tighter than width_min are treated as one root; the
            // multiplicity pass below accounts for the merged count
            isolated.push((lo, hi));
            continue;
        }
        let mid = nudge_off_root(&work, 0.5 * (lo + hi), 1.0);
        if mid <= lo || mid >= hi {
            // the midpoint sits in an evaluation-noise plateau around a
            // multiple root; sign counting is exhausted here
            isolated.push((lo, hi));
            continue;
        }
        // near multiple roots the subcounts can disagree with the parent;
        // clamp so the total is conserved
        let left = chain.count(lo, mid).min(cnt);
        stack.push((lo, mid, left));
        stack.push((mid, hi, cnt - left));
    }
    isolated.sort_by(|u, v| u.0.total_cmp(&v.0));

    let mut roots = Vec::with_capacity(isolated.len());
    for (lo, hi) in isolated {
        let (mut lo, mut hi) = (lo, hi);
        while hi - lo > width_min {
            let mid = nudge_off_root(&work, 0.5 * (lo + hi), 1.0);
            if mid <= lo || mid >= hi {
                break;
            }
            if chain.count(lo, mid) >= 1 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let x = polish(&work, 0.5 * (lo + hi), lo, hi, tol);
        roots.push(x);
    }

    // merge any residual duplicates from clustered isolation
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|u, v| (*u - *v).abs() <= 1e-9 * (1.0 + v.abs()));

    let degree = work.degree();
    let mut out = Vec::with_capacity(roots.len());
    let mut assigned = 0usize;
    for x in roots {
        let mut m = 1usize;
        while m < degree - assigned {
            let d = work.derivative(m);
            if d.eval(x).abs() <= TOL_MULT * d.eval_scale(x) {
                m += 1;
            } else {
                break;
            }
        }
        assigned += m;
        out.push(RealRoot {
            value: x,
            multiplicity: m,
        });
    }
    Ok(RootSet { roots: out })
}

/// Newton polish on the lowest derivative of `work` that has a regular
/// (simple) root near `x0`; a multiple root of `p` is a simple root of the
/// corresponding derivative. Falls back to the bisection midpoint when
/// Newton does not improve the residual.
fn polish(work: &Polynomial, x0: f64, lo: f64, hi: f64, tol: f64) -> f64 {
    let mut q = work.clone();
    let degree = work.degree();
    let mut level = 0usize;
    while level + 1 < degree {
        let qd = q.derivative(1);
        if qd.eval(x0).abs() > TOL_MULT * qd.eval_scale(x0) {
            break;
        }
        q = qd;
        level += 1;
    }
    let qd = q.derivative(1);
    // sign noise stalls the bisection at |x - root| ~ eps^(1/m) for an
    // m-fold root, so the polished point may sit well outside the isolated
    // interval; allow Newton a percent-of-scale wander to recover it
    let span = (hi - lo).max(1e-12 * (1.0 + x0.abs())) + 1e-2 * (1.0 + x0.abs()) * level as f64;
    let (lo_g, hi_g) = (lo - 4.0 * span, hi + 4.0 * span);
    let mut x = x0;
    for _ in 0..60 {
        let f = q.eval(x);
        let d = qd.eval(x);
        if d == 0.0 {
            break;
        }
        let step = f / d;
        let xn = x - step;
        if !(lo_g..=hi_g).contains(&xn) {
            break;
        }
        x = xn;
        // convergence is judged by step size: the residual of a multiple
        // root hits its rounding floor long before the position does
        if step.abs() <= f64::EPSILON * (1.0 + x.abs()) {
            break;
        }
    }
    // accept against the original polynomial: a nearby stationary point of
    // `work` can fake a multiple root and send the climbed Newton elsewhere
    if work.eval(x).abs() <= work.eval(x0).abs().max(tol * work.eval_scale(x0)) {
        x
    } else {
        x0
    }
}
