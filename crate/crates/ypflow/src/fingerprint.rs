//! Zero curves of the first three `x`-derivatives of the heat evolution
//! across scale, and the merge points where adjacent curves annihilate.
//!
//! The `k`-th fingerprint is the set of `(x, t)` with
//! `d^k p(x, t) / dx^k = 0`. Curves are traced by slicing a uniform `t`
//! grid, isolating the real roots of each slice, and joining consecutive
//! slices by order-preserving nearest-neighbor assignment; Gaussian
//! smoothing never creates new zero crossings, so branches only die (in
//! pairs, at double roots). Death times are refined by bisection on the
//! slice root count.
//!
//! Merge points are located algebraically instead: a common zero of two
//! consecutive derivatives across scale is a root of their resultant in
//! `t`, and each candidate time is confirmed by recovering a real common
//! root in `x`.

use crate::error::Result;
use crate::heat::evolve_symbolic;
use crate::polynomial::{real_roots, Polynomial, TPoly};
use rayon::prelude::*;
use serde::Serialize;

/// Residual gate for confirming a point sits on a fingerprint curve.
pub const TOL_FP: f64 = 1e-7;

/// One traced zero curve of the `k`-th derivative.
#[derive(Debug, Clone)]
pub struct FingerprintBranch {
    /// Derivative order (1, 2, or 3).
    pub k: usize,
    /// `(t, x)` samples sorted by `t`.
    pub samples: Vec<(f64, f64)>,
    pub born_at: f64,
    /// Scale at which the branch merged with a neighbor; `None` if it
    /// survived to the end of the traced range.
    pub dies_at: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MergeKind {
    /// Double root of the second derivative (also a third-derivative zero).
    Fp2Fp3,
    /// Double root of the first derivative: a local-min/local-max pair
    /// annihilating.
    Fp1Fp2,
}

/// A point where two fingerprint curves meet.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MergePoint {
    pub x: f64,
    pub t: f64,
    pub kind: MergeKind,
}

/// Traces the `k`-th fingerprint over `t` in `[0, t_max]` with `n_steps`
/// uniform slices. Returns one branch per zero curve; empty when the
/// derivative has no real zeros at any sampled scale (or vanishes
/// identically).
pub fn fingerprint(p: &Polynomial, k: usize, t_max: f64, n_steps: usize) -> Vec<FingerprintBranch> {
    assert!((1..=3).contains(&k), "fingerprint order must be 1, 2, or 3");
    assert!(t_max > 0.0 && n_steps > 0);
    let deriv = evolve_symbolic(p).sym().derivative_x(k);
    if deriv.is_zero() || deriv.degree_x() == 0 {
        return Vec::new();
    }

    let dt = t_max / n_steps as f64;
    let slices: Vec<Vec<f64>> = (0..=n_steps)
        .into_par_iter()
        .map(|i| slice_roots(&deriv, i as f64 * dt))
        .collect();

    let mut branches: Vec<FingerprintBranch> = Vec::new();
    let mut alive: Vec<usize> = Vec::new(); // indices into branches
    for (i, roots) in slices.iter().enumerate() {
        let t = i as f64 * dt;
        if i == 0 {
            for &x in roots {
                alive.push(branches.len());
                branches.push(FingerprintBranch {
                    k,
                    samples: vec![(t, x)],
                    born_at: t,
                    dies_at: None,
                });
            }
            continue;
        }
        let prev: Vec<f64> = alive
            .iter()
            .map(|&b| branches[b].samples.last().unwrap().1)
            .collect();
        let (matched, dead, born) = align(&prev, roots);
        for (old_idx, new_idx) in matched {
            branches[alive[old_idx]].samples.push((t, roots[new_idx]));
        }
        if !dead.is_empty() {
            let t_death = refine_death(&deriv, t - dt, t, prev.len() - dead.len());
            // dying neighbors meet at a double root; polish its abscissa on
            // the next derivative and close the affected branches there
            let mut dead_sorted = dead.clone();
            dead_sorted.sort_unstable();
            for pair in dead_sorted.chunks(2) {
                let guess = pair.iter().map(|&j| prev[j]).sum::<f64>() / pair.len() as f64;
                let x_death = polish_double_root(&deriv, t_death, guess);
                for &j in pair {
                    let b = alive[j];
                    branches[b].samples.push((t_death, x_death));
                    branches[b].dies_at = Some(t_death);
                }
            }
            let dead_set: std::collections::HashSet<usize> = dead.into_iter().collect();
            alive = alive
                .iter()
                .enumerate()
                .filter(|(j, _)| !dead_set.contains(j))
                .map(|(_, &b)| b)
                .collect();
        }
        for new_idx in born {
            alive.push(branches.len());
            branches.push(FingerprintBranch {
                k,
                samples: vec![(t, roots[new_idx])],
                born_at: t,
                dies_at: None,
            });
        }
    }
    branches.sort_by(|u, v| u.samples[0].1.total_cmp(&v.samples[0].1));
    branches
}

fn slice_roots(deriv: &TPoly, t: f64) -> Vec<f64> {
    let q = deriv.eval_t(t);
    if q.is_zero() || q.degree() == 0 {
        return Vec::new();
    }
    real_roots(&q, 1e-12)
        .map(|rs| rs.values())
        .unwrap_or_default()
}

/// Order-preserving assignment of new slice roots to previous branch
/// positions by minimal total displacement. Returns (matched old->new),
/// unmatched old (deaths), unmatched new (births).
fn align(prev: &[f64], next: &[f64]) -> (Vec<(usize, usize)>, Vec<usize>, Vec<usize>) {
    let m = prev.len();
    let n = next.len();
    if m == 0 || n == 0 {
        return (Vec::new(), (0..m).collect(), (0..n).collect());
    }
    // DP over order-preserving injective maps of the smaller list into the
    // larger; both lists are sorted
    let (small, large, new_is_small) = if n <= m {
        (next, prev, true)
    } else {
        (prev, next, false)
    };
    let s = small.len();
    let l = large.len();
    let inf = f64::INFINITY;
    let mut cost = vec![vec![inf; l + 1]; s + 1];
    let mut take = vec![vec![false; l + 1]; s + 1];
    for c in cost[0].iter_mut() {
        *c = 0.0;
    }
    for i in 1..=s {
        for j in i..=l {
            let skip = cost[i][j - 1];
            let pair = cost[i - 1][j - 1] + (small[i - 1] - large[j - 1]).abs();
            if pair <= skip {
                cost[i][j] = pair;
                take[i][j] = true;
            } else {
                cost[i][j] = skip;
            }
        }
    }
    let mut pairs = Vec::with_capacity(s);
    let (mut i, mut j) = (s, l);
    while i > 0 {
        if take[i][j] {
            pairs.push((i - 1, j - 1));
            i -= 1;
            j -= 1;
        } else {
            j -= 1;
        }
    }
    pairs.reverse();
    let used_large: std::collections::HashSet<usize> = pairs.iter().map(|&(_, j)| j).collect();
    if new_is_small {
        let matched = pairs.iter().map(|&(si, li)| (li, si)).collect();
        let dead = (0..l).filter(|j| !used_large.contains(j)).collect();
        (matched, dead, Vec::new())
    } else {
        let matched = pairs.iter().map(|&(si, li)| (si, li)).collect();
        let born = (0..l).filter(|j| !used_large.contains(j)).collect();
        (matched, Vec::new(), born)
    }
}

/// Bisection in `t` for the scale where the slice root count first drops to
/// `target`, within `[lo, hi]`, to 1e-9.
fn refine_death(deriv: &TPoly, lo: f64, hi: f64, target: usize) -> f64 {
    let (mut lo, mut hi) = (lo, hi);
    while hi - lo > 1e-9 {
        let mid = 0.5 * (lo + hi);
        if slice_roots(deriv, mid).len() <= target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

fn polish_double_root(deriv: &TPoly, t: f64, guess: f64) -> f64 {
    let q = deriv.eval_t(t);
    let qd = q.derivative(1);
    let qdd = qd.derivative(1);
    let mut x = guess;
    for _ in 0..30 {
        let f = qd.eval(x);
        let d = qdd.eval(x);
        if d == 0.0 {
            break;
        }
        let step = f / d;
        x -= step;
        if step.abs() <= f64::EPSILON * (1.0 + x.abs()) {
            break;
        }
    }
    if qd.eval(x).abs() <= TOL_FP * qd.eval_scale(x) {
        x
    } else {
        guess
    }
}

/// All points where the second and third derivatives of the evolution share
/// a real zero: the double roots of `p_xx(., t)`, at scales that are roots
/// of the resultant of `p_xx` and `p_xxx` in `t`.
pub fn fp2_fp3_intersections(p: &Polynomial) -> Result<Vec<MergePoint>> {
    merge_points_of(p, 2, MergeKind::Fp2Fp3)
}

/// All points where a local-min/local-max pair annihilates: real double
/// roots of `p_x(., t)` for `t >= 0`.
pub fn fp1_merge_points(p: &Polynomial) -> Result<Vec<MergePoint>> {
    merge_points_of(p, 1, MergeKind::Fp1Fp2)
}

fn merge_points_of(p: &Polynomial, k: usize, kind: MergeKind) -> Result<Vec<MergePoint>> {
    if p.degree() < 4 {
        return Ok(Vec::new());
    }
    let sym = evolve_symbolic(p).sym().clone();
    let lower = sym.derivative_x(k);
    let upper = sym.derivative_x(k + 1);
    let res = resultant_checked(&lower, &upper)?;
    let Some(res) = res else {
        return Ok(Vec::new());
    };
    if res.degree() == 0 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for root in real_roots(&res, 1e-12)?.roots {
        let t = if root.value.abs() <= 1e-12 {
            0.0
        } else {
            root.value
        };
        if t < -1e-9 {
            continue;
        }
        for x in common_real_roots(&lower, &upper, t) {
            let (x, t) = polish_pair(&lower, &upper, x, t);
            if t >= -1e-9 {
                out.push(MergePoint {
                    x,
                    t: t.max(0.0),
                    kind,
                });
            }
        }
    }
    out.sort_by(|u, v| u.t.total_cmp(&v.t).then(u.x.total_cmp(&v.x)));
    out.dedup_by(|u, v| {
        (u.t - v.t).abs() <= 1e-7 * (1.0 + v.t.abs())
            && (u.x - v.x).abs() <= 1e-7 * (1.0 + v.x.abs())
    });
    Ok(out)
}

/// Joint Newton refinement of a merge point as the root of the 2x2 system
/// `(D^k p, D^(k+1) p) = 0` in `(x, t)`. The `t`-derivatives come from the
/// heat relation `d/dt D^k p = D^(k+2) p / 2`, so the Jacobian needs only
/// two more `x`-derivatives. Resultant roots of multiplicity > 1 carry a
/// large `t` noise floor; this system is regular there and recovers full
/// precision.
fn polish_pair(lower: &TPoly, upper: &TPoly, x0: f64, t0: f64) -> (f64, f64) {
    let d2 = upper.derivative_x(1);
    let d3 = upper.derivative_x(2);
    let (mut x, mut t) = (x0, t0);
    let scale = |x: f64, t: f64| lower.eval_t(t).eval_scale(x) + upper.eval_t(t).eval_scale(x);
    let res_at =
        |x: f64, t: f64| (lower.eval_xt(x, t).abs() + upper.eval_xt(x, t).abs()) / scale(x, t);
    let (mut best_x, mut best_t) = (x0, t0);
    let mut best = res_at(x0, t0);
    for _ in 0..50 {
        let f1 = lower.eval_xt(x, t);
        let f2 = upper.eval_xt(x, t);
        let w = d2.eval_xt(x, t);
        let z = d3.eval_xt(x, t);
        // J = [[f2', t-deriv], ...] with every t-derivative half the next
        // x-derivative: J = [[u, w/2], [w, z/2]], u = f2
        let det = 0.5 * (f2 * z - w * w);
        if det.abs() <= f64::MIN_POSITIVE {
            break;
        }
        let dx = (f1 * (0.5 * z) - f2 * (0.5 * w)) / det;
        let dt = (f2 * f2 - f1 * w) / det;
        x -= dx;
        t -= dt;
        if !x.is_finite() || !t.is_finite() {
            break;
        }
        let r = res_at(x, t);
        if r < best {
            best = r;
            best_x = x;
            best_t = t;
        }
        if dx.abs() <= f64::EPSILON * (1.0 + x.abs()) && dt.abs() <= f64::EPSILON * (1.0 + t.abs())
        {
            break;
        }
    }
    // triple-degenerate merge (the next derivative vanishes too): the joint
    // system is singular there, but x is then a simple root of D^(k+2) and
    // t follows from the one-dimensional equation D^(k+1) = 0
    let w_end = d2.eval_xt(best_x, best_t);
    if w_end.abs() <= 1e-4 * d2.eval_t(best_t).eval_scale(best_x) {
        let (mut x, mut t) = (best_x, best_t);
        for _ in 0..30 {
            let f = d2.eval_xt(x, t);
            let d = d3.eval_xt(x, t);
            if d == 0.0 {
                break;
            }
            let step = f / d;
            x -= step;
            if step.abs() <= f64::EPSILON * (1.0 + x.abs()) {
                break;
            }
        }
        for _ in 0..30 {
            let f = upper.eval_xt(x, t);
            let d = 0.5 * d3.eval_xt(x, t);
            if d == 0.0 {
                break;
            }
            let step = f / d;
            t -= step;
            if step.abs() <= f64::EPSILON * (1.0 + t.abs()) {
                break;
            }
        }
        if res_at(x, t) <= best {
            return (x, t);
        }
    }
    (best_x, best_t)
}

fn resultant_checked(lower: &TPoly, upper: &TPoly) -> Result<Option<Polynomial>> {
    if lower.is_zero() || upper.is_zero() || lower.degree_x() == 0 || upper.degree_x() == 0 {
        return Ok(None);
    }
    let r = crate::polynomial::resultant_in_t(lower, upper)?;
    Ok(if r.is_zero() { None } else { Some(r) })
}

/// Real zeros of `upper(., t)` at which `lower(., t)` also vanishes within
/// the fingerprint residual gate; these are the real double roots of
/// `lower`.
fn common_real_roots(lower: &TPoly, upper: &TPoly, t: f64) -> Vec<f64> {
    let lo = lower.eval_t(t);
    let up = upper.eval_t(t);
    if up.is_zero() || up.degree() == 0 {
        return Vec::new();
    }
    let Ok(cands) = real_roots(&up, 1e-12) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for c in cands.roots {
        let mut x = c.value;
        // one Newton correction of the pair (lower, lower') often tightens
        // the double root; keep whichever residual is smaller
        let lod = lo.derivative(1);
        let d = lod.eval(x);
        if d != 0.0 {
            let xn = x - lo.eval(x) / d;
            if lo.eval(xn).abs() < lo.eval(x).abs()
                && up.eval(xn).abs() <= TOL_FP * up.eval_scale(xn)
            {
                x = xn;
            }
        }
        if lo.eval(x).abs() <= TOL_FP * lo.eval_scale(x)
            && up.eval(x).abs() <= TOL_FP * up.eval_scale(x)
        {
            out.push(x);
        }
    }
    out
}
