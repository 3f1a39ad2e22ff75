//! Trajectory integration across scale, the backward-flow global
//! minimizer, and the confinement/escape partition of initial positions.
//!
//! Zeros of `p_x(., t)` move with scale according to the trajectory
//! equation `dx/dt = -p_xxx / (2 p_xx)`, and the same equation transports
//! arbitrary (non-critical) starting points. The denominator vanishes on
//! the second-derivative zero set, so an integral curve can end in finite
//! time by colliding with a neighboring curve there; that event is exactly
//! the annihilation of a local-min/local-max pair when the curve is a
//! critical trajectory.
//!
//! The integrator is an adaptive Dormand-Prince 5(4) pair with two guards
//! tied to the singularity structure: steps are capped once `|p_xx|` enters
//! a band around zero, and when `p_xx` and `p_xxx` vanish together (a
//! second/third-derivative merge point) the right-hand side switches to the
//! finite pass-through slope `-p_xxxxx / (4 p_xxxx)` obtained from the heat
//! relation `p_xx,t = p_xxxx / 2`; the curve through such a point (for
//! instance the stationary middle branch of a symmetric double well) then
//! integrates through it instead of blowing up.

use crate::error::{Error, Result};
use crate::fingerprint::{fp2_fp3_intersections, MergePoint};
use crate::heat::{convexification_time, evolve_symbolic};
use crate::oracle::{brute_force_min, OracleResult, MATCH_TOL};
use crate::polynomial::{Polynomial, TPoly};
use rayon::prelude::*;

/// Integrator and singularity-detection parameters.
#[derive(Debug, Clone, Copy)]
pub struct FlowParams {
    /// Relative step tolerance of the embedded pair.
    pub rel_tol: f64,
    /// Max step is the integration span divided by this.
    pub max_step_div: f64,
    /// `|p_xx| < sing_tol * (1 + max|coeff|)` counts as touching the
    /// second-derivative zero set.
    pub sing_tol: f64,
    /// A touch with `|p_xxx| > p3_gate * (1 + max|coeff|)` terminates as a
    /// merge; below the gate the point is treated as a pass-through.
    pub p3_gate: f64,
    pub max_steps: usize,
}

impl Default for FlowParams {
    fn default() -> Self {
        FlowParams {
            rel_tol: 1e-9,
            max_step_div: 1000.0,
            sing_tol: 1e-7,
            p3_gate: 1e-4,
            max_steps: 4_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub enum Termination {
    ReachedTarget,
    SingularityMerge { t: f64, x: f64 },
    StepFailure { t: f64, x: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Direction {
    Forward,
    Backward,
}

/// One integral curve of the trajectory equation.
#[derive(Debug, Clone)]
pub struct Trajectory {
    /// `(t, x)` at every accepted step, in integration order.
    pub samples: Vec<(f64, f64)>,
    pub termination: Termination,
    pub direction: Direction,
}

impl Trajectory {
    pub fn end(&self) -> (f64, f64) {
        *self.samples.last().unwrap()
    }
}

/// Precomputed derivative evolutions of one polynomial, shared across many
/// trajectory integrations.
struct YpSystem {
    d2: TPoly,
    d3: TPoly,
    d4: TPoly,
    d5: TPoly,
    sing_abs: f64,
    p3_abs: f64,
    params: FlowParams,
}

impl YpSystem {
    fn new(p: &Polynomial, params: FlowParams) -> YpSystem {
        let sym = evolve_symbolic(p).sym().clone();
        let scale = 1.0 + p.max_abs_coeff();
        YpSystem {
            d2: sym.derivative_x(2),
            d3: sym.derivative_x(3),
            d4: sym.derivative_x(4),
            d5: sym.derivative_x(5),
            sing_abs: params.sing_tol * scale,
            p3_abs: params.p3_gate * scale,
            params,
        }
    }

    fn rhs(&self, x: f64, t: f64) -> f64 {
        let s2 = self.d2.eval_xt(x, t);
        let s3 = self.d3.eval_xt(x, t);
        if s2.abs() <= 10.0 * self.sing_abs && s3.abs() <= self.p3_abs {
            let s4 = self.d4.eval_xt(x, t);
            if s4.abs() > f64::MIN_POSITIVE {
                return -self.d5.eval_xt(x, t) / (4.0 * s4);
            }
            return 0.0;
        }
        let s2 = if s2 == 0.0 {
            f64::MIN_POSITIVE.copysign(s2)
        } else {
            s2
        };
        (-s3 / (2.0 * s2)).clamp(-1e12, 1e12)
    }

    fn integrate(&self, x0: f64, t0: f64, t1: f64) -> Result<Trajectory> {
        let direction = if t1 >= t0 {
            Direction::Forward
        } else {
            Direction::Backward
        };
        let s2 = self.d2.eval_xt(x0, t0);
        let s3 = self.d3.eval_xt(x0, t0);
        if s2.abs() <= self.sing_abs && s3.abs() > self.p3_abs {
            return Err(Error::StartOnSingularity { x: x0, t: t0 });
        }
        let span = (t1 - t0).abs();
        let mut samples = vec![(t0, x0)];
        if span == 0.0 {
            return Ok(Trajectory {
                samples,
                termination: Termination::ReachedTarget,
                direction,
            });
        }
        let dir = (t1 - t0).signum();
        let max_h = span / self.params.max_step_div;
        let h_floor = 1e-14 * (1.0 + span);
        let mut h = max_h;
        let mut t = t0;
        let mut x = x0;
        let mut steps = 0usize;
        loop {
            if (t1 - t) * dir <= 0.0 {
                return Ok(Trajectory {
                    samples,
                    termination: Termination::ReachedTarget,
                    direction,
                });
            }
            let s2 = self.d2.eval_xt(x, t);
            let s3 = self.d3.eval_xt(x, t);
            if s2.abs() <= self.sing_abs && s3.abs() > self.p3_abs {
                return Ok(Trajectory {
                    samples,
                    termination: Termination::SingularityMerge { t, x },
                    direction,
                });
            }
            if s2.abs() <= 10.0 * self.sing_abs {
                h = h.min(max_h / 64.0);
            }
            h = h.min((t1 - t).abs()).max(h_floor);

            let (x_new, err) = self.dopri_step(x, t, dir * h);
            let tol = self.params.rel_tol * (1.0 + x.abs().max(x_new.abs()));
            if err.is_finite() && err <= tol {
                t += dir * h;
                x = x_new;
                samples.push((t, x));
                let factor = if err == 0.0 {
                    5.0
                } else {
                    (0.9 * (tol / err).powf(0.2)).clamp(0.2, 5.0)
                };
                h = (h * factor).min(max_h);
            } else {
                let factor = if err.is_finite() && err > 0.0 {
                    (0.9 * (tol / err).powf(0.2)).clamp(0.1, 0.5)
                } else {
                    0.1
                };
                h *= factor;
            }
            if h <= h_floor {
                let s2 = self.d2.eval_xt(x, t);
                if s2.abs() <= 1e3 * self.sing_abs {
                    return Ok(Trajectory {
                        samples,
                        termination: Termination::SingularityMerge { t, x },
                        direction,
                    });
                }
                return Ok(Trajectory {
                    samples,
                    termination: Termination::StepFailure { t, x },
                    direction,
                });
            }
            steps += 1;
            if steps >= self.params.max_steps {
                return Ok(Trajectory {
                    samples,
                    termination: Termination::StepFailure { t, x },
                    direction,
                });
            }
        }
    }

    /// One Dormand-Prince 5(4) step; returns the 5th-order solution and the
    /// embedded error estimate.
    fn dopri_step(&self, x: f64, t: f64, h: f64) -> (f64, f64) {
        let f = |xx: f64, tt: f64| self.rhs(xx, tt);
        let k1 = f(x, t);
        let k2 = f(x + h * (0.2 * k1), t + 0.2 * h);
        let k3 = f(x + h * (3.0 / 40.0 * k1 + 9.0 / 40.0 * k2), t + 0.3 * h);
        let k4 = f(
            x + h * (44.0 / 45.0 * k1 - 56.0 / 15.0 * k2 + 32.0 / 9.0 * k3),
            t + 0.8 * h,
        );
        let k5 = f(
            x + h
                * (19372.0 / 6561.0 * k1 - 25360.0 / 2187.0 * k2 + 64448.0 / 6561.0 * k3
                    - 212.0 / 729.0 * k4),
            t + 8.0 / 9.0 * h,
        );
        let k6 = f(
            x + h
                * (9017.0 / 3168.0 * k1 - 355.0 / 33.0 * k2
                    + 46732.0 / 5247.0 * k3
                    + 49.0 / 176.0 * k4
                    - 5103.0 / 18656.0 * k5),
            t + h,
        );
        let x5 = x + h
            * (35.0 / 384.0 * k1 + 500.0 / 1113.0 * k3 + 125.0 / 192.0 * k4 - 2187.0 / 6784.0 * k5
                + 11.0 / 84.0 * k6);
        let k7 = f(x5, t + h);
        let x4 = x + h
            * (5179.0 / 57600.0 * k1 + 7571.0 / 16695.0 * k3 + 393.0 / 640.0 * k4
                - 92097.0 / 339200.0 * k5
                + 187.0 / 2100.0 * k6
                + 1.0 / 40.0 * k7);
        (x5, (x5 - x4).abs())
    }
}

/// Integrates one trajectory from `(x0, t0)` to scale `t1` (either
/// direction). Ends early with a merge when the curve collides with the
/// second-derivative zero set.
pub fn integrate_yp(p: &Polynomial, x0: f64, t0: f64, t1: f64) -> Result<Trajectory> {
    integrate_yp_with(p, x0, t0, t1, FlowParams::default())
}

pub fn integrate_yp_with(
    p: &Polynomial,
    x0: f64,
    t0: f64,
    t1: f64,
    params: FlowParams,
) -> Result<Trajectory> {
    YpSystem::new(p, params).integrate(x0, t0, t1)
}

/// Result of the backward-flow minimization.
#[derive(Debug, Clone)]
pub struct MinimizeResult {
    pub minimizer: f64,
    pub value: f64,
    /// Whether the endpoint matches a brute-force global minimizer within
    /// the oracle match tolerance.
    pub attainable: bool,
    pub oracle_minimizer: Option<f64>,
    /// Scale the backward integration started from.
    pub t0: f64,
    pub trajectory: Trajectory,
}

/// Global minimization by convexify-then-flow-back.
///
/// Evolves to `t0 = 1.2 * max(t*, 1)`, finds the unique minimizer of the
/// convex slice by safeguarded Newton, integrates the trajectory equation
/// backward to `t = 0`, and polishes the endpoint on `p'`. The endpoint is
/// the global minimizer exactly when the global minimizer escapes the
/// confinement zone; `attainable` records the comparison against the
/// brute-force oracle.
pub fn backward_flow_minimize(p: &Polynomial) -> Result<MinimizeResult> {
    backward_flow_minimize_with(p, FlowParams::default())
}

pub fn backward_flow_minimize_with(p: &Polynomial, params: FlowParams) -> Result<MinimizeResult> {
    let n = p.degree();
    if !n.is_multiple_of(2) || n < 4 {
        return Err(Error::OddDegree(n));
    }
    if p.leading() <= 0.0 {
        return Err(Error::NegativeLeading(p.leading()));
    }
    let mono = p.monic();
    let t_star = convexification_time(&mono)?.t_star;
    let t0 = 1.2 * t_star.max(1.0);
    let slice = crate::heat::evolve_at(&mono, t0);
    let x_start = convex_argmin(&slice);
    let system = YpSystem::new(&mono, params);
    let trajectory = system.integrate(x_start, t0, 0.0)?;
    let (_, x_end) = trajectory.end();
    let minimizer = newton_on_derivative(&mono, x_end);
    let value = p.eval(minimizer);
    let oracle = brute_force_min(p)?;
    let oracle_minimizer = nearest(&oracle.minimizers, minimizer);
    let attainable = oracle_minimizer.is_some_and(|m| (m - minimizer).abs() <= MATCH_TOL);
    Ok(MinimizeResult {
        minimizer,
        value,
        attainable,
        oracle_minimizer,
        t0,
        trajectory,
    })
}

fn nearest(xs: &[f64], x: f64) -> Option<f64> {
    xs.iter()
        .copied()
        .min_by(|u, v| (u - x).abs().total_cmp(&(v - x).abs()))
}

/// Minimizer of a convex polynomial by Newton on the derivative with a
/// bisection bracket as safeguard.
fn convex_argmin(q: &Polynomial) -> f64 {
    let d1 = q.derivative(1);
    let d2 = q.derivative(2);
    let bound = d1.cauchy_bound() + 1.0;
    let (mut lo, mut hi) = (-bound, bound);
    let n = q.degree();
    let mut x = -q.coeff(n - 1) / (n as f64 * q.leading());
    x = x.clamp(lo, hi);
    for _ in 0..200 {
        let f = d1.eval(x);
        if f.abs() <= 1e-13 * d1.eval_scale(x) {
            break;
        }
        if f > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        let d = d2.eval(x);
        let newton = if d > 0.0 { x - f / d } else { f64::NAN };
        x = if newton.is_finite() && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if hi - lo <= 1e-15 * (1.0 + x.abs()) {
            break;
        }
    }
    x
}

fn newton_on_derivative(p: &Polynomial, x0: f64) -> f64 {
    let d1 = p.derivative(1);
    let d2 = p.derivative(2);
    let mut x = x0;
    for _ in 0..60 {
        let f = d1.eval(x);
        let d = d2.eval(x);
        if d == 0.0 {
            break;
        }
        let step = f / d;
        x -= step;
        if step.abs() <= f64::EPSILON * (1.0 + x.abs()) {
            break;
        }
    }
    if d1.eval(x).abs() <= d1.eval(x0).abs() {
        x
    } else {
        x0
    }
}

/// Confinement intervals plus the merge points that organize them.
#[derive(Debug, Clone)]
pub struct ZoneReport {
    /// Disjoint closed intervals, sorted.
    pub confinement: Vec<(f64, f64)>,
    pub merge_points: Vec<MergePoint>,
    pub boundary_tol: f64,
}

impl ZoneReport {
    pub fn contains(&self, x: f64) -> bool {
        self.confinement.iter().any(|&(lo, hi)| lo <= x && x <= hi)
    }

    /// Distance from `x` to the nearest interval boundary.
    pub fn boundary_margin(&self, x: f64) -> f64 {
        self.confinement
            .iter()
            .flat_map(|&(lo, hi)| [lo, hi])
            .map(|b| (b - x).abs())
            .fold(f64::INFINITY, f64::min)
    }
}

/// Whether the trajectory from `(x0, 0)` collides with another curve before
/// the convex regime, i.e. whether `x0` is in the confinement zone.
pub fn confined(p: &Polynomial, x0: f64) -> Result<bool> {
    let mono = p.monic();
    let t_star = convexification_time(&mono)?.t_star;
    let system = YpSystem::new(&mono, FlowParams::default());
    Ok(confined_in(&system, x0, 1.5 * t_star + 1.0))
}

fn confined_in(system: &YpSystem, x0: f64, t_max: f64) -> bool {
    match system.integrate(x0, 0.0, t_max) {
        Ok(traj) => !matches!(traj.termination, Termination::ReachedTarget),
        // starting exactly on the second-derivative zero set: the point is a
        // boundary of a collision pair, hence confined
        Err(_) => true,
    }
}

/// Partitions the line into confinement intervals and their escape
/// complement by forward shooting on a uniform grid, then refining each
/// boundary by bisection on the confined predicate.
///
/// All merges happen at scales below the convexification time, so
/// trajectories are integrated to `1.5 t* + 1`; survival to that scale
/// certifies escape. The initial grid spans the root bounds of the first
/// three derivatives and widens automatically while a confined point touches
/// either end.
pub fn classify_zones(p: &Polynomial, grid: usize) -> Result<ZoneReport> {
    classify_zones_with(p, grid, FlowParams::default(), 1e-6)
}

pub fn classify_zones_with(
    p: &Polynomial,
    grid: usize,
    params: FlowParams,
    boundary_tol: f64,
) -> Result<ZoneReport> {
    let n = p.degree();
    if !n.is_multiple_of(2) || n < 4 {
        return Err(Error::OddDegree(n));
    }
    if p.leading() <= 0.0 {
        return Err(Error::NegativeLeading(p.leading()));
    }
    let grid = grid.max(8);
    let mono = p.monic();
    let t_star = convexification_time(&mono)?.t_star;
    let t_max = 1.5 * t_star + 1.0;
    let system = YpSystem::new(&mono, params);

    let mut bound = (1..=3)
        .map(|k| mono.derivative(k).cauchy_bound())
        .fold(1.0f64, f64::max)
        + 1.0;
    let flags: Vec<bool>;
    let xs: Vec<f64>;
    let mut widen = 0;
    loop {
        let step = 2.0 * bound / (grid - 1) as f64;
        let pts: Vec<f64> = (0..grid).map(|i| -bound + i as f64 * step).collect();
        let fl: Vec<bool> = pts
            .par_iter()
            .map(|&x0| confined_in(&system, x0, t_max))
            .collect();
        if fl.first() == Some(&true) || fl.last() == Some(&true) {
            bound *= 1.5;
            widen += 1;
            assert!(
                widen < 60,
                "confinement zone did not close below |x| = {bound}"
            );
            continue;
        }
        xs = pts;
        flags = fl;
        break;
    }

    let mut intervals: Vec<(f64, f64)> = Vec::new();
    let mut i = 0;
    while i < xs.len() {
        if flags[i] {
            let start = i;
            while i + 1 < xs.len() && flags[i + 1] {
                i += 1;
            }
            let lo = refine_boundary(&system, xs[start], xs[start - 1], t_max, boundary_tol);
            let hi = refine_boundary(&system, xs[i], xs[i + 1], t_max, boundary_tol);
            intervals.push((lo, hi));
        }
        i += 1;
    }
    // merge intervals separated by less than the refinement resolution
    let mut merged: Vec<(f64, f64)> = Vec::new();
    for (lo, hi) in intervals {
        match merged.last_mut() {
            Some(last) if lo - last.1 <= 4.0 * boundary_tol => last.1 = hi,
            _ => merged.push((lo, hi)),
        }
    }
    Ok(ZoneReport {
        confinement: merged,
        merge_points: fp2_fp3_intersections(p)?,
        boundary_tol,
    })
}

/// Bisection between a confined point and an escape point.
fn refine_boundary(system: &YpSystem, conf: f64, esc: f64, t_max: f64, tol: f64) -> f64 {
    let (mut conf, mut esc) = (conf, esc);
    while (conf - esc).abs() > tol {
        let mid = 0.5 * (conf + esc);
        if confined_in(system, mid, t_max) {
            conf = mid;
        } else {
            esc = mid;
        }
    }
    conf
}

/// The attainability verdict with all three pieces of evidence attached.
#[derive(Debug, Clone)]
pub struct Attainability {
    /// True when a global minimizer lies in the escape zone.
    pub attainable: bool,
    pub oracle: OracleResult,
    pub zones: ZoneReport,
    pub flow: MinimizeResult,
}

/// Decides whether the backward flow reaches the true global minimizer,
/// which holds exactly when the oracle minimizer lies outside the
/// confinement zone. The verdict is cross-checked against the actual
/// backward-flow outcome; a clear disagreement is [`Error::ConsistencyViolation`]
/// (a bug, not a property of the input).
pub fn attainability(p: &Polynomial) -> Result<Attainability> {
    attainability_with(p, 512)
}

pub fn attainability_with(p: &Polynomial, grid: usize) -> Result<Attainability> {
    let oracle = brute_force_min(p)?;
    let zones = classify_zones(p, grid)?;
    let flow = backward_flow_minimize(p)?;
    let escaped = oracle.minimizers.iter().any(|&m| !zones.contains(m));
    let margin = oracle
        .minimizers
        .iter()
        .map(|&m| zones.boundary_margin(m))
        .fold(f64::INFINITY, f64::min);
    if margin > 10.0 * MATCH_TOL && escaped != flow.attainable {
        return Err(Error::ConsistencyViolation(format!(
            "zone membership says attainable={escaped} but backward flow returned {} \
             (oracle {:?}, margin {margin:.2e})",
            flow.minimizer, oracle.minimizers
        )));
    }
    Ok(Attainability {
        attainable: escaped,
        oracle,
        zones,
        flow,
    })
}
