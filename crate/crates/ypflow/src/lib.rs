//! Global minimization of univariate real polynomials by heat-evolution
//! convexification and backward integration of the Yuille-Poggio trajectory
//! equation.
//!
//! An even-degree polynomial `p` with positive leading coefficient is
//! smoothed by Gaussian filtering of variance `t`, which is the solution of
//! the heat equation `p_t = p_xx / 2` and, for polynomials, a closed-form
//! coefficient transform. Past a finite scale the smoothed polynomial is
//! convex; its unique minimizer can then be transported back to `t = 0`
//! along the trajectory ODE `dx/dt = -p_xxx / (2 p_xx)`, whose integral
//! curves organize the critical points across scale. Whether the endpoint is
//! the true global minimizer is decided by the fingerprint geometry: it is
//! exactly when the global minimizer lies in the escape zone, the set of
//! starting points whose trajectories never collide.
//!
//! The crate exposes that machinery in layers:
//!
//! - [`polynomial`]: dense polynomial arithmetic, Sturm-sequence real root
//!   isolation, closed-form cubics, depressed-quartic double-root
//!   classification, and resultants of polynomials with coefficients in `t`;
//! - [`parse`]: the expression notation used on the command line;
//! - [`heat`]: closed-form heat evolution, moving-average (Steklov)
//!   smoothing, and convexification times;
//! - [`fingerprint`]: zero curves of the first three `x`-derivatives across
//!   scale and their pairwise merge points;
//! - [`flow`]: the trajectory integrator, the backward-flow minimizer,
//!   confinement/escape zones, and the attainability verdict;
//! - [`quartic`]: the fully closed-form degree-4 theory, including a
//!   fixed-start descent that needs no smoothing at all;
//! - [`sextic`]: the degree-6 merge-structure analysis;
//! - [`oracle`]: brute-force global minimization used as ground truth;
//! - [`cli`]: the `ypflow` command-line front end.
//!
//! Runnable demonstrations of each capability live in `examples/`.

pub mod cli;
pub mod error;
pub mod fingerprint;
pub mod flow;
pub mod heat;
pub mod oracle;
pub mod parse;
pub mod polynomial;
pub mod quartic;
pub mod sextic;

pub use error::{Error, Result};
pub use polynomial::Polynomial;
