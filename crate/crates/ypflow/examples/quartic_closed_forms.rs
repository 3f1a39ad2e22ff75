//! Everything about a quartic in closed form: critical times, the merge
//! point where a min/max pair annihilates, the confinement interval, and
//! two quartic-only minimizers that need no smoothing machinery at all.
//!
//! ```bash
//! cargo run --example quartic_closed_forms
//! ```

use ypflow::quartic::{
    analyze, backward_iteration, coeffs_from_critical_points, fixed_start_descent, value_gap,
};

fn report(a: f64, b: f64, c: f64, d: f64) {
    let r = analyze(a, b, c, d);
    println!("x^4 + ({a})x^3 + ({b})x^2 + ({c})x + ({d})");
    println!("  t*      = {:.9}   (convex past this scale)", r.t_star);
    println!("  t_u     = {:.9}   (min/max pair annihilates)", r.t_u);
    println!("  merge   = ({:.6}, {:.6})", r.merge_x, r.t_u);
    println!(
        "  x_init  = {:.6}   (surviving critical point at t_u)",
        r.x_init
    );
    match r.confinement {
        Some((lo, hi)) => println!("  zone    = [{lo:.6}, {hi:.6}]"),
        None => println!("  zone    = empty"),
    }
    println!("  side    = {:?}", r.side);

    match fixed_start_descent(a, b, c, d, None) {
        Ok(mins) => println!("  fixed-start descent from -a/4 -> {mins:?}"),
        Err(e) => println!("  fixed-start descent: {e}"),
    }
    match backward_iteration(a, b, c, d, None) {
        Ok(x) => println!("  backward iteration from (x_init, t_u) -> {x:.8}"),
        Err(e) => println!("  backward iteration: {e}"),
    }
    println!();
}

fn main() {
    // the classic double-well counter-example to naive backward flows
    report(-8.0, -18.0, 56.0, 0.0);
    // symmetric double well: two global minimizers with equal values
    report(-4.0, -2.0, 12.0, 0.0);
    // a single-well quartic
    report(0.0, 0.0, 1.0, 0.0);

    // reconstruct a quartic from prescribed critical points
    let (a, b, c) = coeffs_from_critical_points(-2.0, 1.0, 7.0);
    println!("critical points {{-2, 1, 7}} come from (a,b,c) = ({a}, {b}, {c})");
    println!(
        "well-depth gap p(7) - p(-2) = {}",
        value_gap(-2.0, 1.0, 7.0)
    );
}
