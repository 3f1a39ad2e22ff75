//! Closed-form heat evolution of a polynomial: the smoothed family
//! `p(x, t)`, the moving-average (Steklov) transform for comparison, and
//! the scale past which the evolution is convex.
//!
//! ```bash
//! cargo run --example heat_evolution
//! ```

use ypflow::heat::{convexification_time, evolve_at, evolve_symbolic, steklov};
use ypflow::parse::parse;

fn main() {
    let p = parse("x^4-8x^3-18x^2+56x").unwrap();
    println!("p(x)    = {p}");

    let evolved = evolve_symbolic(&p);
    println!("\ncoefficients of p(x,t) as polynomials in t (power of x: coefficient):");
    for (k, c) in evolved.sym().tcoeffs().iter().enumerate().rev() {
        println!("  x^{k}: {c}");
    }

    for t in [0.0, 1.0, 2.0, 7.0] {
        println!("p(x,{t}) = {}", evolve_at(&p, t));
    }

    let t_star = convexification_time(&p).unwrap();
    println!(
        "\nconvex for every t >= {} (certificate {:?})",
        t_star.t_star, t_star.certificate
    );

    // the averaging transform smooths less aggressively at the same width
    let t = 1.0;
    println!("\nGaussian vs moving-average smoothing at t = {t}:");
    println!("  heat:    {}", evolve_at(&p, t));
    println!("  steklov: {}", steklov(&p, t).unwrap());

    let sextic = parse("x^6-0.3726x^4+0.0574x^3+0.0306x^2-0.0084x").unwrap();
    let t6 = convexification_time(&sextic).unwrap();
    println!("\ndegree-6 example convexifies at t* = {:.6}", t6.t_star);
}
