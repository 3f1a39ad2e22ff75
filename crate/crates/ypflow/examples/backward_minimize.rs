//! Global minimization by convexify-then-flow-back, with the brute-force
//! oracle as referee. Degree 4 always succeeds; degree 6 succeeds exactly
//! when the global minimizer lies in the escape zone, and the second
//! sextic below shows a genuine failure.
//!
//! ```bash
//! cargo run --example backward_minimize
//! ```

use ypflow::flow::backward_flow_minimize;
use ypflow::oracle::brute_force_min;
use ypflow::parse::parse;

fn run(expr: &str) {
    let p = parse(expr).unwrap();
    let r = backward_flow_minimize(&p).unwrap();
    let oracle = brute_force_min(&p).unwrap();
    println!("p(x) = {expr}");
    println!(
        "  started at x = {:.6} on the convex slice t0 = {:.3}",
        r.trajectory.samples[0].1, r.t0
    );
    println!(
        "  backward flow -> x = {:.6}, p = {:.6}",
        r.minimizer, r.value
    );
    println!(
        "  oracle        -> x = {:?}, p = {:.6}",
        oracle.minimizers, oracle.value
    );
    println!(
        "  verdict: {}",
        if r.attainable {
            "reached the global minimizer"
        } else {
            "landed on a non-global critical point"
        }
    );
    println!();
}

fn main() {
    run("x^4+0.2114x^3-2.6841x^2-0.1110x+1.2406");
    run("x^4-8x^3-18x^2+56x");
    // degree 6, global minimizer in the escape zone: succeeds
    run("x^6+0.6987x^5-1.0908x^4-0.4216x^3+0.2177x^2+0.1071x");
    // degree 6, global minimizer confined: the flow cannot reach it
    run("x^6-0.3726x^4+0.0574x^3+0.0306x^2-0.0084x");
}
