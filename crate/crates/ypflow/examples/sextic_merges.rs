//! Degree-6 merge structure in closed form: depress the x^5 term, read the
//! merge scales off the explicit discriminant table, recover each double
//! root, and classify the root pattern at every event.
//!
//! ```bash
//! cargo run --example sextic_merges
//! ```

use ypflow::parse::parse;
use ypflow::sextic::{delta_t, depress, merge_structure, x_of_t};

fn main() {
    let p = parse("x^6+0.6987x^5-1.0908x^4-0.4216x^3+0.2177x^2+0.1071x").unwrap();
    let form = depress(&p).unwrap();
    println!("depressed with shift {}: {}", form.shift, form.polynomial());

    let delta = delta_t(form.b, form.c, form.d);
    let desc: Vec<f64> = delta.coeffs().iter().rev().copied().collect();
    println!("\nmerge discriminant delta(t), coefficients t^6 .. t^0:");
    println!("  {desc:?}");

    let (merges, negative) = merge_structure(form.b, form.c, form.d).unwrap();
    for m in &merges {
        println!(
            "  merge at t = {:.6}: double root x = {:.6} ({:?})",
            m.t, m.x, m.case
        );
        println!(
            "    closed-form x(t) = {:.6}",
            x_of_t(form.b, form.c, form.d, m.t).unwrap()
        );
    }
    if !negative.is_empty() {
        println!("  negative discriminant zeros (diagnostic): {negative:?}");
    }

    // positions in the original frame differ by the depression shift
    for m in &merges {
        println!("  in the original variable: x = {:.6}", m.x - form.shift);
    }
}
