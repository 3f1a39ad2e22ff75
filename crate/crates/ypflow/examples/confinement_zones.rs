//! Partition starting positions into the confinement zone (trajectories
//! that collide and stop) and the escape zone (trajectories that survive to
//! the convex regime), then check the attainability verdict: the backward
//! flow finds the global minimizer exactly when it starts in the escape
//! zone.
//!
//! ```bash
//! cargo run --example confinement_zones
//! ```

use ypflow::flow::{attainability_with, classify_zones};
use ypflow::parse::parse;

fn main() {
    let quartic = parse("x^4-8x^3-18x^2+56x").unwrap();
    let report = classify_zones(&quartic, 256).unwrap();
    println!("quartic confinement zone: {:?}", report.confinement);
    println!(
        "  closed form: [2 - sqrt(21), 2 + sqrt(21)] = [{:.6}, {:.6}]",
        2.0 - 21f64.sqrt(),
        2.0 + 21f64.sqrt()
    );
    println!("  organizing merge points: {:?}", report.merge_points);

    let sextic = parse("x^6-0.3726x^4+0.0574x^3+0.0306x^2-0.0084x").unwrap();
    let a = attainability_with(&sextic, 512).unwrap();
    println!("\nsextic confinement zone: {:?}", a.zones.confinement);
    println!(
        "  global minimizer {:.6} (value {:.6})",
        a.oracle.minimizers[0], a.oracle.value
    );
    println!("  confined? {}", a.zones.contains(a.oracle.minimizers[0]));
    println!("  backward flow landed on {:.6}", a.flow.minimizer);
    println!(
        "  attainable by backward flow: {} (as the zone membership predicts)",
        a.attainable
    );
}
