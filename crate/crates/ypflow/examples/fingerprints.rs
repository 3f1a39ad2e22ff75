//! Trace the zero curves of the first three derivatives across scale, find
//! where they merge, and render the picture as an SVG.
//!
//! ```bash
//! cargo run --example fingerprints
//! ```

use ypflow::cli::render_fingerprint_svg;
use ypflow::fingerprint::{fingerprint, fp1_merge_points, fp2_fp3_intersections};
use ypflow::parse::parse;

fn main() {
    let p = parse("x^4-8x^3-18x^2+56x").unwrap();
    let t_max = 8.0;

    let mut branches = Vec::new();
    for k in 1..=3 {
        let traced = fingerprint(&p, k, t_max, 1000);
        println!("order-{k} zero set: {} curve(s)", traced.len());
        for b in &traced {
            let (t0, x0) = b.samples[0];
            match b.dies_at {
                Some(d) => println!("  from ({x0:.4}, {t0:.2}) dies at t = {d:.6}"),
                None => println!("  from ({x0:.4}, {t0:.2}) survives to t = {t_max}"),
            }
        }
        branches.extend(traced);
    }

    let m23 = fp2_fp3_intersections(&p).unwrap();
    let m12 = fp1_merge_points(&p).unwrap();
    println!("\nsecond/third derivative contact: {m23:?}");
    println!("min/max annihilation:            {m12:?}");

    let mut merges = m23;
    merges.extend(m12);
    let svg = render_fingerprint_svg(&branches, None, &merges);
    let path = std::env::temp_dir().join("ypflow_fingerprints.svg");
    std::fs::write(&path, svg).unwrap();
    println!("\nwrote {}", path.display());
}
