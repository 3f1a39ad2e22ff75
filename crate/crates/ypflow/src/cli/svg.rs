//! Minimal hand-rolled SVG rendering of fingerprint curves over the
//! `(x, t)` plane: one polyline per branch with a distinct stroke per
//! derivative order, merge points as filled markers, confinement intervals
//! as a shaded band at `t = 0`, and labeled axes. Vector-only on purpose:
//! the output is diffable in golden tests.

use super::output::fmt_sig;
use crate::fingerprint::{FingerprintBranch, MergePoint};
use crate::flow::ZoneReport;
use std::fmt::Write;

const W: f64 = 800.0;
const H: f64 = 600.0;
const PAD: f64 = 50.0;

fn stroke(k: usize) -> &'static str {
    match k {
        1 => "#1f77b4",
        2 => "#d62728",
        _ => "#2ca02c",
    }
}

pub fn render_fingerprint_svg(
    branches: &[FingerprintBranch],
    zones: Option<&ZoneReport>,
    merges: &[MergePoint],
) -> String {
    let mut x_lo = f64::INFINITY;
    let mut x_hi = f64::NEG_INFINITY;
    let mut t_hi = f64::NEG_INFINITY;
    for b in branches {
        for &(t, x) in &b.samples {
            x_lo = x_lo.min(x);
            x_hi = x_hi.max(x);
            t_hi = t_hi.max(t);
        }
    }
    for m in merges {
        x_lo = x_lo.min(m.x);
        x_hi = x_hi.max(m.x);
        t_hi = t_hi.max(m.t);
    }
    if let Some(z) = zones {
        for &(lo, hi) in &z.confinement {
            x_lo = x_lo.min(lo);
            x_hi = x_hi.max(hi);
        }
    }
    if !x_lo.is_finite() {
        (x_lo, x_hi, t_hi) = (-1.0, 1.0, 1.0);
    }
    let span_x = (x_hi - x_lo).max(1e-9);
    let (x_lo, x_hi) = (x_lo - 0.05 * span_x, x_hi + 0.05 * span_x);
    let t_hi = if t_hi <= 0.0 { 1.0 } else { t_hi * 1.05 };

    let px = |x: f64| PAD + (x - x_lo) / (x_hi - x_lo) * (W - 2.0 * PAD);
    let py = |t: f64| H - PAD - t / t_hi * (H - 2.0 * PAD);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
    );
    let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);

    if let Some(z) = zones {
        for &(lo, hi) in &z.confinement {
            let _ = writeln!(
                s,
                r##"<rect x="{}" y="{}" width="{}" height="8" fill="#bbbbbb" opacity="0.8"/>"##,
                fmt_sig(px(lo), 6),
                fmt_sig(H - PAD - 8.0, 6),
                fmt_sig((px(hi) - px(lo)).max(1.0), 6),
            );
        }
    }

    for b in branches {
        let mut pts = String::new();
        for &(t, x) in &b.samples {
            let _ = write!(pts, "{},{} ", fmt_sig(px(x), 6), fmt_sig(py(t), 6));
        }
        let _ = writeln!(
            s,
            r#"<polyline points="{}" fill="none" stroke="{}" stroke-width="1.5"/>"#,
            pts.trim_end(),
            stroke(b.k),
        );
    }

    for m in merges {
        let _ = writeln!(
            s,
            r#"<circle cx="{}" cy="{}" r="4" fill="black"/>"#,
            fmt_sig(px(m.x), 6),
            fmt_sig(py(m.t), 6),
        );
    }

    // axes
    let _ = writeln!(
        s,
        r#"<line x1="{p}" y1="{b}" x2="{r}" y2="{b}" stroke="black"/>"#,
        p = PAD,
        b = H - PAD,
        r = W - PAD,
    );
    let _ = writeln!(
        s,
        r#"<line x1="{p}" y1="{b}" x2="{p}" y2="{t}" stroke="black"/>"#,
        p = PAD,
        b = H - PAD,
        t = PAD,
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" font-size="14">x</text>"#,
        W - PAD + 12.0,
        H - PAD + 4.0
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" font-size="14">t</text>"#,
        PAD - 14.0,
        PAD - 8.0
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" font-size="11">{}</text>"#,
        PAD,
        H - PAD + 16.0,
        fmt_sig(x_lo, 6)
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" font-size="11" text-anchor="end">{}</text>"#,
        W - PAD,
        H - PAD + 16.0,
        fmt_sig(x_hi, 6)
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" font-size="11">{}</text>"#,
        PAD - 44.0,
        PAD + 4.0,
        fmt_sig(t_hi, 6)
    );
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingerprint::fingerprint;
    use crate::polynomial::Polynomial;

    #[test]
    fn renders_polylines_and_markers() {
        let p = Polynomial::from_descending(&[1.0, -8.0, -18.0, 56.0, 0.0]);
        let mut branches = fingerprint(&p, 1, 8.0, 100);
        branches.extend(fingerprint(&p, 2, 8.0, 100));
        branches.extend(fingerprint(&p, 3, 8.0, 100));
        let merges = crate::fingerprint::fp1_merge_points(&p).unwrap();
        let svg = render_fingerprint_svg(&branches, None, &merges);
        assert_eq!(svg.matches("<polyline").count(), 6);
        assert_eq!(svg.matches("<circle").count(), 1);
        assert!(svg.contains(">x</text>") && svg.contains(">t</text>"));
    }

    #[test]
    fn deterministic_bytes() {
        let p = Polynomial::from_descending(&[1.0, 0.0, 1.0, 0.0, 0.0]);
        let b = fingerprint(&p, 1, 2.0, 50);
        let a1 = render_fingerprint_svg(&b, None, &[]);
        let a2 = render_fingerprint_svg(&b, None, &[]);
        assert_eq!(a1, a2);
    }
}
