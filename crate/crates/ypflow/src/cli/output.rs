//! Output plumbing: significant-digit decimal formatting and the
//! path-or-stdout sink.

use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

/// Locale-independent decimal formatting with a fixed number of significant
/// digits (no exponent notation, no trimming), so emitted CSV/SVG bytes are
/// stable across runs and platforms.
pub fn fmt_sig(v: f64, sig: u32) -> String {
    if v == 0.0 {
        return format!("{:.*}", sig as usize - 1, 0.0);
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let mag = v.abs().log10().floor() as i32;
    let decimals = (sig as i32 - 1 - mag).max(0) as usize;
    format!("{v:.decimals$}")
}

/// Where an artifact goes: `-` means stdout.
pub enum Sink {
    Stdout(io::Stdout),
    File(File),
}

impl Sink {
    pub fn open(target: &str) -> io::Result<Sink> {
        if target == "-" {
            Ok(Sink::Stdout(io::stdout()))
        } else {
            Ok(Sink::File(File::create(Path::new(target))?))
        }
    }
}

impl Write for Sink {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        match self {
            Sink::Stdout(s) => s.write(buf),
            Sink::File(f) => f.write(buf),
        }
    }

    fn flush(&mut self) -> io::Result<()> {
        match self {
            Sink::Stdout(s) => s.flush(),
            Sink::File(f) => f.flush(),
        }
    }
}
