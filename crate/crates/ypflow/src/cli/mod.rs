//! Command-line front end.
//!
//! Subcommands: `evolve`, `fingerprint`, `minimize`, `zones`, `quartic`,
//! `sextic`, `trace`, `verify`. Polynomials come either from an expression
//! (`--poly "x^4-8x^3-18x^2+56x"`) or a descending coefficient list
//! (`--coeffs 1,-8,-18,56,0`). Exit codes: 0 success, 2 domain error,
//! 64 usage, 70 internal consistency violation. Given the same flags and
//! build, every artifact is byte-identical regardless of `--threads`.

mod output;
mod svg;

pub use output::fmt_sig;
pub use svg::render_fingerprint_svg;

use crate::error::Error;
use crate::fingerprint::{fingerprint, fp1_merge_points, fp2_fp3_intersections, FingerprintBranch};
use crate::flow::{self, FlowParams};
use crate::heat;
use crate::oracle;
use crate::parse;
use crate::polynomial::Polynomial;
use crate::quartic;
use crate::sextic;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::io::Write;

#[derive(Parser, Debug)]
#[command(
    name = "ypflow",
    version,
    about = "Global minimization of univariate polynomials by heat-evolution convexification and backward trajectory flow"
)]
struct Cli {
    /// Number of worker threads for grid shooting (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Override the singularity detection tolerance of the integrator
    #[arg(long, global = true)]
    tol_sing: Option<f64>,
    /// Override the zone-boundary refinement tolerance
    #[arg(long, global = true)]
    tol_boundary: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct PolyInput {
    /// Polynomial expression, e.g. "x^4-8x^3-18x^2+56x"
    #[arg(long)]
    poly: Option<String>,
    /// Coefficients, highest power first, comma-separated
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    coeffs: Option<Vec<f64>>,
}

impl PolyInput {
    fn polynomial(&self) -> Result<Polynomial, Error> {
        match (&self.poly, &self.coeffs) {
            (Some(expr), None) => parse::parse(expr),
            (None, Some(coeffs)) => Ok(Polynomial::from_descending(coeffs)),
            _ => unreachable!("clap group enforces exactly one source"),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Convexify by heat evolution, then flow the minimizer back to t = 0
    BackwardFlow,
    /// Closed-form quartic backward Euler iteration from (x_init, t_u)
    QuarticDirect,
    /// Euler descent from the fixed start -a/4 (quartics)
    FixedStart,
    /// Brute-force critical-point enumeration
    Oracle,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the heat evolution of the polynomial at a given scale
    Evolve {
        #[command(flatten)]
        input: PolyInput,
        /// Scale (Gaussian variance)
        #[arg(long, short = 't', allow_negative_numbers = true)]
        t: f64,
        /// Write JSON to PATH ("-" for stdout)
        #[arg(long)]
        json: Option<String>,
    },
    /// Trace the zero curves of the first three derivatives across scale
    Fingerprint {
        #[command(flatten)]
        input: PolyInput,
        /// Largest traced scale (default 1.5 t* + 1)
        #[arg(long)]
        t_max: Option<f64>,
        /// Number of scale slices
        #[arg(long, default_value_t = 2000)]
        grid: usize,
        /// Write CSV to PATH ("-" for stdout; default stdout)
        #[arg(long)]
        csv: Option<String>,
        /// Write an SVG rendering to PATH
        #[arg(long)]
        svg: Option<String>,
    },
    /// Globally minimize the polynomial
    Minimize {
        #[command(flatten)]
        input: PolyInput,
        #[arg(long, value_enum, default_value_t = Method::BackwardFlow)]
        method: Method,
        /// Zone-shooting grid size for the report
        #[arg(long, default_value_t = 512)]
        grid: usize,
        #[arg(long)]
        json: Option<String>,
    },
    /// Compute the confinement/escape partition of starting points
    Zones {
        #[command(flatten)]
        input: PolyInput,
        #[arg(long, default_value_t = 512)]
        grid: usize,
        #[arg(long)]
        json: Option<String>,
    },
    /// Closed-form analysis of a monic quartic x^4+ax^3+bx^2+cx+d
    Quartic {
        /// Either "a,b,c,d" or a full descending coefficient list
        #[command(flatten)]
        input: PolyInput,
        #[arg(long)]
        json: Option<String>,
        /// Also emit the critical-point vertex series (t,branch,x,value)
        #[arg(long)]
        csv: Option<String>,
    },
    /// Merge-time structure of a degree-6 polynomial
    Sextic {
        #[command(flatten)]
        input: PolyInput,
        #[arg(long)]
        json: Option<String>,
    },
    /// Integrate one trajectory of the scale-space flow
    Trace {
        #[command(flatten)]
        input: PolyInput,
        /// Starting position at scale --t0
        #[arg(long, allow_negative_numbers = true)]
        x0: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        t0: f64,
        /// Target scale (default 1.5 t* + 1)
        #[arg(long, allow_negative_numbers = true)]
        t1: Option<f64>,
        #[arg(long)]
        csv: Option<String>,
        #[arg(long)]
        json: Option<String>,
    },
    /// Check the attainability verdict against the backward flow
    Verify {
        #[command(flatten)]
        input: PolyInput,
        #[arg(long, default_value_t = 512)]
        grid: usize,
        #[arg(long)]
        json: Option<String>,
    },
}

/// Entry point used by the binary; returns the process exit code.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            let _ = e.print();
            return code;
        }
    };
    if let Some(n) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    match dispatch(cli) {
        Ok(()) => 0,
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::ConsistencyViolation(_) => 70,
                _ => 2,
            }
        }
        // a closed stdout (e.g. piping into `head`) is not an error
        Err(Failure::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(Failure::Io(e)) => {
            eprintln!("io error: {e}");
            74
        }
    }
}

enum Failure {
    Domain(Error),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn flow_params(cli_sing: Option<f64>) -> FlowParams {
    let mut p = FlowParams::default();
    if let Some(s) = cli_sing {
        p.sing_tol = s;
    }
    p
}

fn write_json<T: Serialize>(target: Option<&str>, value: &T) -> Result<(), Failure> {
    let target = target.unwrap_or("-");
    let mut sink = output::Sink::open(target)?;
    serde_json::to_writer_pretty(&mut sink, value).map_err(std::io::Error::from)?;
    writeln!(sink)?;
    Ok(())
}

#[derive(Serialize)]
struct EvolveOut {
    t: f64,
    expr: String,
    coeffs_desc: Vec<f64>,
}

#[derive(Serialize)]
struct MinimizeOut {
    minimizer: f64,
    value: f64,
    attainable: bool,
    oracle: Option<f64>,
    zones: Vec<(f64, f64)>,
    t0: f64,
}

#[derive(Serialize)]
struct MergePointOut {
    x: f64,
    t: f64,
    kind: crate::fingerprint::MergeKind,
}

#[derive(Serialize)]
struct ZonesOut {
    zones: Vec<(f64, f64)>,
    merge_points: Vec<MergePointOut>,
    boundary_tol: f64,
}

#[derive(Serialize)]
struct SexticOut {
    shift: f64,
    depressed: sextic::SexticForm,
    delta_coeffs_desc: Vec<f64>,
    merge_times: Vec<f64>,
    merges: Vec<sextic::SexticMerge>,
    negative_roots: Vec<f64>,
}

#[derive(Serialize)]
struct TraceOut {
    samples: Vec<(f64, f64)>,
    termination: flow::Termination,
    direction: flow::Direction,
}

#[derive(Serialize)]
struct VerifyOut {
    attainable: bool,
    consistent: bool,
    oracle_minimizers: Vec<f64>,
    oracle_value: f64,
    flow_minimizer: f64,
    flow_attainable: bool,
    zones: Vec<(f64, f64)>,
}

fn dispatch(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Evolve { input, t, json } => {
            let p = input.polynomial()?;
            let evolved = heat::evolve_at(&p, t);
            if json.is_some() {
                let mut coeffs_desc: Vec<f64> = evolved.coeffs().to_vec();
                coeffs_desc.reverse();
                write_json(
                    json.as_deref(),
                    &EvolveOut {
                        t,
                        expr: evolved.to_string(),
                        coeffs_desc,
                    },
                )?;
            } else {
                println!("{evolved}");
            }
            Ok(())
        }
        Command::Fingerprint {
            input,
            t_max,
            grid,
            csv,
            svg,
        } => {
            let p = input.polynomial()?;
            let t_max = match t_max {
                Some(t) => t,
                None => default_t_max(&p),
            };
            let mut branches: Vec<FingerprintBranch> = Vec::new();
            for k in 1..=3 {
                branches.extend(fingerprint(&p, k, t_max, grid));
            }
            let mut out = output::Sink::open(csv.as_deref().unwrap_or("-"))?;
            writeln!(out, "k,branch_id,t,x")?;
            let mut branch_id;
            for k in 1..=3 {
                branch_id = 0;
                for b in branches.iter().filter(|b| b.k == k) {
                    for &(t, x) in &b.samples {
                        writeln!(out, "{k},{branch_id},{},{}", fmt_sig(t, 12), fmt_sig(x, 12))?;
                    }
                    branch_id += 1;
                }
            }
            if let Some(svg_path) = svg {
                let merges = [fp2_fp3_intersections(&p)?, fp1_merge_points(&p)?].concat();
                let doc = render_fingerprint_svg(&branches, None, &merges);
                let mut sink = output::Sink::open(&svg_path)?;
                sink.write_all(doc.as_bytes())?;
            }
            Ok(())
        }
        Command::Minimize {
            input,
            method,
            grid,
            json,
        } => {
            let p = input.polynomial()?;
            let out = run_minimize(&p, method, grid, flow_params(cli.tol_sing))?;
            write_json(json.as_deref(), &out)?;
            Ok(())
        }
        Command::Zones { input, grid, json } => {
            let p = input.polynomial()?;
            let report = flow::classify_zones_with(
                &p,
                grid,
                flow_params(cli.tol_sing),
                cli.tol_boundary.unwrap_or(1e-6),
            )?;
            let out = ZonesOut {
                zones: report.confinement.clone(),
                merge_points: report
                    .merge_points
                    .iter()
                    .map(|m| MergePointOut {
                        x: m.x,
                        t: m.t,
                        kind: m.kind,
                    })
                    .collect(),
                boundary_tol: report.boundary_tol,
            };
            write_json(json.as_deref(), &out)?;
            Ok(())
        }
        Command::Quartic { input, json, csv } => {
            let p = input.polynomial()?;
            let report = match (&input.coeffs, p.degree()) {
                // "a,b,c,d" shorthand for the monic quartic
                (Some(c), _) if c.len() == 4 => quartic::analyze(c[0], c[1], c[2], c[3]),
                (_, 4) => {
                    let m = p.monic();
                    quartic::analyze(m.coeff(3), m.coeff(2), m.coeff(1), m.coeff(0))
                }
                (_, got) => return Err(Error::WrongDegree { expected: 4, got }.into()),
            };
            if let Some(csv) = csv {
                write_quartic_vertices(&csv, &report)?;
            }
            write_json(json.as_deref(), &report)?;
            Ok(())
        }
        Command::Sextic { input, json } => {
            let p = input.polynomial()?;
            let form = sextic::depress(&p)?;
            let (merges, negative) = sextic::merge_structure(form.b, form.c, form.d)?;
            let delta = sextic::delta_t(form.b, form.c, form.d);
            let mut delta_desc: Vec<f64> = delta.coeffs().to_vec();
            delta_desc.reverse();
            let out = SexticOut {
                shift: form.shift,
                depressed: form,
                delta_coeffs_desc: delta_desc,
                merge_times: merges.iter().map(|m| m.t).collect(),
                merges,
                negative_roots: negative,
            };
            write_json(json.as_deref(), &out)?;
            Ok(())
        }
        Command::Trace {
            input,
            x0,
            t0,
            t1,
            csv,
            json,
        } => {
            let p = input.polynomial()?;
            let t1 = match t1 {
                Some(t) => t,
                None => default_t_max(&p),
            };
            let traj = flow::integrate_yp_with(&p, x0, t0, t1, flow_params(cli.tol_sing))?;
            if json.is_some() {
                write_json(
                    json.as_deref(),
                    &TraceOut {
                        samples: traj.samples.clone(),
                        termination: traj.termination,
                        direction: traj.direction,
                    },
                )?;
            } else {
                let mut out = output::Sink::open(csv.as_deref().unwrap_or("-"))?;
                writeln!(out, "t,x")?;
                for &(t, x) in &traj.samples {
                    writeln!(out, "{},{}", fmt_sig(t, 12), fmt_sig(x, 12))?;
                }
            }
            Ok(())
        }
        Command::Verify { input, grid, json } => {
            let p = input.polynomial()?;
            let a = flow::attainability_with(&p, grid)?;
            let out = VerifyOut {
                attainable: a.attainable,
                consistent: true,
                oracle_minimizers: a.oracle.minimizers.clone(),
                oracle_value: a.oracle.value,
                flow_minimizer: a.flow.minimizer,
                flow_attainable: a.flow.attainable,
                zones: a.zones.confinement.clone(),
            };
            write_json(json.as_deref(), &out)?;
            Ok(())
        }
    }
}

/// The evolving critical points with their values, one row per surviving
/// critical point per scale slice: the vertex series of the well/barrier
/// triangle as it collapses.
fn write_quartic_vertices(target: &str, r: &quartic::QuarticReport) -> Result<(), Failure> {
    let p = Polynomial::new(vec![r.d, r.c, r.b, r.a, 1.0]);
    let t_hi = if r.t_u > 0.0 {
        r.t_u
    } else {
        r.t_star.max(0.0) + 1.0
    };
    let mut out = output::Sink::open(target)?;
    writeln!(out, "t,branch,x,value")?;
    let steps = 200usize;
    for i in 0..=steps {
        let t = t_hi * i as f64 / steps as f64;
        let slice = heat::evolve_at(&p, t);
        let Ok(roots) = crate::polynomial::real_roots(&slice.derivative(1), 1e-12) else {
            continue;
        };
        for (branch, x) in roots.values().into_iter().enumerate() {
            writeln!(
                out,
                "{},{branch},{},{}",
                fmt_sig(t, 12),
                fmt_sig(x, 12),
                fmt_sig(slice.eval(x), 12)
            )?;
        }
    }
    Ok(())
}

fn default_t_max(p: &Polynomial) -> f64 {
    heat::convexification_time(&p.scale(p.leading().signum()))
        .map(|r| 1.5 * r.t_star + 1.0)
        .unwrap_or(1.0)
}

fn run_minimize(
    p: &Polynomial,
    method: Method,
    grid: usize,
    params: FlowParams,
) -> Result<MinimizeOut, Error> {
    let oracle = oracle::brute_force_min(p)?;
    let zones = flow::classify_zones_with(p, grid, params, 1e-6)?;
    let (minimizer, t0) = match method {
        Method::BackwardFlow => {
            let r = flow::backward_flow_minimize_with(p, params)?;
            (r.minimizer, r.t0)
        }
        Method::QuarticDirect => {
            let (a, b, c, d) = monic_quartic_coeffs(p)?;
            let x = match quartic::backward_iteration(a, b, c, d, None) {
                Ok(x) => x,
                // symmetric case: report the leftmost of the two minimizers
                Err(Error::NotApplicable(_)) => quartic::fixed_start_descent(a, b, c, d, None)?[0],
                Err(e) => return Err(e),
            };
            (x, 0.0)
        }
        Method::FixedStart => {
            let (a, b, c, d) = monic_quartic_coeffs(p)?;
            (quartic::fixed_start_descent(a, b, c, d, None)?[0], 0.0)
        }
        Method::Oracle => (oracle.minimizers[0], 0.0),
    };
    let nearest = oracle
        .minimizers
        .iter()
        .copied()
        .min_by(|u, v| (u - minimizer).abs().total_cmp(&(v - minimizer).abs()));
    let attainable = nearest.is_some_and(|m| (m - minimizer).abs() <= oracle::MATCH_TOL);
    Ok(MinimizeOut {
        minimizer,
        value: p.eval(minimizer),
        attainable,
        oracle: nearest,
        zones: zones.confinement,
        t0,
    })
}

fn monic_quartic_coeffs(p: &Polynomial) -> Result<(f64, f64, f64, f64), Error> {
    if p.degree() != 4 {
        return Err(Error::WrongDegree {
            expected: 4,
            got: p.degree(),
        });
    }
    let m = p.monic();
    Ok((m.coeff(3), m.coeff(2), m.coeff(1), m.coeff(0)))
}
