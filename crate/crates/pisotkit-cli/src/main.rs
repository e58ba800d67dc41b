//! Command-line surface: Pisot certification, sigma traces and bounds,
//! density scans, the explicit constructions, threshold and rarity scans,
//! continued fractions, and SVG plots. Outputs are deterministic CSV/JSON;
//! see `--help` for the flag set.

mod output;
mod plot;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use output::OutputCtx;
use pisotkit::constructions::{self, ExponentSchedule};
use pisotkit::dioph;
use pisotkit::error::Error as KitError;
use pisotkit::exactreal::enclosure::Enclosure;
use pisotkit::pisot::{self, PisotOutcome};
use pisotkit::sigma::{self, SigmaValue};
use pisotkit::{IntPoly, PrecisionPolicy, SymbolicReal};
use serde::Serialize;
use std::path::PathBuf;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "pisotkit",
    version,
    about = "Certified toolkit for the distribution of alpha*zeta^n mod 1",
    long_about = "Certified arbitrary-precision toolkit around the sequence alpha*zeta^n mod 1:\n\
        Pisot certification, sigma_n traces with liminf/limsup window estimates,\n\
        theorem-level bound reports, explicit extremal constructions, and\n\
        continued-fraction diagnostics.\n\n\
        Symbolic input grammar: rat:p/q | radical:p/q:L | polyroot:<poly>:<max|idxN>\n\
        | infield:<base>:<numer-poly>:<denom>:<shift>, polynomials as x^3-x-1.\n\
        The default precision cap honors PISOTKIT_PREC_MAX."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: GlobalArgs,
}

#[derive(Args, Clone)]
struct GlobalArgs {
    /// Starting working precision in bits
    #[arg(long, global = true, default_value_t = 64)]
    prec_start: u32,
    /// Precision cap in bits (default also via PISOTKIT_PREC_MAX)
    #[arg(long, global = true)]
    prec_max: Option<u32>,
    /// Relative tolerance for certified distances
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Seed for pseudo-random scans
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Output file (manifest written alongside); stdout when omitted
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format where both are supported
    #[arg(long, global = true, default_value = "csv")]
    format: String,
}

impl GlobalArgs {
    fn policy(&self) -> PrecisionPolicy {
        let env_cap = std::env::var("PISOTKIT_PREC_MAX")
            .ok()
            .and_then(|v| v.parse::<u32>().ok());
        let max = self.prec_max.or(env_cap).unwrap_or(1 << 20);
        PrecisionPolicy::new(self.prec_start, max)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Pisot certification and the X^k - M X^(k-1) + N family
    Pisot {
        #[command(subcommand)]
        cmd: PisotCmd,
    },
    /// sigma_n traces, bound reports, density scans, and the power identity
    Sigma {
        #[command(subcommand)]
        cmd: SigmaCmd,
    },
    /// Explicit constructions of extremal alpha and zeta
    Construct {
        #[command(subcommand)]
        cmd: ConstructCmd,
    },
    /// Threshold (finite-difference) scans
    Fd {
        #[command(subcommand)]
        cmd: FdCmd,
    },
    /// Continued fractions and conjugate-angle reports
    Dioph {
        #[command(subcommand)]
        cmd: DiophCmd,
    },
    /// Qualitative rarity scan over a rational rectangle
    Rarity {
        #[command(subcommand)]
        cmd: RarityCmd,
    },
    /// Render a CSV file to a self-contained SVG
    Plot(PlotArgs),
}

#[derive(Subcommand)]
enum PisotCmd {
    /// Certify a polynomial and print the JSON certificate
    Check {
        #[arg(long)]
        poly: String,
    },
    /// Scan the family over k and M (all legal N), CSV output
    Family {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 3)]
        m_min: i64,
        #[arg(long, default_value_t = 12)]
        m_max: i64,
        /// Trace length for measured windows (0 disables measurement)
        #[arg(long, default_value_t = 0)]
        n_trace: u64,
        #[arg(long, default_value_t = 0.5)]
        tail: f64,
    },
}

#[derive(Subcommand)]
enum SigmaCmd {
    /// Per-n certified sigma trace (CSV) with JSON summary option
    Trace {
        #[arg(long)]
        zeta: String,
        #[arg(long, default_value = "rat:1/1")]
        alpha: String,
        #[arg(long)]
        n_max: u64,
        #[arg(long, default_value_t = 0.5)]
        tail: f64,
    },
    /// Bound report for (alpha, zeta), optionally cross-checked against a
    /// measured window
    Bounds {
        #[arg(long)]
        zeta: String,
        #[arg(long, default_value = "rat:1/1")]
        alpha: String,
        /// Trace length for the measured cross-check (0 disables)
        #[arg(long, default_value_t = 0)]
        n_max: u64,
    },
    /// Family density scan over (M, eps), CSV output
    Density {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 3)]
        m_min: i64,
        #[arg(long, default_value_t = 20)]
        m_max: i64,
        /// Comma-separated rational eps grid, e.g. 0,1/5,2/5,3/5,4/5
        #[arg(long, default_value = "0,1/5,2/5,3/5,4/5")]
        eps_grid: String,
        #[arg(long, default_value_t = 0)]
        n_trace: u64,
        #[arg(long, default_value_t = 0.5)]
        tail: f64,
    },
    /// Verify sigma_n(alpha, zeta^k) = sigma_nk(alpha, zeta) on enclosures
    PowerId {
        #[arg(long)]
        zeta: String,
        #[arg(long, default_value = "rat:1/1")]
        alpha: String,
        #[arg(long)]
        power: u32,
        #[arg(long)]
        n_max: u64,
    },
    /// Dual-route self check for Pisot zeta
    DualRoute {
        #[arg(long)]
        zeta: String,
        #[arg(long, default_value = "rat:1/1")]
        alpha: String,
        #[arg(long)]
        n_max: u64,
    },
    /// Integer-scaling conformance check
    Scaling {
        #[arg(long)]
        zeta: String,
        #[arg(long, default_value = "rat:1/1")]
        alpha: String,
        #[arg(long, default_value_t = 1)]
        m: i64,
        #[arg(long, default_value_t = 1)]
        n_factor: i64,
        #[arg(long)]
        n_max: u64,
    },
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// Greedy series for alpha with fast integer approach along the
    /// exponent sequence
    Alpha {
        #[arg(long)]
        zeta: String,
        /// factorial | powers:<base> | list:n1,n2,...
        #[arg(long, default_value = "factorial")]
        exponents: String,
        #[arg(long)]
        steps: usize,
        /// Also measure sigma at each step exponent
        #[arg(long, default_value_t = false)]
        measure: bool,
        /// Resume from a previously written state file
        #[arg(long)]
        resume: Option<PathBuf>,
    },
    /// Nested-interval construction of zeta for fixed rational alpha
    Zeta {
        #[arg(long, default_value = "rat:1/1")]
        alpha: String,
        /// Seed interval a,b with b > a > 1
        #[arg(long, default_value = "2,3")]
        seed_interval: String,
        #[arg(long)]
        steps: usize,
        /// Comma-separated branch choices (1 or 2), defaulting to all 1
        #[arg(long, default_value = "")]
        branches: String,
    },
}

#[derive(Subcommand)]
enum FdCmd {
    /// List indices with certified sigma_n >= 1 + eps and their gaps
    Scan {
        #[arg(long)]
        zeta: String,
        #[arg(long, default_value = "rat:1/1")]
        alpha: String,
        /// Threshold excess, rational (e.g. 1/2 or 0.5)
        #[arg(long)]
        eps: String,
        #[arg(long, default_value_t = 1)]
        n_min: u64,
        #[arg(long)]
        n_max: u64,
    },
}

#[derive(Subcommand)]
enum DiophCmd {
    /// Continued fraction with certified quotients and exponent estimate
    Cf {
        #[arg(long)]
        x: String,
        #[arg(long, default_value_t = 30)]
        depth: usize,
    },
    /// Conjugate-angle report for a Pisot polynomial
    Angle {
        #[arg(long)]
        poly: String,
        #[arg(long, default_value_t = 30)]
        depth: usize,
    },
}

#[derive(Subcommand)]
enum RarityCmd {
    /// Fraction of random rational pairs with a threshold hit, per n_min
    Scan {
        /// alpha interval lo,hi (rationals)
        #[arg(long, default_value = "1/2,3/2")]
        alpha_interval: String,
        /// zeta interval lo,hi (rationals)
        #[arg(long, default_value = "3/2,5/2")]
        zeta_interval: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value = "1/2")]
        eps: String,
        #[arg(long, default_value = "5,10,20,40")]
        n_mins: String,
        #[arg(long, default_value_t = 60)]
        n_max: u64,
    },
}

#[derive(Args)]
struct PlotArgs {
    #[arg(long)]
    input: PathBuf,
    /// trace | density
    #[arg(long)]
    kind: String,
    /// Horizontal bound lines to overlay (repeatable)
    #[arg(long = "bound")]
    bounds: Vec<f64>,
}

fn main() {
    let started = Instant::now();
    let argv: Vec<String> = std::env::args().collect();
    let cli = Cli::parse();
    let code = match run(&cli, argv, started) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {:#}", e);
            exit_code_for(&e)
        }
    };
    std::process::exit(code);
}

fn exit_code_for(e: &anyhow::Error) -> i32 {
    if let Some(kit) = e.downcast_ref::<KitError>() {
        return match kit {
            KitError::PrecisionCap { .. } | KitError::Undecided(_) => 2,
            _ => 1,
        };
    }
    1
}

fn ctx_for(cli: &Cli, argv: Vec<String>, started: Instant, command: &str) -> OutputCtx {
    let policy = cli.global.policy();
    OutputCtx {
        out: cli.global.out.clone(),
        command: command.to_string(),
        argv,
        prec_start: policy.start_bits,
        prec_max: policy.max_bits,
        tol: cli.global.tol,
        seed: cli.global.seed,
        started,
    }
}

fn run(cli: &Cli, argv: Vec<String>, started: Instant) -> Result<()> {
    let policy = cli.global.policy();
    match &cli.command {
        Command::Pisot { cmd } => match cmd {
            PisotCmd::Check { poly } => {
                let ctx = ctx_for(cli, argv, started, "pisot check");
                let p = IntPoly::parse(poly)?;
                let outcome = pisot::certify_pisot(&p, &policy)?;
                let json = pisot::certificate_json(&p, &outcome);
                ctx.emit(&serde_json::to_string_pretty(&json)?)
            }
            PisotCmd::Family { k, m_min, m_max, n_trace, tail } => {
                let ctx = ctx_for(cli, argv, started, "pisot family");
                let csv = family_csv(*k, *m_min, *m_max, *n_trace, *tail, cli.global.tol, &policy)?;
                ctx.emit(&csv)
            }
        },
        Command::Sigma { cmd } => match cmd {
            SigmaCmd::Trace { zeta, alpha, n_max, tail } => {
                let ctx = ctx_for(cli, argv, started, "sigma trace");
                let z = SymbolicReal::parse(zeta)?;
                let a = SymbolicReal::parse(alpha)?;
                let tr = sigma::trace(&a, &z, *n_max, cli.global.tol, &policy)?;
                if cli.global.format == "json" {
                    let summary = trace_summary_json(&tr, *tail)?;
                    ctx.emit(&serde_json::to_string_pretty(&summary)?)
                } else {
                    let mut s =
                        String::from("n,nearest,distance,sigma_lo,sigma_hi,route,exact_hit\n");
                    for sample in &tr.samples {
                        s.push_str(&sigma::sample_csv_row(sample));
                        s.push('\n');
                    }
                    ctx.emit(&s)
                }
            }
            SigmaCmd::Bounds { zeta, alpha, n_max } => {
                let ctx = ctx_for(cli, argv, started, "sigma bounds");
                let z = SymbolicReal::parse(zeta)?;
                let a = SymbolicReal::parse(alpha)?;
                let report = pisot::bound_ladder(&a, &z, &policy)?;
                let mut doc = serde_json::Map::new();
                doc.insert(
                    "bounds".into(),
                    serde_json::to_value(pisot::bound_report_json(&report))?,
                );
                if let SymbolicReal::PolyRoot { poly, .. } = &z {
                    let outcome = pisot::certify_pisot(poly, &policy)?;
                    doc.insert(
                        "cert".into(),
                        serde_json::to_value(pisot::certificate_json(poly, &outcome))?,
                    );
                }
                if *n_max > 0 {
                    let tr = sigma::trace(&a, &z, *n_max, cli.global.tol, &policy)?;
                    let w = sigma::window_estimates(&tr, 0.5)?;
                    let conformance = sigma::check_bounds(&report, &w);
                    doc.insert("conformance".into(), serde_json::to_value(conformance)?);
                    doc.insert("window".into(), serde_json::to_value(window_json(&w))?);
                }
                ctx.emit(&serde_json::to_string_pretty(&serde_json::Value::Object(doc))?)
            }
            SigmaCmd::Density { k, m_min, m_max, eps_grid, n_trace, tail } => {
                let ctx = ctx_for(cli, argv, started, "sigma density");
                let eps: Result<Vec<BigRational>> =
                    eps_grid.split(',').map(parse_rational).collect();
                let rows =
                    sigma::density_scan(*k, (*m_min, *m_max), &eps?, *n_trace, *tail, &policy)?;
                let mut s = String::from("k,M,eps,N,zeta,f,unit,target_lo,target_hi,window_lo,window_hi\n");
                for r in rows {
                    let (wlo, whi) = match &r.window_inf {
                        Some(w) => (dec(&w.lo()), dec(&w.hi())),
                        None => (String::new(), String::new()),
                    };
                    s.push_str(&format!(
                        "{},{},{},{},{},{},{},{},{},{},{}\n",
                        r.k,
                        r.m,
                        r.eps,
                        r.n_param,
                        r.zeta.to_decimal_certified(20).0,
                        r.f.to_decimal_certified(20).0,
                        r.unit,
                        dec(&r.target.lo()),
                        dec(&r.target.hi()),
                        wlo,
                        whi
                    ));
                }
                ctx.emit(&s)
            }
            SigmaCmd::PowerId { zeta, alpha, power, n_max } => {
                let ctx = ctx_for(cli, argv, started, "sigma power-id");
                let z = SymbolicReal::parse(zeta)?;
                let a = SymbolicReal::parse(alpha)?;
                let r = sigma::power_identity_check(&a, &z, *power, *n_max, &policy)?;
                ctx.emit(&serde_json::to_string_pretty(&r)?)
            }
            SigmaCmd::DualRoute { zeta, alpha, n_max } => {
                let ctx = ctx_for(cli, argv, started, "sigma dual-route");
                let z = SymbolicReal::parse(zeta)?;
                let a = SymbolicReal::parse(alpha)?;
                let r = sigma::dual_route_check(&a, &z, *n_max, &policy)?;
                ctx.emit(&serde_json::to_string_pretty(&r)?)
            }
            SigmaCmd::Scaling { zeta, alpha, m, n_factor, n_max } => {
                let ctx = ctx_for(cli, argv, started, "sigma scaling");
                let z = SymbolicReal::parse(zeta)?;
                let a = SymbolicReal::parse(alpha)?;
                let r = constructions::scaling_check(&a, &z, *m, *n_factor, *n_max, &policy)?;
                ctx.emit(&serde_json::to_string_pretty(&r)?)
            }
        },
        Command::Construct { cmd } => match cmd {
            ConstructCmd::Alpha { zeta, exponents, steps, measure, resume } => {
                let ctx = ctx_for(cli, argv, started, "construct alpha");
                let series = if let Some(path) = resume {
                    let text = std::fs::read_to_string(path)
                        .with_context(|| format!("reading {}", path.display()))?;
                    let prev: constructions::GreedySeriesJson = serde_json::from_str(&text)?;
                    let prev = constructions::GreedySeries::from_json(&prev)?;
                    if *steps <= prev.steps_done {
                        prev
                    } else {
                        constructions::greedy_alpha(&prev.zeta, prev.schedule.clone(), *steps, &policy)?
                    }
                } else {
                    let z = SymbolicReal::parse(zeta)?;
                    let schedule = parse_schedule(exponents)?;
                    constructions::greedy_alpha(&z, schedule, *steps, &policy)?
                };
                let mut doc = serde_json::to_value(series.to_json())?;
                if *measure {
                    let measured = series.measure_sigma_at_steps(&policy)?;
                    let rows: Vec<serde_json::Value> = measured
                        .into_iter()
                        .map(|(g, n, v)| {
                            serde_json::json!({
                                "step": g,
                                "exponent": n,
                                "sigma": sigma_value_json(&v),
                            })
                        })
                        .collect();
                    doc.as_object_mut()
                        .unwrap()
                        .insert("measured".into(), serde_json::Value::Array(rows));
                }
                ctx.emit(&serde_json::to_string_pretty(&doc)?)
            }
            ConstructCmd::Zeta { alpha, seed_interval, steps, branches } => {
                let ctx = ctx_for(cli, argv, started, "construct zeta");
                let a = SymbolicReal::parse(alpha)?;
                let (lo, hi) = parse_pair(seed_interval)?;
                let branch_list: Vec<u8> = if branches.is_empty() {
                    vec![1; *steps]
                } else {
                    branches
                        .split(',')
                        .map(|b| b.trim().parse::<u8>().map_err(|e| anyhow!("bad branch: {}", e)))
                        .collect::<Result<_>>()?
                };
                let state = constructions::nested_zeta(&a, (lo, hi), *steps, &branch_list)?;
                let mut doc = serde_json::to_value(state.to_json())?;
                let checks = state.verify_at_midpoint();
                doc.as_object_mut().unwrap().insert(
                    "midpoint".into(),
                    serde_json::Value::String(state.midpoint().to_string()),
                );
                doc.as_object_mut().unwrap().insert(
                    "midpoint_bounds_ok".into(),
                    serde_json::to_value(checks)?,
                );
                doc.as_object_mut().unwrap().insert(
                    "strict_nesting".into(),
                    serde_json::Value::Bool(state.verify_nesting()),
                );
                ctx.emit(&serde_json::to_string_pretty(&doc)?)
            }
        },
        Command::Fd { cmd } => match cmd {
            FdCmd::Scan { zeta, alpha, eps, n_min, n_max } => {
                let ctx = ctx_for(cli, argv, started, "fd scan");
                let z = SymbolicReal::parse(zeta)?;
                let a = SymbolicReal::parse(alpha)?;
                let eps = parse_rational(eps)?;
                let r = constructions::fd_scan(&a, &z, &eps, *n_min, *n_max, &policy)?;
                if cli.global.format == "json" {
                    ctx.emit(&serde_json::to_string_pretty(&fd_json(&r))?)
                } else {
                    let mut s = String::from("n,sigma_lo,sigma_hi,exact_hit,gap_to_prev\n");
                    let mut prev: Option<u64> = None;
                    for &n in &r.hits {
                        let sample = &r.samples[(n - 1) as usize];
                        let (lo, hi, hit) = match &sample.sigma {
                            SigmaValue::Finite(e) => (dec(&e.lo()), dec(&e.hi()), false),
                            SigmaValue::ExactHit => ("inf".into(), "inf".into(), true),
                            SigmaValue::Skipped => continue,
                        };
                        let gap = prev.map(|p| (n - p).to_string()).unwrap_or_default();
                        s.push_str(&format!("{},{},{},{},{}\n", n, lo, hi, hit, gap));
                        prev = Some(n);
                    }
                    ctx.emit(&s)
                }
            }
        },
        Command::Dioph { cmd } => match cmd {
            DiophCmd::Cf { x, depth } => {
                let ctx = ctx_for(cli, argv, started, "dioph cf");
                let v = SymbolicReal::parse(x)?;
                let cf = dioph::cf_expand(&v, *depth, &policy)?;
                let lambda = dioph::irrationality_exponent_estimate(&cf).ok();
                ctx.emit(&serde_json::to_string_pretty(&dioph::cf_json(&cf, lambda.as_ref()))?)
            }
            DiophCmd::Angle { poly, depth } => {
                let ctx = ctx_for(cli, argv, started, "dioph angle");
                let p = IntPoly::parse(poly)?;
                let PisotOutcome::Certified(cert) = pisot::certify_pisot(&p, &policy)? else {
                    bail!("{} is not a certified Pisot polynomial", poly);
                };
                let r = dioph::conjugate_angle_report(&cert, *depth, &policy)?;
                ctx.emit(&serde_json::to_string_pretty(&angle_json(&r))?)
            }
        },
        Command::Rarity { cmd } => match cmd {
            RarityCmd::Scan { alpha_interval, zeta_interval, samples, eps, n_mins, n_max } => {
                let ctx = ctx_for(cli, argv, started, "rarity scan");
                let a = parse_pair(alpha_interval)?;
                let z = parse_pair(zeta_interval)?;
                let eps = parse_rational(eps)?;
                let n_mins: Vec<u64> = n_mins
                    .split(',')
                    .map(|v| v.trim().parse::<u64>().map_err(|e| anyhow!("bad n_min: {}", e)))
                    .collect::<Result<_>>()?;
                let r = constructions::rarity_scan(
                    a,
                    z,
                    *samples,
                    &eps,
                    &n_mins,
                    *n_max,
                    cli.global.seed,
                    24,
                )?;
                ctx.emit(&serde_json::to_string_pretty(&r)?)
            }
        },
        Command::Plot(args) => {
            let ctx = ctx_for(cli, argv, started, "plot");
            let text = std::fs::read_to_string(&args.input)
                .with_context(|| format!("reading {}", args.input.display()))?;
            let (data, scatter) = match args.kind.as_str() {
                "trace" => (plot::parse_trace_csv(&text)?, false),
                "density" => (plot::parse_density_csv(&text)?, true),
                other => bail!("unknown plot kind `{}` (use trace or density)", other),
            };
            let svg = plot::render_svg(&data, scatter, &args.bounds);
            ctx.emit(&svg)
        }
    }
}

fn family_csv(
    k: u32,
    m_min: i64,
    m_max: i64,
    n_trace: u64,
    tail: f64,
    tol: f64,
    policy: &PrecisionPolicy,
) -> Result<String> {
    let mut s = String::from("k,M,N,zeta,f,unit,bound_remark,sigma_window_lo,sigma_window_hi\n");
    for m in m_min..=m_max {
        for n in 1..=(m - 2).max(0) {
            let poly = pisot::family_q(k, m, n)?;
            let PisotOutcome::Certified(cert) = pisot::certify_pisot(&poly, policy)? else {
                bail!("family member {} failed certification", poly);
            };
            let ratio = pisot::conjugate_ratio(&cert, 128)?;
            let (wlo, whi) = if n_trace > 0 {
                let zeta = SymbolicReal::poly_root(
                    poly.clone(),
                    pisotkit::exactreal::RootSelector::MaxRealAbove1,
                );
                let tr = sigma::trace(&SymbolicReal::one(), &zeta, n_trace, tol, policy)?;
                let w = sigma::window_estimates(&tr, tail)?;
                match w.inf_est {
                    Some(e) => (dec(&e.lo()), dec(&e.hi())),
                    None => (String::new(), String::new()),
                }
            } else {
                (String::new(), String::new())
            };
            s.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}\n",
                k,
                m,
                n,
                cert.pisot_root.to_decimal_certified(20).0,
                cert.conjugate_max.to_decimal_certified(20).0,
                cert.is_unit,
                ratio.to_decimal_certified(15).0,
                wlo,
                whi
            ));
        }
    }
    Ok(s)
}

#[derive(Serialize)]
struct WindowJson {
    n_lo: u64,
    n_hi: u64,
    certified: usize,
    exact_hits: usize,
    skipped: usize,
    inf_lo: Option<String>,
    inf_hi: Option<String>,
    sup_lo: Option<String>,
    sup_hi: Option<String>,
    sup_is_infinite: bool,
}

fn window_json(w: &sigma::WindowEstimates) -> WindowJson {
    WindowJson {
        n_lo: w.n_lo,
        n_hi: w.n_hi,
        certified: w.certified,
        exact_hits: w.exact_hits,
        skipped: w.skipped,
        inf_lo: w.inf_est.as_ref().map(|e| dec(&e.lo())),
        inf_hi: w.inf_est.as_ref().map(|e| dec(&e.hi())),
        sup_lo: w.sup_est.as_ref().map(|e| dec(&e.lo())),
        sup_hi: w.sup_est.as_ref().map(|e| dec(&e.hi())),
        sup_is_infinite: w.sup_is_infinite,
    }
}

fn trace_summary_json(tr: &sigma::SigmaTrace, tail: f64) -> Result<serde_json::Value> {
    let w = sigma::window_estimates(tr, tail)?;
    Ok(serde_json::json!({
        "alpha": tr.alpha.to_string(),
        "zeta": tr.zeta.to_string(),
        "n_max": tr.n_max,
        "trace_route_start": tr.trace_route_start,
        "window": window_json(&w),
        "exact_hits": tr.samples.iter().filter(|s| matches!(s.sigma, SigmaValue::ExactHit)).map(|s| s.n).collect::<Vec<_>>(),
    }))
}

fn sigma_value_json(v: &SigmaValue) -> serde_json::Value {
    match v {
        SigmaValue::Finite(e) => serde_json::json!({"lo": dec(&e.lo()), "hi": dec(&e.hi())}),
        SigmaValue::ExactHit => serde_json::json!("exact_hit"),
        SigmaValue::Skipped => serde_json::json!("skipped"),
    }
}

fn fd_json(r: &constructions::FdScanResult) -> serde_json::Value {
    serde_json::json!({
        "eps": r.eps.to_string(),
        "n_min": r.n_min,
        "n_max": r.n_max,
        "hits": r.hits,
        "ambiguous": r.ambiguous,
        "gaps": r.gaps,
        "gap_histogram": r.gap_histogram.iter().map(|(g, c)| (g.to_string(), c)).collect::<std::collections::BTreeMap<_,_>>(),
        "liminf_gap_estimate": r.liminf_gap_estimate,
        "detected_form": r.detected_form,
        "gap_bound_consistent": r.gap_bound_consistent,
    })
}

fn angle_json(r: &dioph::AngleReport) -> serde_json::Value {
    serde_json::json!({
        "regime": format!("{:?}", r.regime),
        "angle_fraction": r.angle_fraction.as_ref().map(|e| e.to_decimal_certified(30).0),
        "tan_angle": r.tan_angle.as_ref().map(|e| e.to_decimal_certified(30).0),
        "quotients": r.quotients.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
        "lambda1_lo": r.lambda1_estimate.as_ref().map(|e| dec(&e.lo())),
        "lambda1_hi": r.lambda1_estimate.as_ref().map(|e| dec(&e.hi())),
        "certified_depth": r.certified_depth,
    })
}

fn dec(d: &pisotkit::Dyadic) -> String {
    Enclosure::exact(d.clone(), 64).to_decimal_certified(15).0
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|e| anyhow!("bad rational `{}`: {}", s, e))?;
        let d: BigInt = d.trim().parse().map_err(|e| anyhow!("bad rational `{}`: {}", s, e))?;
        if d == BigInt::from(0) {
            bail!("zero denominator in `{}`", s);
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((i, f)) = s.split_once('.') {
        let digits = format!("{}{}", i.trim_start_matches('-'), f);
        let n: BigInt = digits.parse().map_err(|e| anyhow!("bad decimal `{}`: {}", s, e))?;
        let n = if s.starts_with('-') { -n } else { n };
        let d = BigInt::from(10u32).pow(f.len() as u32);
        return Ok(BigRational::new(n, d));
    }
    let n: BigInt = s.parse().map_err(|e| anyhow!("bad number `{}`: {}", s, e))?;
    Ok(BigRational::from(n))
}

fn parse_pair(s: &str) -> Result<(BigRational, BigRational)> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| anyhow!("expected `lo,hi` in `{}`", s))?;
    Ok((parse_rational(a)?, parse_rational(b)?))
}

fn parse_schedule(s: &str) -> Result<ExponentSchedule> {
    if s == "factorial" {
        return Ok(ExponentSchedule::Factorial);
    }
    if let Some(b) = s.strip_prefix("powers:") {
        return Ok(ExponentSchedule::Powers(b.parse()?));
    }
    if let Some(list) = s.strip_prefix("list:") {
        let v: Result<Vec<u64>> = list
            .split(',')
            .map(|x| x.trim().parse::<u64>().map_err(|e| anyhow!("bad exponent: {}", e)))
            .collect();
        return Ok(ExponentSchedule::Custom(v?));
    }
    bail!("unknown exponent schedule `{}` (factorial | powers:<b> | list:a,b,c)", s)
}

// keep ToPrimitive in scope for potential u32 conversions in parse paths
#[allow(unused)]
fn _unused_to_primitive(v: &BigInt) -> Option<i64> {
    v.to_i64()
}
