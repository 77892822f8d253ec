//! Command-line front end. Every command is a thin wrapper over the library:
//! parse flags, call one library operation, render the result.

mod check_cmd;
mod parse;
mod render;
mod tables_cmd;

use anyhow::Result;
use clap::{Parser, Subcommand, ValueEnum};
use norlund_core::asymp::{
    dispatch, partial_values, rel_error_vs_exact, sum_s0, sum_s1, AsymptoticResult,
};
use norlund_core::cpx::BigComplex;
use norlund_core::descent::{trace_paths, DEFAULT_MAX_LEN, DEFAULT_STEP};
use norlund_core::prec::PrecisionConfig;
use norlund_core::ratcore::{self, ComplexRational};
use norlund_core::saddle::{closed_form_a, expansion_coefficients, SaddleContext};
use norlund_core::Error as CoreError;
use num_complex::Complex64;
use render::{complex_str, emit, float_str, json_pretty, sci, Format};
use rug::Float;
use serde_json::json;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "norlund",
    version,
    about = "Dual-track evaluator for the scaled polynomial family: exact \
             rational values and saddle-point asymptotics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Working precision in decimal digits (minimum 30).
    #[arg(long, global = true, default_value_t = 60)]
    prec: u32,

    /// Refusal distance from the segment [0,1] for the asymptotic track.
    #[arg(long, global = true, default_value_t = 0.05)]
    eps: f64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads for table generation (default: all processors).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ForcedRegime {
    /// Dominant expansion only.
    S0,
    /// Exponentially small companion expansion, evaluated even outside its
    /// strip of validity.
    S1,
}

#[derive(Subcommand)]
enum Command {
    /// Exact rational value at the scaled argument.
    Exact {
        #[arg(long)]
        n: u32,
        /// Complex argument as re[,im], each part an exact rational.
        #[arg(long, value_parser = parse::parse_complex)]
        z: ComplexRational,
    },
    /// Exact coefficients of the degree-n polynomial.
    Poly {
        #[arg(long)]
        n: u32,
        /// Emit the second-kind variant (argument shifted by one) instead.
        #[arg(long)]
        second_kind: bool,
    },
    /// Asymptotic evaluation with regime selection.
    Asym {
        #[arg(long)]
        n: u32,
        #[arg(long, value_parser = parse::parse_complex)]
        z: ComplexRational,
        /// Truncation index of the expansion.
        #[arg(long = "K", default_value_t = 3)]
        k: usize,
        /// Also compute the true relative error against the exact track.
        #[arg(long)]
        compare_exact: bool,
        /// Bypass dispatch and evaluate one expansion directly.
        #[arg(long, value_enum)]
        force_regime: Option<ForcedRegime>,
    },
    /// Expansion coefficients A_0..A_kmax at one saddle.
    Coeffs {
        #[arg(long, value_parser = parse::parse_complex)]
        z: ComplexRational,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        saddle: i64,
        #[arg(long, default_value_t = 10)]
        kmax: usize,
    },
    /// Regenerate one of the four reference comparison tables.
    Table {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        id: u8,
    },
    /// Steepest descent/ascent paths through one saddle.
    Paths {
        #[arg(long, value_parser = parse::parse_complex)]
        z: ComplexRational,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        saddle: i64,
        #[arg(long, default_value_t = DEFAULT_STEP)]
        step: f64,
        #[arg(long, default_value_t = DEFAULT_MAX_LEN)]
        max_len: f64,
    },
    /// Run the invariant suites and report pass/fail counts.
    Check {
        #[arg(long, value_enum, default_value_t = check_cmd::Suite::All)]
        suite: check_cmd::Suite,
    },
}

fn to_big(z: &ComplexRational, p: u32) -> BigComplex {
    BigComplex::new(Float::with_val(p, &z.re), Float::with_val(p, &z.im))
}

fn rational_pair(z: &ComplexRational) -> String {
    if z.im == 0 {
        z.re.to_string()
    } else {
        format!("{},{}", z.re, z.im)
    }
}

fn exit_code(err: &anyhow::Error) -> i32 {
    match err.downcast_ref::<CoreError>() {
        Some(
            CoreError::RegimeViolation(_)
            | CoreError::ExclusionBand { .. }
            | CoreError::PoleArgument(_)
            | CoreError::DegenerateSaddle(_),
        ) => 3,
        _ => 1,
    }
}

fn main() {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
            .ok();
    }
    match run(&cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(exit_code(&e));
        }
    }
}

fn run(cli: &Cli) -> Result<i32> {
    let cfg = PrecisionConfig {
        exclusion_eps: cli.eps,
        ..PrecisionConfig::with_digits(cli.prec)
    };
    let content = match &cli.command {
        Command::Exact { n, z } => cmd_exact(*n, z, &cfg, cli.format)?,
        Command::Poly { n, second_kind } => cmd_poly(*n, *second_kind, cli.format)?,
        Command::Asym {
            n,
            z,
            k,
            compare_exact,
            force_regime,
        } => cmd_asym(*n, z, *k, *compare_exact, *force_regime, &cfg, cli.format)?,
        Command::Coeffs { z, saddle, kmax } => cmd_coeffs(z, *saddle, *kmax, &cfg, cli.format)?,
        Command::Table { id } => tables_cmd::run(*id, &cfg, cli.format)?,
        Command::Paths {
            z,
            saddle,
            step,
            max_len,
        } => cmd_paths(z, *saddle, *step, *max_len, cli.format)?,
        Command::Check { suite } => {
            let (content, failed) = check_cmd::run(*suite, &cfg, cli.format)?;
            emit(&cli.out, &content)?;
            return Ok(if failed == 0 { 0 } else { 1 });
        }
    };
    emit(&cli.out, &content)?;
    Ok(0)
}

fn cmd_exact(n: u32, z: &ComplexRational, cfg: &PrecisionConfig, format: Format) -> Result<String> {
    let v = ratcore::eval_exact(n, z);
    let p = cfg.bits();
    let dec = to_big(&v, p);
    let digits = cfg.digits as usize;
    Ok(match format {
        Format::Text => format!(
            "n = {n}, z = {}\nre = {}\nim = {}\ndecimal = {}\n",
            rational_pair(z),
            v.re,
            v.im,
            complex_str(&dec, digits)
        ),
        Format::Json => json_pretty(&json!({
            "n": n,
            "z": { "re": z.re.to_string(), "im": z.im.to_string() },
            "exact": { "re": v.re.to_string(), "im": v.im.to_string() },
            "decimal": {
                "re": float_str(&dec.re, digits),
                "im": float_str(&dec.im, digits),
            },
        })),
        Format::Csv => format!(
            "n,z_re,z_im,re,im,decimal_re,decimal_im\n{n},{},{},{},{},{},{}\n",
            z.re,
            z.im,
            v.re,
            v.im,
            float_str(&dec.re, digits),
            float_str(&dec.im, digits)
        ),
    })
}

fn cmd_poly(n: u32, second_kind: bool, format: Format) -> Result<String> {
    let poly = if second_kind {
        ratcore::second_kind_polynomial(n)
    } else {
        ratcore::norlund_polynomial(n)
    };
    Ok(match format {
        Format::Text => {
            let mut s = format!("n = {n}, degree = {}\n", poly.degree());
            for (k, c) in poly.coeffs.iter().enumerate() {
                s.push_str(&format!("z^{k}: {c}\n"));
            }
            s
        }
        Format::Json => json_pretty(&json!({
            "n": n,
            "second_kind": second_kind,
            "coefficients": poly.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut s = String::from("power,coefficient\n");
            for (k, c) in poly.coeffs.iter().enumerate() {
                s.push_str(&format!("{k},{c}\n"));
            }
            s
        }
    })
}

fn evaluate(
    n: u32,
    z: &BigComplex,
    k: usize,
    force: Option<ForcedRegime>,
    cfg: &PrecisionConfig,
) -> norlund_core::Result<AsymptoticResult> {
    match force {
        None => dispatch(n, z, k, cfg),
        Some(ForcedRegime::S0) => sum_s0(n, z, k, cfg),
        Some(ForcedRegime::S1) => sum_s1(n, z, k, cfg, true),
    }
}

fn cmd_asym(
    n: u32,
    z: &ComplexRational,
    k: usize,
    compare_exact: bool,
    force: Option<ForcedRegime>,
    cfg: &PrecisionConfig,
    format: Format,
) -> Result<String> {
    let p = cfg.bits();
    let zb = to_big(z, p);
    let r = evaluate(n, &zb, k, force, cfg)?;
    let pref_abs = r.prefactor.abs();
    let partials = partial_values(&r);
    let term_mags: Vec<f64> = r
        .terms
        .iter()
        .map(|t| (t.abs() * &pref_abs).to_f64())
        .collect();
    let rel = compare_exact.then(|| rel_error_vs_exact(n, z, &r.value));
    let digits = cfg.digits as usize;
    Ok(match format {
        Format::Text => {
            let mut s = format!(
                "n = {n}, z = {}, K = {k}\nregime = {}\nvalue = {}\nerror_estimate = {}\n",
                rational_pair(z),
                r.regime.label(),
                complex_str(&r.value, digits),
                sci(r.error_estimate.to_f64()),
            );
            for (j, m) in term_mags.iter().enumerate() {
                s.push_str(&format!("|term {j}| = {}\n", sci(*m)));
            }
            if let Some(e) = rel {
                s.push_str(&format!("relative_error = {}\n", sci(e)));
            }
            if let Some(w) = &r.warning {
                s.push_str(&format!("warning: {w}\n"));
            }
            s
        }
        Format::Json => {
            let mut obj = json!({
                "n": n,
                "z": { "re": z.re.to_string(), "im": z.im.to_string() },
                "K": k,
                "regime": r.regime.label(),
                "value": {
                    "re": float_str(&r.value.re, digits),
                    "im": float_str(&r.value.im, digits),
                },
                "error_estimate": r.error_estimate.to_f64(),
                "term_magnitudes": term_mags,
                "partial_values": partials
                    .iter()
                    .map(|v| {
                        let (re, im) = v.to_f64();
                        json!({ "re": re, "im": im })
                    })
                    .collect::<Vec<_>>(),
            });
            let map = obj.as_object_mut().unwrap();
            if let Some(e) = rel {
                map.insert("relative_error".into(), json!(e));
            }
            if let Some(w) = &r.warning {
                map.insert("warning".into(), json!(w));
            }
            json_pretty(&obj)
        }
        Format::Csv => {
            let mut s = String::from("k,term_magnitude,partial_re,partial_im\n");
            for (j, (m, v)) in term_mags.iter().zip(&partials).enumerate() {
                let (re, im) = v.to_f64();
                s.push_str(&format!("{j},{m:e},{re:e},{im:e}\n"));
            }
            s
        }
    })
}

fn cmd_coeffs(
    z: &ComplexRational,
    saddle: i64,
    kmax: usize,
    cfg: &PrecisionConfig,
    format: Format,
) -> Result<String> {
    let p = cfg.bits();
    let ctx = SaddleContext::new(to_big(z, p), saddle)?;
    let set = expansion_coefficients(&ctx, kmax)?;
    // engine-vs-closed-form deltas where the closed forms exist
    let deltas: Vec<Option<f64>> = (0..=kmax)
        .map(|k| {
            (1..=3).contains(&k).then(|| {
                let cf = closed_form_a(&ctx.h, &ctx.s_k, k as u32);
                set.a[k].sub(&cf).abs().to_f64()
            })
        })
        .collect();
    let digits = cfg.digits as usize;
    Ok(match format {
        Format::Text => {
            let mut s = format!(
                "z = {}, saddle index = {saddle}, s_k = {}\n",
                rational_pair(z),
                complex_str(&ctx.s_k, 20)
            );
            for (k, a) in set.a.iter().enumerate() {
                let (re, im) = a.to_f64();
                s.push_str(&format!("A_{k} = {re:+.10e} {im:+.10e}i"));
                if let Some(d) = deltas[k] {
                    s.push_str(&format!("   (closed-form delta {})", sci(d)));
                }
                s.push('\n');
            }
            s
        }
        Format::Json => json_pretty(&json!({
            "z": { "re": z.re.to_string(), "im": z.im.to_string() },
            "saddle_index": saddle,
            "coefficients": set.a.iter().enumerate().map(|(k, a)| {
                let mut row = json!({
                    "k": k,
                    "re": float_str(&a.re, digits),
                    "im": float_str(&a.im, digits),
                });
                if let Some(d) = deltas[k] {
                    row.as_object_mut().unwrap().insert("closed_form_delta".into(), json!(d));
                }
                row
            }).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut s = String::from("k,re,im,closed_form_delta\n");
            for (k, a) in set.a.iter().enumerate() {
                let (re, im) = a.to_f64();
                let d = deltas[k].map(|d| format!("{d:e}")).unwrap_or_default();
                s.push_str(&format!("{k},{re:e},{im:e},{d}\n"));
            }
            s
        }
    })
}

fn cmd_paths(
    z: &ComplexRational,
    saddle: i64,
    step: f64,
    max_len: f64,
    format: Format,
) -> Result<String> {
    let zf = Complex64::new(z.re.to_f64(), z.im.to_f64());
    let paths = trace_paths(zf, saddle, step, max_len)?;
    Ok(match format {
        Format::Json => json_pretty(&json!({
            "z": { "re": zf.re, "im": zf.im },
            "saddle_index": saddle,
            "branches": paths.iter().map(|p| json!({
                "label": p.label.as_str(),
                "points": p.points.iter()
                    .map(|q| json!([q.xi, q.eta, q.re_psi]))
                    .collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })),
        Format::Csv | Format::Text => {
            let mut s = String::from("branch_label,xi,eta,re_psi\n");
            for path in &paths {
                for q in &path.points {
                    s.push_str(&format!(
                        "{},{:e},{:e},{:e}\n",
                        path.label.as_str(),
                        q.xi,
                        q.eta,
                        q.re_psi
                    ));
                }
            }
            s
        }
    })
}
