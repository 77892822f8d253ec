//! Output formatting shared by the commands: fixed scientific notation in
//! text mode, plain exponent form in CSV/JSON, and the --out plumbing.

use anyhow::Result;
use clap::ValueEnum;
use norlund_core::cpx::BigComplex;
use rug::Float;
use std::io::Write;
use std::path::PathBuf;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Compact scientific notation `x.xxx(-y)` used in text mode.
pub fn sci(v: f64) -> String {
    if v == 0.0 {
        return "0.000(+0)".into();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let e = v.abs().log10().floor() as i32;
    let mut m = v / 10f64.powi(e);
    let mut e = e;
    if m.abs() >= 10.0 {
        m /= 10.0;
        e += 1;
    }
    // rounding the mantissa to 3 decimals can push it to 10.000
    let mr = (m * 1000.0).round() / 1000.0;
    let (m, e) = if mr.abs() >= 10.0 { (mr / 10.0, e + 1) } else { (mr, e) };
    format!("{m:.3}({e:+})")
}

/// Decimal rendering of an extended-precision float.
pub fn float_str(f: &Float, digits: usize) -> String {
    if f.is_zero() {
        return "0".into();
    }
    f.to_string_radix(10, Some(digits))
}

pub fn complex_str(z: &BigComplex, digits: usize) -> String {
    let re = float_str(&z.re, digits);
    let im = float_str(&z.im, digits);
    if z.im.is_sign_negative() {
        format!("{re} - {}i", im.trim_start_matches('-'))
    } else {
        format!("{re} + {im}i")
    }
}

pub fn emit(out: &Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, content)?;
        }
        None => {
            std::io::stdout().write_all(content.as_bytes())?;
        }
    }
    Ok(())
}

pub fn json_pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
