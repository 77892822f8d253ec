//! The asymptotic track: evaluation of the large-n expansions of
//! B_n^(n)(nz) in every regime, regime dispatch with reflection/conjugation
//! canonicalization, optimal truncation, and the probe for the exponentially
//! small second expansion across Re z = 1.

use crate::cpx::{float_pow, pi, BigComplex};
use crate::error::{Error, Result};
use crate::prec::PrecisionConfig;
use crate::ratcore::{self, ComplexRational};
use crate::saddle::{closed_form_c, expansion_coefficients, SaddleContext};
use rug::Float;

#[derive(Clone, Debug, PartialEq)]
pub enum Regime {
    RealGreaterOne,
    RealUnitInterval,
    RealHalf,
    /// ½ ≤ x < 1, y > 0: dominant plus exponentially small expansion.
    ComplexWithS1,
    /// x ≥ 1, y > 0: dominant expansion only.
    ComplexS0Only,
    /// |x − 1| below the configured band, y > 0: the two written expansions
    /// disagree by design here; the dominant one is returned with a warning.
    StokesLine,
    Reflected(Box<Regime>),
    Conjugated(Box<Regime>),
}

impl Regime {
    pub fn label(&self) -> String {
        match self {
            Regime::RealGreaterOne => "real-greater-one".into(),
            Regime::RealUnitInterval => "real-unit-interval".into(),
            Regime::RealHalf => "real-half".into(),
            Regime::ComplexWithS1 => "complex-with-s1".into(),
            Regime::ComplexS0Only => "complex-s0-only".into(),
            Regime::StokesLine => "stokes-line".into(),
            Regime::Reflected(inner) => format!("reflected({})", inner.label()),
            Regime::Conjugated(inner) => format!("conjugated({})", inner.label()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct AsymptoticResult {
    pub value: BigComplex,
    /// Per-k term values (weights times coefficients, prefactor excluded).
    pub terms: Vec<BigComplex>,
    pub truncation_k: usize,
    pub regime: Regime,
    pub prefactor: BigComplex,
    /// Magnitude of the first omitted term (times the prefactor).
    pub error_estimate: Float,
    pub warning: Option<String>,
}

impl AsymptoticResult {
    fn map_reflected(mut self, n: u32) -> Self {
        if n % 2 == 1 {
            self.value = self.value.neg();
            self.prefactor = self.prefactor.neg();
        }
        self.regime = Regime::Reflected(Box::new(self.regime));
        self
    }

    fn map_conjugated(mut self) -> Self {
        self.value = self.value.conj();
        self.prefactor = self.prefactor.conj();
        for t in self.terms.iter_mut() {
            *t = t.conj();
        }
        self.regime = Regime::Conjugated(Box::new(self.regime));
        self
    }
}

/// n! as an exact integer, then rounded once into the working precision.
pub fn factorial_float(n: u32, prec: u32) -> Float {
    Float::with_val(prec, &ratcore::factorial(n))
}

/// Term weights 2^k (½)_k / n^k, built multiplicatively:
/// w_0 = 1, w_{k+1} = w_k (2k+1)/n.
pub fn term_weights(n: u32, count: usize, prec: u32) -> Vec<Float> {
    let mut w = Vec::with_capacity(count);
    let mut cur = Float::with_val(prec, 1);
    for k in 0..count {
        w.push(cur.clone());
        cur = cur * (2 * k as u32 + 1) / n;
    }
    w
}

/// Distance from z to the segment [0, 1] on the real axis.
pub fn distance_to_segment(z: &BigComplex) -> f64 {
    let x = z.re.to_f64();
    let y = z.im.to_f64();
    if x < 0.0 {
        (x * x + y * y).sqrt()
    } else if x > 1.0 {
        ((x - 1.0) * (x - 1.0) + y * y).sqrt()
    } else {
        y.abs()
    }
}

fn stirling_root(n: u32, prec: u32) -> Float {
    // sqrt(2πn)
    Float::with_val(prec, 2 * n) * pi(prec)
}

fn s0_style_prefactor(n: u32, ctx: &SaddleContext) -> BigComplex {
    // n!/sqrt(2πn) · (z−1)^{n−1}/s_k · h^{nz−1/2}
    let p = ctx.prec();
    let nf = factorial_float(n, p);
    let root = stirling_root(n, p).sqrt();
    let zm1 = ctx.z.sub(&BigComplex::one(p));
    let pow_zm1 = zm1.pow_i(n as i64 - 1);
    let mut expo = ctx.z.mul_float(&Float::with_val(p, n));
    expo.re -= Float::with_val(p, 0.5);
    let hpow = ctx.h.pow_c(&expo);
    BigComplex::from_real(nf / root)
        .mul(&pow_zm1)
        .div(&ctx.s_k)
        .mul(&hpow)
}

fn assemble(
    prefactor: BigComplex,
    coeffs: &[BigComplex],
    weights: &[Float],
    k_max: usize,
    regime: Regime,
    warning: Option<String>,
) -> AsymptoticResult {
    let p = prefactor.prec();
    let terms: Vec<BigComplex> = (0..=k_max)
        .map(|k| coeffs[k].mul_float(&weights[k]))
        .collect();
    let mut sum = BigComplex::zero(p);
    for t in &terms {
        sum = sum.add(t);
    }
    let est = if coeffs.len() > k_max + 1 {
        Float::with_val(
            p,
            coeffs[k_max + 1].abs() * &weights[k_max + 1] * prefactor.abs(),
        )
    } else {
        Float::with_val(p, 0)
    };
    AsymptoticResult {
        value: prefactor.mul(&sum),
        terms,
        truncation_k: k_max,
        regime,
        prefactor,
        error_estimate: est,
        warning,
    }
}

/// Dominant single-saddle expansion for real x > 1.
pub fn asym_real_gt_one(
    n: u32,
    x: &Float,
    k_max: usize,
    cfg: &PrecisionConfig,
) -> Result<AsymptoticResult> {
    let xf = x.to_f64();
    if xf <= 1.0 + cfg.exclusion_eps {
        return Err(Error::RegimeViolation(format!(
            "real expansion needs x > 1 + {}, got {xf}",
            cfg.exclusion_eps
        )));
    }
    let p = cfg.bits();
    let z = BigComplex::from_real(Float::with_val(p, x));
    let mut r = sum_s0_at(n, &z, k_max)?;
    r.regime = Regime::RealGreaterOne;
    Ok(r)
}

/// Two-saddle real combination for ½ ≤ x < 1:
/// 2(−1)^n n!/√(2πn) (1−x)^{n−1}/L (x/(1−x))^{nx−1/2}
///   × { cos Θ Σ w_k Re A_k + sin Θ Σ w_k Im A_k },  Θ = πnx − ω + π/2.
pub fn asym_real_interval(
    n: u32,
    x: &Float,
    k_max: usize,
    cfg: &PrecisionConfig,
) -> Result<AsymptoticResult> {
    let xf = x.to_f64();
    if !(0.5..1.0 - cfg.exclusion_eps).contains(&xf) {
        return Err(Error::RegimeViolation(format!(
            "two-saddle real expansion needs 1/2 <= x < 1 - {}, got {xf}",
            cfg.exclusion_eps
        )));
    }
    let p = cfg.bits();
    let z = BigComplex::from_real(Float::with_val(p, x));
    let ctx = SaddleContext::new(z, -1)?;
    let set = expansion_coefficients(&ctx, k_max + 1)?;
    let (l, omega) = ctx.l_omega.clone().expect("real x in (0,1)");
    let weights = term_weights(n, k_max + 2, p);

    let xe = Float::with_val(p, x);
    let one_minus_x = Float::with_val(p, 1) - &xe;
    let theta = Float::with_val(p, pi(p) * n) * &xe - &omega + pi(p) / 2u32;
    let (sin_t, cos_t) = theta.sin_cos(Float::new(p));

    let nf = factorial_float(n, p);
    let root = stirling_root(n, p).sqrt();
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let mut expo = Float::with_val(p, &xe * n);
    expo -= Float::with_val(p, 0.5);
    let ratio = Float::with_val(p, &xe / &one_minus_x);
    let rpow = float_pow(&ratio, &expo);
    let mpow = float_pow(&one_minus_x, &Float::with_val(p, n - 1));
    let pref = Float::with_val(p, 2.0 * sign) * nf / root * mpow / &l * rpow;

    // real per-term values cos Θ Re A_k + sin Θ Im A_k, engine coefficients
    let coeffs: Vec<BigComplex> = set
        .a
        .iter()
        .map(|a| {
            let v = Float::with_val(p, &a.re * &cos_t) + Float::with_val(p, &a.im * &sin_t);
            BigComplex::from_real(v)
        })
        .collect();
    Ok(assemble(
        BigComplex::from_real(pref),
        &coeffs,
        &weights,
        k_max,
        Regime::RealUnitInterval,
        None,
    ))
}

/// Midpoint expansion: 2^{2−n} n!/√(2πn) · cos(πn/2)/π · Σ (−2)^k (½)_k C_k / n^k.
/// Odd n returns the exact zero.
pub fn half_case(n: u32, k_max: usize, cfg: &PrecisionConfig) -> Result<AsymptoticResult> {
    let p = cfg.bits();
    if n % 2 == 1 {
        return Ok(AsymptoticResult {
            value: BigComplex::zero(p),
            terms: vec![BigComplex::zero(p); k_max + 1],
            truncation_k: k_max,
            regime: Regime::RealHalf,
            prefactor: BigComplex::zero(p),
            error_estimate: Float::with_val(p, 0),
            warning: None,
        });
    }
    // C_k beyond the closed forms come from the coefficient engine
    let need_engine = k_max + 1 > 5;
    let engine_c: Option<Vec<Float>> = if need_engine {
        let z = BigComplex::new(Float::with_val(p, 0.5), Float::with_val(p, 0));
        let ctx = SaddleContext::new(z, -1)?;
        let set = expansion_coefficients(&ctx, k_max + 1)?;
        Some(
            set.a
                .iter()
                .enumerate()
                .map(|(k, a)| {
                    let s = if k % 2 == 0 { 1.0 } else { -1.0 };
                    Float::with_val(p, &a.re * s)
                })
                .collect(),
        )
    } else {
        None
    };
    let c_at = |k: usize| -> Float {
        if k <= 5 {
            closed_form_c(k as u32, p)
        } else {
            engine_c.as_ref().unwrap()[k].clone()
        }
    };
    let weights = term_weights(n, k_max + 2, p);
    let coeffs: Vec<BigComplex> = (0..=k_max + 1)
        .map(|k| {
            let s = if k % 2 == 0 { 1.0 } else { -1.0 };
            BigComplex::from_real(Float::with_val(p, c_at(k) * s))
        })
        .collect();
    let nf = factorial_float(n, p);
    let root = stirling_root(n, p).sqrt();
    let cospin = if n % 4 == 0 { 1.0 } else { -1.0 };
    let two_pow = float_pow(
        &Float::with_val(p, 2),
        &Float::with_val(p, 2i64 - n as i64),
    );
    let pref = two_pow * nf / root * cospin / pi(p);
    Ok(assemble(
        BigComplex::from_real(pref),
        &coeffs,
        &weights,
        k_max,
        Regime::RealHalf,
        None,
    ))
}

fn check_exclusion(z: &BigComplex, cfg: &PrecisionConfig) -> Result<()> {
    let dist = distance_to_segment(z);
    if dist < cfg.exclusion_eps {
        return Err(Error::ExclusionBand { dist, eps: cfg.exclusion_eps });
    }
    Ok(())
}

fn sum_s0_at(n: u32, z: &BigComplex, k_max: usize) -> Result<AsymptoticResult> {
    let ctx = SaddleContext::new(z.clone(), 0)?;
    let set = expansion_coefficients(&ctx, k_max + 1)?;
    let weights = term_weights(n, k_max + 2, ctx.prec());
    let pref = s0_style_prefactor(n, &ctx);
    Ok(assemble(pref, &set.a, &weights, k_max, Regime::ComplexS0Only, None))
}

/// Dominant formal sum S_0 at complex z (saddle s_0).
pub fn sum_s0(
    n: u32,
    z: &BigComplex,
    k_max: usize,
    cfg: &PrecisionConfig,
) -> Result<AsymptoticResult> {
    check_exclusion(z, cfg)?;
    sum_s0_at(n, z, k_max)
}

/// Exponentially small companion sum S_1 (saddle s_1 = s_0 + 2πi), carrying
/// the factor e^{−2πni(1−z)} = O(e^{−2πny}). Valid for ½ ≤ x < 1, y > 0;
/// `force` evaluates it outside that strip anyway (demonstration rows).
pub fn sum_s1(
    n: u32,
    z: &BigComplex,
    k_max: usize,
    cfg: &PrecisionConfig,
    force: bool,
) -> Result<AsymptoticResult> {
    let x = z.re.to_f64();
    let y = z.im.to_f64();
    if !force && !(0.5..1.0).contains(&x) {
        return Err(Error::RegimeViolation(format!(
            "second expansion is valid for 1/2 <= x < 1, y > 0; got x={x}"
        )));
    }
    if y <= 0.0 {
        return Err(Error::RegimeViolation(format!(
            "second expansion needs y > 0, got y={y}"
        )));
    }
    check_exclusion(z, cfg)?;
    let p = z.prec();
    let ctx = SaddleContext::new(z.clone(), 1)?;
    let set = expansion_coefficients(&ctx, k_max + 1)?;
    let weights = term_weights(n, k_max + 2, p);
    // −n!/√(2πn) e^{−2πni(1−z)} (z−1)^{n−1}/s_1 · h^{nz−1/2}
    let base = s0_style_prefactor(n, &ctx); // uses s_1 in the denominator
    let one_minus_z = BigComplex::one(p).sub(z);
    let two_pi_n = Float::with_val(p, 2 * n) * pi(p);
    let expo = BigComplex::i(p).mul(&one_minus_z).mul_float(&two_pi_n).neg();
    let pref = base.mul(&expo.exp()).neg();
    let mut r = assemble(pref, &set.a, &weights, k_max, Regime::ComplexWithS1, None);
    r.warning = if force && !(0.5..1.0).contains(&x) {
        Some("evaluated outside its strip of validity".into())
    } else {
        None
    };
    Ok(r)
}

/// Canonicalizes z into the quadrant x ≥ ½, y ≥ 0 by conjugation and the
/// reflection z → 1−z (cost: (−1)^n), selects the regime, and un-maps.
pub fn dispatch(
    n: u32,
    z: &BigComplex,
    k_max: usize,
    cfg: &PrecisionConfig,
) -> Result<AsymptoticResult> {
    let p = z.prec();
    let y = z.im.to_f64();
    if y < 0.0 {
        let r = dispatch(n, &z.conj(), k_max, cfg)?;
        return Ok(r.map_conjugated());
    }
    let x = z.re.to_f64();
    if x < 0.5 {
        let zr = BigComplex::one(p).sub(z);
        let r = dispatch(n, &zr, k_max, cfg)?;
        return Ok(r.map_reflected(n));
    }

    if z.im.is_zero() {
        let x_exact = z.re.clone();
        if x == 0.5 {
            return half_case(n, k_max, cfg);
        }
        if x < 1.0 - cfg.exclusion_eps {
            return asym_real_interval(n, &x_exact, k_max, cfg);
        }
        if x > 1.0 + cfg.exclusion_eps {
            return asym_real_gt_one(n, &x_exact, k_max, cfg);
        }
        return Err(Error::ExclusionBand {
            dist: (x - 1.0).abs(),
            eps: cfg.exclusion_eps,
        });
    }

    check_exclusion(z, cfg)?;
    if (x - 1.0).abs() < cfg.stokes_eps {
        let mut r = sum_s0_at(n, z, k_max)?;
        r.regime = Regime::StokesLine;
        r.warning = Some(
            "on the discontinuity line of the expansion split; the \
             exponentially small companion term is omitted"
                .into(),
        );
        return Ok(r);
    }
    if x < 1.0 {
        let s0 = sum_s0_at(n, z, k_max)?;
        let s1 = sum_s1(n, z, k_max.min(3), cfg, false)?;
        let mut r = s0;
        r.value = r.value.add(&s1.value);
        r.regime = Regime::ComplexWithS1;
        return Ok(r);
    }
    sum_s0_at(n, z, k_max)
}

/// Running partial sums prefactor * (terms[0] + ... + terms[k]), one value
/// per truncation index k, from a single evaluation.
pub fn partial_values(r: &AsymptoticResult) -> Vec<BigComplex> {
    let p = r.value.prec();
    let mut acc = BigComplex::zero(p);
    r.terms
        .iter()
        .map(|t| {
            acc = acc.add(t);
            r.prefactor.mul(&acc)
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct TruncationChoice {
    pub k: usize,
    /// False when the terms were still shrinking at k_max.
    pub minimum_found: bool,
    pub term_magnitudes: Vec<f64>,
}

/// Index of the smallest |term_k| over k ≤ k_max (least-term rule). When the
/// terms are still strictly decreasing at k_max the series was not pushed far
/// enough: k_max is returned with `minimum_found = false`.
pub fn optimal_truncation(
    n: u32,
    z: &BigComplex,
    k_max: usize,
    cfg: &PrecisionConfig,
) -> Result<TruncationChoice> {
    assert!(k_max >= 1);
    check_exclusion(z, cfg)?;
    let ctx = SaddleContext::new(z.clone(), 0)?;
    let set = expansion_coefficients(&ctx, k_max)?;
    let weights = term_weights(n, k_max + 1, z.prec());
    let mags: Vec<f64> = (0..=k_max)
        .map(|k| (set.a[k].abs() * &weights[k]).to_f64())
        .collect();
    let mut best = 0usize;
    for k in 1..=k_max {
        if mags[k] < mags[best] {
            best = k;
        }
    }
    Ok(TruncationChoice {
        k: best,
        minimum_found: best < k_max,
        term_magnitudes: mags,
    })
}

#[derive(Clone, Debug)]
pub struct StokesProbe {
    pub exact_minus_s0: BigComplex,
    pub s1_value: BigComplex,
    /// Truncation index actually used for the dominant sum.
    pub truncation_k: usize,
    /// |S1| / |exact − S0|; near 1 when the small expansion is present,
    /// large when it is absent.
    pub ratio: f64,
}

/// Exact value of B_n^(n)(nz) rounded into a float of the given precision.
pub fn exact_value_big(n: u32, z: &ComplexRational, prec: u32) -> BigComplex {
    let v = ratcore::eval_exact(n, z);
    BigComplex::new(Float::with_val(prec, &v.re), Float::with_val(prec, &v.im))
}

/// Optimally truncate the dominant sum, subtract it from the exact value, and
/// compare the remainder with the exponentially small expansion.
/// `truncation_override` substitutes a fixed truncation index for the
/// smallest-term rule; `force` lets the small expansion be evaluated outside
/// its strip (the x > 1 demonstration).
pub fn stokes_probe(
    n: u32,
    z: &ComplexRational,
    k_max: usize,
    cfg: &PrecisionConfig,
    truncation_override: Option<usize>,
    force: bool,
) -> Result<StokesProbe> {
    // the subtraction below cancels severely; take the exact value at twice
    // the working precision
    let p = cfg.bits();
    let zf = BigComplex::new(Float::with_val(p, &z.re), Float::with_val(p, &z.im));
    let choice = optimal_truncation(n, &zf, k_max, cfg)?;
    let k_used = truncation_override.unwrap_or(choice.k);
    let s0 = sum_s0(n, &zf, k_used, cfg)?;
    let exact = exact_value_big(n, z, 2 * p);
    let diff = BigComplex::new(
        Float::with_val(p, &exact.re - &s0.value.re),
        Float::with_val(p, &exact.im - &s0.value.im),
    );
    let s1 = sum_s1(n, &zf, 3, cfg, force)?;
    let ratio = (s1.value.abs() / diff.abs()).to_f64();
    Ok(StokesProbe {
        exact_minus_s0: diff,
        s1_value: s1.value,
        truncation_k: k_used,
        ratio,
    })
}

/// |asym − exact| / |exact|.
pub fn rel_error_vs_exact(n: u32, z: &ComplexRational, value: &BigComplex) -> f64 {
    let exact = exact_value_big(n, z, 2 * value.prec());
    let diff = BigComplex::new(
        Float::with_val(value.prec(), &exact.re - &value.re),
        Float::with_val(value.prec(), &exact.im - &value.im),
    );
    (diff.abs() / exact.abs()).to_f64()
}

/// |asym − exact| / |asym|: the normalization used by the real-line error
/// table.
pub fn rel_error_vs_asym(n: u32, z: &ComplexRational, value: &BigComplex) -> f64 {
    let exact = exact_value_big(n, z, 2 * value.prec());
    let diff = BigComplex::new(
        Float::with_val(value.prec(), &exact.re - &value.re),
        Float::with_val(value.prec(), &exact.im - &value.im),
    );
    (diff.abs() / value.abs()).to_f64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Rational;

    fn cfg() -> PrecisionConfig {
        PrecisionConfig::default()
    }

    fn crat(nr: i64, dr: i64, ni: i64, di: i64) -> ComplexRational {
        ComplexRational::new(Rational::from((nr, dr)), Rational::from((ni, di)))
    }

    #[test]
    fn real_expansion_matches_reference_errors() {
        let c = cfg();
        let x = Float::with_val(c.bits(), 2);
        let z = crat(2, 1, 0, 1);
        let r0 = asym_real_gt_one(20, &x, 0, &c).unwrap();
        let e0 = rel_error_vs_exact(20, &z, &r0.value);
        assert!((e0 / 4.193e-3 - 1.0).abs() < 1e-3, "{e0:e}");
        let r3 = asym_real_gt_one(20, &x, 3, &c).unwrap();
        let e3 = rel_error_vs_exact(20, &z, &r3.value);
        assert!((e3 / 1.051e-9 - 1.0).abs() < 1e-3, "{e3:e}");
    }

    #[test]
    fn complex_s0_matches_reference_errors() {
        let c = cfg();
        let p = c.bits();
        let z = BigComplex::from_f64(p, 2.0, 1.0);
        let zr = crat(2, 1, 1, 1);
        let r = sum_s0(20, &z, 0, &c).unwrap();
        let e = rel_error_vs_exact(20, &zr, &r.value);
        assert!((e / 4.169e-3 - 1.0).abs() < 1e-3, "{e:e}");
        let r = sum_s0(20, &z, 3, &c).unwrap();
        let e = rel_error_vs_exact(20, &zr, &r.value);
        assert!((e / 1.779e-9 - 1.0).abs() < 2e-3, "{e:e}");
    }

    #[test]
    fn interval_expansion_matches_reference_errors() {
        // real-line table normalizes by the asymptotic value
        let c = cfg();
        let x = Float::with_val(c.bits(), Float::parse("0.75").unwrap());
        let zr = crat(3, 4, 0, 1);
        let r = asym_real_interval(20, &x, 1, &c).unwrap();
        let e = rel_error_vs_asym(20, &zr, &r.value);
        assert!((e / 2.597e-5 - 1.0).abs() < 2e-3, "{e:e}");
    }

    #[test]
    fn half_case_consistency() {
        let c = cfg();
        // odd n: exact zero
        let r = half_case(21, 3, &c).unwrap();
        assert!(r.value.is_zero());
        // even n: agrees with the two-saddle formula at x = 1/2
        let x = Float::with_val(c.bits(), Float::parse("0.5").unwrap());
        for k in 0..=5usize {
            let a = half_case(20, k, &c).unwrap().value;
            let b = asym_real_interval(20, &x, k, &c).unwrap().value;
            let rel = a.sub(&b).abs().to_f64() / b.abs().to_f64();
            assert!(rel < 1e-45, "k={k} rel={rel:e}");
        }
        // and against the reference K=0 error
        let zr = crat(1, 2, 0, 1);
        let e = rel_error_vs_asym(20, &zr, &half_case(20, 0, &c).unwrap().value);
        assert!((e / 7.719e-3 - 1.0).abs() < 1e-3, "{e:e}");
    }

    #[test]
    fn dispatch_reflection_and_conjugation() {
        let c = cfg();
        let p = c.bits();
        // z = -1 maps to 1-z = 2 with (-1)^n
        let r = dispatch(20, &BigComplex::from_f64(p, -1.0, 0.0), 3, &c).unwrap();
        let d = dispatch(20, &BigComplex::from_f64(p, 2.0, 0.0), 3, &c).unwrap();
        assert!(r.value.sub(&d.value).abs().to_f64() < 1e-30 * d.value.abs().to_f64());
        assert!(matches!(r.regime, Regime::Reflected(_)));
        // z = 2 - i is the conjugate of 2 + i
        let r = dispatch(20, &BigComplex::from_f64(p, 2.0, -1.0), 3, &c).unwrap();
        let d = dispatch(20, &BigComplex::from_f64(p, 2.0, 1.0), 3, &c).unwrap();
        assert!(r.value.sub(&d.value.conj()).abs().to_f64() < 1e-30 * d.value.abs().to_f64());
    }

    #[test]
    fn dispatch_regimes_and_refusals() {
        let c = cfg();
        let p = c.bits();
        let r = dispatch(20, &BigComplex::from_f64(p, 1.0, 1.0), 3, &c).unwrap();
        assert_eq!(r.regime, Regime::StokesLine);
        assert!(r.warning.is_some());
        let r = dispatch(20, &BigComplex::from_f64(p, 0.6, 1.0), 3, &c).unwrap();
        assert_eq!(r.regime, Regime::ComplexWithS1);
        assert!(matches!(
            dispatch(20, &BigComplex::from_f64(p, 0.99, 0.01), 3, &c),
            Err(Error::ExclusionBand { .. })
        ));
        assert!(matches!(
            dispatch(20, &BigComplex::from_f64(p, 1.02, 0.0), 3, &c),
            Err(Error::ExclusionBand { .. })
        ));
    }

    #[test]
    fn stokes_line_example_error() {
        let c = cfg();
        let p = c.bits();
        let z = BigComplex::from_f64(p, 1.0, 1.0);
        let zr = crat(1, 1, 1, 1);
        let r = dispatch(20, &z, 3, &c).unwrap();
        let e = rel_error_vs_exact(20, &zr, &r.value);
        assert!((e / 1.630e-9 - 1.0).abs() < 2e-3, "{e:e}");
    }

    #[test]
    fn truncation_terms_behavior() {
        let c = cfg();
        let p = c.bits();
        let z = BigComplex::new(
            Float::with_val(p, 2) / 3u32,
            Float::with_val(p, 1) / 4u32,
        );
        let t = optimal_truncation(10, &z, 14, &c).unwrap();
        assert!(t.minimum_found);
        // the smallest term over k <= 14 sits at k = 13
        assert_eq!(t.k, 13);
        assert!(t.term_magnitudes[13] < t.term_magnitudes[14]);
        assert!(t.term_magnitudes[13] < t.term_magnitudes[10]);
        // still-decreasing case: tiny k_max at huge n
        let z2 = BigComplex::from_f64(p, 3.0, 0.0);
        let t = optimal_truncation(100000, &z2, 3, &c).unwrap();
        assert!(!t.minimum_found);
        assert_eq!(t.k, 3);
    }

    #[test]
    fn suppression_scaling() {
        let c = cfg();
        let p = c.bits();
        let z = BigComplex::new(
            Float::with_val(p, 3) / 5u32,
            Float::with_val(p, 1) / 4u32,
        );
        let ratio_at = |n: u32| {
            let s0 = sum_s0(n, &z, 3, &c).unwrap();
            let s1 = sum_s1(n, &z, 3, &c, false).unwrap();
            (s1.value.abs() / s0.value.abs()).to_f64()
        };
        let measured = ratio_at(12) / ratio_at(10);
        let predicted = (-2.0 * std::f64::consts::PI * 0.25 * 2.0).exp();
        assert!((measured / predicted - 1.0).abs() < 0.2, "{measured:e} vs {predicted:e}");
    }

    #[test]
    fn stokes_probe_presence_and_absence() {
        let c = cfg();
        // x = 0.6: the small expansion accounts for the remainder
        let z = crat(3, 5, 1, 4);
        let pr = stokes_probe(10, &z, 14, &c, Some(10), false).unwrap();
        let (re, im) = pr.exact_minus_s0.to_f64();
        assert!((re - 0.012028).abs() < 5e-5, "{re}");
        assert!((im - 0.023460).abs() < 5e-5, "{im}");
        let (re, im) = pr.s1_value.to_f64();
        assert!((re - 0.012023).abs() < 5e-5);
        assert!((im - 0.023457).abs() < 5e-5);
        assert!((pr.ratio - 1.0).abs() < 0.05);
        // x = 1.2: the small expansion is absent beyond the line
        let z = crat(6, 5, 1, 4);
        let pr = stokes_probe(10, &z, 14, &c, None, true).unwrap();
        assert!(pr.ratio > 10.0, "{}", pr.ratio);
    }

    #[test]
    fn error_decay_in_k() {
        let c = cfg();
        let p = c.bits();
        let z = BigComplex::from_f64(p, 0.75, 1.0);
        let zr = crat(3, 4, 1, 1);
        let mut last = f64::INFINITY;
        for k in 0..=3usize {
            let r = sum_s0(20, &z, k, &c).unwrap();
            let e = rel_error_vs_exact(20, &zr, &r.value);
            assert!(e < last, "k={k}");
            last = e;
        }
    }
}
