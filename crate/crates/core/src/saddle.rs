//! Saddle geometry of the phase ψ(s,z) = log(e^s − 1) − sz and the
//! expansion-coefficient engine.
//!
//! The saddles are s_k = log(z/(z−1)) + 2πik. With h := z/(z−1) the phase
//! satisfies the exact reduction
//!     ψ(s_k + u) − ψ(s_k) = log(1 + z(e^u − 1)) − zu,
//! because e^{s_k} = h and e^{ψ(s_k)} = (e^{s_k}−1)e^{−s_k z}; the reduction
//! removes all branch headaches from the series construction.
//!
//! Coefficients A_k are the normalized even Taylor coefficients of
//! g(w) = (1/s(w))·ds/dw after the substitution ψ − ψ(s_k) = w²/2.

use crate::cpx::{pi, BigComplex};
use crate::error::{Error, Result};
use crate::prec::PrecisionConfig;
use crate::pseries::ComplexSeries;
use rug::Float;

#[derive(Clone, Debug)]
pub struct SaddleContext {
    pub z: BigComplex,
    /// h = z/(z−1); note exp(s_k) = h for every k.
    pub h: BigComplex,
    pub k_index: i64,
    pub s_k: BigComplex,
    /// (L, ω) with L = |s_{−1}|, ω = atan2(π, log(x/(1−x))), populated only
    /// for real x in (0, 1) where the two-saddle real combination applies.
    pub l_omega: Option<(Float, Float)>,
}

fn is_pole(z: &BigComplex) -> bool {
    let p = z.prec();
    let tol = 2f64.powi(-(p as i32) + 8);
    if !z.im.is_zero() && z.im.clone().abs().to_f64() > tol {
        return false;
    }
    let x = z.re.to_f64();
    (x - 0.0).abs() < tol || (x - 1.0).abs() < tol
}

/// s_k = principal log of z/(z−1), plus 2πik.
pub fn saddle_point(z: &BigComplex, k: i64) -> Result<BigComplex> {
    let p = z.prec();
    if is_pole(z) {
        return Err(Error::PoleArgument(format!(
            "{}+{}i",
            z.re.to_f64(),
            z.im.to_f64()
        )));
    }
    let h = z.div(&z.sub(&BigComplex::one(p)));
    let mut s = h.ln();
    let two_pi_k = Float::with_val(p, 2 * k) * pi(p);
    s.im += two_pi_k;
    Ok(s)
}

impl SaddleContext {
    pub fn new(z: BigComplex, k_index: i64) -> Result<Self> {
        let p = z.prec();
        let s_k = saddle_point(&z, k_index)?;
        let h = z.div(&z.sub(&BigComplex::one(p)));
        let x = z.re.to_f64();
        let l_omega = if z.im.is_zero() && 0.0 < x && x < 1.0 {
            // real interval: the paper-facing parametrization of s_{-1}.
            // log(x/(1-x)) = log|h| since h is the negative real -x/(1-x).
            let log_ratio = h.abs().ln();
            let pie = pi(p);
            let l = Float::with_val(p, log_ratio.clone().square() + pie.clone().square()).sqrt();
            let omega = pie.atan2(&log_ratio);
            Some((l, omega))
        } else {
            None
        };
        Ok(SaddleContext { z, h, k_index, s_k, l_omega })
    }

    pub fn prec(&self) -> u32 {
        self.z.prec()
    }

    /// ψ''(s_k) = z(1−z) = −h/(h−1)².
    pub fn psi2(&self) -> BigComplex {
        let p = self.prec();
        let one = BigComplex::one(p);
        self.z.mul(&one.sub(&self.z))
    }
}

/// Series of ψ(s_k + u) − ψ(s_k) in powers of u, via the reduction
/// log(1 + z(e^u − 1)) − zu. Constant and linear coefficients must vanish.
pub fn phase_series(ctx: &SaddleContext, order: usize) -> Result<ComplexSeries> {
    assert!(order >= 3);
    let p = ctx.prec();
    let em1 = ComplexSeries::exp_minus_one(order, p);
    let zx = em1.scale(&ctx.z);
    let mut phi = zx.log1p_compose()?;
    phi.c[1] = phi.c[1].sub(&ctx.z);
    let tol = 2f64.powi(-(p as i32) + 32);
    let scale = ctx.z.abs().to_f64().max(1.0);
    for (what, c) in [("constant", &phi.c[0]), ("linear", &phi.c[1])] {
        let mag = c.abs().to_f64();
        if mag > tol * scale {
            return Err(Error::PrecisionFailure { what, mag, tol });
        }
    }
    Ok(phi)
}

#[derive(Clone, Debug)]
pub struct CoefficientSet {
    /// A_0..A_K with A_0 = 1.
    pub a: Vec<BigComplex>,
    /// Leading factor g(0); analytically i(h−1)/(s_k h^{1/2}) up to the
    /// square-root branch.
    pub g0: BigComplex,
    pub saddle: SaddleContext,
}

/// Linear coefficient of u(w): 1/sqrt(ψ'') with the branch fixed to positive
/// imaginary part (positive real part when real). This choice reproduces the
/// displayed leading inversion term i(h−1)/h^{1/2}; the even-order A_k are
/// branch independent.
fn branch_u1(psi2: &BigComplex) -> Result<BigComplex> {
    let p = psi2.prec();
    let mag = psi2.abs().to_f64();
    if mag < 2f64.powi(-(p as i32) + 32) {
        return Err(Error::DegenerateSaddle(mag));
    }
    let r = psi2.sqrt().recip();
    let im = r.im.to_f64();
    let tiny = 1e-30 * r.abs().to_f64();
    if im > tiny {
        Ok(r)
    } else if im < -tiny {
        Ok(r.neg())
    } else if r.re.to_f64() > 0.0 {
        Ok(r)
    } else {
        Ok(r.neg())
    }
}

fn engine(ctx: &SaddleContext, order: usize) -> Result<ComplexSeries> {
    let p = ctx.prec();
    let phi = phase_series(ctx, order)?;
    // q(u) = 2(ψ−ψ_k)/u², shifted down two slots
    let mut q = ComplexSeries::zero(order, p);
    let two = BigComplex::from_f64(p, 2.0, 0.0);
    for k in 2..order {
        q.c[k - 2] = phi.c[k].mul(&two);
    }
    let u1 = branch_u1(&ctx.psi2())?;
    let target = u1.recip();
    let sq = q.sqrt_series(&target)?;
    // w(u) = u * sqrt(q)
    let mut w = ComplexSeries::zero(order, p);
    for k in 1..order {
        w.c[k] = sq.c[k - 1].clone();
    }
    let u = w.revert()?;
    let du = u.derivative();
    // s(w) = s_k + u(w)
    let mut s_of_w = u.clone();
    s_of_w.c[0] = s_of_w.c[0].add(&ctx.s_k);
    let inv_s = ComplexSeries::one(order, p).div(&s_of_w)?;
    Ok(inv_s.mul(&du))
}

/// Generates A_0..A_K at the context's saddle.
pub fn expansion_coefficients(ctx: &SaddleContext, k_max: usize) -> Result<CoefficientSet> {
    let order = PrecisionConfig::series_order(k_max);
    let g = engine(ctx, order)?;
    let g0 = g.c[0].clone();
    let inv_g0 = g0.recip();
    let a = (0..=k_max).map(|k| g.c[2 * k].mul(&inv_g0)).collect();
    debug_assert!(branch_independence_holds(ctx, k_max, &g));
    Ok(CoefficientSet { a, g0, saddle: ctx.clone() })
}

#[cfg(debug_assertions)]
fn branch_independence_holds(ctx: &SaddleContext, k_max: usize, g: &ComplexSeries) -> bool {
    // flipping the sqrt branch maps w -> -w; even coefficients of g must
    // be unchanged up to overall sign through g0 normalization.
    if k_max > 4 {
        return true; // keep debug builds fast
    }
    let order = PrecisionConfig::series_order(k_max);
    let flipped = match engine_flipped(ctx, order) {
        Ok(f) => f,
        Err(_) => return true,
    };
    let inv_a = g.c[0].recip();
    let inv_b = flipped.c[0].recip();
    (0..=k_max).all(|k| {
        let a = g.c[2 * k].mul(&inv_a);
        let b = flipped.c[2 * k].mul(&inv_b);
        a.sub(&b).abs().to_f64() <= 1e-30 * (1.0 + a.abs().to_f64())
    })
}

#[cfg(not(debug_assertions))]
fn branch_independence_holds(_: &SaddleContext, _: usize, _: &ComplexSeries) -> bool {
    true
}

#[cfg(debug_assertions)]
fn engine_flipped(ctx: &SaddleContext, order: usize) -> Result<ComplexSeries> {
    let p = ctx.prec();
    let phi = phase_series(ctx, order)?;
    let mut q = ComplexSeries::zero(order, p);
    let two = BigComplex::from_f64(p, 2.0, 0.0);
    for k in 2..order {
        q.c[k - 2] = phi.c[k].mul(&two);
    }
    let u1 = branch_u1(&ctx.psi2())?.neg();
    let target = u1.recip();
    let sq = q.sqrt_series(&target)?;
    let mut w = ComplexSeries::zero(order, p);
    for k in 1..order {
        w.c[k] = sq.c[k - 1].clone();
    }
    let u = w.revert()?;
    let du = u.derivative();
    let mut s_of_w = u.clone();
    s_of_w.c[0] = s_of_w.c[0].add(&ctx.s_k);
    let inv_s = ComplexSeries::one(order, p).div(&s_of_w)?;
    Ok(inv_s.mul(&du))
}

fn poly_in_h(h: &BigComplex, coeffs: &[i64]) -> BigComplex {
    // Horner, coeffs given from the highest power down
    let p = h.prec();
    let mut acc = BigComplex::zero(p);
    for &c in coeffs {
        acc = acc.mul(h).add(&BigComplex::from_f64(p, c as f64, 0.0));
    }
    acc
}

/// Closed forms of the first three expansion coefficients as rational
/// functions of h and 1/λ (λ is the saddle value the engine pairs with h).
pub fn closed_form_a(h: &BigComplex, lambda: &BigComplex, k: u32) -> BigComplex {
    let p = h.prec();
    let il = lambda.recip();
    let hm1 = h.sub(&BigComplex::one(p));
    let f = |v: f64| BigComplex::from_f64(p, v, 0.0);
    match k {
        1 => {
            // (-(1-h+h^2) + 6(h^2-1)/λ - 12(h-1)^2/λ^2) / (12h)
            let t0 = poly_in_h(h, &[1, -1, 1]).neg();
            let t1 = poly_in_h(h, &[1, 0, -1]).mul(&il).mul(&f(6.0));
            let t2 = hm1.pow_i(2).mul(&il.pow_i(2)).mul(&f(12.0));
            t0.add(&t1).sub(&t2).div(&h.mul(&f(12.0)))
        }
        2 => {
            let t0 = poly_in_h(h, &[1, -1, 1]).pow_i(2);
            let t1 = poly_in_h(h, &[1, 0, -1])
                .mul(&poly_in_h(h, &[3, -5, 3]))
                .mul(&il)
                .mul(&f(12.0));
            let t2 = hm1
                .pow_i(2)
                .mul(&poly_in_h(h, &[2, 1, 2]))
                .mul(&il.pow_i(2))
                .mul(&f(120.0));
            let t3 = h
                .add(&BigComplex::one(p))
                .mul(&hm1.pow_i(3))
                .mul(&il.pow_i(3))
                .mul(&f(720.0));
            let t4 = hm1.pow_i(4).mul(&il.pow_i(4)).mul(&f(864.0));
            t0.sub(&t1)
                .add(&t2)
                .sub(&t3)
                .add(&t4)
                .div(&h.pow_i(2).mul(&f(864.0)))
        }
        3 => {
            let upsilon = poly_in_h(h, &[139, -417, 402, -109, 402, -417, 139]);
            let t1 = poly_in_h(h, &[1, 0, -1])
                .mul(&poly_in_h(h, &[1, -1, 1]))
                .mul(&poly_in_h(h, &[5, -9, 5]))
                .mul(&il)
                .mul(&f(90.0));
            let t2 = hm1
                .pow_i(2)
                .mul(&poly_in_h(h, &[13, -8, -3, -8, 13]))
                .mul(&il.pow_i(2))
                .mul(&f(1260.0));
            let t3 = hm1
                .pow_i(3)
                .mul(&h.add(&BigComplex::one(p)))
                .mul(&poly_in_h(h, &[8, -5, 8]))
                .mul(&il.pow_i(3))
                .mul(&f(15120.0));
            let t4 = hm1
                .pow_i(4)
                .mul(&poly_in_h(h, &[1, 1, 1]))
                .mul(&il.pow_i(4))
                .mul(&f(453600.0));
            let t5 = hm1
                .pow_i(5)
                .mul(&h.add(&BigComplex::one(p)))
                .mul(&il.pow_i(5))
                .mul(&f(907200.0));
            let t6 = hm1.pow_i(6).mul(&il.pow_i(6)).mul(&f(777600.0));
            upsilon
                .add(&t1)
                .sub(&t2)
                .add(&t3)
                .sub(&t4)
                .add(&t5)
                .sub(&t6)
                .div(&h.pow_i(3).mul(&f(777600.0)))
        }
        _ => panic!("closed forms exist only for k = 1, 2, 3"),
    }
}

/// Closed forms of the midpoint coefficients C_0..C_5 (rational in π²).
pub fn closed_form_c(k: u32, prec: u32) -> Float {
    use rug::ops::Pow;
    let p2 = pi(prec).square();
    let pw = |e: u32| -> Float { Float::with_val(prec, (&p2).pow(e)) };
    let f = |v: f64| Float::with_val(prec, v);
    match k {
        0 => f(1.0),
        1 => (f(16.0) - &p2) / (f(4.0) * &p2),
        2 => (f(1536.0) - f(160.0) * &p2 + pw(2)) / (f(96.0) * pw(2)),
        3 => {
            (f(368640.0) - f(53760.0) * &p2 + f(1456.0) * pw(2) + f(15.0) * pw(3))
                / (f(5760.0) * pw(3))
        }
        4 => {
            (f(165150720.0) - f(30965760.0) * &p2 + f(1483776.0) * pw(2)
                - f(3904.0) * pw(3)
                - f(63.0) * pw(4))
                / (f(645120.0) * pw(4))
        }
        5 => {
            (f(39636172800.0) - f(9083289600.0) * &p2 + f(624476160.0) * pw(2)
                - f(10081280.0) * pw(3)
                - f(92048.0) * pw(4)
                - f(1995.0) * pw(5))
                / (f(38707200.0) * pw(5))
        }
        _ => panic!("closed forms exist only for k = 0..=5"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prec::bits_for_digits;

    const P: u32 = 256;

    fn ctx(re: f64, im: f64, k: i64) -> SaddleContext {
        SaddleContext::new(BigComplex::from_f64(P, re, im), k).unwrap()
    }

    #[test]
    fn saddle_point_values() {
        let s = saddle_point(&BigComplex::from_f64(P, 2.0, 0.0), 0).unwrap();
        assert!((s.re.to_f64() - 2f64.ln()).abs() < 1e-15);
        assert!(s.im.to_f64().abs() < 1e-30);

        let s = saddle_point(&BigComplex::from_f64(P, 0.5, 0.0), -1).unwrap();
        assert!(s.re.to_f64().abs() < 1e-30);
        assert!((s.im.to_f64() + std::f64::consts::PI).abs() < 1e-15);

        let s = saddle_point(&BigComplex::from_f64(P, 2.0, 0.0), 1).unwrap();
        assert!((s.im.to_f64() - 2.0 * std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn pole_rejected() {
        assert!(matches!(
            saddle_point(&BigComplex::from_f64(P, 1.0, 0.0), 0),
            Err(Error::PoleArgument(_))
        ));
        assert!(matches!(
            saddle_point(&BigComplex::from_f64(P, 0.0, 0.0), 0),
            Err(Error::PoleArgument(_))
        ));
    }

    #[test]
    fn phase_series_known_coefficients() {
        // at z=2: h=2, quadratic = -h/(2(h-1)^2) = -1, cubic = h(h+1)/(6(h-1)^3) = 1
        let c = ctx(2.0, 0.0, 0);
        let phi = phase_series(&c, 8).unwrap();
        assert!((phi.c[2].re.to_f64() + 1.0).abs() < 1e-40);
        assert!((phi.c[3].re.to_f64() - 1.0).abs() < 1e-40);
        assert!(phi.c[1].abs().to_f64() < 1e-40);
    }

    #[test]
    fn engine_matches_closed_forms_at_two() {
        let c = ctx(2.0, 0.0, 0);
        let set = expansion_coefficients(&c, 3).unwrap();
        for k in 1..=3u32 {
            let cf = closed_form_a(&c.h, &c.s_k, k);
            let rel = set.a[k as usize].sub(&cf).abs().to_f64() / cf.abs().to_f64();
            assert!(rel < 1e-50, "k={k} rel={rel:e}");
        }
    }

    #[test]
    fn engine_reproduces_reference_coefficients() {
        // z = 2/3 + i/4, first and ninth coefficients known to 11 digits
        let p = bits_for_digits(60);
        let z = BigComplex::new(
            Float::with_val(p, 2) / 3u32,
            Float::with_val(p, 1) / 4u32,
        );
        let c = SaddleContext::new(z, 0).unwrap();
        let set = expansion_coefficients(&c, 9).unwrap();
        let (re1, im1) = set.a[1].to_f64();
        assert!((re1 - -1.0029378942e-1).abs() < 1e-11);
        assert!((im1 - -1.8804724469e-2).abs() < 1e-11);
        let (re9, im9) = set.a[9].to_f64();
        assert!((re9 - -8.4341941837e-9).abs() < 1e-18);
        assert!((im9 - -3.21789138766e-10).abs() < 1e-19);
    }

    #[test]
    fn prefactor_identity() {
        // g0 = i(h-1)/(s_k h^{1/2}) up to overall sign
        for (re, im, k) in [(2.0, 0.0, 0i64), (0.75, 1.0, 0), (0.6, 0.25, 1)] {
            let c = ctx(re, im, k);
            let set = expansion_coefficients(&c, 1).unwrap();
            let p = c.prec();
            let pred = BigComplex::i(p)
                .mul(&c.h.sub(&BigComplex::one(p)))
                .div(&c.s_k.mul(&c.h.sqrt()));
            let d_plus = set.g0.sub(&pred).abs().to_f64();
            let d_minus = set.g0.add(&pred).abs().to_f64();
            let scale = pred.abs().to_f64();
            assert!(
                d_plus.min(d_minus) < 1e-40 * scale,
                "z={re}+{im}i k={k}: {d_plus:e} {d_minus:e}"
            );
        }
    }

    #[test]
    fn midpoint_coefficients_match_closed_forms() {
        // (-1)^k Re A_k at z=1/2, saddle -1, equals C_k
        let c = ctx(0.5, 0.0, -1);
        let set = expansion_coefficients(&c, 5).unwrap();
        for k in 0..=5u32 {
            let ck = closed_form_c(k, P).to_f64();
            let got = set.a[k as usize].re.to_f64() * if k % 2 == 0 { 1.0 } else { -1.0 };
            assert!((got - ck).abs() < 1e-40 * ck.abs().max(1.0), "k={k}");
        }
    }

    #[test]
    fn real_axis_coefficients_are_real() {
        let c = ctx(2.0, 0.0, 0);
        let set = expansion_coefficients(&c, 10).unwrap();
        for (k, a) in set.a.iter().enumerate() {
            assert!(a.im.to_f64().abs() < 1e-40, "k={k}");
        }
    }

    #[test]
    fn conjugate_saddles_conjugate_coefficients() {
        // real x in (1/2, 1): saddle 0 vs saddle -1
        let c0 = ctx(0.75, 0.0, 0);
        let cm1 = ctx(0.75, 0.0, -1);
        let s0 = expansion_coefficients(&c0, 4).unwrap();
        let sm1 = expansion_coefficients(&cm1, 4).unwrap();
        for k in 0..=4 {
            let d = s0.a[k].sub(&sm1.a[k].conj()).abs().to_f64();
            assert!(d < 1e-40, "k={k}");
        }
    }

    #[test]
    fn l_omega_midpoint() {
        // x = 1/2: log ratio 0, so L = π and ω = π/2
        let c = ctx(0.5, 0.0, -1);
        let (l, om) = c.l_omega.clone().unwrap();
        assert!((l.to_f64() - std::f64::consts::PI).abs() < 1e-15);
        assert!((om.to_f64() - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn closed_form_a_limit() {
        // k=1, 1/λ → 0: only -(1-h+h²)/(12h) survives
        let h = BigComplex::from_f64(P, 2.0, 0.0);
        let big = BigComplex::from_f64(P, 1e30, 0.0);
        let v = closed_form_a(&h, &big, 1);
        let expect = -(1.0 - 2.0 + 4.0) / 24.0;
        assert!((v.re.to_f64() - expect).abs() < 1e-25);
    }

    #[test]
    fn closed_form_c_values() {
        assert_eq!(closed_form_c(0, P).to_f64(), 1.0);
        let pi2 = std::f64::consts::PI.powi(2);
        assert!((closed_form_c(1, P).to_f64() - (16.0 - pi2) / (4.0 * pi2)).abs() < 1e-15);
        // midpoint identity pins 2..5 in midpoint_coefficients_match_closed_forms
    }
}
