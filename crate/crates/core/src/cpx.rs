//! Extended-precision complex arithmetic on top of `rug::Float`.
//!
//! Only the operations the series engine and the asymptotic sums need are
//! provided. All multi-valued functions (ln, sqrt, powers) take principal
//! branches; callers that need another sheet add the 2πi multiples
//! themselves.

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

#[derive(Clone, Debug)]
pub struct BigComplex {
    pub re: Float,
    pub im: Float,
}

pub fn float(prec: u32, v: f64) -> Float {
    Float::with_val(prec, v)
}

pub fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

impl BigComplex {
    pub fn new(re: Float, im: Float) -> Self {
        BigComplex { re, im }
    }

    pub fn from_f64(prec: u32, re: f64, im: f64) -> Self {
        BigComplex::new(Float::with_val(prec, re), Float::with_val(prec, im))
    }

    pub fn from_real(re: Float) -> Self {
        let prec = re.prec();
        BigComplex { im: Float::with_val(prec, 0), re }
    }

    pub fn zero(prec: u32) -> Self {
        Self::from_f64(prec, 0.0, 0.0)
    }

    pub fn one(prec: u32) -> Self {
        Self::from_f64(prec, 1.0, 0.0)
    }

    pub fn i(prec: u32) -> Self {
        Self::from_f64(prec, 0.0, 1.0)
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        BigComplex::new(self.re.clone(), Float::with_val(self.prec(), -&self.im))
    }

    pub fn neg(&self) -> Self {
        let p = self.prec();
        BigComplex::new(Float::with_val(p, -&self.re), Float::with_val(p, -&self.im))
    }

    pub fn add(&self, o: &Self) -> Self {
        let p = self.prec();
        BigComplex::new(
            Float::with_val(p, &self.re + &o.re),
            Float::with_val(p, &self.im + &o.im),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        let p = self.prec();
        BigComplex::new(
            Float::with_val(p, &self.re - &o.re),
            Float::with_val(p, &self.im - &o.im),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = self.prec();
        let re = Float::with_val(p, &self.re * &o.re) - Float::with_val(p, &self.im * &o.im);
        let im = Float::with_val(p, &self.re * &o.im) + Float::with_val(p, &self.im * &o.re);
        BigComplex::new(Float::with_val(p, re), Float::with_val(p, im))
    }

    pub fn mul_float(&self, c: &Float) -> Self {
        let p = self.prec();
        BigComplex::new(Float::with_val(p, &self.re * c), Float::with_val(p, &self.im * c))
    }

    pub fn div(&self, o: &Self) -> Self {
        let p = self.prec();
        let d = o.norm_sqr();
        let num = self.mul(&o.conj());
        BigComplex::new(Float::with_val(p, &num.re / &d), Float::with_val(p, &num.im / &d))
    }

    pub fn recip(&self) -> Self {
        let p = self.prec();
        BigComplex::one(p).div(self)
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.clone().square() + self.im.clone().square())
    }

    pub fn abs(&self) -> Float {
        self.norm_sqr().sqrt()
    }

    /// Principal argument in (−π, π]. A zero imaginary part is treated as
    /// +0 so the negative real axis lands on +π regardless of how a −0
    /// crept in upstream.
    pub fn arg(&self) -> Float {
        if self.im.is_zero() {
            Float::with_val(self.prec(), 0).atan2(&self.re)
        } else {
            self.im.clone().atan2(&self.re)
        }
    }

    /// Principal logarithm.
    pub fn ln(&self) -> Self {
        BigComplex::new(self.abs().ln(), self.arg())
    }

    pub fn exp(&self) -> Self {
        let r = self.re.clone().exp();
        let (s, c) = self.im.clone().sin_cos(Float::new(self.prec()));
        BigComplex::new(c * &r, s * &r)
    }

    /// Principal square root (nonnegative real part; positive imaginary part
    /// on the negative real axis).
    pub fn sqrt(&self) -> Self {
        let p = self.prec();
        let r = self.abs();
        let half = Float::with_val(p, 0.5);
        let re = Float::with_val(p, &r + &self.re).sqrt() * &half.clone().sqrt();
        let mut im = Float::with_val(p, &r - &self.re).sqrt() * &half.sqrt();
        if self.im.is_sign_negative() && !self.im.is_zero() {
            im = -im;
        }
        BigComplex::new(re, im)
    }

    /// Principal power self^w = exp(w · ln self).
    pub fn pow_c(&self, w: &Self) -> Self {
        w.mul(&self.ln()).exp()
    }

    pub fn pow_float(&self, e: &Float) -> Self {
        let l = self.ln();
        BigComplex::new(
            Float::with_val(self.prec(), &l.re * e),
            Float::with_val(self.prec(), &l.im * e),
        )
        .exp()
    }

    /// Integer power by repeated squaring (exact exponent, no log branch).
    pub fn pow_i(&self, e: i64) -> Self {
        let p = self.prec();
        if e < 0 {
            return self.pow_i(-e).recip();
        }
        let mut acc = BigComplex::one(p);
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

/// x^y for positive real base at full precision.
pub fn float_pow(base: &Float, e: &Float) -> Float {
    Float::with_val(base.prec(), base.clone().pow(e))
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 200;

    fn close(a: &Float, b: f64, tol: f64) -> bool {
        (a.to_f64() - b).abs() < tol
    }

    #[test]
    fn ln_exp_round_trip() {
        let z = BigComplex::from_f64(P, -1.25, 0.5);
        let w = z.ln().exp();
        assert!(close(&w.re, -1.25, 1e-50));
        assert!(close(&w.im, 0.5, 1e-50));
    }

    #[test]
    fn sqrt_principal_branch() {
        let z = BigComplex::from_f64(P, -4.0, 0.0);
        let r = z.sqrt();
        assert!(close(&r.re, 0.0, 1e-50));
        assert!(close(&r.im, 2.0, 1e-50));

        let z = BigComplex::from_f64(P, 0.0, 2.0);
        let r = z.sqrt();
        assert!(close(&r.re, 1.0, 1e-50));
        assert!(close(&r.im, 1.0, 1e-50));
    }

    #[test]
    fn pow_i_matches_mul() {
        let z = BigComplex::from_f64(P, 0.7, -0.3);
        let cubed = z.mul(&z).mul(&z);
        let p = z.pow_i(3);
        assert!(close(&p.re, cubed.re.to_f64(), 1e-50));
        assert!(close(&p.im, cubed.im.to_f64(), 1e-50));
    }

    #[test]
    fn division_inverts_multiplication() {
        let a = BigComplex::from_f64(P, 1.5, -2.25);
        let b = BigComplex::from_f64(P, -0.75, 0.5);
        let q = a.mul(&b).div(&b);
        assert!(close(&q.re, 1.5, 1e-55));
        assert!(close(&q.im, -2.25, 1e-55));
    }
}
