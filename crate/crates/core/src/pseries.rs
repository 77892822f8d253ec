//! Truncated power-series algebra over extended-precision complex
//! coefficients: multiplication, division, log composition, square root with
//! branch control, and compositional reversion. This is the engine room for
//! the expansion-coefficient generator.

use crate::cpx::BigComplex;
use crate::error::{Error, Result};
use rug::Float;

/// Threshold below which a constant/linear term counts as zero for the
/// structural preconditions, relative to working precision.
fn tiny(prec: u32) -> f64 {
    2f64.powi(-(prec as i32) + 24)
}

#[derive(Clone, Debug)]
pub struct ComplexSeries {
    pub c: Vec<BigComplex>,
}

impl ComplexSeries {
    pub fn order(&self) -> usize {
        self.c.len()
    }

    pub fn prec(&self) -> u32 {
        self.c[0].prec()
    }

    pub fn zero(order: usize, prec: u32) -> Self {
        ComplexSeries { c: vec![BigComplex::zero(prec); order] }
    }

    pub fn one(order: usize, prec: u32) -> Self {
        let mut s = Self::zero(order, prec);
        s.c[0] = BigComplex::one(prec);
        s
    }

    /// Series of e^u - 1 (zero constant term).
    pub fn exp_minus_one(order: usize, prec: u32) -> Self {
        let mut s = Self::zero(order, prec);
        let mut f = Float::with_val(prec, 1);
        for k in 1..order {
            f /= k as u32;
            s.c[k] = BigComplex::from_real(f.clone());
        }
        s
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        ComplexSeries { c: (0..n).map(|k| self.c[k].add(&o.c[k])).collect() }
    }

    pub fn scale(&self, f: &BigComplex) -> Self {
        ComplexSeries { c: self.c.iter().map(|x| x.mul(f)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        let prec = self.prec();
        let mut out = Self::zero(n, prec);
        for i in 0..n {
            if self.c[i].is_zero() {
                continue;
            }
            for j in 0..n - i {
                let p = self.c[i].mul(&o.c[j]);
                out.c[i + j] = out.c[i + j].add(&p);
            }
        }
        out
    }

    pub fn div(&self, den: &Self) -> Result<Self> {
        let n = self.order().min(den.order());
        let prec = self.prec();
        let b0 = &den.c[0];
        let b0_abs = b0.abs().to_f64();
        if b0_abs < tiny(prec) {
            return Err(Error::ZeroConstantTerm(b0_abs));
        }
        let inv0 = b0.recip();
        let mut out = Self::zero(n, prec);
        for k in 0..n {
            let mut s = self.c[k].clone();
            for j in 1..=k {
                s = s.sub(&den.c[j].mul(&out.c[k - j]));
            }
            out.c[k] = s.mul(&inv0);
        }
        Ok(out)
    }

    /// log(1 + x(t)) for a series x with zero constant term, by Horner-style
    /// composition of the log series.
    pub fn log1p_compose(&self) -> Result<Self> {
        let n = self.order();
        let prec = self.prec();
        let x0 = self.c[0].abs().to_f64();
        if x0 > tiny(prec) {
            return Err(Error::NonzeroConstantTerm(x0));
        }
        // coefficients (-1)^{m-1}/m of log(1+y)
        let mut f = Self::zero(n, prec);
        for m in 1..n {
            let v = Float::with_val(prec, if m % 2 == 1 { 1.0 } else { -1.0 }) / m as u32;
            f.c[m] = BigComplex::from_real(v);
        }
        f.compose(self)
    }

    /// f(g(t)) by Horner; g must have zero constant term.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        let n = self.order().min(g.order());
        let prec = self.prec();
        let g0 = g.c[0].abs().to_f64();
        if g0 > tiny(prec) {
            return Err(Error::NonzeroConstantTerm(g0));
        }
        let mut out = Self::zero(n, prec);
        for ck in self.c[..n].iter().rev() {
            out = out.mul(g);
            out.c[0] = out.c[0].add(ck);
        }
        Ok(out)
    }

    /// Square root with the constant term chosen as the root of c[0] closer
    /// to `branch_target`.
    pub fn sqrt_series(&self, branch_target: &BigComplex) -> Result<Self> {
        let n = self.order();
        let prec = self.prec();
        let a0 = &self.c[0];
        if a0.abs().to_f64() < tiny(prec) {
            return Err(Error::ZeroConstantTerm(a0.abs().to_f64()));
        }
        let mut r0 = a0.sqrt();
        let d_plus = r0.sub(branch_target).abs();
        let d_minus = r0.neg().sub(branch_target).abs();
        let gap = Float::with_val(prec, &d_plus - &d_minus).to_f64();
        let scale = r0.abs().to_f64().max(1.0);
        if gap.abs() < 1e-12 * scale && branch_target.abs().to_f64() > tiny(prec) {
            return Err(Error::AmbiguousBranch);
        }
        if gap > 0.0 {
            r0 = r0.neg();
        }
        let mut out = Self::zero(n, prec);
        let inv2r0 = BigComplex::from_f64(prec, 2.0, 0.0).mul(&r0).recip();
        out.c[0] = r0;
        for k in 1..n {
            let mut s = self.c[k].clone();
            for j in 1..k {
                s = s.sub(&out.c[j].mul(&out.c[k - j]));
            }
            out.c[k] = s.mul(&inv2r0);
        }
        Ok(out)
    }

    /// Formal derivative, padded to the same order (the top coefficient of
    /// the result is unknown at this truncation and left zero).
    pub fn derivative(&self) -> Self {
        let prec = self.prec();
        let n = self.order();
        let mut out = Self::zero(n, prec);
        for k in 1..n {
            let f = Float::with_val(prec, k as u32);
            out.c[k - 1] = self.c[k].mul_float(&f);
        }
        out
    }

    /// Compositional inverse u(w) of w(u): Newton iteration on series,
    /// doubling the correct order each step. Requires w[0]=0, w[1]!=0.
    pub fn revert(&self) -> Result<Self> {
        let n = self.order();
        let prec = self.prec();
        let w1 = self.c[1].abs().to_f64();
        if self.c[0].abs().to_f64() > tiny(prec) {
            return Err(Error::NonzeroConstantTerm(self.c[0].abs().to_f64()));
        }
        if w1 < tiny(prec) {
            return Err(Error::ZeroLinearTerm(w1));
        }
        let wp = self.derivative();
        let mut u = Self::zero(n, prec);
        u.c[1] = self.c[1].recip();
        let mut correct = 2usize;
        while correct < n {
            // u <- u - (w(u) - id)/w'(u)
            let mut wu = self.compose(&u)?;
            wu.c[1] = wu.c[1].sub(&BigComplex::one(prec));
            let dwu = wp.compose(&u)?;
            let corr = wu.div(&dwu)?;
            for k in 0..n {
                u.c[k] = u.c[k].sub(&corr.c[k]);
            }
            correct *= 2;
        }
        Ok(u)
    }

    /// Largest coefficient magnitude, for residual checks.
    pub fn max_abs(&self) -> f64 {
        self.c.iter().map(|x| x.abs().to_f64()).fold(0.0, f64::max)
    }
}
