//! Exact reference track: B_n^(n)(z) and the second-kind polynomials b_n(z)
//! computed with big-rational truncated-series arithmetic, plus the exact
//! structural checks (reflection identity, integer interlacing).
//!
//! Nothing in this module rounds; all arithmetic is over reduced rationals.

use rug::{Integer, Rational};

/// Exact complex number with rational parts.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexRational {
    pub re: Rational,
    pub im: Rational,
}

impl ComplexRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        ComplexRational { re, im }
    }

    pub fn from_real(re: Rational) -> Self {
        ComplexRational { re, im: Rational::new() }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        ComplexRational::new(Rational::from(re), Rational::from(im))
    }

    pub fn is_zero(&self) -> bool {
        self.re == 0 && self.im == 0
    }

    pub fn mul(&self, o: &Self) -> Self {
        ComplexRational {
            re: Rational::from(&self.re * &o.re) - Rational::from(&self.im * &o.im),
            im: Rational::from(&self.re * &o.im) + Rational::from(&self.im * &o.re),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        ComplexRational {
            re: Rational::from(&self.re + &o.re),
            im: Rational::from(&self.im + &o.im),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        ComplexRational {
            re: Rational::from(&self.re * c),
            im: Rational::from(&self.im * c),
        }
    }
}

/// Truncated power series with exact rational coefficients.
/// `coeffs[k]` is the coefficient of t^k; length equals the truncation order.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalSeries {
    pub coeffs: Vec<Rational>,
}

impl RationalSeries {
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![Rational::new(); order];
        coeffs[0] = Rational::from(1);
        RationalSeries { coeffs }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = vec![Rational::new(); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n - i).enumerate() {
                out[i + j] += Rational::from(a * b);
            }
        }
        RationalSeries { coeffs: out }
    }

    /// Truncated quotient; the divisor must have a nonzero constant term.
    pub fn div(&self, den: &Self) -> Self {
        let n = self.order().min(den.order());
        assert!(den.coeffs[0] != 0, "series division by zero constant term");
        let mut out = vec![Rational::new(); n];
        for k in 0..n {
            let mut s = self.coeffs[k].clone();
            for j in 1..=k {
                s -= Rational::from(&den.coeffs[j] * &out[k - j]);
            }
            out[k] = s / &den.coeffs[0];
        }
        RationalSeries { coeffs: out }
    }

    /// self^e with truncation after every multiply (binary exponentiation).
    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = RationalSeries::one(self.order());
        let mut base = self.clone();
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
}

/// Dense polynomial with exact rational coefficients, `coeffs[k]` = coefficient
/// of z^k.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalPolynomial {
    pub coeffs: Vec<Rational>,
}

impl RationalPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, z: &Rational) -> Rational {
        let mut acc = Rational::new();
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    pub fn eval_complex(&self, z: &ComplexRational) -> ComplexRational {
        let mut acc = ComplexRational::from_ints(0, 0);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(z).add(&ComplexRational::from_real(c.clone()));
        }
        acc
    }

    /// p(z + a), expanded by Horner over the shifted variable.
    pub fn shift(&self, a: &Rational) -> Self {
        // acc(z) <- acc(z)*(z+a) + c, carried out on coefficient vectors
        let mut acc: Vec<Rational> = Vec::new();
        for c in self.coeffs.iter().rev() {
            let mut next = vec![Rational::new(); acc.len() + 1];
            for (i, v) in acc.iter().enumerate() {
                next[i + 1] += v;
                next[i] += Rational::from(v * a);
            }
            if next.is_empty() {
                next.push(Rational::new());
            }
            next[0] += c;
            acc = next;
        }
        if acc.is_empty() {
            acc.push(Rational::new());
        }
        RationalPolynomial { coeffs: acc }
    }
}

pub fn factorial(n: u32) -> Integer {
    Integer::factorial(n).into()
}

/// Series of t/(e^t - 1): exact long division of 1 by sum_{k>=0} t^k/(k+1)!.
/// Coefficient of t^k is B_k/k! (Bernoulli numbers).
pub fn base_series(order: usize) -> RationalSeries {
    assert!(order >= 1);
    let mut den = Vec::with_capacity(order);
    let mut f = Integer::from(1);
    for k in 0..order {
        f *= k as u32 + 1;
        den.push(Rational::from((Integer::from(1), f.clone())));
    }
    RationalSeries::one(order).div(&RationalSeries { coeffs: den })
}

/// The degree-n polynomial B_n^(n)(z): n! times the coefficient of t^n in
/// (t/(e^t-1))^n e^{zt}, assembled as n! * sum_m a_m z^{n-m}/(n-m)!.
pub fn norlund_polynomial(n: u32) -> RationalPolynomial {
    let nu = n as usize;
    if n == 0 {
        return RationalPolynomial { coeffs: vec![Rational::from(1)] };
    }
    let a = base_series(nu + 1).pow(n as u64);
    let nfact = factorial(n);
    let mut coeffs = vec![Rational::new(); nu + 1];
    let mut jfact = Vec::with_capacity(nu + 1);
    let mut f = Integer::from(1);
    jfact.push(f.clone());
    for j in 1..=nu {
        f *= j as u32;
        jfact.push(f.clone());
    }
    for m in 0..=nu {
        let deg = nu - m;
        coeffs[deg] = Rational::from(&a.coeffs[m] * &nfact) / &jfact[deg];
    }
    RationalPolynomial { coeffs }
}

/// The second-kind polynomial b_n(z): n! times the coefficient of t^n in
/// t (1+t)^z / log(1+t), built from its own generating function so it can
/// serve as an independent cross-check of the shift identity
/// b_n(z) = B_n^(n)(z+1).
pub fn second_kind_polynomial(n: u32) -> RationalPolynomial {
    let nu = n as usize;
    let order = nu + 1;
    // t/log(1+t) = 1 / sum_{k>=0} (-1)^k t^k/(k+1)
    let den = RationalSeries {
        coeffs: (0..order)
            .map(|k| {
                let r = Rational::from((1, k as i64 + 1));
                if k % 2 == 0 { r } else { -r }
            })
            .collect(),
    };
    let g = RationalSeries::one(order).div(&den);
    // (1+t)^z = sum_k binom(z,k) t^k with binom(z,k) = z(z-1)...(z-k+1)/k!
    // polynomial in z; b_n = n! * sum_k g_{n-k} binom(z,k).
    let nfact = factorial(n);
    let mut coeffs = vec![Rational::new(); nu + 1];
    // binom(z,k) coefficients, updated incrementally
    let mut binom = vec![Rational::from(1)];
    for k in 0..=nu {
        if k > 0 {
            // multiply by (z - (k-1)) / k
            let shift = Rational::from(k as i64 - 1);
            let kk = Rational::from(k as i64);
            let mut next = vec![Rational::new(); binom.len() + 1];
            for (i, c) in binom.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= Rational::from(c * &shift);
            }
            for c in next.iter_mut() {
                *c /= &kk;
            }
            binom = next;
        }
        let w = Rational::from(&g.coeffs[nu - k] * &nfact);
        if w == 0 {
            continue;
        }
        for (i, c) in binom.iter().enumerate() {
            coeffs[i] += Rational::from(c * &w);
        }
    }
    RationalPolynomial { coeffs }
}

/// Exact value of B_n^(n)(n*z); the argument scaling by n happens here.
pub fn eval_exact(n: u32, z: &ComplexRational) -> ComplexRational {
    let p = norlund_polynomial(n);
    let nz = z.scale(&Rational::from(n));
    p.eval_complex(&nz)
}

/// B_n^(n)(nz) = (-1)^n B_n^(n)(n(1-z)), checked exactly.
pub fn reflection_check(n: u32, z: &ComplexRational) -> bool {
    let lhs = eval_exact(n, z);
    let one_minus = ComplexRational::new(
        Rational::from(1) - &z.re,
        Rational::from(-&z.im),
    );
    let mut rhs = eval_exact(n, &one_minus);
    if n % 2 == 1 {
        rhs = rhs.scale(&Rational::from(-1));
    }
    lhs == rhs
}

#[derive(Clone, Debug)]
pub struct InterlacingReport {
    /// Signs of B_n^(n)(x) at the unscaled integer arguments x = 0..=n.
    pub signs: Vec<i32>,
    pub pass: bool,
    /// First integer pair without a strict sign change, if any.
    pub violation: Option<(u32, u32)>,
}

/// Evaluates B_n^(n) exactly at the integers 0..=n and checks for strict sign
/// alternation (n sign changes force n simple real zeros, one per gap).
pub fn interlacing_check(n: u32) -> InterlacingReport {
    assert!(n >= 1);
    let p = norlund_polynomial(n);
    let signs: Vec<i32> = (0..=n)
        .map(|x| {
            let v = p.eval(&Rational::from(x));
            if v == 0 {
                0
            } else if v > 0 {
                1
            } else {
                -1
            }
        })
        .collect();
    let mut violation = None;
    for i in 0..n as usize {
        if signs[i] * signs[i + 1] != -1 {
            violation = Some((i as u32, i as u32 + 1));
            break;
        }
    }
    InterlacingReport { pass: violation.is_none(), signs, violation }
}
