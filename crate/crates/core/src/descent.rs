//! Steepest-descent / steepest-ascent path tracing for the phase
//! ψ(s) = log(e^s − 1) − sz in the s = ξ + iη plane.
//!
//! Paths are level lines of Im ψ through a saddle. Double precision is used
//! throughout: the polylines feed plots and geometric sanity checks, never
//! the coefficient engine.

use crate::error::{Error, Result};
use num_complex::Complex64;

pub const DEFAULT_STEP: f64 = 1e-2;
pub const DEFAULT_MAX_LEN: f64 = 50.0;
pub const PATH_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BranchLabel {
    DescentPlus,
    DescentMinus,
    AscentPlus,
    AscentMinus,
}

impl BranchLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            BranchLabel::DescentPlus => "descent+",
            BranchLabel::DescentMinus => "descent-",
            BranchLabel::AscentPlus => "ascent+",
            BranchLabel::AscentMinus => "ascent-",
        }
    }

    pub fn is_descent(&self) -> bool {
        matches!(self, BranchLabel::DescentPlus | BranchLabel::DescentMinus)
    }
}

#[derive(Clone, Debug)]
pub struct PathPoint {
    pub xi: f64,
    pub eta: f64,
    pub re_psi: f64,
    pub im_psi: f64,
}

#[derive(Clone, Debug)]
pub struct PathPolyline {
    pub label: BranchLabel,
    pub points: Vec<PathPoint>,
}

/// Phase evaluator with branch-continuous Im log(e^s − 1): each call picks
/// the 2π sheet closest to the previous imaginary part.
struct Phase {
    z: Complex64,
    prev_im_log: f64,
}

impl Phase {
    fn new(z: Complex64, seed_im_log: f64) -> Self {
        Phase { z, prev_im_log: seed_im_log }
    }

    fn psi(&mut self, s: Complex64) -> Complex64 {
        let w = s.exp() - 1.0;
        let mut lg = w.ln();
        let turns = ((self.prev_im_log - lg.im) / std::f64::consts::TAU).round();
        lg.im += std::f64::consts::TAU * turns;
        self.prev_im_log = lg.im;
        lg - s * self.z
    }

    fn dpsi(&self, s: Complex64) -> Complex64 {
        let es = s.exp();
        es / (es - 1.0) - self.z
    }
}

/// ψ''(s_k) = z(1−z), the curvature that fixes the crossing directions.
pub fn psi2(z: Complex64) -> Complex64 {
    z * (1.0 - z)
}

/// Initial tangent angle of the descent branches: π/2 − arg(z(z−1))/2.
/// Along e^{iθ} with this θ the quadratic term ½ψ''u² is real and positive,
/// so Re ψ grows fastest while Im ψ stays put.
pub fn descent_direction(z: Complex64) -> Result<f64> {
    let c = z * (z - 1.0);
    if c.norm() < 1e-12 {
        return Err(Error::DegenerateSaddle(c.norm()));
    }
    Ok(std::f64::consts::FRAC_PI_2 - 0.5 * c.arg())
}

fn saddle_f64(z: Complex64, k: i64) -> Complex64 {
    let mut h = z / (z - 1.0);
    h.im += 0.0; // flush −0 so a negative real h lands on the +π sheet
    h.ln() + Complex64::new(0.0, std::f64::consts::TAU * k as f64)
}

fn near_pole(s: Complex64, step: f64) -> bool {
    let turns = (s.im / std::f64::consts::TAU).round();
    let pole = Complex64::new(0.0, std::f64::consts::TAU * turns);
    (s - pole).norm() < step
}

/// True once the path runs into a saddle other than the one it started from
/// (the connected configuration on the discontinuity line); the branch stops
/// there instead of continuing onto the far, non-monotone side.
fn near_other_saddle(s: Complex64, s_k: Complex64, step: f64) -> bool {
    let d = s - s_k;
    let turns = (d.im / std::f64::consts::TAU).round();
    if turns == 0.0 {
        return false;
    }
    (d - Complex64::new(0.0, std::f64::consts::TAU * turns)).norm() < step
}

fn trace_branch(
    z: Complex64,
    s_k: Complex64,
    theta: f64,
    label: BranchLabel,
    step: f64,
    max_len: f64,
) -> Result<PathPolyline> {
    let seed_im = (s_k.exp() - 1.0).ln().im;
    let mut phase = Phase::new(z, seed_im);
    let psi_saddle = phase.psi(s_k);
    let target_im = psi_saddle.im;

    let mut points = vec![PathPoint {
        xi: s_k.re,
        eta: s_k.im,
        re_psi: psi_saddle.re,
        im_psi: psi_saddle.im,
    }];

    // leave the saddle along the prescribed tangent; ψ' vanishes here so the
    // corrector only kicks in from the second step on
    let mut s = s_k + step * Complex64::from_polar(1.0, theta);
    let mut length = step;
    let descending = label.is_descent();
    let mut fails = 0usize;

    loop {
        // corrector: Newton step transverse to the path restoring Im ψ
        let mut corrected = false;
        for _ in 0..8 {
            let v = phase.psi(s);
            let d = phase.dpsi(s);
            let resid = v.im - target_im;
            if resid.abs() < PATH_TOL * 1e-2 {
                corrected = true;
                break;
            }
            if d.norm() < 1e-14 {
                break;
            }
            // moving along i·conj(ψ')/|ψ'| changes Im ψ at unit rate
            let dir = Complex64::new(0.0, 1.0) * d.conj() / d.norm();
            s += dir * (-resid / d.norm());
        }
        if !corrected {
            fails += 1;
            if fails >= 3 {
                return Err(Error::CorrectionDiverged(fails));
            }
        } else {
            fails = 0;
        }

        let v = phase.psi(s);
        points.push(PathPoint { xi: s.re, eta: s.im, re_psi: v.re, im_psi: v.im });

        if length >= max_len
            || near_pole(s, step)
            || near_other_saddle(s, s_k, step)
            || v.re.abs() > 1e6
        {
            break;
        }

        // predictor: unit tangent keeping Im ψ constant
        let d = phase.dpsi(s);
        if d.norm() < 1e-14 {
            break;
        }
        let mut tangent = d.conj() / d.norm();
        if !descending {
            tangent = -tangent;
        }
        s += step * tangent;
        length += step;
    }

    Ok(PathPolyline { label, points })
}

/// Traces the four constant-Im-ψ branches through the saddle s_k: two along
/// which Re ψ increases (descent of e^{−nψ}) and two along which it
/// decreases.
pub fn trace_paths(
    z: Complex64,
    saddle_index: i64,
    step: f64,
    max_len: f64,
) -> Result<Vec<PathPolyline>> {
    assert!(step > 0.0);
    let s_k = saddle_f64(z, saddle_index);
    let theta = descent_direction(z)?;
    let half_pi = std::f64::consts::FRAC_PI_2;
    let branches = [
        (theta, BranchLabel::DescentPlus),
        (theta + std::f64::consts::PI, BranchLabel::DescentMinus),
        (theta + half_pi, BranchLabel::AscentPlus),
        (theta - half_pi, BranchLabel::AscentMinus),
    ];
    branches
        .iter()
        .map(|&(angle, label)| trace_branch(z, s_k, angle, label, step, max_len))
        .collect()
}
