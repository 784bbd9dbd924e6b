//! Semi-infinite quadrature for kernel-weighted densities.
//!
//! The interval (0, inf) is split at `split_point`: a tanh-sinh rule on the
//! left panel absorbs algebraic/log endpoint singularities, and a
//! double-exponential rule tuned for exponentially decaying tails covers the
//! right panel. Complex integrands share nodes for the real and imaginary
//! parts, so conjugate symmetry survives the discretization.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::FRAC_PI_2;

/// Tolerances and budgets for semi-infinite integration.
#[derive(Clone, Copy, Debug)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub split_point: f64,
    pub max_level: u32,
    /// Exponent-argument bound past which e^{-x} is treated as exact zero.
    pub tail_cut: f64,
    /// Talbot contour node budget for numerical inversion.
    pub talbot_m: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            abs_tol: 1e-12,
            rel_tol: 1e-10,
            split_point: 1.0,
            max_level: 12,
            tail_cut: 720.0,
            talbot_m: 32,
        }
    }
}

impl QuadConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return Err(Error::Domain("quadrature tolerances must be > 0".into()));
        }
        if !(self.split_point > 0.0) {
            return Err(Error::Domain("split_point must be > 0".into()));
        }
        if self.max_level < 3 {
            return Err(Error::Domain("max_level must be >= 3".into()));
        }
        if self.talbot_m < 8 || self.talbot_m % 2 != 0 {
            return Err(Error::Domain("talbot_m must be even and >= 8".into()));
        }
        Ok(())
    }
}

/// Leading endpoint behavior of an integrand: f(t) ~ c * t^order (* ln t).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Singularity {
    pub order: f64,
    pub log: bool,
}

impl Singularity {
    pub fn new(order: f64, log: bool) -> Self {
        Singularity { order, log }
    }

    /// Compose the orders of a density and a kernel sharing the endpoint.
    pub fn compose(self, other: Singularity) -> Singularity {
        Singularity {
            order: self.order + other.order,
            log: self.log || other.log,
        }
    }
}

/// Trapezoid sum at step `h`; when `odd_only`, only odd multiples of `h`
/// (refinement nodes of the next level).
fn row_sum(
    f: &dyn Fn(f64) -> Complex64,
    map: &dyn Fn(f64) -> Option<(f64, f64)>,
    h: f64,
    odd_only: bool,
) -> Result<Complex64> {
    const U_MAX: f64 = 6.9;
    let mut total = Complex64::new(0.0, 0.0);
    for dir in [1.0f64, -1.0] {
        let mut j: u64 = if odd_only { 1 } else { if dir > 0.0 { 0 } else { 1 } };
        let step: u64 = if odd_only { 2 } else { 1 };
        let mut max_mag: f64 = 0.0;
        let mut small_streak = 0;
        loop {
            let u = dir * (j as f64) * h;
            if u.abs() > U_MAX {
                break;
            }
            if let Some((t, w)) = map(u) {
                if w != 0.0 && t > 0.0 {
                    let v = f(t);
                    if !v.re.is_finite() || !v.im.is_finite() {
                        return Err(Error::BadIntegrand(t));
                    }
                    let term = v * w;
                    let mag = term.norm();
                    max_mag = max_mag.max(mag);
                    if mag < 1e-17 * max_mag.max(1e-300) {
                        small_streak += 1;
                        if small_streak >= 3 {
                            break;
                        }
                    } else {
                        small_streak = 0;
                    }
                    total += term;
                }
            }
            j += step;
        }
    }
    Ok(total)
}

/// Level-doubling trapezoid over a double-exponential mapping.
fn de_converge(
    f: &dyn Fn(f64) -> Complex64,
    map: &dyn Fn(f64) -> Option<(f64, f64)>,
    cfg: &QuadConfig,
) -> Result<(Complex64, f64)> {
    let mut h = 1.0;
    let mut value = row_sum(f, map, h, false)? * h;
    let mut diffs = [f64::INFINITY, f64::INFINITY];
    for level in 1..=cfg.max_level {
        h *= 0.5;
        let refined = value * 0.5 + row_sum(f, map, h, true)? * h;
        let d = (refined - value).norm();
        diffs = [diffs[1], d];
        value = refined;
        let tol = cfg.abs_tol.max(cfg.rel_tol * value.norm());
        if level >= 3 && d <= tol {
            return Ok((value, diffs[0].max(diffs[1]).max(f64::MIN_POSITIVE)));
        }
    }
    Err(Error::NonConvergence {
        best: value,
        err_est: diffs[0].max(diffs[1]),
    })
}

/// Stable tanh-sinh node for (0, b): returns (t, dt/du).
fn tanh_sinh_node(b: f64, u: f64) -> Option<(f64, f64)> {
    let x = FRAC_PI_2 * u.sinh();
    // t = b/2 * (1 + tanh x) without cancellation at either end
    let t = if x < 0.0 {
        let e = (2.0 * x).exp();
        b * e / (1.0 + e)
    } else {
        b / (1.0 + (-2.0 * x).exp())
    };
    let sech = 2.0 * (-x.abs()).exp() / (1.0 + (-2.0 * x.abs()).exp());
    let w = b * 0.5 * FRAC_PI_2 * u.cosh() * sech * sech;
    if t <= 0.0 || !w.is_finite() || w == 0.0 {
        return None;
    }
    Some((t, w))
}

/// DE node for (s, inf), tuned for exponentially decaying integrands.
fn tail_node(s: f64, u: f64) -> Option<(f64, f64)> {
    let phi = (u - (-u).exp()).exp();
    if phi == 0.0 || !phi.is_finite() {
        return None;
    }
    let t = s + phi;
    let w = phi * (1.0 + (-u).exp());
    if !w.is_finite() {
        return None;
    }
    Some((t, w))
}

/// Tanh-sinh integration over the finite interval (0, b).
pub fn tanh_sinh(
    f: &dyn Fn(f64) -> Complex64,
    b: f64,
    cfg: &QuadConfig,
) -> Result<(Complex64, f64)> {
    de_converge(f, &|u| tanh_sinh_node(b, u), cfg)
}

/// Integrate f over (0, inf).
///
/// `sing` is the composed endpoint order of the integrand at t = 0; the
/// integral is rejected as non-integrable unless the order exceeds -1.
/// The integrand must decay at least exponentially at +inf.
pub fn integrate_semiinf(
    f: &dyn Fn(f64) -> Complex64,
    sing: Singularity,
    cfg: &QuadConfig,
) -> Result<(Complex64, f64)> {
    cfg.validate()?;
    if !(sing.order > -1.0) {
        return Err(Error::NonIntegrable(sing.order));
    }
    let s = cfg.split_point;
    let (left, e1) = de_converge(f, &|u| tanh_sinh_node(s, u), cfg)?;
    let (right, e2) = de_converge(f, &|u| tail_node(s, u), cfg)?;
    Ok((left + right, e1 + e2))
}

/// Forward Laplace transform: integral of e^{-alpha x} F(x) over (0, inf).
///
/// `sing` declares the endpoint order of F itself at x = 0.
pub fn laplace_forward(
    big_f: &dyn Fn(f64) -> Complex64,
    alpha: Complex64,
    sing: Singularity,
    cfg: &QuadConfig,
) -> Result<(Complex64, f64)> {
    if !(alpha.re > 0.0) {
        return Err(Error::Domain(format!(
            "laplace_forward requires Re(alpha) > 0, got {alpha}"
        )));
    }
    let tail_cut = cfg.tail_cut;
    let g = move |x: f64| {
        if alpha.re * x > tail_cut {
            return Complex64::new(0.0, 0.0);
        }
        (-alpha * x).exp() * big_f(x)
    };
    integrate_semiinf(&g, sing, cfg)
}
