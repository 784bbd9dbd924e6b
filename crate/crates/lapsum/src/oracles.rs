//! Independent summation oracles: direct summation with tail estimation,
//! alternating-series acceleration, the negapolylog closed form, weighted
//! partial summation through the transform integral, and the dual (type-B)
//! series. These never touch the kernel-integral evaluation path, so they
//! can cross-validate it.

use crate::catalog::{inverse_transform, summand_eval, SummandSpec};
use crate::error::{Error, Result};
use crate::kernel::{SeriesShape, TypeBShape};
use crate::quadrature::{integrate_semiinf, tanh_sinh, QuadConfig, Singularity};
use num_complex::Complex64;

/// Tail estimation strategy for direct summation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TailMethod {
    None,
    IntegralBound,
    /// Euler-Maclaurin correction with `n` terms (Bernoulli B2 .. B_{2n}).
    EulerMaclaurin(usize),
}

/// Bernoulli numbers B2, B4, ..., B12.
const BERNOULLI: [f64; 6] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
];

/// (2j)! for j = 1..=6.
const FACT_2J: [f64; 6] = [2.0, 24.0, 720.0, 40320.0, 3628800.0, 479001600.0];

/// Result of an oracle evaluation.
#[derive(Clone, Copy, Debug)]
pub struct OracleResult {
    pub value: Complex64,
    pub err_est: f64,
    pub terms_used: usize,
    pub tail_value: Complex64,
    /// The tail method actually applied (None when the requested method
    /// was inapplicable and the oracle fell back to the bare partial sum).
    pub tail_used: TailMethod,
}

impl TailMethod {
    fn validate(&self) -> Result<()> {
        if let TailMethod::EulerMaclaurin(n) = *self {
            if n == 0 || n > 6 {
                return Err(Error::UnsupportedOrder(n));
            }
        }
        Ok(())
    }
}

/// m-th derivative by the (m+1)-point central binomial stencil, O(h^2).
fn central_derivative(f: &dyn Fn(f64) -> Complex64, x: f64, m: usize, h: f64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    let mut binom = 1.0f64;
    for i in 0..=m {
        let offset = m as f64 / 2.0 - i as f64;
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        acc += sign * binom * f(x + offset * h);
        binom = binom * (m - i) as f64 / (i + 1) as f64;
    }
    acc / h.powi(m as i32)
}

/// Richardson-extrapolated central derivative, O(h^4).
fn derivative(f: &dyn Fn(f64) -> Complex64, x: f64, m: usize, h: f64) -> Complex64 {
    (4.0 * central_derivative(f, x, m, 0.5 * h) - central_derivative(f, x, m, h)) / 3.0
}

/// Integral of f over (n, inf) via the substitution x = n/u, u in (0, 1).
fn tail_integral(
    f: &dyn Fn(f64) -> Complex64,
    n: f64,
    cfg: &QuadConfig,
) -> Result<(Complex64, f64)> {
    tanh_sinh(
        &|u| {
            let x = n / u;
            let v = f(x);
            // the summand has underflowed: the weighted term is a true zero,
            // not 0 * inf
            if v.norm() < 1e-280 {
                return Complex64::new(0.0, 0.0);
            }
            v * (n / (u * u))
        },
        1.0,
        cfg,
    )
}

/// Sum of f(k) over integer k > n for a smooth, eventually monotone f:
///
///   sum_{k > n} f(k) = integral_n^inf f  -  f(n)/2
///                      - sum_{j=1}^{order} B_{2j}/(2j)! f^{(2j-1)}(n)
///
/// Derivatives come from central differences with step h = 0.01 n; the
/// error estimate is the magnitude of the last correction term plus the
/// integration error.
fn euler_maclaurin_tail(
    f: &dyn Fn(f64) -> Complex64,
    n: f64,
    order: usize,
    cfg: &QuadConfig,
) -> Result<(Complex64, f64)> {
    let (integral, ierr) = tail_integral(f, n, cfg)?;
    let mut tail = integral - 0.5 * f(n);
    let h = 0.01 * n;
    let mut last = 0.0f64;
    for j in 1..=order {
        let d = derivative(f, n, 2 * j - 1, h);
        let term = d * (BERNOULLI[j - 1] / FACT_2J[j - 1]);
        tail -= term;
        last = term.norm();
    }
    Ok((tail, ierr + last))
}

/// Cauchy-style divergence probe over dyadic windows: with partial sums
/// S_N, S_2N, S_4N, a window gap that fails to shrink marks divergence.
fn dyadic_probe(s_n: Complex64, s_2n: Complex64, s_4n: Complex64) -> Result<()> {
    let d1 = (s_2n - s_n).norm();
    let d2 = (s_4n - s_2n).norm();
    let tiny = 1e-13 * s_4n.norm().max(1e-30);
    if d1 > tiny && d2 >= d1 {
        return Err(Error::Divergent(format!(
            "dyadic window gaps are not shrinking ({d1:.3e} then {d2:.3e})"
        )));
    }
    Ok(())
}

/// Shared direct-summation core over an arbitrary smooth term function.
///
/// `term_int(k)` is the exact term at integer k; `term_smooth(k)` its smooth
/// real-k extension used by the tail methods (they differ only by the
/// alternating sign, which bars EM/integral tails anyway).
fn sum_with_tail(
    term_int: &dyn Fn(u64) -> Complex64,
    term_smooth: &dyn Fn(f64) -> Complex64,
    start: u64,
    n: usize,
    tail: TailMethod,
    alternating: bool,
    cfg: &QuadConfig,
) -> Result<OracleResult> {
    tail.validate()?;
    if n < 8 {
        return Err(Error::Domain(format!("need N >= 8, got {n}")));
    }
    let n_u = n as u64;
    let mut acc = Complex64::new(0.0, 0.0);
    let (mut s_n, mut s_2n) = (acc, acc);
    let mut last_term = 0.0f64;
    for k in start..=4 * n_u {
        let t = term_int(k);
        if !t.re.is_finite() || !t.im.is_finite() {
            return Err(Error::BadIntegrand(k as f64));
        }
        acc += t;
        if k == n_u {
            s_n = acc;
            last_term = t.norm();
        }
        if k == 2 * n_u {
            s_2n = acc;
        }
    }
    dyadic_probe(s_n, s_2n, acc)?;

    // Tail methods assume a smooth, monotonically decaying continuation.
    let monotone = !alternating && {
        let a = term_smooth(n as f64).norm();
        let b = term_smooth(n as f64 + 1.0).norm();
        let c = term_smooth(n as f64 + 2.0).norm();
        a >= b && b >= c
    };
    let tail_used = if monotone { tail } else { TailMethod::None };
    let (tail_value, tail_err) = match tail_used {
        TailMethod::None => (Complex64::new(0.0, 0.0), last_term),
        TailMethod::IntegralBound => {
            let (integral, ierr) = tail_integral(term_smooth, n as f64, cfg)?;
            let v = integral - 0.5 * term_smooth(n as f64);
            (v, 0.5 * last_term + ierr)
        }
        TailMethod::EulerMaclaurin(order) => {
            euler_maclaurin_tail(term_smooth, n as f64, order, cfg)?
        }
    };
    Ok(OracleResult {
        value: s_n + tail_value,
        err_est: tail_err,
        terms_used: n,
        tail_value,
        tail_used,
    })
}

/// Direct summation of the kernel identity's series side:
///
///   sign * sum_{k=start}^{N} w(k) g(arg(k)) + c0 g(0) + sign * tail
///
/// This is the integral-side value f(alpha) of the identity.
pub fn sum_direct(
    spec: &SummandSpec,
    shape: &SeriesShape,
    n: usize,
    tail: TailMethod,
) -> Result<OracleResult> {
    let cfg = QuadConfig::default();
    let term_int = |k: u64| -> Complex64 {
        shape.weight(k) * summand_eval(spec, shape.argument(k as f64)).unwrap_or(Complex64::new(
            f64::NAN,
            f64::NAN,
        ))
    };
    let term_smooth = |k: f64| -> Complex64 {
        shape.weight_smooth(k)
            * summand_eval(spec, shape.argument(k)).unwrap_or(Complex64::new(f64::NAN, f64::NAN))
    };
    let mut r = sum_with_tail(
        &term_int,
        &term_smooth,
        shape.index_start,
        n,
        tail,
        shape.alternating,
        &cfg,
    )?;
    r.value *= shape.sign;
    r.tail_value *= shape.sign;
    if shape.constant_coefficient != 0 {
        let g0 = summand_eval(spec, Complex64::new(0.0, 0.0))?;
        r.value += shape.constant_coefficient as f64 * g0;
    }
    Ok(r)
}

/// Abel summation for bounded oscillatory series (trig summands): sum the
/// series damped by r^k for a ladder of r < 1 and extrapolate to r = 1 by
/// Neville's scheme in h = 1 - r. Returns the integral-side value
/// sign * sum + c0 g(0), like `sum_direct`. Valid when the damped series
/// A(r) extends analytically through r = 1, which holds for the catalog's
/// trig summands away from alpha = 0 and 2 pi.
pub fn abel_sum(spec: &SummandSpec, shape: &SeriesShape) -> Result<OracleResult> {
    let hs: [f64; 8] = [
        0.05, 0.025, 0.0125, 0.00625, 0.003125, 0.0015625, 0.00078125, 0.000390625,
    ];
    let mut vals = Vec::with_capacity(hs.len());
    let mut terms_used = 0usize;
    for &h in &hs {
        let r = 1.0 - h;
        let mut acc = Complex64::new(0.0, 0.0);
        let mut rk = r.powi(shape.index_start as i32 - 1);
        let mut k = shape.index_start;
        loop {
            rk *= r;
            if rk < 1e-18 {
                break;
            }
            let t = shape.weight(k)
                * summand_eval(spec, shape.argument(k as f64))
                    .unwrap_or(Complex64::new(f64::NAN, f64::NAN));
            if !t.re.is_finite() || !t.im.is_finite() {
                return Err(Error::BadIntegrand(k as f64));
            }
            acc += rk * t;
            k += 1;
        }
        terms_used = terms_used.max((k - shape.index_start) as usize);
        vals.push(acc);
    }
    // Neville extrapolation to h = 0
    let mut p = vals;
    let n = p.len();
    let mut prev = p[0];
    for j in 1..n {
        prev = p[0];
        for i in 0..n - j {
            p[i] = (hs[i] * p[i + 1] - hs[i + j] * p[i]) / (hs[i] - hs[i + j]);
        }
    }
    let mut value = shape.sign * p[0];
    if shape.constant_coefficient != 0 {
        let g0 = summand_eval(spec, Complex64::new(0.0, 0.0))?;
        value += shape.constant_coefficient as f64 * g0;
    }
    Ok(OracleResult {
        value,
        err_est: (p[0] - prev).norm().max(f64::MIN_POSITIVE),
        terms_used,
        tail_value: Complex64::new(0.0, 0.0),
        tail_used: TailMethod::None,
    })
}

/// Euler-transform acceleration of an alternating series whose signed terms
/// are supplied directly. Iterated averaging of the partial sums, depth
/// min(N/2, 30); the error estimate is the last transformed increment.
pub fn alternating_sum(term: &dyn Fn(u64) -> Complex64, n: usize) -> Result<OracleResult> {
    if n < 4 {
        return Err(Error::Domain(format!("need N >= 4, got {n}")));
    }
    let mut partial = Vec::with_capacity(n);
    let mut acc = Complex64::new(0.0, 0.0);
    let mut prev_term = Complex64::new(0.0, 0.0);
    let mut alternations = 0usize;
    let mut comparisons = 0usize;
    for k in 1..=n as u64 {
        let t = term(k);
        if !t.re.is_finite() || !t.im.is_finite() {
            return Err(Error::BadIntegrand(k as f64));
        }
        if k > 1 && prev_term.norm() > 0.0 && t.norm() > 0.0 {
            comparisons += 1;
            if (t * prev_term.conj()).re < 0.0 {
                alternations += 1;
            }
        }
        prev_term = t;
        acc += t;
        partial.push(acc);
    }
    if comparisons > 0 && alternations * 2 < comparisons {
        return Err(Error::NotAlternating);
    }
    let depth = (n / 2).min(30);
    let mut prev = *partial.last().unwrap();
    for _ in 0..depth {
        prev = *partial.last().unwrap();
        for i in 0..partial.len() - 1 {
            partial[i] = 0.5 * (partial[i] + partial[i + 1]);
        }
        partial.pop();
    }
    let value = *partial.last().unwrap();
    Ok(OracleResult {
        value,
        err_est: (value - prev).norm().max(f64::MIN_POSITIVE),
        terms_used: n,
        tail_value: Complex64::new(0.0, 0.0),
        tail_used: TailMethod::None,
    })
}

/// Accelerated evaluation of an alternating series shape.
pub fn sum_alternating(spec: &SummandSpec, shape: &SeriesShape, n: usize) -> Result<OracleResult> {
    if !shape.alternating {
        return Err(Error::NotAlternating);
    }
    let term = |k: u64| -> Complex64 {
        shape.weight(k)
            * summand_eval(spec, shape.argument(k as f64))
                .unwrap_or(Complex64::new(f64::NAN, f64::NAN))
    };
    let mut r = alternating_sum(&term, n)?;
    r.value *= shape.sign;
    if shape.constant_coefficient != 0 {
        let g0 = summand_eval(spec, Complex64::new(0.0, 0.0))?;
        r.value += shape.constant_coefficient as f64 * g0;
    }
    Ok(r)
}

/// Sum over k >= 1 of k^m e^{-kt}, by the Eulerian-number closed form:
/// with x = e^{-t}, the value is [sum_j A(m, j) x^{m-j}] / (1-x)^{m+1}
/// for m >= 1, and x/(1-x) for m = 0.
pub fn negapolylog(m: usize, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("negapolylog requires t > 0, got {t}")));
    }
    if m > 8 {
        return Err(Error::UnsupportedOrder(m));
    }
    let x = (-t).exp();
    let om = -f64::exp_m1(-t); // 1 - x without cancellation
    if m == 0 {
        return Ok(x / om);
    }
    // Eulerian numbers A(m, j) via A(m, j) = (j+1) A(m-1, j) + (m-j) A(m-1, j-1)
    let mut a = vec![1.0f64];
    for row in 2..=m {
        let mut next = vec![0.0f64; row];
        for j in 0..row {
            let left = if j < a.len() { a[j] } else { 0.0 };
            let diag = if j >= 1 { a[j - 1] } else { 0.0 };
            next[j] = (j as f64 + 1.0) * left + (row as f64 - j as f64) * diag;
        }
        a = next;
    }
    let mut num = 0.0;
    for (j, &c) in a.iter().enumerate() {
        num += c * x.powi((m - j) as i32);
    }
    Ok(num / om.powi(m as i32 + 1))
}

/// Weighted partial summation: sum_k P(k) f(k) for a polynomial weight
/// P(k) = sum_j c_j k^j, evaluated through the transform integral
///
///   sum_k P(k) f(k) = integral_0^inf F(t) sum_j c_j negapolylog(j, t) dt
///
/// where F is the density of `fspec`. Accepted only when the density order
/// p satisfies p - deg > 0, since negapolylog(j, t) ~ j! t^{-j-1} near 0.
pub fn weighted_partial_summation(
    fspec: &SummandSpec,
    gpoly: &[f64],
    cfg: &QuadConfig,
) -> Result<OracleResult> {
    let it = inverse_transform(fspec);
    let d = it.density.as_ref().ok_or(Error::NoDensity)?;
    let deg = gpoly
        .iter()
        .rposition(|&c| c != 0.0)
        .ok_or_else(|| Error::Domain("polynomial weight is identically zero".into()))?;
    if deg > 8 {
        return Err(Error::UnsupportedOrder(deg));
    }
    let p = d.small_t_order;
    if !(p - deg as f64 > 0.0) {
        return Err(Error::NonIntegrable(p - deg as f64 - 1.0));
    }
    let coeffs = gpoly[..=deg].to_vec();
    let f = |t: f64| -> Complex64 {
        // below this point negapolylog overflows while the density
        // underflows; the validated order p - deg > 0 makes the true
        // contribution of (0, 1e-150) negligible
        if t < 1e-150 {
            return Complex64::new(0.0, 0.0);
        }
        let mut s = 0.0;
        for (j, &c) in coeffs.iter().enumerate() {
            if c != 0.0 {
                s += c * negapolylog(j, t).unwrap_or(f64::NAN);
            }
        }
        // e^{-t} has underflowed: the product is a true zero even when the
        // density itself overflows
        if s == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        d.eval(Complex64::new(t, 0.0)) * s
    };
    let (value, err_est) =
        integrate_semiinf(&f, Singularity::new(p - deg as f64 - 1.0, false), cfg)?;
    Ok(OracleResult {
        value,
        err_est,
        terms_used: deg + 1,
        tail_value: Complex64::new(0.0, 0.0),
        tail_used: TailMethod::None,
    })
}

/// The dual (type-B) series:
///
///   F(x) = prefactor(x) * sum_{k=1}^{N} weight(k, x) G(x / scale(k)) + tail
///
/// Only shapes with real scales and no delta component are evaluable; the
/// summand must have a density. Smooth non-alternating tails get an
/// Euler-Maclaurin correction, alternating ones Euler acceleration.
pub fn typeb_eval(
    spec: &SummandSpec,
    bshape: &TypeBShape,
    x: f64,
    n: usize,
) -> Result<OracleResult> {
    if !bshape.numeric_evaluable {
        return Err(Error::NonEvaluableShape(
            bshape.variant().tag.name().to_string(),
        ));
    }
    if !(x > 0.0) {
        return Err(Error::Domain(format!("typeB requires x > 0, got {x}")));
    }
    let it = inverse_transform(spec);
    let d = it.density.as_ref().ok_or(Error::NoDensity)?;
    let cfg = QuadConfig::default();
    let term_smooth = |k: f64| -> Complex64 {
        let scale = bshape.scale(k);
        // evaluable shapes have real positive scales
        bshape.weight_smooth(k, x) * d.eval(Complex64::new(x / scale.re, 0.0))
    };
    let sign = |k: u64| {
        if bshape.alternating && k % 2 == 0 {
            -1.0
        } else {
            1.0
        }
    };
    let pf = bshape.prefactor(x);
    if bshape.alternating {
        let mut r = alternating_sum(&|k| sign(k) * term_smooth(k as f64), n)?;
        r.value *= pf;
        r.err_est *= pf.norm();
        return Ok(r);
    }
    let mut r = sum_with_tail(
        &|k| term_smooth(k as f64),
        &term_smooth,
        1,
        n,
        TailMethod::EulerMaclaurin(4),
        false,
        &cfg,
    )?;
    r.value *= pf;
    r.tail_value *= pf;
    r.err_est *= pf.norm();
    Ok(r)
}
