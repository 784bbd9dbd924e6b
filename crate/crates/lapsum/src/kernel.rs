//! The kernel library: 24 kernel forms with their series shapes, small-t
//! behavior, and type-B dual shapes.
//!
//! Each kernel K(t; alpha, beta, gamma) satisfies an identity of the form
//!
//!   integral over (0, inf) of G(t) K(t) dt
//!     = sign * sum over k of weight(k) g(argument(k)) + c0 * g(0)
//!
//! and a dual "type B" identity
//!
//!   F(x) = prefactor(x) * sum over k of weight_b(k, x) G(x / scale(k))
//!          (+ a delta(x) g(0) term for the kernels with c0 = 1)

use crate::error::{Error, Result};
use crate::gamma::{ln_gamma_real, recip_gamma};
use crate::quadrature::Singularity;
use num_complex::Complex64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KernelTag {
    Base,
    Alternating,
    Shifted,
    ShiftedAlternating,
    PowerFactor,
    PowerFactorAlternating,
    ExpFactor,
    ExpFactorAlternating,
    Differentiated,
    DifferentiatedAlternating,
    Integrated,
    IntegratedAlternating,
    AddedConstant,
    AddedConstantAlternating,
    HypInvSine,
    HypInvCosine,
    HypInvSineComplex,
    HypInvCosineComplex,
    HypSine,
    HypCosine,
    SquareRoot,
    SquareRootAlternating,
    Exponential,
    NegExponential,
}

pub const ALL_TAGS: [KernelTag; 24] = [
    KernelTag::Base,
    KernelTag::Alternating,
    KernelTag::Shifted,
    KernelTag::ShiftedAlternating,
    KernelTag::PowerFactor,
    KernelTag::PowerFactorAlternating,
    KernelTag::ExpFactor,
    KernelTag::ExpFactorAlternating,
    KernelTag::Differentiated,
    KernelTag::DifferentiatedAlternating,
    KernelTag::Integrated,
    KernelTag::IntegratedAlternating,
    KernelTag::AddedConstant,
    KernelTag::AddedConstantAlternating,
    KernelTag::HypInvSine,
    KernelTag::HypInvCosine,
    KernelTag::HypInvSineComplex,
    KernelTag::HypInvCosineComplex,
    KernelTag::HypSine,
    KernelTag::HypCosine,
    KernelTag::SquareRoot,
    KernelTag::SquareRootAlternating,
    KernelTag::Exponential,
    KernelTag::NegExponential,
];

impl KernelTag {
    pub fn name(&self) -> &'static str {
        match self {
            KernelTag::Base => "base",
            KernelTag::Alternating => "alternating",
            KernelTag::Shifted => "shifted",
            KernelTag::ShiftedAlternating => "shifted_alternating",
            KernelTag::PowerFactor => "power_factor",
            KernelTag::PowerFactorAlternating => "power_factor_alternating",
            KernelTag::ExpFactor => "exp_factor",
            KernelTag::ExpFactorAlternating => "exp_factor_alternating",
            KernelTag::Differentiated => "differentiated",
            KernelTag::DifferentiatedAlternating => "differentiated_alternating",
            KernelTag::Integrated => "integrated",
            KernelTag::IntegratedAlternating => "integrated_alternating",
            KernelTag::AddedConstant => "added_constant",
            KernelTag::AddedConstantAlternating => "added_constant_alternating",
            KernelTag::HypInvSine => "hyp_inv_sine",
            KernelTag::HypInvCosine => "hyp_inv_cosine",
            KernelTag::HypInvSineComplex => "hyp_inv_sine_complex",
            KernelTag::HypInvCosineComplex => "hyp_inv_cosine_complex",
            KernelTag::HypSine => "hyp_sine",
            KernelTag::HypCosine => "hyp_cosine",
            KernelTag::SquareRoot => "square_root",
            KernelTag::SquareRootAlternating => "square_root_alternating",
            KernelTag::Exponential => "exponential",
            KernelTag::NegExponential => "neg_exponential",
        }
    }

    pub fn from_name(name: &str) -> Option<KernelTag> {
        ALL_TAGS.iter().copied().find(|t| t.name() == name)
    }

    pub fn needs_beta(&self) -> bool {
        matches!(
            self,
            KernelTag::Shifted
                | KernelTag::ShiftedAlternating
                | KernelTag::ExpFactor
                | KernelTag::ExpFactorAlternating
                | KernelTag::AddedConstant
                | KernelTag::AddedConstantAlternating
                | KernelTag::HypInvSineComplex
                | KernelTag::HypInvCosineComplex
        )
    }

    pub fn needs_gamma(&self) -> bool {
        matches!(
            self,
            KernelTag::PowerFactor | KernelTag::PowerFactorAlternating
        )
    }
}

/// One of the 24 kernel forms with its parameter bindings.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelVariant {
    pub tag: KernelTag,
    pub alpha: Complex64,
    pub beta: Complex64,
    pub gamma: Complex64,
}

impl KernelVariant {
    pub fn new(
        tag: KernelTag,
        alpha: Complex64,
        beta: Option<Complex64>,
        gamma: Option<Complex64>,
    ) -> Result<KernelVariant> {
        if alpha == Complex64::new(0.0, 0.0) {
            return Err(Error::Domain("alpha must be nonzero".into()));
        }
        if tag.needs_beta() && beta.is_none() {
            return Err(Error::Domain(format!("{} requires beta", tag.name())));
        }
        if tag.needs_gamma() && gamma.is_none() {
            return Err(Error::Domain(format!("{} requires gamma", tag.name())));
        }
        let beta = beta.unwrap_or(Complex64::new(0.0, 0.0));
        let gamma = gamma.unwrap_or(Complex64::new(0.0, 0.0));
        match tag {
            KernelTag::PowerFactor | KernelTag::PowerFactorAlternating => {
                if !(gamma.norm() > 1.0) {
                    return Err(Error::Domain("|gamma| > 1 violated".into()));
                }
            }
            KernelTag::ExpFactor | KernelTag::ExpFactorAlternating => {
                if !(beta.re > 0.0) {
                    return Err(Error::Domain("Re(beta) > 0 violated".into()));
                }
            }
            KernelTag::Shifted | KernelTag::ShiftedAlternating => {
                if !(beta.re >= 0.0) {
                    return Err(Error::Domain("Re(beta) >= 0 violated".into()));
                }
            }
            KernelTag::AddedConstant | KernelTag::AddedConstantAlternating => {
                if !(alpha.norm() > beta.norm()) {
                    return Err(Error::Domain("|alpha| > |beta| violated".into()));
                }
                if !((alpha - beta).re > 0.0) || !(alpha.re > 0.0) {
                    return Err(Error::Domain(
                        "Re(alpha - beta) > 0 and Re(alpha) > 0 required for a decaying integrand"
                            .into(),
                    ));
                }
            }
            KernelTag::HypInvSineComplex | KernelTag::HypInvCosineComplex => {
                if !(beta.re > 0.0) {
                    return Err(Error::Domain("Re(beta) > 0 violated".into()));
                }
            }
            _ => {}
        }
        Ok(KernelVariant {
            tag,
            alpha,
            beta,
            gamma,
        })
    }

    /// Effective exponential decay rate of the kernel along (0, inf).
    fn decay_rate(&self) -> Complex64 {
        match self.tag {
            KernelTag::AddedConstant | KernelTag::AddedConstantAlternating => self.alpha - self.beta,
            KernelTag::HypInvSineComplex | KernelTag::HypInvCosineComplex => {
                self.beta + Complex64::i() * self.alpha
            }
            _ => self.alpha,
        }
    }

    /// Checks that the kernel is usable on the real integration path:
    /// decaying and with no pole locus crossing (0, inf).
    pub fn validate_for_integration(&self) -> Result<()> {
        let r = self.decay_rate();
        if !(r.re > 0.0) {
            return Err(Error::Domain(
                "kernel does not decay on (0, inf): effective Re(rate) <= 0".into(),
            ));
        }
        // Poles of 1/(gamma e^{alpha t} - 1) sit at alpha t = -Ln gamma + 2 pi i n.
        if matches!(
            self.tag,
            KernelTag::PowerFactor | KernelTag::PowerFactorAlternating
        ) {
            let sign = if self.tag == KernelTag::PowerFactor {
                1.0
            } else {
                -1.0
            };
            for n in -8i32..=8 {
                let target = (1.0 / (sign * self.gamma)).ln()
                    + Complex64::new(0.0, 2.0 * std::f64::consts::PI * n as f64);
                let t = target / self.alpha;
                if t.im.abs() < 1e-12 && t.re > 0.0 {
                    return Err(Error::KernelPole(t));
                }
            }
        }
        Ok(())
    }
}

/// exp(z) treated as exact zero once the argument is far into the left
/// half-plane, so huge kernels never produce spurious NaN.
fn exp_guarded(z: Complex64) -> Complex64 {
    if z.re < -720.0 {
        Complex64::new(0.0, 0.0)
    } else {
        z.exp()
    }
}

/// 1/z computed with component scaling: the naive conj(z)/|z|^2 formula
/// underflows |z|^2 to zero once |z| < ~1e-154 and returns inf/NaN.
fn recip_c(z: Complex64) -> Complex64 {
    let s = z.re.abs().max(z.im.abs());
    let zr = z.re / s;
    let zi = z.im / s;
    let den = (zr * zr + zi * zi) * s;
    Complex64::new(zr / den, -zi / den)
}

/// e^z - 1 without cancellation for small |z|.
fn expm1_c(z: Complex64) -> Complex64 {
    if z.norm() < 1e-4 {
        z * (1.0 + z * (0.5 + z * (1.0 / 6.0 + z * (1.0 / 24.0))))
    } else {
        z.exp() - 1.0
    }
}

/// ln(1 + w) accurate for small |w|.
fn ln1p_c(w: Complex64) -> Complex64 {
    if w.norm() < 1e-5 {
        w * (1.0 - w * (0.5 - w / 3.0))
    } else {
        (Complex64::new(1.0, 0.0) + w).ln()
    }
}

/// (2n-1)!! / (2n)!! by upward recurrence, exact and overflow-free.
pub fn double_factorial_ratio(n: u64) -> f64 {
    let mut w = 1.0;
    for j in 1..=n {
        w *= (2 * j - 1) as f64 / (2 * j) as f64;
    }
    w
}

/// Smooth real-k extension of the double-factorial ratio.
fn double_factorial_ratio_smooth(n: f64) -> f64 {
    (ln_gamma_real(n + 0.5) - ln_gamma_real(n + 1.0) - 0.5 * std::f64::consts::PI.ln()).exp()
}

/// K(t) per the variant's closed form, valid for complex t off the poles.
pub fn kernel_eval(v: &KernelVariant, t: Complex64) -> Result<Complex64> {
    let pole = |d: Complex64| -> Result<Complex64> {
        if d == Complex64::new(0.0, 0.0) {
            Err(Error::KernelPole(t))
        } else {
            Ok(recip_c(d))
        }
    };
    let x = v.alpha * t;
    match v.tag {
        KernelTag::Base => {
            if x.re > 350.0 {
                return Ok(exp_guarded(-x));
            }
            pole(expm1_c(x))
        }
        KernelTag::Alternating => {
            if x.re > 350.0 {
                return Ok(exp_guarded(-x));
            }
            pole(x.exp() + 1.0)
        }
        KernelTag::Shifted => Ok(exp_guarded(-v.beta * t)
            * kernel_eval(
                &KernelVariant {
                    tag: KernelTag::Base,
                    ..*v
                },
                t,
            )?),
        KernelTag::ShiftedAlternating => Ok(exp_guarded(-v.beta * t)
            * kernel_eval(
                &KernelVariant {
                    tag: KernelTag::Alternating,
                    ..*v
                },
                t,
            )?),
        KernelTag::PowerFactor => {
            if x.re > 350.0 {
                return Ok(exp_guarded(-x) / v.gamma);
            }
            pole(v.gamma * x.exp() - 1.0)
        }
        KernelTag::PowerFactorAlternating => {
            if x.re > 350.0 {
                return Ok(exp_guarded(-x) / v.gamma);
            }
            pole(v.gamma * x.exp() + 1.0)
        }
        KernelTag::ExpFactor => {
            let y = x + v.beta;
            if y.re > 350.0 {
                return Ok(exp_guarded(-y));
            }
            pole(expm1_c(y))
        }
        KernelTag::ExpFactorAlternating => {
            let y = x + v.beta;
            if y.re > 350.0 {
                return Ok(exp_guarded(-y));
            }
            pole(y.exp() + 1.0)
        }
        KernelTag::Differentiated => {
            let b = kernel_eval(
                &KernelVariant {
                    tag: KernelTag::Base,
                    ..*v
                },
                t,
            )?;
            Ok(b * b)
        }
        KernelTag::DifferentiatedAlternating => {
            let b = kernel_eval(
                &KernelVariant {
                    tag: KernelTag::Alternating,
                    ..*v
                },
                t,
            )?;
            Ok(b * b)
        }
        KernelTag::Integrated => {
            if x.re > 30.0 {
                return Ok(ln1p_c(-exp_guarded(-x)));
            }
            let m = -expm1_c(-x); // 1 - e^{-x}, stably
            if m == Complex64::new(0.0, 0.0) {
                return Err(Error::KernelPole(t));
            }
            Ok(m.ln())
        }
        KernelTag::IntegratedAlternating => Ok(ln1p_c(exp_guarded(-x))),
        KernelTag::AddedConstant => {
            let y = (v.alpha - v.beta) * t;
            let base = if y.re > 350.0 {
                exp_guarded(-y)
            } else {
                pole(expm1_c(y))?
            };
            Ok(exp_guarded(-v.beta * t) * base)
        }
        KernelTag::AddedConstantAlternating => {
            let y = (v.alpha - v.beta) * t;
            let base = if y.re > 350.0 {
                exp_guarded(-y)
            } else {
                pole(y.exp() + 1.0)?
            };
            Ok(exp_guarded(-v.beta * t) * base)
        }
        KernelTag::HypInvSine | KernelTag::HypInvSineComplex => {
            let w = if v.tag == KernelTag::HypInvSine {
                v.alpha
            } else {
                v.beta + Complex64::i() * v.alpha
            };
            let e = exp_guarded(-w * t);
            let d = -expm1_c(-2.0 * w * t); // 1 - e^{-2wt}
            if d == Complex64::new(0.0, 0.0) {
                return Err(Error::KernelPole(t));
            }
            Ok(e * recip_c(d))
        }
        KernelTag::HypInvCosine | KernelTag::HypInvCosineComplex => {
            let w = if v.tag == KernelTag::HypInvCosine {
                v.alpha
            } else {
                v.beta + Complex64::i() * v.alpha
            };
            let e = exp_guarded(-w * t);
            let d = 1.0 + exp_guarded(-2.0 * w * t);
            if d == Complex64::new(0.0, 0.0) {
                return Err(Error::KernelPole(t));
            }
            Ok(e / d)
        }
        KernelTag::HypSine => Ok(exp_guarded(-x).sinh()),
        KernelTag::HypCosine => Ok(exp_guarded(-x).cosh()),
        KernelTag::SquareRoot => {
            let m = -expm1_c(-x); // 1 - e^{-alpha t}
            if m == Complex64::new(0.0, 0.0) {
                return Err(Error::KernelPole(t));
            }
            Ok(recip_c(m.sqrt()))
        }
        KernelTag::SquareRootAlternating => {
            let d = 1.0 + exp_guarded(-x);
            if d == Complex64::new(0.0, 0.0) {
                return Err(Error::KernelPole(t));
            }
            Ok(1.0 / d.sqrt())
        }
        KernelTag::Exponential => Ok(exp_guarded(-x).exp()),
        KernelTag::NegExponential => Ok((-exp_guarded(-x)).exp()),
    }
}

/// Leading behavior K(t) ~ c * t^q (* ln t) as t -> 0+.
pub fn smallt_order(v: &KernelVariant) -> Singularity {
    match v.tag {
        KernelTag::Base | KernelTag::Shifted => Singularity::new(-1.0, false),
        KernelTag::AddedConstant => Singularity::new(-1.0, false),
        KernelTag::HypInvSine | KernelTag::HypInvSineComplex => Singularity::new(-1.0, false),
        KernelTag::Differentiated => Singularity::new(-2.0, false),
        KernelTag::Integrated => Singularity::new(0.0, true),
        KernelTag::SquareRoot => Singularity::new(-0.5, false),
        _ => Singularity::new(0.0, false),
    }
}

/// The weight/argument pattern on the summation side of a kernel identity.
///
/// integral G K = sign * sum_{k >= start} weight(k) g(argument(k)) + c0 g(0)
#[derive(Clone, Copy, Debug)]
pub struct SeriesShape {
    variant: KernelVariant,
    pub index_start: u64,
    pub constant_coefficient: u8,
    pub sign: f64,
    pub alternating: bool,
}

impl SeriesShape {
    pub fn variant(&self) -> &KernelVariant {
        &self.variant
    }

    /// Smooth (real-k) part of the weight, excluding the alternating sign.
    pub fn weight_smooth(&self, k: f64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        match self.variant.tag {
            KernelTag::Base
            | KernelTag::Alternating
            | KernelTag::Shifted
            | KernelTag::ShiftedAlternating
            | KernelTag::AddedConstant
            | KernelTag::AddedConstantAlternating
            | KernelTag::HypInvSine
            | KernelTag::HypInvCosine
            | KernelTag::HypInvSineComplex
            | KernelTag::HypInvCosineComplex => one,
            KernelTag::PowerFactor | KernelTag::PowerFactorAlternating => {
                (-self.variant.gamma.ln() * k).exp()
            }
            KernelTag::ExpFactor | KernelTag::ExpFactorAlternating => (-self.variant.beta * k).exp(),
            KernelTag::Differentiated | KernelTag::DifferentiatedAlternating => {
                Complex64::new(k, 0.0)
            }
            KernelTag::Integrated | KernelTag::IntegratedAlternating => Complex64::new(1.0 / k, 0.0),
            KernelTag::HypSine => recip_gamma(Complex64::new(2.0 * k, 0.0)),
            KernelTag::HypCosine => recip_gamma(Complex64::new(2.0 * k + 1.0, 0.0)),
            KernelTag::SquareRoot => Complex64::new(double_factorial_ratio_smooth(k), 0.0),
            KernelTag::SquareRootAlternating => {
                Complex64::new(-double_factorial_ratio_smooth(k), 0.0)
            }
            KernelTag::Exponential => recip_gamma(Complex64::new(k + 1.0, 0.0)),
            KernelTag::NegExponential => -recip_gamma(Complex64::new(k + 1.0, 0.0)),
        }
    }

    /// Full weight at integer index k, alternating sign included.
    pub fn weight(&self, k: u64) -> Complex64 {
        let s = if self.alternating && k % 2 == 0 {
            -1.0
        } else {
            1.0
        };
        // exact double-factorial recurrence on the integer path
        let w = match self.variant.tag {
            KernelTag::SquareRoot => Complex64::new(double_factorial_ratio(k), 0.0),
            KernelTag::SquareRootAlternating => Complex64::new(-double_factorial_ratio(k), 0.0),
            _ => self.weight_smooth(k as f64),
        };
        w * s
    }

    /// Series argument as a smooth function of the index.
    pub fn argument(&self, k: f64) -> Complex64 {
        let v = &self.variant;
        match v.tag {
            KernelTag::Base
            | KernelTag::Alternating
            | KernelTag::PowerFactor
            | KernelTag::PowerFactorAlternating
            | KernelTag::ExpFactor
            | KernelTag::ExpFactorAlternating
            | KernelTag::Integrated
            | KernelTag::IntegratedAlternating
            | KernelTag::SquareRoot
            | KernelTag::SquareRootAlternating
            | KernelTag::Exponential
            | KernelTag::NegExponential => v.alpha * k,
            KernelTag::Shifted | KernelTag::ShiftedAlternating => v.alpha * k + v.beta,
            KernelTag::Differentiated | KernelTag::DifferentiatedAlternating => v.alpha * (k + 1.0),
            KernelTag::AddedConstant | KernelTag::AddedConstantAlternating => {
                v.alpha * k - v.beta * (k - 1.0)
            }
            KernelTag::HypInvSine | KernelTag::HypInvCosine | KernelTag::HypSine => {
                v.alpha * (2.0 * k - 1.0)
            }
            KernelTag::HypInvSineComplex | KernelTag::HypInvCosineComplex => {
                (v.beta + Complex64::i() * v.alpha) * (2.0 * k - 1.0)
            }
            KernelTag::HypCosine => v.alpha * 2.0 * k,
        }
    }
}

/// The summation-side shape paired with a kernel variant.
pub fn series_shape(v: &KernelVariant) -> SeriesShape {
    let (sign, c0, alternating) = match v.tag {
        KernelTag::Integrated => (-1.0, 0, false),
        KernelTag::Alternating
        | KernelTag::ShiftedAlternating
        | KernelTag::PowerFactorAlternating
        | KernelTag::ExpFactorAlternating
        | KernelTag::DifferentiatedAlternating
        | KernelTag::IntegratedAlternating
        | KernelTag::AddedConstantAlternating
        | KernelTag::HypInvCosine
        | KernelTag::HypInvCosineComplex => (1.0, 0, true),
        KernelTag::HypCosine | KernelTag::SquareRoot | KernelTag::Exponential => (1.0, 1, false),
        KernelTag::SquareRootAlternating | KernelTag::NegExponential => (1.0, 1, true),
        _ => (1.0, 0, false),
    };
    SeriesShape {
        variant: *v,
        index_start: 1,
        constant_coefficient: c0,
        sign,
        alternating,
    }
}

/// The dual series shape: F(x) = prefactor(x) * sum_k weight(k, x) G(x/scale(k)),
/// plus an optional delta(x) g(0) term.
#[derive(Clone, Copy, Debug)]
pub struct TypeBShape {
    variant: KernelVariant,
    pub delta_coefficient: f64,
    pub numeric_evaluable: bool,
    pub alternating: bool,
}

impl TypeBShape {
    pub fn variant(&self) -> &KernelVariant {
        &self.variant
    }

    /// Smooth part of the dual weight (alternating sign excluded).
    pub fn weight_smooth(&self, k: f64, x: f64) -> Complex64 {
        let v = &self.variant;
        let inv = |d: f64| Complex64::new(1.0 / d, 0.0);
        match v.tag {
            KernelTag::Base | KernelTag::Alternating => inv(k),
            KernelTag::Shifted | KernelTag::ShiftedAlternating => {
                (-v.beta * (x / k)).exp() / k
            }
            KernelTag::PowerFactor | KernelTag::PowerFactorAlternating => {
                (-v.gamma.ln() * k).exp() / k
            }
            KernelTag::ExpFactor | KernelTag::ExpFactorAlternating => (-v.beta * k).exp() / k,
            KernelTag::Differentiated => Complex64::new(k / (k + 1.0), 0.0),
            KernelTag::DifferentiatedAlternating => inv(k + 1.0),
            KernelTag::Integrated => Complex64::new(-1.0 / (k * k), 0.0),
            KernelTag::IntegratedAlternating => inv(k * k),
            KernelTag::AddedConstant | KernelTag::AddedConstantAlternating => {
                (-v.beta * (x / k)).exp() / k
            }
            KernelTag::HypInvSine | KernelTag::HypInvCosine => inv(2.0 * k - 1.0),
            KernelTag::HypInvSineComplex | KernelTag::HypInvCosineComplex => {
                1.0 / (Complex64::i() * (2.0 * k - 1.0))
            }
            KernelTag::HypSine => {
                recip_gamma(Complex64::new(2.0 * k, 0.0)) / (2.0 * k - 1.0)
            }
            KernelTag::HypCosine => {
                recip_gamma(Complex64::new(2.0 * k + 1.0, 0.0)) / (2.0 * k)
            }
            KernelTag::SquareRoot => Complex64::new(double_factorial_ratio_smooth(k) / k, 0.0),
            KernelTag::SquareRootAlternating => {
                Complex64::new(-double_factorial_ratio_smooth(k) / k, 0.0)
            }
            KernelTag::Exponential => recip_gamma(Complex64::new(k + 1.0, 0.0)) / k,
            KernelTag::NegExponential => -recip_gamma(Complex64::new(k + 1.0, 0.0)) / k,
        }
    }

    /// Full dual weight at integer index.
    pub fn weight(&self, k: u64, x: f64) -> Complex64 {
        let s = if self.alternating && k % 2 == 0 {
            -1.0
        } else {
            1.0
        };
        self.weight_smooth(k as f64, x) * s
    }

    /// G is sampled at x / scale(k).
    pub fn scale(&self, k: f64) -> Complex64 {
        let v = &self.variant;
        match v.tag {
            KernelTag::Differentiated | KernelTag::DifferentiatedAlternating => {
                Complex64::new(k + 1.0, 0.0)
            }
            KernelTag::HypInvSine | KernelTag::HypInvCosine | KernelTag::HypSine => {
                Complex64::new(2.0 * k - 1.0, 0.0)
            }
            KernelTag::HypInvSineComplex | KernelTag::HypInvCosineComplex => {
                Complex64::i() * (2.0 * k - 1.0)
            }
            KernelTag::HypCosine => Complex64::new(2.0 * k, 0.0),
            _ => Complex64::new(k, 0.0),
        }
    }

    pub fn prefactor(&self, x: f64) -> Complex64 {
        let v = &self.variant;
        match v.tag {
            KernelTag::AddedConstant | KernelTag::AddedConstantAlternating => (v.beta * x).exp(),
            KernelTag::HypInvSineComplex | KernelTag::HypInvCosineComplex => {
                (Complex64::i() * v.beta * x).exp()
            }
            _ => Complex64::new(1.0, 0.0),
        }
    }
}

/// B-side shape for a variant.
pub fn type_b_shape(v: &KernelVariant) -> TypeBShape {
    let delta = matches!(
        v.tag,
        KernelTag::HypCosine
            | KernelTag::SquareRoot
            | KernelTag::SquareRootAlternating
            | KernelTag::Exponential
            | KernelTag::NegExponential
    );
    let complex_scale = matches!(
        v.tag,
        KernelTag::HypInvSineComplex | KernelTag::HypInvCosineComplex
    );
    let alternating = series_shape(v).alternating;
    TypeBShape {
        variant: *v,
        delta_coefficient: if delta { 1.0 } else { 0.0 },
        numeric_evaluable: !delta && !complex_scale,
        alternating,
    }
}
