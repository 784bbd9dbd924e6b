//! Summand families, their parameter ranges, and closed-form inverse
//! Laplace transforms.

use crate::error::{Error, Result};
use crate::gamma::{gamma, recip_gamma};
use num_complex::Complex64;

/// A summand family g(k) with its parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SummandSpec {
    /// g(k) = k^{-z}
    Power { z: Complex64 },
    /// g(k) = (a + k)^{-beta}
    ShiftedPower { a: Complex64, beta: Complex64 },
    /// g(k) = e^{-c k}, c real > 0
    Exponential { c: f64 },
    /// g(k) = cos(k)
    Cosine,
    /// g(k) = sin(k)
    Sine,
    /// g(k) = sin(a ln k) / k^{b+1}
    LogTrigSin { a: Complex64, b: Complex64 },
    /// g(k) = cos(a ln k) / k^{b+1}
    LogTrigCos { a: Complex64, b: Complex64 },
}

/// Family tags, used by the CLI parser and validation messages.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Power,
    ShiftedPower,
    Exponential,
    Cosine,
    Sine,
    LogTrigSin,
    LogTrigCos,
}

impl SummandSpec {
    pub fn family(&self) -> Family {
        match self {
            SummandSpec::Power { .. } => Family::Power,
            SummandSpec::ShiftedPower { .. } => Family::ShiftedPower,
            SummandSpec::Exponential { .. } => Family::Exponential,
            SummandSpec::Cosine => Family::Cosine,
            SummandSpec::Sine => Family::Sine,
            SummandSpec::LogTrigSin { .. } => Family::LogTrigSin,
            SummandSpec::LogTrigCos { .. } => Family::LogTrigCos,
        }
    }

    pub fn family_name(&self) -> &'static str {
        match self.family() {
            Family::Power => "power",
            Family::ShiftedPower => "shifted_power",
            Family::Exponential => "exp",
            Family::Cosine => "cos",
            Family::Sine => "sin",
            Family::LogTrigSin => "logtrig_sin",
            Family::LogTrigCos => "logtrig_cos",
        }
    }
}

fn logtrig_params_ok(a: Complex64, b: Complex64) -> Result<()> {
    let s = b + Complex64::i() * a + 1.0;
    if !(s.re > 0.0) {
        return Err(Error::Domain("Re(b + ia + 1) > 0 violated".into()));
    }
    if a == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain("a != 0 violated".into()));
    }
    if !(a.im.abs() < 1.0) {
        return Err(Error::Domain("|Im(a)| < 1 violated".into()));
    }
    Ok(())
}

/// Validate family parameters and build a spec.
///
/// Construction checks the family's own ranges; whether the spec may be
/// combined with a given kernel variant is a separate, per-pair predicate
/// (see [`crate::engine::validate_combination`]).
pub fn make_summand(spec: SummandSpec) -> Result<SummandSpec> {
    match spec {
        SummandSpec::Power { z } => {
            if !(z.re > 0.0) {
                return Err(Error::Domain("Re(z) > 0 violated".into()));
            }
        }
        SummandSpec::ShiftedPower { a, beta } => {
            if !(a.norm() < 1.0) {
                return Err(Error::Domain("|a| < 1 violated".into()));
            }
            if !(beta.re > 1.0) {
                return Err(Error::Domain("Re(beta) > 1 violated".into()));
            }
        }
        SummandSpec::Exponential { c } => {
            if !(c > 0.0) {
                return Err(Error::Domain("c > 0 violated".into()));
            }
        }
        SummandSpec::Cosine | SummandSpec::Sine => {}
        SummandSpec::LogTrigSin { a, b } | SummandSpec::LogTrigCos { a, b } => {
            logtrig_params_ok(a, b)?;
        }
    }
    Ok(spec)
}

/// g(x) on the family's analyticity domain, principal branches throughout.
pub fn summand_eval(spec: &SummandSpec, x: Complex64) -> Result<Complex64> {
    match *spec {
        SummandSpec::Power { z } => {
            if x == Complex64::new(0.0, 0.0) && z.re > 0.0 {
                return Err(Error::Domain("pole of k^{-z} at k = 0".into()));
            }
            Ok(x.powc(-z))
        }
        SummandSpec::ShiftedPower { a, beta } => {
            let base = a + x;
            if base == Complex64::new(0.0, 0.0) {
                return Err(Error::Domain("pole of (a+k)^{-beta} at k = -a".into()));
            }
            Ok(base.powc(-beta))
        }
        SummandSpec::Exponential { c } => Ok((-c * x).exp()),
        SummandSpec::Cosine => Ok(x.cos()),
        SummandSpec::Sine => Ok(x.sin()),
        SummandSpec::LogTrigSin { a, b } => {
            if x.im == 0.0 && x.re <= 0.0 {
                return Err(Error::Domain(
                    "log-trig summand is branch-cut on k <= 0".into(),
                ));
            }
            Ok((a * x.ln()).sin() * x.powc(-(b + 1.0)))
        }
        SummandSpec::LogTrigCos { a, b } => {
            if x.im == 0.0 && x.re <= 0.0 {
                return Err(Error::Domain(
                    "log-trig summand is branch-cut on k <= 0".into(),
                ));
            }
            Ok((a * x.ln()).cos() * x.powc(-(b + 1.0)))
        }
    }
}

/// A Dirac component of an inverse transform: weight * delta(t - location).
///
/// Its contribution to the forward transform at k is weight * e^{-k location},
/// and to a kernel-weighted integral, weight * K(location).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PointMass {
    pub location: Complex64,
    pub weight: Complex64,
}

/// The smooth part of an inverse transform with its small-t order:
/// density(t) ~ c * t^order as t -> 0+.
pub struct Density {
    pub small_t_order: f64,
    f: Box<dyn Fn(Complex64) -> Complex64 + Send + Sync>,
}

impl Density {
    pub fn new(
        small_t_order: f64,
        f: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        Density {
            small_t_order,
            f: Box::new(f),
        }
    }

    pub fn eval(&self, t: Complex64) -> Complex64 {
        (self.f)(t)
    }
}

impl std::fmt::Debug for Density {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Density")
            .field("small_t_order", &self.small_t_order)
            .finish()
    }
}

/// G(t): smooth density and/or weighted point masses.
#[derive(Debug)]
pub struct InverseTransform {
    pub density: Option<Density>,
    pub point_masses: Vec<PointMass>,
    /// Reserved: density carries a ln t factor. Unused by the catalog.
    pub log_factor: bool,
}

impl InverseTransform {
    pub fn has_density(&self) -> bool {
        self.density.is_some()
    }
}

/// Closed-form G(t) for a catalog spec. Total on valid specs.
pub fn inverse_transform(spec: &SummandSpec) -> InverseTransform {
    let i = Complex64::i();
    match *spec {
        SummandSpec::Power { z } => InverseTransform {
            density: Some(Density::new(z.re - 1.0, move |t| {
                t.powc(z - 1.0) * recip_gamma(z)
            })),
            point_masses: vec![],
            log_factor: false,
        },
        SummandSpec::ShiftedPower { a, beta } => InverseTransform {
            density: Some(Density::new(beta.re - 1.0, move |t| {
                t.powc(beta - 1.0) * (-a * t).exp() * recip_gamma(beta)
            })),
            point_masses: vec![],
            log_factor: false,
        },
        SummandSpec::Exponential { c } => InverseTransform {
            density: None,
            point_masses: vec![PointMass {
                location: Complex64::new(c, 0.0),
                weight: Complex64::new(1.0, 0.0),
            }],
            log_factor: false,
        },
        // cos k = (e^{-ik} + e^{ik}) / 2: masses at t = +-i with weight 1/2
        SummandSpec::Cosine => InverseTransform {
            density: None,
            point_masses: vec![
                PointMass {
                    location: i,
                    weight: Complex64::new(0.5, 0.0),
                },
                PointMass {
                    location: -i,
                    weight: Complex64::new(0.5, 0.0),
                },
            ],
            log_factor: false,
        },
        // sin k = (e^{ik} - e^{-ik}) / 2i: weight 1/2i at t = -i, -1/2i at t = +i
        SummandSpec::Sine => InverseTransform {
            density: None,
            point_masses: vec![
                PointMass {
                    location: -i,
                    weight: 1.0 / (2.0 * i),
                },
                PointMass {
                    location: i,
                    weight: -1.0 / (2.0 * i),
                },
            ],
            log_factor: false,
        },
        SummandSpec::LogTrigSin { a, b } => InverseTransform {
            density: Some(Density::new(b.re - a.im.abs(), move |t| {
                (t.powc(b - i * a) * recip_gamma(b - i * a + 1.0)
                    - t.powc(b + i * a) * recip_gamma(b + i * a + 1.0))
                    / (2.0 * i)
            })),
            point_masses: vec![],
            log_factor: false,
        },
        SummandSpec::LogTrigCos { a, b } => InverseTransform {
            density: Some(Density::new(b.re - a.im.abs(), move |t| {
                (t.powc(b - i * a) * recip_gamma(b - i * a + 1.0)
                    + t.powc(b + i * a) * recip_gamma(b + i * a + 1.0))
                    * 0.5
            })),
            point_masses: vec![],
            log_factor: false,
        },
    }
}

/// Value of the smooth density at t.
pub fn density_eval(it: &InverseTransform, t: Complex64) -> Result<Complex64> {
    let d = it.density.as_ref().ok_or(Error::NoDensity)?;
    if t == Complex64::new(0.0, 0.0) && d.small_t_order < 0.0 {
        return Err(Error::Domain("density singular at t = 0".into()));
    }
    Ok(d.eval(t))
}

/// Convenience used by oracles and the ILT comparison: gamma re-export.
pub fn gamma_c(z: Complex64) -> Complex64 {
    gamma(z)
}
