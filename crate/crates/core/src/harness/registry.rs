//! Named test functions with their decay and strip parameters.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{DecaySpec, RealEvaluator, StripSpec, TargetFunction};
use crate::stripquad::{ComplexEvaluator, ComplexTarget};

/// Strip norm reported for `ex1` with `a = 2`.
pub const EX1_REFERENCE_STRIP_NORM: f64 = 17.054_675_64;

/// Names accepted by [`lookup`].
pub const NAMES: [&str; 4] = ["ex1", "ex2", "ex2-printed", "poisson"];

/// A registered function.
#[derive(Clone)]
pub struct RegistryEntry {
    pub name: &'static str,
    pub description: String,
    real_eval: RealEvaluator,
    complex_eval: Option<ComplexEvaluator>,
    pub decay: DecaySpec,
    pub default_strip: StripSpec,
    pub params: Vec<(String, f64)>,
}

impl RegistryEntry {
    pub fn eval(&self, x: f64) -> f64 {
        (self.real_eval)(x)
    }

    pub fn has_complex_extension(&self) -> bool {
        self.complex_eval.is_some()
    }

    /// Strip norm declared with the entry; only meaningful at the default half-width.
    pub fn declared_strip_norm(&self) -> Option<f64> {
        self.default_strip.strip_norm()
    }

    /// The real-line target on a strip of half-width `d` (default when `None`).
    pub fn target(&self, d: Option<f64>) -> Result<TargetFunction> {
        let strip = match d {
            Some(d) => StripSpec::new(d)?,
            None => self.default_strip,
        };
        Ok(TargetFunction::from_shared(Arc::clone(&self.real_eval), self.decay, strip))
    }

    /// The complex extension on a strip of half-width `d` (default when `None`).
    pub fn complex_target(&self, d: Option<f64>) -> Result<ComplexTarget> {
        let eval = self.complex_eval.as_ref().ok_or_else(|| Error::NoComplexExtension {
            name: self.name.to_string(),
        })?;
        let strip = match d {
            Some(d) => StripSpec::new(d)?,
            None => StripSpec::new(self.default_strip.half_width())?,
        };
        Ok(ComplexTarget::from_shared(Arc::clone(eval), self.decay, strip))
    }
}

impl fmt::Debug for RegistryEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RegistryEntry")
            .field("name", &self.name)
            .field("decay", &self.decay)
            .field("default_strip", &self.default_strip)
            .field("params", &self.params)
            .finish_non_exhaustive()
    }
}

/// Parses `key=value` parameter strings.
pub fn parse_params<S: AsRef<str>>(items: &[S]) -> Result<Vec<(String, f64)>> {
    items
        .iter()
        .map(|s| {
            let s = s.as_ref();
            let (k, v) = s
                .split_once('=')
                .ok_or_else(|| Error::InvalidConfig(format!("parameter `{s}` is not key=value")))?;
            let v: f64 = v
                .trim()
                .parse()
                .map_err(|_| Error::InvalidConfig(format!("parameter `{s}` has a non-numeric value")))?;
            Ok((k.trim().to_string(), v))
        })
        .collect()
}

fn take_param(params: &[(String, f64)], key: &str, default: f64, allowed: &[&str]) -> Result<f64> {
    if let Some((k, _)) = params.iter().find(|(k, _)| !allowed.contains(&k.as_str())) {
        return Err(Error::InvalidConfig(format!("unknown parameter `{k}`")));
    }
    Ok(params.iter().rev().find(|(k, _)| k == key).map_or(default, |(_, v)| *v))
}

/// Half-width `0.9 * 2^(1/(2a)) * sin(pi / (2a))` used for `ex1`.
pub fn ex1_half_width(a: u32) -> f64 {
    let two_a = 2.0 * a as f64;
    0.9 * 2f64.powf(1.0 / two_a) * (PI / two_a).sin()
}

/// Half-width `0.9 * sqrt(2)/2` used for `ex2`.
pub fn ex2_half_width() -> f64 {
    0.9 * FRAC_1_SQRT_2
}

/// Looks up a registry function; `params` override its defaults.
pub fn lookup(name: &str, params: &[(String, f64)]) -> Result<RegistryEntry> {
    match name {
        "ex1" => {
            let a = take_param(params, "a", 2.0, &["a"])?;
            if a < 2.0 || a.fract() != 0.0 || a > 64.0 {
                return Err(Error::InvalidConfig(format!("ex1 needs an integer a in [2, 64], got {a}")));
            }
            let a = a as u32;
            let two_a = 2 * a as i32;
            let mut strip = StripSpec::new(ex1_half_width(a))?;
            if a == 2 {
                strip = strip.with_strip_norm(EX1_REFERENCE_STRIP_NORM)?;
            }
            Ok(RegistryEntry {
                name: "ex1",
                description: format!("4 / (2 + x^{two_a})"),
                real_eval: Arc::new(move |x: f64| 4.0 / (2.0 + x.powi(two_a))),
                complex_eval: Some(Arc::new(move |z: Complex64| 4.0 / (2.0 + z.powi(two_a)))),
                decay: DecaySpec::new(two_a as f64, 4.0)?,
                default_strip: strip,
                params: vec![("a".into(), a as f64)],
            })
        }
        "ex2" => {
            take_param(params, "", 0.0, &[])?;
            Ok(RegistryEntry {
                name: "ex2",
                description: "6 cos(x) / ((5 + cos^2 x)(1 + x^4))".into(),
                real_eval: Arc::new(|x: f64| {
                    let c = x.cos();
                    6.0 * c / ((5.0 + c * c) * (1.0 + x.powi(4)))
                }),
                complex_eval: Some(Arc::new(|z: Complex64| {
                    let c = z.cos();
                    6.0 * c / ((5.0 + c * c) * (1.0 + z.powi(4)))
                })),
                decay: DecaySpec::new(4.0, 1.0)?,
                default_strip: StripSpec::new(ex2_half_width())?,
                params: Vec::new(),
            })
        }
        "ex2-printed" => {
            take_param(params, "", 0.0, &[])?;
            Ok(RegistryEntry {
                name: "ex2-printed",
                description: "6 cos(2x) / ((5 + cos^2 x)(1 + x^4))".into(),
                real_eval: Arc::new(|x: f64| {
                    let c = x.cos();
                    6.0 * (2.0 * x).cos() / ((5.0 + c * c) * (1.0 + x.powi(4)))
                }),
                complex_eval: Some(Arc::new(|z: Complex64| {
                    let c = z.cos();
                    6.0 * (2.0 * z).cos() / ((5.0 + c * c) * (1.0 + z.powi(4)))
                })),
                // sup 6|cos 2x| / (5 + cos^2 x) = 6/5, attained at x = pi/2.
                decay: DecaySpec::new(4.0, 1.2)?,
                default_strip: StripSpec::new(0.7)?,
                params: Vec::new(),
            })
        }
        "poisson" => {
            take_param(params, "", 0.0, &[])?;
            Ok(RegistryEntry {
                name: "poisson",
                description: "1 / (1 + x^2)".into(),
                real_eval: Arc::new(|x: f64| 1.0 / (1.0 + x * x)),
                complex_eval: Some(Arc::new(|z: Complex64| 1.0 / (1.0 + z * z))),
                decay: DecaySpec::new(2.0, 1.0)?,
                default_strip: StripSpec::new(0.5)?,
                params: Vec::new(),
            })
        }
        other => Err(Error::UnknownFunction(other.to_string())),
    }
}

/// Every registry entry with default parameters.
pub fn all_entries() -> Vec<RegistryEntry> {
    NAMES.iter().map(|n| lookup(n, &[]).expect("registry defaults are valid")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    // Deterministic LCG so the spot check needs no RNG dependency.
    fn spot_points(n: usize) -> impl Iterator<Item = f64> {
        let mut state: u64 = 0x2545_f491_4f6c_dd1d;
        (0..n).map(move |_| {
            state = state.wrapping_mul(6_364_136_223_846_793_005).wrapping_add(1_442_695_040_888_963_407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) * 2000.0 - 1000.0
        })
    }

    #[test]
    fn declared_decay_is_honest() {
        for e in all_entries() {
            for x in spot_points(1000).chain([0.0, PI / 2.0, PI, 1.0, -1.0]) {
                let lhs = e.eval(x).abs() * (1.0 + x.abs().powf(e.decay.alpha()));
                assert!(lhs <= e.decay.big_l() * (1.0 + 1e-9), "{} at {x}: {lhs}", e.name);
            }
        }
    }

    #[test]
    fn example_two_value_at_origin() {
        assert_eq!(lookup("ex2", &[]).unwrap().eval(0.0), 1.0);
        assert_eq!(lookup("ex2-printed", &[]).unwrap().eval(0.0), 1.0);
    }

    #[test]
    fn complex_matches_real_on_axis() {
        for e in all_entries() {
            let c = e.complex_target(None).unwrap();
            for x in [-3.3, -0.4, 0.0, 0.9, 7.5] {
                let z = c.eval(Complex64::new(x, 0.0));
                assert!((z.re - e.eval(x)).abs() < 1e-15 && z.im.abs() < 1e-15);
            }
        }
    }

    #[test]
    fn ex1_parameters() {
        let e = lookup("ex1", &[]).unwrap();
        assert!((e.default_strip.half_width() - 0.756_806_773_728_343).abs() < 1e-14);
        assert_eq!(e.declared_strip_norm(), Some(EX1_REFERENCE_STRIP_NORM));
        let e3 = lookup("ex1", &parse_params(&["a=3"]).unwrap()).unwrap();
        assert_eq!(e3.decay.alpha(), 6.0);
        assert_eq!(e3.declared_strip_norm(), None);
        assert!(lookup("ex1", &parse_params(&["a=2.5"]).unwrap()).is_err());
        assert!(lookup("ex1", &parse_params(&["b=1"]).unwrap()).is_err());
        assert!(lookup("ex2", &parse_params(&["a=3"]).unwrap()).is_err());
        assert!(matches!(lookup("nope", &[]), Err(Error::UnknownFunction(_))));
    }

    #[test]
    fn param_parsing() {
        assert_eq!(parse_params(&["a = 3"]).unwrap(), vec![("a".to_string(), 3.0)]);
        assert!(parse_params(&["a"]).is_err());
        assert!(parse_params(&["a=x"]).is_err());
    }

    #[test]
    fn ex2_real_line_constant_misses_strip_norm() {
        // |f| grows off the axis, so the real-line L underestimates the strip norm.
        let e = lookup("ex2", &[]).unwrap();
        let d = e.default_strip.half_width();
        let n1 = crate::stripquad::strip_norm(&e.complex_target(None).unwrap(), 1e-8).unwrap();
        let real_line = crate::bounds::strip_norm_bound(&e.decay, d).unwrap();
        assert!(real_line < n1, "{real_line} vs {n1}");
        let chk = crate::stripquad::strip_norm_vs_bound(&e.complex_target(None).unwrap()).unwrap();
        assert!(chk.analytic_bound >= n1);
    }
}
