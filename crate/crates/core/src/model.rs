//! Domain types shared by the interpolation, step-size and bound modules.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Algebraic decay `|f(x)| <= L / (1 + |x|^alpha)` with `alpha > 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecaySpec {
    alpha: f64,
    big_l: f64,
}

impl DecaySpec {
    pub fn new(alpha: f64, big_l: f64) -> Result<Self> {
        if !(alpha > 1.0) || !alpha.is_finite() {
            return Err(Error::domain("DecaySpec", format!("decay order {alpha} must be finite and > 1")));
        }
        if !(big_l > 0.0) || !big_l.is_finite() {
            return Err(Error::domain("DecaySpec", format!("decay constant {big_l} must be finite and > 0")));
        }
        Ok(Self { alpha, big_l })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// The constant `L`.
    pub fn big_l(&self) -> f64 {
        self.big_l
    }

    /// `L / (1 + |x|^alpha)`.
    pub fn envelope_at(&self, abs_x: f64) -> f64 {
        self.big_l / (1.0 + abs_x.powf(self.alpha))
    }
}

/// Half-width `d` of the analyticity strip, plus `N1(f, D_d)` when it is known.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StripSpec {
    half_width: f64,
    strip_norm: Option<f64>,
}

impl StripSpec {
    pub fn new(half_width: f64) -> Result<Self> {
        if !(half_width > 0.0) || !half_width.is_finite() {
            return Err(Error::domain("StripSpec", format!("half-width {half_width} must be finite and > 0")));
        }
        Ok(Self {
            half_width,
            strip_norm: None,
        })
    }

    pub fn with_strip_norm(mut self, strip_norm: f64) -> Result<Self> {
        if !(strip_norm > 0.0) || !strip_norm.is_finite() {
            return Err(Error::domain("StripSpec", format!("strip norm {strip_norm} must be finite and > 0")));
        }
        self.strip_norm = Some(strip_norm);
        Ok(self)
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn strip_norm(&self) -> Option<f64> {
        self.strip_norm
    }
}

/// How the mesh size of an interpolant was chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RuleTag {
    /// Exponential-decay baseline `h = sqrt(pi d / (alpha N))`.
    Classical,
    /// Lambert-W rule with `c2 = pi d`.
    WExact,
    /// Lambert-W rule with `c2 = pi d L / N1`.
    WOptimized,
    /// Lambert-W rule with `N1` replaced by its strip-decay estimate.
    WStrip,
    /// Logarithmic approximation `h = pi d / (alpha + (alpha - 1) ln(N + 1))`.
    LogApprox,
    /// Caller-supplied `h`.
    Manual,
}

impl RuleTag {
    pub const ALL: [RuleTag; 6] = [
        RuleTag::Classical,
        RuleTag::WExact,
        RuleTag::WOptimized,
        RuleTag::WStrip,
        RuleTag::LogApprox,
        RuleTag::Manual,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            RuleTag::Classical => "classical",
            RuleTag::WExact => "w-exact",
            RuleTag::WOptimized => "w-optimized",
            RuleTag::WStrip => "w-strip",
            RuleTag::LogApprox => "log-approx",
            RuleTag::Manual => "manual",
        }
    }
}

impl fmt::Display for RuleTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RuleTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RuleTag::ALL
            .into_iter()
            .find(|r| r.name() == s || r.name().replace('-', "_") == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown rule `{s}`")))
    }
}

/// Anything that can be sampled on the real line.
pub trait RealFunction {
    fn eval(&self, x: f64) -> f64;
}

impl<F: Fn(f64) -> f64> RealFunction for F {
    fn eval(&self, x: f64) -> f64 {
        self(x)
    }
}

pub type RealEvaluator = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A real function bundled with its decay and strip parameters.
#[derive(Clone)]
pub struct TargetFunction {
    evaluator: RealEvaluator,
    pub decay: DecaySpec,
    pub strip: StripSpec,
}

impl TargetFunction {
    pub fn new(evaluator: impl Fn(f64) -> f64 + Send + Sync + 'static, decay: DecaySpec, strip: StripSpec) -> Self {
        Self {
            evaluator: Arc::new(evaluator),
            decay,
            strip,
        }
    }

    pub fn from_shared(evaluator: RealEvaluator, decay: DecaySpec, strip: StripSpec) -> Self {
        Self {
            evaluator,
            decay,
            strip,
        }
    }
}

impl RealFunction for TargetFunction {
    fn eval(&self, x: f64) -> f64 {
        (self.evaluator)(x)
    }
}

impl fmt::Debug for TargetFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TargetFunction")
            .field("decay", &self.decay)
            .field("strip", &self.strip)
            .finish_non_exhaustive()
    }
}
