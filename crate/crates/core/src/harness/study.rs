//! Convergence studies over a ladder of term counts, and pointwise error profiles.

use std::str::FromStr;

use crate::bounds::{e_n_truncation_form, predicted_error, strip_norm_bound};
use crate::cardinal::{discrete_error_of, sample, InterpolationPlan};
use crate::error::{Error, Result};
use crate::harness::registry::{lookup, RegistryEntry};
use crate::model::RuleTag;
use crate::stepsize::{step_for_rule, StepRuleInput};
use crate::stripquad::strip_norm;

/// Term counts of the tabulated experiment.
pub const TABLE_LADDER: [usize; 10] = [2, 4, 8, 16, 32, 64, 128, 256, 512, 1024];
/// The geometric ladder starting at one.
pub const FULL_LADDER: [usize; 11] = [1, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1024];

/// Relative tolerance used when the strip norm is obtained by quadrature.
pub const STRIP_NORM_TOL: f64 = 1e-8;

/// Where `N1(f, D_d)` comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StripNormMode {
    /// The value declared with the registry entry.
    Declared,
    /// Adaptive quadrature on the strip boundary.
    Quadrature,
    /// The closed-form strip-decay bound.
    StripBound,
    /// Not available.
    #[default]
    None,
}

impl FromStr for StripNormMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "declared" => Ok(Self::Declared),
            "quadrature" => Ok(Self::Quadrature),
            "strip-bound" | "strip_bound" => Ok(Self::StripBound),
            "none" => Ok(Self::None),
            _ => Err(Error::InvalidConfig(format!("unknown strip-norm mode `{s}`"))),
        }
    }
}

/// Settings shared by studies and profiles that determine `h` for each `N`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct StepOptions {
    pub d_override: Option<f64>,
    pub strip_norm_mode: StripNormMode,
    /// Required by [`RuleTag::Manual`].
    pub manual_step: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StudyConfig {
    pub function: String,
    pub params: Vec<(String, f64)>,
    pub rule: RuleTag,
    pub ladder: Vec<usize>,
    pub options: StepOptions,
}

impl StudyConfig {
    pub fn new(function: impl Into<String>, rule: RuleTag, ladder: Vec<usize>) -> Self {
        Self {
            function: function.into(),
            params: Vec::new(),
            rule,
            ladder,
            options: StepOptions::default(),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.ladder.is_empty() {
            return Err(Error::InvalidConfig("ladder is empty".into()));
        }
        if self.ladder.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidConfig(format!("ladder {:?} is not strictly increasing", self.ladder)));
        }
        Ok(())
    }
}

/// One row of a convergence study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    /// 1-based position in the ladder.
    pub index: usize,
    pub n_terms: usize,
    pub step: f64,
    pub observed_err: f64,
    pub envelope: f64,
    /// `observed_err / envelope`.
    pub ratio: f64,
}

/// Resolved per-function context for computing `h` and `E_N`.
#[derive(Debug, Clone)]
pub struct StepContext {
    pub half_width: f64,
    pub strip_norm: Option<f64>,
    rule: RuleTag,
    manual_step: Option<f64>,
}

impl StepContext {
    pub fn new(entry: &RegistryEntry, rule: RuleTag, options: &StepOptions) -> Result<Self> {
        let half_width = options.d_override.unwrap_or(entry.default_strip.half_width());
        let strip_norm = resolve_strip_norm(entry, options.d_override, options.strip_norm_mode)?;
        if rule == RuleTag::WOptimized && strip_norm.is_none() {
            return Err(Error::MissingStripNorm("w-optimized"));
        }
        Ok(Self {
            half_width,
            strip_norm,
            rule,
            manual_step: options.manual_step,
        })
    }

    pub fn input(&self, entry: &RegistryEntry, n_terms: usize) -> Result<StepRuleInput> {
        Ok(StepRuleInput::new(entry.decay, crate::model::StripSpec::new(self.half_width)?, n_terms))
    }

    /// `(h, E_N)` for `N` terms.
    pub fn step_and_envelope(&self, entry: &RegistryEntry, n_terms: usize) -> Result<(f64, f64)> {
        let input = self.input(entry, n_terms)?;
        if self.rule == RuleTag::Manual {
            let h = step_for_rule(self.rule, &input, self.strip_norm, self.manual_step)?;
            return Ok((h, e_n_truncation_form(h, &input)));
        }
        let p = predicted_error(&input, self.rule, self.strip_norm)?;
        Ok((p.h, p.envelope))
    }
}

/// Obtains `N1(f, D_d)` according to `mode`.
pub fn resolve_strip_norm(entry: &RegistryEntry, d_override: Option<f64>, mode: StripNormMode) -> Result<Option<f64>> {
    let d = d_override.unwrap_or(entry.default_strip.half_width());
    match mode {
        StripNormMode::None => Ok(None),
        StripNormMode::Declared => {
            if d_override.is_some_and(|o| o != entry.default_strip.half_width()) {
                return Err(Error::InvalidConfig(format!(
                    "declared strip norm of `{}` is only valid at d = {}",
                    entry.name,
                    entry.default_strip.half_width()
                )));
            }
            entry
                .declared_strip_norm()
                .map(Some)
                .ok_or_else(|| Error::InvalidConfig(format!("`{}` declares no strip norm", entry.name)))
        }
        StripNormMode::Quadrature => Ok(Some(strip_norm(&entry.complex_target(Some(d))?, STRIP_NORM_TOL)?)),
        StripNormMode::StripBound => Ok(Some(strip_norm_bound(&entry.decay, d)?)),
    }
}

/// Runs a study on a registry function.
pub fn run_study(cfg: &StudyConfig) -> Result<Vec<ConvergenceRow>> {
    let entry = lookup(&cfg.function, &cfg.params)?;
    run_study_for(&entry, cfg)
}

/// Runs a study on an already resolved entry (`cfg.function` is ignored).
pub fn run_study_for(entry: &RegistryEntry, cfg: &StudyConfig) -> Result<Vec<ConvergenceRow>> {
    cfg.validate()?;
    let ctx = StepContext::new(entry, cfg.rule, &cfg.options)?;
    let target = entry.target(Some(ctx.half_width))?;
    cfg.ladder
        .iter()
        .enumerate()
        .map(|(i, &n)| {
            let wrap = |e: Error| Error::Study {
                index: i + 1,
                n_terms: n,
                source: Box::new(e),
            };
            let (h, envelope) = ctx.step_and_envelope(entry, n).map_err(wrap)?;
            let plan = InterpolationPlan::new(n, h, cfg.rule).map_err(wrap)?;
            let ip = sample(&target, &plan).map_err(wrap)?;
            let observed_err = discrete_error_of(&target, &ip).map_err(wrap)?;
            Ok(ConvergenceRow {
                index: i + 1,
                n_terms: n,
                step: h,
                observed_err,
                envelope,
                ratio: observed_err / envelope,
            })
        })
        .collect()
}

/// Signed pointwise error `f(x) - C_N{f,h}(x)` at `resolution` evenly spaced
/// points of `[-2Nh, 2Nh]`: `x_j = -2Nh + j * 4Nh / (resolution - 1)`.
///
/// With `resolution - 1` a multiple of `4N` the half-step grid is a subset.
pub fn error_profile(
    entry: &RegistryEntry,
    rule: RuleTag,
    n_terms: usize,
    resolution: usize,
    options: &StepOptions,
) -> Result<Vec<(f64, f64)>> {
    if resolution < 4 * n_terms + 1 {
        return Err(Error::InvalidConfig(format!(
            "resolution {resolution} is below 4N + 1 = {}",
            4 * n_terms + 1
        )));
    }
    let ctx = StepContext::new(entry, rule, options)?;
    let (h, _) = ctx.step_and_envelope(entry, n_terms)?;
    let plan = InterpolationPlan::new(n_terms, h, rule)?;
    let target = entry.target(Some(ctx.half_width))?;
    let ip = sample(&target, &plan)?;
    let half = 2.0 * n_terms as f64;
    let denom = (resolution - 1).max(1) as f64;
    (0..resolution)
        .map(|j| {
            // Position in units of h, so grid points hit t = j/2 exactly.
            let t = -half + j as f64 * 2.0 * half / denom;
            let x = t * h;
            let fx = entry.eval(x);
            if !fx.is_finite() {
                return Err(Error::NonFiniteValue { x, value: fx });
            }
            Ok((x, fx - ip.evaluate_scaled(t)))
        })
        .collect()
}
