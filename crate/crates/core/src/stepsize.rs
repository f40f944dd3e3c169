//! Mesh-size rules.
//!
//! The Lambert-W rules all solve the balance equation
//!
//! ```text
//! exp(-pi d / h) / c2 = (N + 1)^(1 - alpha) / ((alpha - 1) h^alpha)
//! ```
//!
//! for `h`, which has the closed form `h = (pi d / alpha) / W(z)` with
//! `z = (pi d / alpha) ((alpha - 1) / c2)^(1/alpha) (N + 1)^((alpha - 1)/alpha)`.
//! They differ only in the choice of `c2`.

use std::f64::consts::{E, PI};

use crate::error::{Error, Result};
use crate::model::{DecaySpec, RuleTag, StripSpec};
use crate::specfun::{lambert_w0, log_beta, sinc};

/// Decay order, strip width and term count feeding a step-size rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepRuleInput {
    pub decay: DecaySpec,
    pub strip: StripSpec,
    pub n_terms: usize,
}

impl StepRuleInput {
    pub fn new(decay: DecaySpec, strip: StripSpec, n_terms: usize) -> Self {
        Self { decay, strip, n_terms }
    }

    /// Convenience constructor with `L = 1` and no strip norm.
    pub fn from_parts(alpha: f64, d: f64, n_terms: usize) -> Result<Self> {
        Ok(Self {
            decay: DecaySpec::new(alpha, 1.0)?,
            strip: StripSpec::new(d)?,
            n_terms,
        })
    }

    pub fn with_n(mut self, n_terms: usize) -> Self {
        self.n_terms = n_terms;
        self
    }

    pub fn alpha(&self) -> f64 {
        self.decay.alpha()
    }

    pub fn d(&self) -> f64 {
        self.strip.half_width()
    }

    /// `N + 1` as a real.
    pub fn n_plus_one(&self) -> f64 {
        self.n_terms as f64 + 1.0
    }

    fn pi_d(&self) -> f64 {
        PI * self.d()
    }
}

/// Both candidates of the strip constant `beta` and their minimum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StripBeta {
    /// `2 / sinc(1/alpha)`.
    pub sinc_branch: f64,
    /// `(2/d)^(alpha-1) B(alpha/2 - 1/2, alpha/2 + 1/2)`.
    pub beta_branch: f64,
}

impl StripBeta {
    pub fn value(&self) -> f64 {
        self.sinc_branch.min(self.beta_branch)
    }
}

/// Exponential-decay baseline `h = sqrt(pi d / (alpha N))`.
pub fn h_classical(alpha_exp: f64, d: f64, n: usize) -> Result<f64> {
    if !(alpha_exp > 0.0) || !(d > 0.0) || n == 0 {
        return Err(Error::domain(
            "h_classical",
            format!("need alpha > 0, d > 0, N >= 1 (got {alpha_exp}, {d}, {n})"),
        ));
    }
    Ok((PI * d / (alpha_exp * n as f64)).sqrt())
}

/// Argument `z` of `W` for the balance equation with constant `c2`.
pub fn balance_w_argument(input: &StepRuleInput, c2: f64) -> f64 {
    let alpha = input.alpha();
    let pd = input.pi_d();
    let direct = (pd / alpha) * ((alpha - 1.0) / c2).powf(1.0 / alpha) * input.n_plus_one().powf((alpha - 1.0) / alpha);
    if direct.is_finite() && direct > 0.0 {
        return direct;
    }
    let ln_z = (pd / alpha).ln() + ((alpha - 1.0).ln() - c2.ln()) / alpha + (alpha - 1.0) / alpha * input.n_plus_one().ln();
    ln_z.exp()
}

/// Solves the balance equation for `h` with the given `c2`.
pub fn h_for_balance(input: &StepRuleInput, c2: f64) -> Result<f64> {
    if !(c2 > 0.0) || !c2.is_finite() {
        return Err(Error::domain("h_for_balance", format!("balance constant {c2} must be finite and > 0")));
    }
    let z = balance_w_argument(input, c2);
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::domain("h_for_balance", format!("Lambert-W argument {z} is not positive and finite")));
    }
    let w = lambert_w0(z)?.value;
    Ok(input.pi_d() / input.alpha() / w)
}

/// Lambert-W rule with `c2 = pi d`.
pub fn h_w_exact(input: &StepRuleInput) -> Result<f64> {
    h_for_balance(input, input.pi_d())
}

/// Lambert-W rule with `c2 = pi d L / N1`, for a known strip norm `N1(f, D_d)`.
pub fn h_w_optimized(input: &StepRuleInput, strip_norm: f64) -> Result<f64> {
    h_for_balance(input, optimized_balance_constant(input, strip_norm)?)
}

fn optimized_balance_constant(input: &StepRuleInput, strip_norm: f64) -> Result<f64> {
    if !(strip_norm > 0.0) || !strip_norm.is_finite() {
        return Err(Error::domain("h_w_optimized", format!("strip norm {strip_norm} must be finite and > 0")));
    }
    Ok(input.pi_d() * input.decay.big_l() / strip_norm)
}

/// The strip constant `beta = min{2 / sinc(1/alpha), (2/d)^(alpha-1) B(alpha/2 - 1/2, alpha/2 + 1/2)}`.
///
/// The beta branch is assembled in log space so that small `d` with large
/// `alpha` saturates to infinity instead of producing `inf * 0`.
pub fn strip_beta(alpha: f64, d: f64) -> Result<StripBeta> {
    if !(alpha > 1.0) || !(d > 0.0) {
        return Err(Error::domain("strip_beta", format!("need alpha > 1 and d > 0 (got {alpha}, {d})")));
    }
    let sinc_branch = 2.0 / sinc(1.0 / alpha);
    let ln_beta_branch = (alpha - 1.0) * (2.0 / d).ln() + log_beta(0.5 * alpha - 0.5, 0.5 * alpha + 0.5)?;
    Ok(StripBeta {
        sinc_branch,
        beta_branch: ln_beta_branch.exp(),
    })
}

/// Lambert-W rule with `N1` replaced by its strip-decay estimate `2 L beta`.
pub fn h_w_strip(input: &StepRuleInput) -> Result<f64> {
    h_for_balance(input, strip_balance_constant(input)?)
}

fn strip_balance_constant(input: &StepRuleInput) -> Result<f64> {
    let beta = strip_beta(input.alpha(), input.d())?.value();
    Ok(input.pi_d() / (2.0 * beta))
}

/// `h = pi d / (alpha + (alpha - 1) ln(N + 1))`.
pub fn h_log_approx(input: &StepRuleInput) -> f64 {
    h_log_approx_real(input.alpha(), input.d(), input.n_terms as f64)
}

/// [`h_log_approx`] at a real-valued `N`.
pub fn h_log_approx_real(alpha: f64, d: f64, n: f64) -> f64 {
    PI * d / (alpha + (alpha - 1.0) * n.ln_1p())
}

/// `c2` for which [`h_log_approx`] is the balance solution with `W ~ ln`:
/// `(alpha - 1) (pi d / (alpha e))^alpha`.
pub fn log_approx_balance_constant(alpha: f64, d: f64) -> f64 {
    (alpha - 1.0) * (PI * d / (alpha * E)).powf(alpha)
}

/// The balance constant `c2` that the given rule is built on.
pub fn balance_constant(rule: RuleTag, input: &StepRuleInput, strip_norm: Option<f64>) -> Result<f64> {
    match rule {
        RuleTag::WExact => Ok(input.pi_d()),
        RuleTag::WOptimized => {
            let n1 = strip_norm.ok_or(Error::MissingStripNorm("w-optimized"))?;
            optimized_balance_constant(input, n1)
        }
        RuleTag::WStrip => strip_balance_constant(input),
        RuleTag::LogApprox => Ok(log_approx_balance_constant(input.alpha(), input.d())),
        RuleTag::Classical | RuleTag::Manual => Err(Error::UnsupportedRule {
            rule: rule.name(),
            routine: "balance_constant",
        }),
    }
}

/// Mesh size for `rule`.
///
/// `classical` treats `alpha` as the exponential rate; `manual` returns the
/// caller's `h` unchanged.
pub fn step_for_rule(
    rule: RuleTag,
    input: &StepRuleInput,
    strip_norm: Option<f64>,
    manual_step: Option<f64>,
) -> Result<f64> {
    match rule {
        RuleTag::Classical => h_classical(input.alpha(), input.d(), input.n_terms),
        RuleTag::WExact => h_w_exact(input),
        RuleTag::WOptimized => h_w_optimized(input, strip_norm.ok_or(Error::MissingStripNorm("w-optimized"))?),
        RuleTag::WStrip => h_w_strip(input),
        RuleTag::LogApprox => Ok(h_log_approx(input)),
        RuleTag::Manual => {
            let h = manual_step.ok_or_else(|| Error::InvalidConfig("manual rule needs an explicit step".into()))?;
            if !(h > 0.0) || !h.is_finite() {
                return Err(Error::domain("step_for_rule", format!("manual step {h} must be finite and > 0")));
            }
            Ok(h)
        }
    }
}

/// Signed relative residual `(lhs - rhs) / rhs` of the balance equation at `h`.
pub fn balance_residual(h: f64, input: &StepRuleInput, c2: f64) -> f64 {
    let alpha = input.alpha();
    let ln_lhs = -input.pi_d() / h - c2.ln();
    let ln_rhs = (1.0 - alpha) * input.n_plus_one().ln() - (alpha - 1.0).ln() - alpha * h.ln();
    (ln_lhs - ln_rhs).exp_m1()
}

/// Real-valued maximizer `N0` of the truncation envelope under the
/// logarithmic rule with constant `c2`.
pub fn n_zero(input: &StepRuleInput, c2: f64) -> f64 {
    let alpha = input.alpha();
    let p = alpha / (alpha - 1.0);
    (alpha / input.pi_d()).powf(p) * p.exp() * ((alpha - 1.0) / c2).powf(-1.0 / (alpha - 1.0)) - 1.0
}
