//! Truncated cardinal series `C_N{f,h}(x) = sum_{k=-N}^{N} f(kh) sinc(x/h - k)`
//! and the discrete maximum error over the half-step grid.

use crate::error::{Error, Result};
use crate::model::{RealFunction, RuleTag};
use crate::specfun::sinc;
use crate::summation::CompensatedSum;

/// The pair `(N, h)` defining one interpolant, tagged with the rule that produced `h`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterpolationPlan {
    n_terms: usize,
    step: f64,
    rule_tag: RuleTag,
}

impl InterpolationPlan {
    pub fn new(n_terms: usize, step: f64, rule_tag: RuleTag) -> Result<Self> {
        if !(step > 0.0) || !step.is_finite() {
            return Err(Error::domain("InterpolationPlan", format!("step {step} must be finite and > 0")));
        }
        Ok(Self {
            n_terms,
            step,
            rule_tag,
        })
    }

    /// `N`; the series has `2N + 1` terms.
    pub fn n_terms(&self) -> usize {
        self.n_terms
    }

    /// Mesh size `h`.
    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn rule_tag(&self) -> RuleTag {
        self.rule_tag
    }

    fn n(&self) -> i64 {
        self.n_terms as i64
    }
}

/// Node values `f(kh)`, `k = -N..=N`, ready for evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledInterpolant {
    plan: InterpolationPlan,
    samples: Vec<f64>,
}

impl SampledInterpolant {
    /// Builds an interpolant from precomputed node values.
    pub fn from_samples(plan: InterpolationPlan, samples: Vec<f64>) -> Result<Self> {
        let expected = 2 * plan.n_terms + 1;
        if samples.len() != expected {
            return Err(Error::domain(
                "SampledInterpolant",
                format!("expected {expected} samples, got {}", samples.len()),
            ));
        }
        if let Some((j, &v)) = samples.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            let node = j as i64 - plan.n();
            return Err(Error::NonFiniteSample {
                node,
                x: node as f64 * plan.step,
                value: v,
            });
        }
        Ok(Self { plan, samples })
    }

    pub fn plan(&self) -> &InterpolationPlan {
        &self.plan
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    /// `C_N{f,h}(x)`.
    pub fn evaluate(&self, x: f64) -> f64 {
        self.evaluate_scaled(x / self.plan.step)
    }

    /// `C_N{f,h}(t h)`, i.e. the series with the kernel argument `t - k` formed
    /// directly. Grid points `t = j/2` therefore carry no rounding from `x / h`.
    pub fn evaluate_scaled(&self, t: f64) -> f64 {
        let n = self.plan.n();
        let mut acc = CompensatedSum::new();
        for (j, &s) in self.samples.iter().enumerate() {
            let k = j as i64 - n;
            acc.add(s * sinc(t - k as f64));
        }
        acc.total()
    }
}

/// Samples `f` at the nodes `kh`, `k = -N..=N`.
///
/// A non-finite node value is reported with its index instead of being
/// propagated into the series.
pub fn sample<F: RealFunction + ?Sized>(f: &F, plan: &InterpolationPlan) -> Result<SampledInterpolant> {
    let n = plan.n();
    let mut samples = Vec::with_capacity(2 * plan.n_terms + 1);
    for k in -n..=n {
        let x = k as f64 * plan.step;
        let v = f.eval(x);
        if !v.is_finite() {
            return Err(Error::NonFiniteSample { node: k, x, value: v });
        }
        samples.push(v);
    }
    Ok(SampledInterpolant {
        plan: *plan,
        samples,
    })
}

/// The half-step grid `{ j h / 2 : j = -2N..=2N }`, ascending.
pub fn grid(plan: &InterpolationPlan) -> Vec<f64> {
    let m = 2 * plan.n();
    (-m..=m).map(|j| j as f64 * plan.step * 0.5).collect()
}

/// `max_{x in grid} |f(x) - C_N{f,h}(x)|`.
pub fn discrete_error<F: RealFunction + ?Sized>(f: &F, plan: &InterpolationPlan) -> Result<f64> {
    let ip = sample(f, plan)?;
    discrete_error_of(f, &ip)
}

/// [`discrete_error`] for an interpolant that has already been sampled.
pub fn discrete_error_of<F: RealFunction + ?Sized>(f: &F, ip: &SampledInterpolant) -> Result<f64> {
    let m = 2 * ip.plan.n();
    let h = ip.plan.step;
    let mut worst = 0.0_f64;
    for j in -m..=m {
        let x = j as f64 * h * 0.5;
        let fx = f.eval(x);
        if !fx.is_finite() {
            return Err(Error::NonFiniteValue { x, value: fx });
        }
        let e = (fx - ip.evaluate_scaled(j as f64 * 0.5)).abs();
        if e > worst {
            worst = e;
        }
    }
    Ok(worst)
}
