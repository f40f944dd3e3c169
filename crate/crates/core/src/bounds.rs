//! A priori error envelopes `E_N` and the constants multiplying them.
//!
//! Every Lambert-W rule and the logarithmic rule share the post-balance
//! envelope `(N + 1)^(1 - alpha) / ((alpha - 1) h^alpha)`; the rule only
//! changes `h` and the constant `c` in `sup |f - C_N| <= c E_N`.

use std::f64::consts::{E, PI};

use crate::error::{Error, Result};
use crate::model::{DecaySpec, RuleTag};
use crate::specfun::lambert_w0;
use crate::stepsize::{
    balance_w_argument, h_classical, h_log_approx, h_w_exact, h_w_optimized, h_w_strip, strip_beta,
    StepRuleInput,
};

/// Above this decay order envelopes are assembled from logarithms.
const LOG_SPACE_ALPHA: f64 = 30.0;

/// The triple returned by [`predicted_error`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prediction {
    pub h: f64,
    pub envelope: f64,
    /// The constant `c`; `None` when it depends on data that was not supplied.
    pub constant: Option<f64>,
}

impl Prediction {
    /// `c * E_N` when the constant is known.
    pub fn bound(&self) -> Option<f64> {
        self.constant.map(|c| c * self.envelope)
    }
}

/// `E_N = N^(1/2) exp(-sqrt(pi d alpha N))` for exponentially decaying functions.
pub fn e_n_classical(alpha_exp: f64, d: f64, n: usize) -> Result<f64> {
    if !(alpha_exp > 0.0) || !(d > 0.0) || n == 0 {
        return Err(Error::domain(
            "e_n_classical",
            format!("need alpha > 0, d > 0, N >= 1 (got {alpha_exp}, {d}, {n})"),
        ));
    }
    let n = n as f64;
    Ok(n.sqrt() * (-(PI * d * alpha_exp * n).sqrt()).exp())
}

/// `(N + 1)^(1 - alpha) / ((alpha - 1) h^alpha)`.
pub fn e_n_truncation_form(h: f64, input: &StepRuleInput) -> f64 {
    let alpha = input.alpha();
    let np1 = input.n_plus_one();
    let direct = np1.powf(1.0 - alpha) / ((alpha - 1.0) * h.powf(alpha));
    if alpha < LOG_SPACE_ALPHA && direct.is_finite() && direct > 0.0 {
        return direct;
    }
    ((1.0 - alpha) * np1.ln() - (alpha - 1.0).ln() - alpha * h.ln()).exp()
}

/// Envelope of the `w-exact` rule, written with `W` explicitly:
/// `alpha^alpha (N+1)^(1-alpha) / ((alpha-1) (pi d)^alpha) * W(z)^alpha`.
pub fn e_n_w_exact(input: &StepRuleInput) -> Result<f64> {
    let alpha = input.alpha();
    let pd = PI * input.d();
    let w = lambert_w0(balance_w_argument(input, pd))?.value;
    let np1 = input.n_plus_one();
    let direct = alpha.powf(alpha) * np1.powf(1.0 - alpha) / ((alpha - 1.0) * pd.powf(alpha)) * w.powf(alpha);
    if alpha < LOG_SPACE_ALPHA && direct.is_finite() && direct > 0.0 {
        return Ok(direct);
    }
    Ok((alpha * (alpha * w / pd).ln() + (1.0 - alpha) * np1.ln() - (alpha - 1.0).ln()).exp())
}

/// `E_N = (N+1)^(1-alpha) / ((alpha-1) (pi d)^alpha) * (alpha + (alpha-1) ln(N+1))^alpha`.
pub fn e_n_log_approx(input: &StepRuleInput) -> f64 {
    let alpha = input.alpha();
    let pd = PI * input.d();
    let np1 = input.n_plus_one();
    let s = alpha + (alpha - 1.0) * np1.ln();
    let direct = np1.powf(1.0 - alpha) / ((alpha - 1.0) * pd.powf(alpha)) * s.powf(alpha);
    if alpha < LOG_SPACE_ALPHA && direct.is_finite() && direct > 0.0 {
        return direct;
    }
    ((1.0 - alpha) * np1.ln() - (alpha - 1.0).ln() + alpha * (s / pd).ln()).exp()
}

/// N-dependent factor of the large-`N` bound
/// `(pi d)^(1-alpha) ((N+1)/(alpha-1))^(1-alpha) ln^alpha(pi d ((alpha-1)/alpha^alpha)^(1/(alpha-1)) (N+1))`.
///
/// Returns [`Error::NotApplicable`] when the logarithm's argument is at most one.
pub fn e_n_asymptotic(input: &StepRuleInput) -> Result<f64> {
    let alpha = input.alpha();
    let pd = PI * input.d();
    let np1 = input.n_plus_one();
    let ln_arg = pd.ln() + ((alpha - 1.0).ln() - alpha * alpha.ln()) / (alpha - 1.0) + np1.ln();
    if ln_arg <= 0.0 {
        return Err(Error::NotApplicable(format!(
            "logarithm argument {} <= 1 for alpha = {alpha}, d = {}, N = {}",
            ln_arg.exp(),
            input.d(),
            input.n_terms
        )));
    }
    Ok(((1.0 - alpha) * (pd.ln() + np1.ln() - (alpha - 1.0).ln()) + alpha * ln_arg.ln()).exp())
}

/// The two algebraically equivalent expressions for `c1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct COneForms {
    /// `(1 - exp(-2 alpha W(z0)))^-1`.
    pub exp_form: f64,
    /// `A / (A - alpha^(2 alpha) W(z0)^(2 alpha))` with `A = (pi d)^(2(alpha-1)) (alpha-1)^2`.
    pub rational_form: f64,
}

/// Both forms of `c1`, where `z0` is the `N = 0` Lambert-W argument.
pub fn c_one_forms(alpha: f64, d: f64) -> Result<COneForms> {
    if !(alpha > 1.0) || !(d > 0.0) {
        return Err(Error::domain("c_one", format!("need alpha > 1 and d > 0 (got {alpha}, {d})")));
    }
    let input = StepRuleInput::from_parts(alpha, d, 0)?;
    let pd = PI * d;
    let w = lambert_w0(balance_w_argument(&input, pd))?.value;

    let exp_form = -1.0 / (-2.0 * alpha * w).exp_m1();

    let a = pd.powf(2.0 * (alpha - 1.0)) * (alpha - 1.0).powi(2);
    let b = alpha.powf(2.0 * alpha) * w.powf(2.0 * alpha);
    let rational_form = if a.is_finite() && b.is_finite() && a > 0.0 {
        let denom = a - b;
        if !(denom > 0.0) {
            return Err(Error::numeric("c_one", format!("non-positive denominator {denom}")));
        }
        a / denom
    } else {
        let ln_ratio = 2.0 * alpha * (alpha * w).ln() - 2.0 * (alpha - 1.0) * pd.ln() - 2.0 * (alpha - 1.0).ln();
        let denom = -ln_ratio.exp_m1();
        if !(denom > 0.0) {
            return Err(Error::numeric("c_one", format!("non-positive denominator {denom}")));
        }
        1.0 / denom
    };
    Ok(COneForms {
        exp_form,
        rational_form,
    })
}

/// The discretization constant `c1 > 1`.
///
/// Both closed forms are evaluated; a disagreement beyond `1e-9` relative is
/// reported as a numeric failure rather than silently picking one.
pub fn c_one(alpha: f64, d: f64) -> Result<f64> {
    let forms = c_one_forms(alpha, d)?;
    let rel = (forms.exp_form - forms.rational_form).abs() / forms.exp_form;
    if !(rel <= 1e-9) {
        return Err(Error::numeric(
            "c_one",
            format!("forms disagree: {} vs {}", forms.exp_form, forms.rational_form),
        ));
    }
    Ok(forms.exp_form)
}

/// Upper bound `2 L min{2 / sinc(1/alpha), (2/d)^(alpha-1) B(alpha/2 - 1/2, alpha/2 + 1/2)}`
/// on `N1(f, D_d)` for functions decaying like `L / (1 + |z|^alpha)` throughout the strip.
pub fn strip_norm_bound(decay: &DecaySpec, d: f64) -> Result<f64> {
    Ok(2.0 * decay.big_l() * strip_beta(decay.alpha(), d)?.value())
}

/// Step size, envelope and constant for `rule`.
///
/// `c` follows the matching result:
/// * `w-exact`: `c1 N1 + 2L` (needs `strip_norm`, else `None`);
/// * `w-optimized`: `(c1 + 2) L` (`strip_norm` is required for `h`);
/// * `w-strip`: `c1 L`;
/// * `log-approx`: `(alpha - 1)(pi d / (alpha e))^alpha N1 + 2L` (needs `strip_norm`, else `None`);
/// * `classical`: the exponential-decay envelope with `alpha` read as the exponential rate; `c` unknown.
pub fn predicted_error(input: &StepRuleInput, rule: RuleTag, strip_norm: Option<f64>) -> Result<Prediction> {
    let alpha = input.alpha();
    let d = input.d();
    let big_l = input.decay.big_l();
    let (h, constant) = match rule {
        RuleTag::Classical => {
            let h = h_classical(alpha, d, input.n_terms)?;
            return Ok(Prediction {
                h,
                envelope: e_n_classical(alpha, d, input.n_terms)?,
                constant: None,
            });
        }
        RuleTag::WExact => {
            let c1 = c_one(alpha, d)?;
            (h_w_exact(input)?, strip_norm.map(|n1| c1 * n1 + 2.0 * big_l))
        }
        RuleTag::WOptimized => {
            let n1 = strip_norm.ok_or(Error::MissingStripNorm("w-optimized"))?;
            (h_w_optimized(input, n1)?, Some((c_one(alpha, d)? + 2.0) * big_l))
        }
        RuleTag::WStrip => (h_w_strip(input)?, Some(c_one(alpha, d)? * big_l)),
        RuleTag::LogApprox => {
            let k = (alpha - 1.0) * (PI * d / (alpha * E)).powf(alpha);
            (h_log_approx(input), strip_norm.map(|n1| k * n1 + 2.0 * big_l))
        }
        RuleTag::Manual => {
            return Err(Error::UnsupportedRule {
                rule: rule.name(),
                routine: "predicted_error",
            })
        }
    };
    Ok(Prediction {
        h,
        envelope: e_n_truncation_form(h, input),
        constant,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::StripSpec;
    use proptest::prelude::*;

    const TABLE_LADDER: [usize; 10] = [2, 4, 8, 16, 32, 64, 128, 256, 512, 1024];

    fn input(alpha: f64, d: f64, n: usize) -> StepRuleInput {
        StepRuleInput::from_parts(alpha, d, n).unwrap()
    }

    fn ex1_d() -> f64 {
        0.9 * 2f64.powf(0.25) * (PI / 4.0).sin()
    }

    fn table_d() -> f64 {
        0.9 * std::f64::consts::FRAC_1_SQRT_2
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn classical_envelope() {
        assert!(rel(e_n_classical(1.0 / PI, 1.0, 1).unwrap(), (-1.0f64).exp()) < 1e-14);
        assert!(rel(e_n_classical(1.0, 1.0, 4).unwrap(), 2.0 * (-2.0 * PI.sqrt()).exp()) < 1e-14);
        assert!(e_n_classical(1.0, 1.0, 100).unwrap() < e_n_classical(1.0, 1.0, 10).unwrap());
        assert!(e_n_classical(1.0, 1.0, 0).is_err());
    }

    #[test]
    fn w_exact_envelope_table_values() {
        let e2 = e_n_w_exact(&input(4.0, table_d(), 2)).unwrap();
        assert!(rel(e2, 3.641_222e-2) < 5e-7, "{e2}");
        let e1024 = e_n_w_exact(&input(4.0, table_d(), 1024)).unwrap();
        assert!(rel(e1024, 6.528_835e-7) < 5e-7, "{e1024}");
        // The printed half-width 0.7 does not give these values.
        assert!(rel(e_n_w_exact(&input(4.0, 0.7, 2)).unwrap(), 3.641_222e-2) > 0.1);
    }

    #[test]
    fn w_exact_envelope_identity() {
        for &n in &TABLE_LADDER {
            let inp = input(4.0, 0.7, n);
            let h = h_w_exact(&inp).unwrap();
            let a = e_n_w_exact(&inp).unwrap();
            let b = e_n_truncation_form(h, &inp);
            assert!(rel(a, b) < 1e-12);
        }
    }

    #[test]
    fn truncation_form_values() {
        assert_eq!(e_n_truncation_form(1.0, &input(2.0, 1.0, 0)), 1.0);
        let v = e_n_truncation_form(0.5, &input(4.0, 1.0, 9));
        assert!(rel(v, 1e-3 / (3.0 * 0.0625)) < 1e-14);
        assert!(rel(v, 5.333_333_333e-3) < 1e-9);
    }

    #[test]
    fn c_one_forms_agree() {
        let f = c_one_forms(4.0, 0.7).unwrap();
        assert!(rel(f.exp_form, f.rational_form) < 1e-12);
        assert!(f.exp_form > 1.0);
        // 40-digit bisection for W, then the exponential form.
        assert!(rel(c_one(2.0, 1.0).unwrap(), 1.139_856_939_623_528_7) < 1e-13);
        assert!(c_one(1.0, 1.0).is_err());
    }

    #[test]
    fn log_approx_envelope() {
        let v = e_n_log_approx(&input(4.0, 0.7, 0));
        assert!(rel(v, (4.0 / (0.7 * PI)).powi(4) / 3.0) < 1e-14);
        for &n in &TABLE_LADDER {
            let inp = input(4.0, 0.7, n);
            assert!(e_n_log_approx(&inp) >= e_n_w_exact(&inp).unwrap());
            assert!(rel(e_n_log_approx(&inp), e_n_truncation_form(h_log_approx(&inp), &inp)) < 1e-12);
        }
        let ratio = |alpha| {
            let inp = input(alpha, 0.7, 32);
            e_n_log_approx(&inp) / e_n_w_exact(&inp).unwrap()
        };
        assert!(ratio(10.0) > ratio(4.0));
    }

    #[test]
    fn asymptotic_factor() {
        let v = e_n_asymptotic(&input(4.0, 0.7, 1024)).unwrap();
        assert!(rel(v, 3.570_404_965_859_034_6e-6) < 1e-12, "{v}");
        let ratios: Vec<f64> = (6..=10)
            .map(|p| {
                let inp = input(4.0, 0.7, 1 << p);
                e_n_asymptotic(&inp).unwrap() / e_n_w_exact(&inp).unwrap()
            })
            .collect();
        let (lo, hi) = ratios.iter().fold((f64::MAX, 0.0f64), |(l, h), &r| (l.min(r), h.max(r)));
        assert!(lo > 0.0 && hi / lo < 2.0, "{ratios:?}");
        assert!(matches!(e_n_asymptotic(&input(1.1, 0.01, 0)), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn strip_bound_values() {
        let decay = DecaySpec::new(4.0, 4.0).unwrap();
        let b = strip_norm_bound(&decay, ex1_d()).unwrap();
        assert!(b >= 17.054_675_64, "{b}");
        let unit = DecaySpec::new(4.0, 1.0).unwrap();
        assert!(rel(strip_norm_bound(&unit, 0.7).unwrap(), 4.442_882_938_158_366) < 1e-14);
        let far = [1.0, 10.0, 100.0, 1000.0].map(|d| strip_norm_bound(&unit, d).unwrap());
        assert!(far.windows(2).all(|w| w[1] <= w[0]));
        assert!(far[3] < 1e-8);
    }

    #[test]
    fn predictions() {
        let inp = input(4.0, table_d(), 2);
        let p = predicted_error(&inp, RuleTag::WExact, None).unwrap();
        assert!(rel(p.envelope, 3.641_222e-2) < 5e-7);
        assert!(p.constant.is_none());
        assert!(predicted_error(&inp, RuleTag::WExact, Some(7.0)).unwrap().constant.unwrap() > 7.0 + 2.0);

        let same_l = StepRuleInput::new(DecaySpec::new(4.0, 3.0).unwrap(), StripSpec::new(0.7).unwrap(), 32);
        let opt = predicted_error(&same_l, RuleTag::WOptimized, Some(3.0)).unwrap();
        assert!(rel(opt.h, h_w_exact(&same_l).unwrap()) < 1e-15);
        assert!(matches!(
            predicted_error(&same_l, RuleTag::WOptimized, None),
            Err(Error::MissingStripNorm(_))
        ));

        let ex1 = StepRuleInput::new(DecaySpec::new(4.0, 4.0).unwrap(), StripSpec::new(ex1_d()).unwrap(), 32);
        let strip = predicted_error(&ex1, RuleTag::WStrip, None).unwrap();
        assert!(rel(strip.h, 0.314_902_280_5) <= 0.15);
        assert!(strip.constant.unwrap() > 4.0);

        assert!(predicted_error(&inp, RuleTag::Manual, None).is_err());
        let cl = predicted_error(&inp, RuleTag::Classical, None).unwrap();
        assert!(cl.constant.is_none() && cl.bound().is_none());
    }

    #[test]
    fn w_exact_envelope_decreasing() {
        let e: Vec<f64> = TABLE_LADDER.iter().map(|&n| e_n_w_exact(&input(4.0, 0.7, n)).unwrap()).collect();
        assert!(e.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn large_alpha_uses_log_space() {
        let inp = input(60.0, 0.05, 1024);
        let a = e_n_w_exact(&inp).unwrap();
        let b = e_n_truncation_form(h_w_exact(&inp).unwrap(), &inp);
        assert!(a.is_finite() && a > 0.0);
        assert!(rel(a, b) < 1e-10);
    }

    proptest! {
        #[test]
        fn c_one_cross_form(alpha in 1.0f64..=20.0, d in 0.05f64..=5.0) {
            prop_assume!(alpha > 1.0);
            let f = c_one_forms(alpha, d).unwrap();
            prop_assert!(f.exp_form > 1.0);
            prop_assert!(rel(f.exp_form, f.rational_form) <= 1e-12, "{:?}", f);
        }

        #[test]
        fn envelope_matches_truncation_form(n in 0usize..5000, alpha in 1.1f64..12.0, d in 0.1f64..3.0, n1 in 0.1f64..50.0) {
            let inp = StepRuleInput::new(DecaySpec::new(alpha, 2.0).unwrap(), StripSpec::new(d).unwrap(), n);
            for rule in [RuleTag::WExact, RuleTag::WOptimized, RuleTag::WStrip, RuleTag::LogApprox] {
                let p = predicted_error(&inp, rule, Some(n1)).unwrap();
                prop_assert!(rel(p.envelope, e_n_truncation_form(p.h, &inp)) <= 1e-12);
            }
        }
    }
}
