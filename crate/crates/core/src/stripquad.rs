//! Numerical strip norm `N1(f, D_d) = int |f(x + i d)| dx + int |f(x - i d)| dx`.
//!
//! The finite part is integrated with adaptive Gauss-Kronrod (7/15) panels
//! under global error control; the infinite tails are cut at a radius where
//! the declared decay `L / (1 + |z|^alpha)` bounds them below tolerance.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::bounds::strip_norm_bound;
use crate::error::{Error, Result};
use crate::model::{DecaySpec, StripSpec};
use crate::summation::CompensatedSum;

pub type ComplexEvaluator = Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>;

/// Panels per half-line before any adaptive refinement.
pub const INITIAL_PANELS: usize = 64;
/// Maximum number of panels per boundary line.
pub const PANEL_BUDGET: usize = 200_000;
const INITIAL_RADIUS: f64 = 32.0;

/// A function with a complex extension into the strip `|Im z| <= d`.
#[derive(Clone)]
pub struct ComplexTarget {
    evaluator: ComplexEvaluator,
    pub decay: DecaySpec,
    pub strip: StripSpec,
}

impl ComplexTarget {
    pub fn new(
        evaluator: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static,
        decay: DecaySpec,
        strip: StripSpec,
    ) -> Self {
        Self {
            evaluator: Arc::new(evaluator),
            decay,
            strip,
        }
    }

    pub fn from_shared(evaluator: ComplexEvaluator, decay: DecaySpec, strip: StripSpec) -> Self {
        Self {
            evaluator,
            decay,
            strip,
        }
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        (self.evaluator)(z)
    }

    /// Same function and decay on a strip of a different half-width.
    pub fn with_half_width(&self, d: f64) -> Result<Self> {
        Ok(Self {
            evaluator: Arc::clone(&self.evaluator),
            decay: self.decay,
            strip: StripSpec::new(d)?,
        })
    }

    fn abs_on_line(&self, x: f64, y: f64) -> Result<f64> {
        let v = self.eval(Complex64::new(x, y)).norm();
        if !v.is_finite() {
            return Err(Error::domain("strip_norm", format!("f({x} {y:+}i) is not finite")));
        }
        Ok(v)
    }
}

impl fmt::Debug for ComplexTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ComplexTarget")
            .field("decay", &self.decay)
            .field("strip", &self.strip)
            .finish_non_exhaustive()
    }
}

/// Detailed result of [`strip_norm_detailed`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StripNormEstimate {
    /// `upper_line + lower_line`.
    pub value: f64,
    /// `int |f(x + i d)| dx` over `[-radius, radius]`.
    pub upper_line: f64,
    /// `int |f(x - i d)| dx` over `[-radius, radius]`.
    pub lower_line: f64,
    pub radius: f64,
    /// Bound on the neglected tails of both lines.
    pub tail_bound: f64,
    /// Estimated quadrature error on `[-radius, radius]`.
    pub quadrature_error: f64,
}

/// Result of [`strip_norm_vs_bound`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StripNormCheck {
    pub numeric: f64,
    pub analytic_bound: f64,
    /// The `L` used in the analytic bound.
    pub strip_decay_constant: f64,
}

/// `N1(f, D_d)` to relative tolerance `rel_tol` in `(0, 1e-2]`.
pub fn strip_norm(f: &ComplexTarget, rel_tol: f64) -> Result<f64> {
    strip_norm_detailed(f, rel_tol).map(|e| e.value)
}

/// Tail bound `2 * 2L X^(1-alpha) / (alpha - 1)` for both lines beyond `|x| = X`.
pub fn tail_bound(decay: &DecaySpec, radius: f64) -> f64 {
    let alpha = decay.alpha();
    4.0 * decay.big_l() * radius.powf(1.0 - alpha) / (alpha - 1.0)
}

/// [`strip_norm`] with the pieces of the computation exposed.
pub fn strip_norm_detailed(f: &ComplexTarget, rel_tol: f64) -> Result<StripNormEstimate> {
    check_tol(rel_tol)?;
    let d = f.strip.half_width();
    let quad_tol = 0.5 * rel_tol;

    let mut radius = INITIAL_RADIUS.max(8.0 * d);
    let mut upper = integrate_line(f, d, -radius, radius, quad_tol)?;
    let mut lower = integrate_line(f, -d, -radius, radius, quad_tol)?;

    loop {
        let estimate = upper.value + lower.value;
        let tail = tail_bound(&f.decay, radius);
        if tail < 0.5 * rel_tol * estimate {
            return Ok(StripNormEstimate {
                value: estimate,
                upper_line: upper.value,
                lower_line: lower.value,
                radius,
                tail_bound: tail,
                quadrature_error: upper.error + lower.error,
            });
        }
        let alpha = f.decay.alpha();
        let needed = (8.0 * f.decay.big_l() / ((alpha - 1.0) * rel_tol * estimate)).powf(1.0 / (alpha - 1.0));
        let next = (2.0 * radius).max(1.05 * needed);
        if !next.is_finite() || next > 1e12 {
            return Err(Error::NonConvergence {
                panels: 0,
                estimate,
                error: tail,
            });
        }
        for (line, y) in [(&mut upper, d), (&mut lower, -d)] {
            let left = integrate_line(f, y, -next, -radius, quad_tol)?;
            let right = integrate_line(f, y, radius, next, quad_tol)?;
            let mut sum = CompensatedSum::new();
            sum.extend([left.value, line.value, right.value]);
            line.value = sum.total();
            line.error += left.error + right.error;
        }
        radius = next;
    }
}

/// Both boundary integrals over the fixed window `[-radius, radius]`, no tail control.
pub fn strip_norm_on_window(f: &ComplexTarget, radius: f64, rel_tol: f64) -> Result<f64> {
    check_tol(rel_tol)?;
    let d = f.strip.half_width();
    let upper = integrate_line(f, d, -radius, radius, 0.5 * rel_tol)?;
    let lower = integrate_line(f, -d, -radius, radius, 0.5 * rel_tol)?;
    Ok(upper.value + lower.value)
}

fn check_tol(rel_tol: f64) -> Result<()> {
    if !(rel_tol > 0.0 && rel_tol <= 1e-2) {
        return Err(Error::domain("strip_norm", format!("relative tolerance {rel_tol} not in (0, 1e-2]")));
    }
    Ok(())
}

/// Sampled estimate of `sup_{|Im z| <= d} |f(z)| (1 + |z|^alpha)` over `|Re z| <= radius`.
///
/// This is the smallest `L` for which the decay hypothesis holds on the whole
/// strip rather than only on the real line. The scan is dense near the origin
/// (step 0.005 for `|x| <= 20`) and coarse (0.1) beyond.
pub fn strip_decay_constant(f: &ComplexTarget, radius: f64) -> Result<f64> {
    let d = f.strip.half_width();
    let alpha = f.decay.alpha();
    const Y_LEVELS: i32 = 16;
    let near = radius.min(20.0);
    let mut xs: Vec<f64> = (0..=((near / 0.005) as i64)).map(|i| i as f64 * 0.005).collect();
    let mut x = near;
    while x < radius {
        x += 0.1;
        xs.push(x.min(radius));
    }
    let mut worst = 0.0_f64;
    for &x in &xs {
        for sx in [x, -x] {
            for j in -Y_LEVELS..=Y_LEVELS {
                let z = Complex64::new(sx, d * j as f64 / Y_LEVELS as f64);
                let v = f.eval(z).norm();
                if !v.is_finite() {
                    return Err(Error::domain("strip_decay_constant", format!("f({z}) is not finite")));
                }
                worst = worst.max(v * (1.0 + z.norm().powf(alpha)));
            }
        }
    }
    Ok(worst)
}

/// Pairs the numerical strip norm with the closed-form upper bound.
///
/// The bound uses the larger of the declared `L` and the sampled strip decay
/// constant, since the closed form needs the decay estimate on the whole strip.
pub fn strip_norm_vs_bound(f: &ComplexTarget) -> Result<StripNormCheck> {
    let est = strip_norm_detailed(f, 1e-8)?;
    let scanned = strip_decay_constant(f, est.radius)?;
    let big_l = f.decay.big_l().max(scanned);
    let decay = DecaySpec::new(f.decay.alpha(), big_l)?;
    Ok(StripNormCheck {
        numeric: est.value,
        analytic_bound: strip_norm_bound(&decay, f.strip.half_width())?,
        strip_decay_constant: big_l,
    })
}

#[derive(Debug, Clone, Copy)]
struct LineIntegral {
    value: f64,
    error: f64,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    // Largest error first; ties broken by position so refinement order is reproducible.
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
// Gauss weights for the odd-indexed Kronrod nodes 1, 3, 5, 7.
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

fn gauss_kronrod<G: Fn(f64) -> Result<f64>>(g: &G, a: f64, b: f64) -> Result<Panel> {
    let c = 0.5 * (a + b);
    let r = 0.5 * (b - a);
    let fc = g(c)?;
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for i in 0..7 {
        let dx = r * XGK[i];
        let pair = g(c - dx)? + g(c + dx)?;
        kronrod += WGK[i] * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    Ok(Panel {
        a,
        b,
        value: kronrod * r,
        error: ((kronrod - gauss) * r).abs(),
    })
}

fn integrate_line(f: &ComplexTarget, y: f64, a: f64, b: f64, rel_tol: f64) -> Result<LineIntegral> {
    let g = |x: f64| f.abs_on_line(x, y);
    let seeds = 2 * INITIAL_PANELS;
    let width = (b - a) / seeds as f64;
    let mut heap = BinaryHeap::with_capacity(4 * seeds);
    let mut total = 0.0;
    let mut total_err = 0.0;
    for i in 0..seeds {
        let lo = a + i as f64 * width;
        let hi = if i + 1 == seeds { b } else { lo + width };
        let p = gauss_kronrod(&g, lo, hi)?;
        total += p.value;
        total_err += p.error;
        heap.push(p);
    }

    while total_err > rel_tol * total.abs() && total_err > f64::MIN_POSITIVE {
        if heap.len() >= PANEL_BUDGET {
            return Err(Error::NonConvergence {
                panels: heap.len(),
                estimate: total,
                error: total_err,
            });
        }
        let worst = heap.pop().expect("panel heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Panel cannot be split further in double precision.
            heap.push(Panel { error: 0.0, ..worst });
            total_err -= worst.error;
            continue;
        }
        let left = gauss_kronrod(&g, worst.a, mid)?;
        let right = gauss_kronrod(&g, mid, worst.b)?;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    let mut panels = heap.into_vec();
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    let value: CompensatedSum = panels.iter().map(|p| p.value).collect();
    let error = panels.iter().map(|p| p.error).sum();
    Ok(LineIntegral {
        value: value.total(),
        error,
    })
}
