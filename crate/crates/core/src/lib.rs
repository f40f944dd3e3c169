//! Sinc (cardinal-series) interpolation of algebraically decaying functions.
//!
//! A function with `|f(x)| <= L / (1 + |x|^alpha)`, analytic in the strip
//! `|Im z| <= d`, is approximated by
//!
//! ```text
//! C_N{f,h}(x) = sum_{k=-N}^{N} f(kh) sinc(x/h - k)
//! ```
//!
//! with `h` chosen so that the exponentially small discretization error and
//! the algebraically small truncation error balance. The balancing `h` is
//! expressed through the Lambert-W function; see [`stepsize`].
//!
//! ```
//! use sinc_core::{cardinal, stepsize, model::RuleTag};
//!
//! let input = stepsize::StepRuleInput::from_parts(4.0, 0.7, 32).unwrap();
//! let h = stepsize::h_w_exact(&input).unwrap();
//! let plan = cardinal::InterpolationPlan::new(32, h, RuleTag::WExact).unwrap();
//! let f = |x: f64| 1.0 / (1.0 + x.powi(4));
//! let err = cardinal::discrete_error(&f, &plan).unwrap();
//! assert!(err < 1e-2);
//! ```

// `!(x > 0.0)` is used deliberately so NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Quadrature nodes and Lanczos coefficients are kept as published.
#![allow(clippy::excessive_precision)]

pub mod bounds;
pub mod cardinal;
pub mod error;
pub mod harness;
pub mod model;
pub mod specfun;
pub mod stepsize;
pub mod stripquad;
pub mod summation;

pub use error::{Error, Result};
pub use model::{DecaySpec, RealFunction, RuleTag, StripSpec, TargetFunction};
