use thiserror::Error;

/// Errors raised by the numerical routines and the study harness.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the domain of the routine.
    #[error("domain error in {routine}: {detail}")]
    Domain {
        routine: &'static str,
        detail: String,
    },

    /// The target function returned a non-finite value at an interpolation node.
    #[error("non-finite sample f({x}) = {value} at node k = {node}")]
    NonFiniteSample { node: i64, x: f64, value: f64 },

    /// The target function returned a non-finite value off the nodes.
    #[error("non-finite function value f({x}) = {value}")]
    NonFiniteValue { x: f64, value: f64 },

    /// A formula produced a non-positive denominator or otherwise left its regime.
    #[error("numeric failure in {routine}: {detail}")]
    Numeric {
        routine: &'static str,
        detail: String,
    },

    /// A bound whose defining logarithm is not larger than one.
    #[error("bound not applicable: {0}")]
    NotApplicable(String),

    /// The selected rule needs N1(f, D_d) but none was supplied.
    #[error("rule {0} requires a strip norm")]
    MissingStripNorm(&'static str),

    /// The rule cannot be used in this context.
    #[error("rule {rule} is not supported by {routine}")]
    UnsupportedRule {
        rule: &'static str,
        routine: &'static str,
    },

    /// Adaptive quadrature exhausted its panel budget.
    #[error("quadrature did not converge within {panels} panels (estimate {estimate}, error {error})")]
    NonConvergence {
        panels: usize,
        estimate: f64,
        error: f64,
    },

    #[error("unknown function `{0}`")]
    UnknownFunction(String),

    #[error("function `{name}` has no complex extension")]
    NoComplexExtension { name: String },

    #[error("invalid study configuration: {0}")]
    InvalidConfig(String),

    /// A study step failed; carries the ladder position.
    #[error("study row {index} (N = {n_terms}): {source}")]
    Study {
        index: usize,
        n_terms: usize,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn domain(routine: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            routine,
            detail: detail.into(),
        }
    }

    pub(crate) fn numeric(routine: &'static str, detail: impl Into<String>) -> Self {
        Error::Numeric {
            routine,
            detail: detail.into(),
        }
    }

    /// Short machine-readable category, used by the command-line front end.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain { .. } => "domain",
            Error::NonFiniteSample { .. } | Error::NonFiniteValue { .. } => "evaluation",
            Error::Numeric { .. } => "numeric",
            Error::NotApplicable(_) => "not-applicable",
            Error::MissingStripNorm(_) => "missing-strip-norm",
            Error::UnsupportedRule { .. } => "unsupported-rule",
            Error::NonConvergence { .. } => "non-convergence",
            Error::UnknownFunction(_) | Error::NoComplexExtension { .. } => "function",
            Error::InvalidConfig(_) => "config",
            Error::Study { source, .. } => source.kind(),
            Error::Io(_) | Error::Csv(_) => "io",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
