use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("domain error: {0}")]
    Domain(String),

    /// A probability outside the mass represented by a curve was requested.
    #[error("probability {requested} outside represented range [{lo}, {hi}]")]
    TailExtrapolation { requested: f64, lo: f64, hi: f64 },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("incompatible sources: {0}")]
    IncompatibleSources(String),

    /// Elicited nodes violate monotonicity or nesting. `pair` names the offending entries.
    #[error("inconsistent elicitation between entries {} and {}: {reason}", pair.0, pair.1)]
    ElicitationInconsistency {
        pair: (usize, usize),
        reason: String,
    },

    /// Coverage estimated as exactly 0 or 1; the bound is a one-sided
    /// rule-of-three bound on the odds.
    #[error("fair odds are infinite or zero at coverage {coverage}; odds bound {bound}")]
    InfiniteOdds { coverage: f64, bound: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    /// An error raised while building one entry of an evidence file.
    #[error("sources[{index}] ({id}): {inner}")]
    InSource {
        index: usize,
        id: String,
        inner: Box<Error>,
    },
}

impl Error {
    /// True for failures that come from numerics rather than from bad input.
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::TailExtrapolation { .. } | Error::InfiniteOdds { .. } => true,
            Error::InSource { inner, .. } => inner.is_numerical(),
            _ => false,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "{name} must be finite, got {v}"
        )))
    }
}
