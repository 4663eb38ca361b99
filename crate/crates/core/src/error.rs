use thiserror::Error;

/// Errors raised by the library. Refusals (bounds, preconditions, missing
/// saturation) are kept apart from malformed input so that callers can map
/// them to different exit paths.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("functor mismatch: expected {expected}, found {found}")]
    FunctorMismatch { expected: String, found: String },

    #[error("{what}: size estimate {estimate} exceeds bound {bound}")]
    BoundExceeded {
        what: &'static str,
        estimate: u128,
        bound: u64,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid structure: {0}")]
    Invalid(String),

    #[error("chain not saturated after exploring {explored} elements")]
    NotSaturated { explored: usize },
}

impl Error {
    /// True for errors that represent a refused request rather than bad input.
    pub fn is_refusal(&self) -> bool {
        matches!(
            self,
            Error::BoundExceeded { .. } | Error::Precondition(_) | Error::NotSaturated { .. }
        )
    }

    pub(crate) fn mismatch(expected: impl ToString, found: impl ToString) -> Self {
        Error::FunctorMismatch {
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Default cap on enumeration search spaces.
pub const DEFAULT_ENUM_BOUND: u64 = 1_000_000;

/// `base^exp` saturating into `u128`.
pub(crate) fn pow_estimate(base: usize, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
        if acc == u128::MAX {
            break;
        }
    }
    acc
}

pub(crate) fn check_bound(what: &'static str, estimate: u128, bound: u64) -> Result<()> {
    if estimate > bound as u128 {
        Err(Error::BoundExceeded { what, estimate, bound })
    } else {
        Ok(())
    }
}
