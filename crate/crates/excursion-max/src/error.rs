//! Error types shared by the numeric modules.

use thiserror::Error;

/// Failure of a series, special-function, quadrature, or root-finding
/// evaluation. Evaluators either meet their requested tolerance or return
/// one of these; they never silently hand back an unconverged value.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericError {
    /// Argument sits on a pole of the evaluated function.
    #[error("pole at argument {re}{im:+}i")]
    Pole { re: f64, im: f64 },

    /// Argument outside the mathematical domain of the operation.
    #[error("domain error in {what}: {detail}")]
    Domain {
        what: &'static str,
        detail: String,
    },

    /// Tolerance not reached within the evaluation budget.
    #[error("{what} did not converge: {used} {unit} used, estimated error {err_estimate:e}")]
    NonConvergence {
        what: &'static str,
        used: usize,
        unit: &'static str,
        err_estimate: f64,
    },

    /// An integrand or series term produced NaN or an infinity.
    #[error("{what} evaluated to a non-finite value at {arg}")]
    NonFinite { what: &'static str, arg: f64 },
}

impl NumericError {
    pub(crate) fn domain(what: &'static str, detail: impl Into<String>) -> Self {
        NumericError::Domain {
            what,
            detail: detail.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, NumericError>;
