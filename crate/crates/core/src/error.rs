use thiserror::Error;

/// Failure modes of the material-function library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{function}: argument {value} is outside the domain")]
    Domain { function: &'static str, value: f64 },

    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("quadrature did not converge within {max_nodes} nodes (error estimate {estimate:e}, target {target:e})")]
    Convergence {
        estimate: f64,
        target: f64,
        max_nodes: usize,
    },

    #[error("non-finite value produced at step {index}")]
    NonFinite { index: usize },

    #[error("successive refinements differ by {difference:e}, below the precision floor")]
    PrecisionFloor { difference: f64 },

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_param<T: crate::Real>(
    name: &'static str,
    value: T,
    ok: bool,
    reason: &'static str,
) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value: value.as_f64(),
            reason,
        })
    }
}
