use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A parameter lies outside the domain of the operation.
    #[error("{field} = {value} is outside {domain}")]
    Domain {
        field: &'static str,
        value: f64,
        domain: &'static str,
    },
    /// The coin has |a| = 0, so quantities that divide by |a|^2 are undefined.
    #[error("coin is singular (|a| = 0): {0}")]
    SingularCoin(&'static str),
    #[error("lambda = {lambda} exceeds the bound 1/cos(theta) = {bound}")]
    LambdaOutOfBound { lambda: f64, bound: f64 },
    /// Trivial coins (abcd = 0) have no limiting density.
    #[error("trivial coin has no limiting distribution")]
    NoLimitingDistribution,
    /// A parameter value at which a closed formula is singular.
    #[error("{0}")]
    SingularParameter(&'static str),
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    #[error("quadrature did not converge: error estimate {estimate:e} above {target:e}")]
    Quadrature { estimate: f64, target: f64 },
    #[error("malformed input: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(field: &'static str, value: f64, domain: &'static str) -> Self {
        Error::Domain {
            field,
            value,
            domain,
        }
    }

    /// True for errors that come from numerical non-convergence rather than bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Quadrature { .. })
    }
}
