use thiserror::Error;

/// Everything that can go wrong in closed-form evaluation or numerical
/// integration. Callers that sweep over a grid usually keep going and record
/// the failed point instead of aborting.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// Gamma function evaluated at or too close to a nonpositive integer.
    #[error("gamma pole at or near z = {re}{im:+}i")]
    Pole { re: f64, im: f64 },

    /// Energy sits on a channel threshold where an exponent degenerates
    /// ((E -+ V0)^2 = (m0+m1)^2 or E^2 = m0^2 to working precision).
    #[error("energy {e} is within {tol:e} of a channel threshold")]
    Threshold { e: f64, tol: f64 },

    /// Parameters outside the domain the formulas are valid for.
    #[error("invalid parameter: {0}")]
    Domain(String),

    /// An iteration (series, root search) failed to converge.
    #[error("no convergence: {0}")]
    NonConvergence(String),

    /// Hypergeometric connection formula breaks down (integer parameter
    /// differences produce gamma poles in the coefficients).
    #[error(
        "degenerate hypergeometric parameters: c - a - b = {re}{im:+}i is too close to an integer"
    )]
    DegenerateParameters { re: f64, im: f64 },

    /// Adaptive integrator drove the step size below the useful minimum.
    #[error("integrator stalled at x = {x} with step {h:e}")]
    Stiffness { x: f64, h: f64 },

    /// Intermediate magnitude left the representable range even in log space.
    #[error("overflow in {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;
