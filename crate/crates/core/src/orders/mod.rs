//! Entire-function machinery over truncated power series.
//!
//! A [`TruncatedSeries`] holds complex coefficients `a_0..a_N` in a
//! wide-exponent format so that decays like `n^(-n/s)` stay
//! representable far past the `f64` underflow point. On top of that
//! sit ring operations, maximum-modulus sampling on circles,
//! polynomial composition ([`PolySpec`]), and three growth-order
//! estimators.

mod estimate;
mod poly;
mod series;
mod wide;

pub use estimate::{
    order_from_coeff_fit, order_from_coeffs, order_from_growth, order_from_growth_auto,
    reliable_radius, EstimateMethod, OrderEstimate, AUTO_LADDER_POINTS,
    DEFAULT_ALGEBRA_TRUNCATION, DEFAULT_ESTIMATION_TRUNCATION, DEFAULT_WINDOW_FRACTION,
    GROWTH_SAMPLES, ORDER_CAP,
};
pub use poly::{compose_poly, index_set, PolySpec};
pub use series::{prescribed_order_series, SeriesFile, TruncatedSeries};
pub use wide::WideComplex;

/// Errors from series construction, evaluation, and order estimation.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OrderError {
    #[error("growth rate parameter {alpha} must be positive and finite")]
    InvalidAlpha { alpha: f64 },

    #[error("truncation index {n} too small; need at least {min}")]
    TruncationTooShort { n: usize, min: usize },

    #[error(
        "truncation too short for radius {radius}: dropped tail is {tail_ratio:e} of the maximum"
    )]
    TruncationUnreliable { radius: f64, tail_ratio: f64 },

    #[error("only {usable} usable samples: {reason}")]
    DomainError { usable: usize, reason: String },

    #[error("constant polynomial not allowed here: {reason}")]
    ConstantPolynomial { reason: String },

    #[error("invalid input: {reason}")]
    InvalidInput { reason: String },
}
