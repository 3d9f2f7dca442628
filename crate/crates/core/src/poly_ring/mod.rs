//! Exact Laurent polynomials, truncated series, wall functions and
//! wall-crossing automorphisms.

pub mod automorphism;
pub mod laurent;
pub mod series;
pub mod univariate;

pub use automorphism::{
    exp_derivation, log_leading, wall_automorphism, wall_crossing, Crossing, Frame, RingAutomorphism, WallFunction,
};
pub use laurent::{tropicalize, Laurent, Naming};
pub use series::{Mono, Series};
pub use univariate::{expand_binomial_powers, factor_binomial_powers, Uni};

/// A truncated element `z^{base} S(y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedLaurent {
    pub base: Vec<i64>,
    pub series: Series,
}

impl TruncatedLaurent {
    pub fn to_laurent(&self, frame: &Frame) -> Laurent {
        frame.to_laurent(&self.base, &self.series)
    }
}
