//! Truncated power series and rational generating functions.

mod fraction;
mod graded;
mod rational;
mod truncated;

pub use fraction::{FracPoly, PolyFraction};
pub use graded::{graded_substitute, GradedMultiSeries};
pub use rational::{reconstruct_rational, RationalGF};
pub use truncated::{substitute_series, TruncatedSeries};

#[derive(Debug, thiserror::Error)]
pub enum SeriesError {
    #[error("series coefficients may not carry negative powers of '{0}'")]
    NegativeSeriesExponent(String),
    #[error("{0} requires a zero constant term")]
    NonzeroConstantTerm(&'static str),
    #[error("{0} requires constant term one")]
    ConstantTermNotOne(&'static str),
    #[error("denominator constant term is not an invertible monomial")]
    NonInvertibleDenominator,
    #[error("series expansion and denominator reconstruction are inconsistent")]
    ReconstructionFailed,
    #[error("graded series truncated at degree {have}, need {need}")]
    InsufficientGradedTruncation { have: usize, need: usize },
    #[error(transparent)]
    Poly(#[from] crate::poly::PolyError),
}
