//! Exact scalars, dense univariate polynomials, reduced rational functions,
//! truncated power series and linear solving over Q and Q(x).

mod matrix;
mod poly;
mod ratfunc;
mod rational;
mod series;

pub use matrix::Matrix;
pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use rational::{binomial, parse_rational, rat, Rational};
pub use series::Series;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at x = {0}")]
    Pole(Rational),
    #[error("series expansion needs a nonzero constant term in the denominator")]
    ZeroConstantTerm,
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    #[error("singular matrix")]
    Singular,
    #[error("dimension mismatch: {0}")]
    Dimension(&'static str),
    #[error("invalid rational literal {0:?}")]
    ParseRational(alloc::string::String),
}
