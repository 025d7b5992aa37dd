//! Exact arithmetic: Gaussian rationals, the coefficient field `ℚ(i)(√2)`,
//! bivariate polynomials and rational functions in `ξ₊, ξ₋`.

mod coeff;
mod gaussian;
pub mod json;
mod poly;
mod ratfunc;

pub use coeff::Coeff;
pub use gaussian::GaussianRational;
pub use poly::{BiPoly, Monomial, PolyEvaluator};
pub use ratfunc::{RationalEvaluator, RationalFunction, POLE_THRESHOLD};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AlgebraError {
    #[error("division by the zero rational function")]
    DivisionByZero,
    #[error("denominator vanishes at ξ₊ = {re}{im:+}i")]
    Pole { re: f64, im: f64 },
    #[error("parse error: {0}")]
    Parse(String),
}
