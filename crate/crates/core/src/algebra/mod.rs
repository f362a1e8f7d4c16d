//! Exact arithmetic: rationals, parameter polynomials, dense linear algebra.

pub mod expr;
pub mod matrix;
pub mod poly;
pub mod rational;

pub use matrix::{linear_solve, RatMatrix};
pub use poly::{Monomial, ParamPoly};
pub use rational::{int, parse_rational, rat, Rational};
