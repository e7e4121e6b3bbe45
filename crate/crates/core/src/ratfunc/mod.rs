//! Exact rationals, sparse multivariate polynomials and reduced rational functions.

mod gcd;
mod mono;
mod parse;
mod poly;
mod print;
mod ratfn;
mod registry;

use alloc::string::String;

pub use gcd::{poly_gcd, polynomial_gcd, PolyGcd};
pub use mono::Mono;
pub use parse::parse_ratfn;
pub use poly::{int_sqrt, Coeff, IntPoly, Poly, Polynomial};
pub use print::{format_polynomial, format_rational};
pub use ratfn::{RatFn, Substitution};
pub use registry::{is_valid_name, VarRegistry};

pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RatFnError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at the evaluation point")]
    Pole,
    #[error("no value supplied for variable slot {0}")]
    MissingValue(usize),
    #[error("invalid variable name `{0}`")]
    InvalidVariableName(String),
    #[error("variable `{0}` already registered")]
    DuplicateVariable(String),
    #[error("exponent too large")]
    ExponentTooLarge,
}
