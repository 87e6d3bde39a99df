//! Exact arithmetic in the field of rational functions over the integers.
//!
//! Every scalar in the crate lives here: polynomials in a fixed registry of
//! indeterminates (`s`, `u`, `v`, `lambda`, `mu`, `alpha`, `eta`, `c_k`,
//! `d_k`) and fractions of them. The deformation parameter is never stored
//! directly; `q` is always `-s^2`, so half-integer powers of `-q` are
//! integer powers of `s`.

mod field;
mod monomial;
mod parse;
mod poly;
mod var;

use thiserror::Error;

pub use field::{max_terms, max_terms_from_env, set_max_terms, Bindings, Point, Scalar, DEFAULT_MAX_TERMS};
pub use monomial::Monomial;
pub use parse::parse_scalar;
pub use poly::Poly;
pub use var::Var;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator factor {factor} vanishes identically at {bindings}")]
    DenominatorVanishes { factor: String, bindings: String },
    #[error("pole at {var} = {value}")]
    Pole { var: String, value: String },
    #[error("indeterminate {0} has no value at the sample point")]
    Unbound(String),
    #[error("expression has {terms} terms, above the ceiling of {limit} (set REFLECTK_MAX_TERMS to raise it)")]
    TooLarge { terms: usize, limit: usize },
    #[error("REFLECTK_MAX_TERMS must be a positive integer, got `{0}`")]
    BadTermLimit(String),
    #[error("column {column}: {message}")]
    Parse { column: usize, message: String },
}

/// `q = -s^2`.
pub fn q() -> Scalar {
    let s = Scalar::var(Var::S);
    s.mul(&s).neg()
}

/// `s^k` for any integer `k`; `s^k = (-q)^{k/2}`.
pub fn s_pow(k: i32) -> Scalar {
    Scalar::var(Var::S).pow(k).expect("s is invertible")
}

pub fn u() -> Scalar {
    Scalar::var(Var::U)
}

pub fn v() -> Scalar {
    Scalar::var(Var::V)
}
