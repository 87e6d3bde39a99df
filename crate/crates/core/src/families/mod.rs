//! Class labels, enumerators, and closed-form builders for the solution
//! families: symmetric and triangular solutions of the reflection equation,
//! and the four twisted families solving the C-twisted equation.

mod classes;
mod twisted;
mod untwisted;

use thiserror::Error;

use crate::linalg::LinalgError;
use crate::scalar::ScalarError;

pub use classes::{
    enum_sym_classes, enum_tri_classes, enum_twisted_classes, ClassLabel, Involution, SymClass, TriClass,
    TwistedClass, TwistedKind,
};
pub use twisted::{
    affinize_twisted_const, build_twisted, build_twisted_orbit, half_shift_g, onsager_const_parts, TwistedOrbit,
};
pub use untwisted::{
    affinize_sym, affinize_tri, build_const_gq, build_kp, build_ks, build_ks1, build_ks2, build_kt, build_kt1,
    build_noninvertible_tri, build_solution, ConstPair, Ks1Class, Ks2Class, Kt1Class,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FamilyError {
    #[error("invalid class label: {0}")]
    InvalidClass(String),
    #[error("{kind} requires even N, got N = {n}")]
    Parity { kind: &'static str, n: usize },
    #[error("input violates {0}")]
    Invariant(String),
    #[error("constant matrix does not solve the constant twisted equation: {0}")]
    NotConstSolution(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
