//! Exact construction and verification of matrix solutions to the
//! reflection equation and its twisted variants for the trigonometric
//! R-matrix of type `A^(1)_{N-1}`.

pub mod equivalence;
pub mod families;
pub mod linalg;
pub mod rmatrix;
pub mod scalar;
pub mod verify;

pub use equivalence::{EquivError, EquivMove, Flavor, ZSpec};
pub use families::{ClassLabel, ConstPair, FamilyError, Involution, SymClass, TriClass, TwistedClass, TwistedKind};
pub use linalg::{LinalgError, Mat, MatJson, Mismatch};
pub use rmatrix::RBundle;
pub use scalar::{Bindings, Point, Scalar, ScalarError, Var};
pub use verify::{Equation, Mode, VerifyError, VerifyReport};
