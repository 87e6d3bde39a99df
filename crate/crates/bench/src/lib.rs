//! Benchmark inputs shared by the criterion targets.

use reflectk::families::{build_ks, build_twisted};
use reflectk::{Mat, SymClass, TwistedClass, TwistedKind};

/// The symmetric solution with the widest cross block at size `n`.
pub fn widest_symmetric(n: usize) -> Mat {
    build_ks(&SymClass::new(n, 0, n / 2).expect("valid for n >= 2"))
}

pub fn onsager(n: usize) -> Mat {
    build_twisted(&TwistedClass::new(n, TwistedKind::QOnsager).expect("defined for every n"))
}
