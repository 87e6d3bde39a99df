//! The fixed registry of indeterminates.

use std::fmt;

use serde::{Deserialize, Serialize};

/// An indeterminate from the fixed registry.
///
/// The numeric value fixes the variable order used by the graded-lex term
/// order: `s > u > v > lambda > mu > alpha > eta > c_1 > c_2 > ... > d_1 > ...`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Var(u16);

const C_BASE: u16 = 0x100;
const D_BASE: u16 = 0x200;
/// Largest index accepted for `c_k` / `d_k`.
pub const MAX_INDEXED: u16 = 0xff;

impl Var {
    pub const S: Var = Var(0);
    pub const U: Var = Var(1);
    pub const V: Var = Var(2);
    pub const LAMBDA: Var = Var(3);
    pub const MU: Var = Var(4);
    pub const ALPHA: Var = Var(5);
    pub const ETA: Var = Var(6);

    /// `c_k`, 1-based.
    pub fn c(k: usize) -> Var {
        assert!(k >= 1 && k <= MAX_INDEXED as usize, "c index out of range: {k}");
        Var(C_BASE + k as u16)
    }

    /// `d_k`, 1-based.
    pub fn d(k: usize) -> Var {
        assert!(k >= 1 && k <= MAX_INDEXED as usize, "d index out of range: {k}");
        Var(D_BASE + k as u16)
    }

    pub fn from_name(name: &str) -> Option<Var> {
        let v = match name {
            "s" => Var::S,
            "u" => Var::U,
            "v" => Var::V,
            "lambda" | "λ" | "la" => Var::LAMBDA,
            "mu" | "μ" => Var::MU,
            "alpha" | "α" | "al" => Var::ALPHA,
            "eta" | "η" => Var::ETA,
            _ => {
                let (base, rest) = if let Some(r) = name.strip_prefix('c') {
                    (C_BASE, r)
                } else {
                    let r = name.strip_prefix('d')?;
                    (D_BASE, r)
                };
                let digits = rest.strip_prefix('_').unwrap_or(rest);
                if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                    return None;
                }
                let k: u16 = digits.parse().ok()?;
                if k == 0 || k > MAX_INDEXED {
                    return None;
                }
                Var(base + k)
            }
        };
        Some(v)
    }

    /// Dense position in the registry: the seven named indeterminates
    /// first, then `c_k` and `d_k` interleaved.
    pub fn ordinal(self) -> usize {
        match self.0 {
            x if x < C_BASE => x as usize,
            x if x > D_BASE => 6 + 2 * (x - D_BASE) as usize,
            x => 5 + 2 * (x - C_BASE) as usize,
        }
    }

    pub fn name(self) -> String {
        match self.0 {
            0 => "s".into(),
            1 => "u".into(),
            2 => "v".into(),
            3 => "lambda".into(),
            4 => "mu".into(),
            5 => "alpha".into(),
            6 => "eta".into(),
            x if x > D_BASE => format!("d_{}", x - D_BASE),
            x => format!("c_{}", x - C_BASE),
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl TryFrom<String> for Var {
    type Error = String;

    fn try_from(value: String) -> Result<Self, Self::Error> {
        Var::from_name(&value).ok_or_else(|| format!("unknown indeterminate `{value}`"))
    }
}

impl From<Var> for String {
    fn from(v: Var) -> String {
        v.name()
    }
}
