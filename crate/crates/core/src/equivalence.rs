//! Solution-preserving moves and the cross-conjugation bridge between the
//! twisted equation and its C-conjugated form.
//!
//! Every move maps a solution of a reflection equation to another solution
//! of the same equation. The flavor selects which equation is preserved,
//! since conjugation and dualization act differently on the two.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::linalg::{LinalgError, Mat};
use crate::rmatrix::{build_c, build_zrho, invert_s, tq};
use crate::scalar::{parse_scalar, s_pow, u, Bindings, Scalar, ScalarError, Var};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EquivError {
    #[error("scale factor must be nonzero")]
    ZeroScale,
    #[error("conjugator Z(eta/u) is singular")]
    SingularConjugator,
    #[error("bad conjugator `{text}`: {reason}")]
    BadConjugator { text: String, reason: String },
    #[error("matrix has dimension {got}, conjugator has dimension {expected}")]
    Dimension { got: usize, expected: usize },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Which reflection equation a move must preserve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Re,
    Ctre,
}

impl Flavor {
    pub fn label(self) -> &'static str {
        match self {
            Flavor::Re => "re",
            Flavor::Ctre => "ctre",
        }
    }
}

impl FromStr for Flavor {
    type Err = String;
    fn from_str(s: &str) -> Result<Flavor, String> {
        match s {
            "re" => Ok(Flavor::Re),
            "ctre" => Ok(Flavor::Ctre),
            _ => Err(format!("unknown flavor `{s}` (expected re or ctre)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum ZFactor {
    Rho(u32),
    Diag(Vec<Scalar>),
    DiagSymbolic,
}

/// A symmetry `Z(u)` of `R`, written as a product of generators:
/// `zrho`, `zrho^k`, `diag` (symbolic `d_i`), `diag(x1, ..., xN)`, or `id`,
/// joined by `*`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZSpec {
    text: String,
    factors: Vec<ZFactor>,
}

impl ZSpec {
    pub fn parse(text: &str) -> Result<ZSpec, EquivError> {
        let bad = |reason: String| EquivError::BadConjugator { text: text.to_string(), reason };
        let mut factors = Vec::new();
        for part in split_top_level(text) {
            let part = part.trim();
            if part == "id" {
                continue;
            }
            if part == "diag" {
                factors.push(ZFactor::DiagSymbolic);
            } else if let Some(body) = part.strip_prefix("diag(").and_then(|b| b.strip_suffix(')')) {
                let mut xs = Vec::new();
                for piece in body.split(',') {
                    let x = parse_scalar(piece.trim()).map_err(|e| bad(e.to_string()))?;
                    if x.is_zero() {
                        return Err(EquivError::SingularConjugator);
                    }
                    if x.contains_var(Var::U) || x.contains_var(Var::V) {
                        return Err(bad("diagonal entries must be constant".into()));
                    }
                    xs.push(x);
                }
                factors.push(ZFactor::Diag(xs));
            } else if let Some(rest) = part.strip_prefix("zrho") {
                let k = match rest.trim() {
                    "" => 1,
                    r => r
                        .strip_prefix('^')
                        .and_then(|e| e.trim().parse::<u32>().ok())
                        .ok_or_else(|| bad(format!("cannot read power in `{part}`")))?,
                };
                factors.push(ZFactor::Rho(k));
            } else {
                return Err(bad(format!("unknown generator `{part}`")));
            }
        }
        Ok(ZSpec { text: text.trim().to_string(), factors })
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    /// `Z(u)` on `C^N`.
    pub fn build(&self, n: usize) -> Result<Mat, EquivError> {
        let mut z = Mat::identity(n);
        for f in &self.factors {
            let m = match f {
                ZFactor::Rho(k) => build_zrho(n).pow(*k),
                ZFactor::DiagSymbolic => Mat::diag(&(1..=n).map(|i| Scalar::var(Var::d(i))).collect::<Vec<_>>()),
                ZFactor::Diag(xs) => {
                    if xs.len() != n {
                        return Err(EquivError::Dimension { got: n, expected: xs.len() });
                    }
                    Mat::diag(xs)
                }
            };
            z = z.mul(&m);
        }
        Ok(z)
    }
}

fn split_top_level(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '*' if depth == 0 => {
                out.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}

impl fmt::Display for ZSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

impl Serialize for ZSpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.text)
    }
}

impl<'de> Deserialize<'de> for ZSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<ZSpec, D::Error> {
        let text = String::deserialize(d)?;
        ZSpec::parse(&text).map_err(serde::de::Error::custom)
    }
}

mod scalar_text {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::scalar::{parse_scalar, Scalar};

    pub fn serialize<S: Serializer>(x: &Scalar, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Scalar, D::Error> {
        let text = String::deserialize(d)?;
        parse_scalar(&text).map_err(serde::de::Error::custom)
    }
}

fn default_eta() -> Scalar {
    Scalar::var(Var::ETA)
}

/// One solution-preserving transformation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "lowercase")]
pub enum EquivMove {
    /// `u -> -u`.
    Negate,
    /// `K(u) -> g(u) K(u)`.
    Scale {
        #[serde(with = "scalar_text")]
        g: Scalar,
    },
    /// `K(u) -> φ(Z(η/u)) K(u) Z(ηu)`, with `φ` the inverse for the
    /// untwisted flavor and the transposition `w` for the twisted one.
    Conjugate {
        z: ZSpec,
        #[serde(with = "scalar_text", default = "default_eta")]
        eta: Scalar,
        flavor: Flavor,
    },
    /// `K -> K^t` (untwisted) or `K -> K(1/u)^w` with `s -> 1/s` (twisted).
    Dualize { flavor: Flavor },
}

impl fmt::Display for EquivMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EquivMove::Negate => f.write_str("negate"),
            EquivMove::Scale { g } => write!(f, "scale by {g}"),
            EquivMove::Conjugate { z, eta, flavor } => write!(f, "conjugate by {z} at eta={eta} ({})", flavor.label()),
            EquivMove::Dualize { flavor } => write!(f, "dualize ({})", flavor.label()),
        }
    }
}

fn subst_u(m: &Mat, x: Scalar) -> Result<Mat, ScalarError> {
    m.subst(&Bindings::new().with(Var::U, x))
}

pub fn apply_move(k: &Mat, m: &EquivMove) -> Result<Mat, EquivError> {
    match m {
        EquivMove::Negate => Ok(subst_u(k, u().neg())?),
        EquivMove::Scale { g } => {
            if g.is_zero() {
                return Err(EquivError::ZeroScale);
            }
            Ok(k.scale(g))
        }
        EquivMove::Conjugate { z, eta, flavor } => {
            let zu = z.build(k.dim())?;
            let left = subst_u(&zu, eta.checked_div(&u())?)?;
            let right = subst_u(&zu, eta.mul(&u()))?;
            let left = match flavor {
                Flavor::Re => left.inverse().map_err(|e| match e {
                    LinalgError::Singular { .. } => EquivError::SingularConjugator,
                    other => other.into(),
                })?,
                Flavor::Ctre => left.w(),
            };
            Ok(Mat::product([&left, k, &right]))
        }
        EquivMove::Dualize { flavor: Flavor::Re } => Ok(k.t()),
        EquivMove::Dualize { flavor: Flavor::Ctre } => {
            let flipped = subst_u(k, u().inv()?)?.w();
            Ok(invert_s(&flipped))
        }
    }
}

pub fn apply_moves(k: &Mat, moves: &[EquivMove]) -> Result<Mat, EquivError> {
    moves.iter().try_fold(k.clone(), |acc, m| apply_move(&acc, m))
}

/// `K(u) = C^{-1} K̃(u / tq)`.
pub fn cross_conjugate(kt: &Mat) -> Result<Mat, EquivError> {
    let n = kt.dim();
    let c_inv = build_c(n).inverse()?;
    let shifted = subst_u(kt, u().mul(&s_pow(-(n as i32))))?;
    Ok(c_inv.mul(&shifted))
}

/// `K̃(u) = C K(tq u)`.
pub fn cross_conjugate_inv(k: &Mat) -> Result<Mat, EquivError> {
    let n = k.dim();
    let shifted = subst_u(k, u().mul(&tq(n)))?;
    Ok(build_c(n).mul(&shifted))
}

/// Result of a random walk through the orbit of a solution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitProbe {
    pub seed: u64,
    pub moves: Vec<EquivMove>,
    #[serde(skip)]
    pub matrix: Option<Mat>,
}

fn random_move(rng: &mut ChaCha8Rng, n: usize, flavor: Flavor) -> EquivMove {
    const SCALES: [&str; 6] = ["2", "-3", "u", "1/u", "u^2 + 1", "5/7"];
    const ETAS: [&str; 4] = ["1", "2", "-1/3", "eta"];
    match rng.gen_range(0..4) {
        0 => EquivMove::Negate,
        1 => EquivMove::Scale { g: parse_scalar(SCALES[rng.gen_range(0..SCALES.len())]).expect("fixed text") },
        2 => {
            let k = rng.gen_range(0..n as u32);
            let mut text = if k == 0 { "id".to_string() } else { format!("zrho^{k}") };
            if rng.gen_bool(0.5) {
                let ds: Vec<String> = (0..n)
                    .map(|_| {
                        let x: i64 = rng.gen_range(1..=4);
                        if rng.gen_bool(0.5) { (-x).to_string() } else { x.to_string() }
                    })
                    .collect();
                text = format!("{text}*diag({})", ds.join(","));
            }
            EquivMove::Conjugate {
                z: ZSpec::parse(&text).expect("generated text parses"),
                eta: parse_scalar(ETAS[rng.gen_range(0..ETAS.len())]).expect("fixed text"),
                flavor,
            }
        }
        _ => EquivMove::Dualize { flavor },
    }
}

/// Applies `depth` moves drawn from a ChaCha8 stream seeded with `seed`.
pub fn random_orbit_probe(k: &Mat, flavor: Flavor, depth: usize, seed: u64) -> Result<OrbitProbe, EquivError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let moves: Vec<EquivMove> = (0..depth).map(|_| random_move(&mut rng, k.dim(), flavor)).collect();
    let matrix = apply_moves(k, &moves)?;
    Ok(OrbitProbe { seed, moves, matrix: Some(matrix) })
}
