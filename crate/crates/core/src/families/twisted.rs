use serde::{Deserialize, Serialize};

use crate::linalg::Mat;
use crate::rmatrix::{build_c, build_j, tq, RBundle};
use crate::scalar::{q, s_pow, u, Scalar};
use crate::verify::{check_const_twisted, Mode};

use super::classes::{TwistedClass, TwistedKind};
use super::FamilyError;

fn bar(n: usize, i: usize) -> usize {
    n + 1 - i
}

/// `(1 + q) / (tq + sign·q·u)`.
fn onsager_coeff(n: usize, plus: bool) -> Scalar {
    let qq = q();
    let qu = qq.mul(&u());
    let den = if plus { tq(n).add(&qu) } else { tq(n).sub(&qu) };
    Scalar::one().add(&qq).mul(&den.inv().expect("tq + qu is nonzero"))
}

/// The canonical representative of a twisted class.
pub fn build_twisted(c: &TwistedClass) -> Mat {
    let ones = vec![Scalar::one(); c.n];
    let orbit = match c.kind {
        TwistedKind::QOnsager => TwistedOrbit::QOnsager { plus: true },
        TwistedKind::AntiDiag => TwistedOrbit::AntiDiag,
        TwistedKind::PairSwap => TwistedOrbit::PairSwapA,
        TwistedKind::HalfShift => TwistedOrbit::HalfShift { plus: true },
    };
    build_twisted_orbit(c.n, orbit, &ones, &Scalar::one()).expect("canonical parameters are valid")
}

/// The families of general twisted solutions. `PairSwapA` and `PairSwapB`
/// are the two orbit shapes that share the pair-swap label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "kebab-case")]
pub enum TwistedOrbit {
    QOnsager { plus: bool },
    AntiDiag,
    PairSwapA,
    PairSwapB,
    HalfShift { plus: bool },
}

impl TwistedOrbit {
    pub fn kind(self) -> TwistedKind {
        match self {
            TwistedOrbit::QOnsager { .. } => TwistedKind::QOnsager,
            TwistedOrbit::AntiDiag => TwistedKind::AntiDiag,
            TwistedOrbit::PairSwapA | TwistedOrbit::PairSwapB => TwistedKind::PairSwap,
            TwistedOrbit::HalfShift { .. } => TwistedKind::HalfShift,
        }
    }
}

/// A general member of a twisted orbit with parameters `c[i - 1] = c_i`
/// and overall scalar `g`.
pub fn build_twisted_orbit(n: usize, orbit: TwistedOrbit, c: &[Scalar], g: &Scalar) -> Result<Mat, FamilyError> {
    TwistedClass::new(n, orbit.kind())?;
    let need = match orbit {
        TwistedOrbit::QOnsager { .. } | TwistedOrbit::AntiDiag => n,
        _ => n / 2,
    };
    if c.len() < need {
        return Err(FamilyError::Invariant(format!("{need} parameters c_i are required, got {}", c.len())));
    }
    let ci = |i: usize| c[i - 1].clone();
    let uu = u();
    let half = n / 2;
    let mut entries: Vec<(usize, usize, Scalar)> = Vec::new();
    match orbit {
        TwistedOrbit::QOnsager { plus } => {
            let f = onsager_coeff(n, plus);
            let t = tq(n);
            for i in 1..=n {
                entries.push((i, bar(n, i), ci(bar(n, i)).mul(&ci(bar(n, i)))));
            }
            for i in 1..=n {
                for j in i + 1..=n {
                    let cc = ci(bar(n, i)).mul(&ci(bar(n, j))).mul(&f);
                    let upper = s_pow((j - i) as i32).mul(&uu);
                    let upper = if plus { upper } else { upper.neg() };
                    entries.push((i, bar(n, j), cc.mul(&upper)));
                    entries.push((j, bar(n, i), cc.mul(&s_pow(i as i32 - j as i32)).mul(&t)));
                }
            }
        }
        TwistedOrbit::AntiDiag => {
            for i in 1..=n {
                entries.push((i, bar(n, i), ci(bar(n, i))));
            }
        }
        TwistedOrbit::PairSwapA => {
            for i in 1..=half {
                entries.push((2 * i - 1, bar(n, 2 * i), ci(i)));
                entries.push((2 * i, bar(n, 2 * i) + 1, ci(i)));
            }
        }
        TwistedOrbit::PairSwapB => {
            entries.push((1, 1, ci(1).mul(&uu)));
            entries.push((n, n, ci(1).mul(&uu.inv()?)));
            for i in 2..=half {
                entries.push((2 * i - 1, bar(n, 2 * i) + 2, ci(i)));
                entries.push((2 * i - 2, bar(n, 2 * i) + 1, ci(i)));
            }
        }
        TwistedOrbit::HalfShift { plus } => {
            for i in 1..=half {
                let x = ci(i).mul(&uu);
                entries.push((i, bar(n, i) - half, if plus { x } else { x.neg() }));
                entries.push((i + half, bar(n, i), ci(i)));
            }
        }
    }
    Ok(Mat::from_entries(n, entries).scale(g))
}

/// `J = Σ E_{i ī}` and `L = Σ_{i<j} (1 + q) s^{i-j} E_{j ī}`, whose sum solves
/// the constant twisted equation.
pub fn onsager_const_parts(n: usize) -> (Mat, Mat) {
    let gap = Scalar::one().add(&q());
    let mut l = Mat::zero(n);
    for i in 1..=n {
        for j in i + 1..=n {
            l.set(j, bar(n, i), gap.mul(&s_pow(i as i32 - j as i32)));
        }
    }
    (build_j(n), l)
}

/// `G = Σ_{i<=N/2} E_{i+N/2, ī}`.
pub fn half_shift_g(n: usize) -> Result<Mat, FamilyError> {
    if n % 2 == 1 {
        return Err(FamilyError::Parity { kind: "half-shift", n });
    }
    Ok(Mat::from_entries(n, (1..=n / 2).map(|i| (i + n / 2, bar(n, i), Scalar::one()))))
}

/// Builds a spectral solution of the twisted equation from a constant one.
///
/// A support reaching strictly above the antidiagonal is returned as it is.
/// A support on or below the antidiagonal is split as `G = J + L`
/// (antidiagonal part plus the rest) and mapped to
/// `(1 + q u / tq) J + L + (u / tq) C^{-1} L^t C^t`.
pub fn affinize_twisted_const(g: &Mat, bundle: &RBundle) -> Result<Mat, FamilyError> {
    let n = bundle.n;
    if g.dim() != n {
        return Err(FamilyError::Invariant(format!("G must be {n}x{n}, got {}x{}", g.dim(), g.dim())));
    }
    let report = check_const_twisted(g, bundle, Mode::Symbolic).map_err(|e| FamilyError::NotConstSolution(e.to_string()))?;
    if !report.pass {
        return Err(FamilyError::NotConstSolution(report.to_string()));
    }
    if g.entries().any(|(i, j, _)| i + j < n + 1) {
        return Ok(g.clone());
    }
    let j = Mat::from_entries(n, g.entries().filter(|(i, j, _)| i + j == n + 1).map(|(i, j, x)| (i, j, x.clone())));
    let l = g.sub(&j);
    let t_inv = tq(n).inv()?;
    let c = build_c(n);
    let c_inv = c.inverse()?;
    let shifted = Mat::product([&c_inv, &l.t(), &c.t()]).scale(&u().mul(&t_inv));
    let lead = Scalar::one().add(&q().mul(&u()).mul(&t_inv));
    Ok(j.scale(&lead).add(&l).add(&shifted))
}
