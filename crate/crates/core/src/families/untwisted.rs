use std::collections::BTreeMap;

use crate::linalg::Mat;
use crate::scalar::{u, Scalar, Var};

use super::classes::{ClassLabel, Involution, SymClass, TriClass};
use super::{build_twisted, FamilyError};

fn lam() -> Scalar {
    Scalar::var(Var::LAMBDA)
}

fn mu() -> Scalar {
    Scalar::var(Var::MU)
}

fn alpha() -> Scalar {
    Scalar::var(Var::ALPHA)
}

fn inv(x: &Scalar) -> Scalar {
    x.inv().expect("parameter is a nonzero indeterminate expression")
}

/// `u - u^{-1}`.
fn u_gap() -> Scalar {
    u().sub(&inv(&u()))
}

/// `θ = (u - u^{-1}) / (λ^{-1} μ^{-1} + u^{-1})`.
fn theta() -> Scalar {
    let den = inv(&lam().mul(&mu())).add(&inv(&u()));
    u_gap().mul(&inv(&den))
}

/// `χ = 1 / (λ - μ u)`.
fn chi() -> Scalar {
    inv(&lam().sub(&mu().mul(&u())))
}

/// The symmetric solution `K^S` for the label `(l, r)`.
pub fn build_ks(c: &SymClass) -> Mat {
    let n = c.n;
    let sigma = c.sigma();
    let (th, ch, la) = (theta(), chi(), lam());
    let th_ch = th.mul(&ch);
    let mut k = Mat::identity(n);
    for i in 1..=c.l {
        k.add_to(i, i, &th);
    }
    for i in c.l + 1..=c.r {
        let s = sigma.apply(i);
        k.add_to(i, i, &th_ch.mul(&la));
        k.add_to(s, s, &th_ch.mul(&inv(&la)));
        k.add_to(i, s, &th_ch.neg());
        k.add_to(s, i, &th_ch.neg());
    }
    k
}

/// The symmetric solution at `λ = μ = 1`, rescaled to polynomial form:
/// `Σ_{i<=l} u E_ii + Σ_{l<i<=r} (E_{iσ(i)} + E_{σ(i)i}) + Σ_{r<i<=N+l-r} E_ii`.
pub fn build_kp(c: &SymClass) -> Mat {
    let n = c.n;
    let sigma = c.sigma();
    let mut k = Mat::zero(n);
    for i in 1..=c.l {
        k.set(i, i, u());
    }
    for i in c.l + 1..=c.r {
        let s = sigma.apply(i);
        k.set(i, s, Scalar::one());
        k.set(s, i, Scalar::one());
    }
    for i in c.r + 1..=n + c.l - c.r {
        k.set(i, i, Scalar::one());
    }
    k
}

/// `Q` for a triangular label.
fn tri_q(c: &TriClass) -> Mat {
    Mat::from_entries(c.n, c.q_positions().into_iter().map(|(i, j)| (i, j, Scalar::one())))
}

/// The triangular solution `K^T = I + (u - u^{-1})/(α - u) Q`.
pub fn build_kt(c: &TriClass) -> Mat {
    let coeff = u_gap().mul(&inv(&alpha().sub(&u())));
    Mat::identity(c.n).add(&tri_q(c).scale(&coeff))
}

/// The non-invertible solution `Σ_{m<i<=N} (ε_{iσ(i)} E_{iσ(i)} + ε_{σ(i)i} E_{σ(i)i})`.
pub fn build_noninvertible_tri(c: &TriClass) -> Mat {
    let positions = c.q_positions().into_iter().filter(|(i, j)| i != j);
    Mat::from_entries(c.n, positions.map(|(i, j)| (i, j, Scalar::one())))
}

/// The closed-form solution attached to any class label.
pub fn build_solution(label: &ClassLabel) -> Mat {
    match label {
        ClassLabel::Sym(c) => build_ks(c),
        ClassLabel::Tri(c) => build_kt(c),
        ClassLabel::Twisted(c) => build_twisted(c),
    }
}

/// The constant pair `(G, Q)` behind a symmetric label.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstPair {
    pub n: usize,
    pub l: usize,
    pub g: Mat,
    pub q: Mat,
}

pub fn build_const_gq(c: &SymClass) -> ConstPair {
    let n = c.n;
    let sigma = c.sigma();
    let la = lam();
    let mut g = Mat::zero(n);
    for i in c.r + 1..sigma.apply(c.r) {
        g.set(i, i, la.clone());
    }
    for i in c.l + 1..=c.r {
        let s = sigma.apply(i);
        g.set(i, s, Scalar::one());
        g.set(s, i, Scalar::one());
        g.set(s, s, la.sub(&inv(&la)));
    }
    let q = Mat::from_entries(n, (1..=c.l).map(|i| (i, i, Scalar::one())));
    ConstPair { n, l: c.l, g, q }
}

/// Builds the spectral solution
/// `I + (u - u^{-1}) / ((λ^{-1}μ^{-1} + u^{-1})(λ - μu)) (λI - μuQ - G)`
/// from a constant pair. `Q` must be idempotent and annihilate `G` on both sides.
pub fn affinize_sym(p: &ConstPair) -> Result<Mat, FamilyError> {
    let n = p.g.dim();
    if p.q.dim() != n {
        return Err(FamilyError::Invariant(format!("G is {n}x{n} but Q is {}x{}", p.q.dim(), p.q.dim())));
    }
    if p.q.mul(&p.q) != p.q {
        return Err(FamilyError::Invariant("Q^2 = Q".into()));
    }
    if !p.g.mul(&p.q).is_zero() || !p.q.mul(&p.g).is_zero() {
        return Err(FamilyError::Invariant("GQ = QG = 0".into()));
    }
    let coeff = theta().mul(&chi());
    let body = Mat::identity(n).scale(&lam()).sub(&p.q.scale(&mu().mul(&u()))).sub(&p.g);
    Ok(Mat::identity(n).add(&body.scale(&coeff)))
}

/// `I + (u - u^{-1})/(α - u) Q` for an idempotent `Q`.
pub fn affinize_tri(q: &Mat) -> Result<Mat, FamilyError> {
    if q.mul(q) != *q {
        return Err(FamilyError::Invariant("Q^2 = Q".into()));
    }
    let coeff = u_gap().mul(&inv(&alpha().sub(&u())));
    Ok(Mat::identity(q.dim()).add(&q.scale(&coeff)))
}

fn c_at(c: &[Scalar], i: usize) -> Result<Scalar, FamilyError> {
    c.get(i - 1).cloned().ok_or_else(|| FamilyError::Invariant(format!("no value supplied for c_{i}")))
}

/// `(l, r, t)` with `0 <= l < r <= (l + t)/2` and `2 <= t <= N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ks1Class {
    pub n: usize,
    pub l: usize,
    pub r: usize,
    pub t: usize,
}

impl Ks1Class {
    pub fn new(n: usize, l: usize, r: usize, t: usize) -> Result<Ks1Class, FamilyError> {
        if !(2..=n).contains(&t) {
            return Err(FamilyError::InvalidClass(format!("2 <= t <= N violated (t = {t}, N = {n})")));
        }
        if l >= r {
            return Err(FamilyError::InvalidClass(format!("l < r violated (l = {l}, r = {r})")));
        }
        if 2 * r > l + t {
            return Err(FamilyError::InvalidClass(format!("r <= (l + t)/2 violated (l = {l}, r = {r}, t = {t})")));
        }
        Ok(Ks1Class { n, l, r, t })
    }

    pub fn sigma(&self, i: usize) -> usize {
        self.t + self.l + 1 - i
    }
}

/// The general member
/// `g (I + θ(Σ_{i<=l} E_ii - (λμu)^{-1} Σ_{t<i} E_ii + χ Σ_{l<i<=r} (λE_ii + λ^{-1}E_σσ - c_i E_iσ - c_i^{-1} E_σi)))`.
///
/// `c[i - 1]` holds `c_i`.
pub fn build_ks1(k: &Ks1Class, c: &[Scalar], g: &Scalar) -> Result<Mat, FamilyError> {
    let (th, ch, la) = (theta(), chi(), lam());
    let th_ch = th.mul(&ch);
    let mut m = Mat::identity(k.n);
    for i in 1..=k.l {
        m.add_to(i, i, &th);
    }
    let tail = th.mul(&inv(&la.mul(&mu()).mul(&u()))).neg();
    for i in k.t + 1..=k.n {
        m.add_to(i, i, &tail);
    }
    for i in k.l + 1..=k.r {
        let s = k.sigma(i);
        let ci = c_at(c, i)?;
        m.add_to(i, i, &th_ch.mul(&la));
        m.add_to(s, s, &th_ch.mul(&inv(&la)));
        m.add_to(i, s, &th_ch.mul(&ci).neg());
        m.add_to(s, i, &th_ch.mul(&ci.inv()?).neg());
    }
    Ok(m.scale(g))
}

/// `(l, m, r)` with `2 <= 2l < m < r <= (m + N)/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ks2Class {
    pub n: usize,
    pub l: usize,
    pub m: usize,
    pub r: usize,
}

impl Ks2Class {
    pub fn new(n: usize, l: usize, m: usize, r: usize) -> Result<Ks2Class, FamilyError> {
        if l < 1 {
            return Err(FamilyError::InvalidClass(format!("2 <= 2l violated (l = {l})")));
        }
        if 2 * l >= m {
            return Err(FamilyError::InvalidClass(format!("2l < m violated (l = {l}, m = {m})")));
        }
        if m >= r {
            return Err(FamilyError::InvalidClass(format!("m < r violated (m = {m}, r = {r})")));
        }
        if 2 * r > m + n {
            return Err(FamilyError::InvalidClass(format!("r <= (m + N)/2 violated (m = {m}, r = {r}, N = {n})")));
        }
        Ok(Ks2Class { n, l, m, r })
    }

    pub fn sigma(&self, i: usize) -> usize {
        if i <= self.m {
            self.m + 1 - i
        } else {
            self.n + self.m + 1 - i
        }
    }
}

/// The second general symmetric member; `c[i - 1]` holds `c_i`.
pub fn build_ks2(k: &Ks2Class, c: &[Scalar], g: &Scalar) -> Result<Mat, FamilyError> {
    let (th, ch, la, mm) = (theta(), chi(), lam(), mu());
    let th_ch = th.mul(&ch);
    let mut m = Mat::identity(k.n);
    for i in 1..=k.l {
        m.add_to(i, i, &th);
    }
    for i in k.l + 1..=k.m - k.l {
        m.add_to(i, i, &th);
    }
    let uu = u();
    for i in 1..=k.l {
        let s = k.sigma(i);
        let ci = c_at(c, i)?;
        m.add_to(i, i, &th_ch.mul(&uu).mul(&inv(&mm)));
        m.add_to(s, s, &th_ch.mul(&la));
        m.add_to(i, s, &th_ch.mul(&ci).mul(&uu).neg());
        m.add_to(s, i, &th_ch.mul(&ci.inv()?).mul(&uu).neg());
    }
    for i in k.m + 1..=k.r {
        let s = k.sigma(i);
        let ci = c_at(c, i)?;
        m.add_to(i, i, &th_ch.mul(&la));
        m.add_to(s, s, &th_ch.mul(&inv(&la)));
        m.add_to(i, s, &th_ch.mul(&ci).neg());
        m.add_to(s, i, &th_ch.mul(&ci.inv()?).neg());
    }
    Ok(m.scale(g))
}

/// `(l, m, r, σ)` with `0 <= l <= m <= r <= N`, where `σ` pairs points of
/// `(l, m]` with points of `[1, l]` and points of `(m, r]` with points of
/// `(r, N]`, in order-reversing fashion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Kt1Class {
    pub n: usize,
    pub l: usize,
    pub m: usize,
    pub r: usize,
    pub sigma: Involution,
}

impl Kt1Class {
    pub fn new(n: usize, l: usize, m: usize, r: usize, sigma: Involution) -> Result<Kt1Class, FamilyError> {
        if !(l <= m && m <= r && r <= n) {
            return Err(FamilyError::InvalidClass(format!(
                "0 <= l <= m <= r <= N violated (l = {l}, m = {m}, r = {r}, N = {n})"
            )));
        }
        if sigma.n() != n {
            return Err(FamilyError::InvalidClass(format!("sigma acts on {} points, N = {n}", sigma.n())));
        }
        let check = |lo: usize, hi: usize, tlo: usize, thi: usize, what: &str| -> Result<(), FamilyError> {
            let moved: Vec<usize> = (lo + 1..=hi).filter(|&i| sigma.apply(i) != i).collect();
            for &i in &moved {
                let s = sigma.apply(i);
                if !(tlo < s && s <= thi) {
                    return Err(FamilyError::InvalidClass(format!("{what} violated at i = {i}")));
                }
            }
            for w in moved.windows(2) {
                if sigma.apply(w[1]) > sigma.apply(w[0]) {
                    return Err(FamilyError::InvalidClass(format!("{what} violated at i = {}, j = {}", w[0], w[1])));
                }
            }
            Ok(())
        };
        check(l, m, 0, l, "0 < sigma(j) <= sigma(i) <= l")?;
        check(m, r, r, n, "r < sigma(j) <= sigma(i) <= N")?;
        for i in (1..=l).chain(r + 1..=n) {
            let s = sigma.apply(i);
            if s != i && !(l < s && s <= r) {
                return Err(FamilyError::InvalidClass(format!("sigma({i}) = {s} leaves the allowed blocks")));
            }
        }
        Ok(Kt1Class { n, l, m, r, sigma })
    }
}

/// The general triangular member. `coeffs` maps `(i, σ(i))` or `(σ(i), i)`
/// to its coefficient; at most one orientation per 2-cycle may be nonzero.
pub fn build_kt1(k: &Kt1Class, coeffs: &BTreeMap<(usize, usize), Scalar>, g: &Scalar) -> Result<Mat, FamilyError> {
    for (&(a, b), x) in coeffs {
        if a == b || k.sigma.apply(a) != b {
            return Err(FamilyError::Invariant(format!("coefficient c_({a},{b}) is not on a 2-cycle of sigma")));
        }
        if !x.is_zero() && a < b && coeffs.get(&(b, a)).is_some_and(|y| !y.is_zero()) {
            return Err(FamilyError::Invariant(format!("c_({a},{b}) c_({b},{a}) = 0")));
        }
    }
    let uu = u();
    let al = alpha();
    let den = inv(&al.mul(&uu).sub(&Scalar::one()));
    let mid = al.sub(&uu).mul(&den);
    let off = u_gap().mul(&den);
    let mut m = Mat::zero(k.n);
    for i in 1..=k.n {
        let d = if i <= k.l {
            uu.clone()
        } else if i <= k.r {
            mid.clone()
        } else {
            inv(&uu)
        };
        m.set(i, i, d);
    }
    for i in k.l + 1..=k.r {
        let s = k.sigma.apply(i);
        if s == i {
            continue;
        }
        let f = if i <= k.m { off.mul(&uu) } else { off.clone() };
        for pos in [(i, s), (s, i)] {
            if let Some(x) = coeffs.get(&pos) {
                m.add_to(pos.0, pos.1, &f.mul(x));
            }
        }
    }
    Ok(m.scale(g))
}
