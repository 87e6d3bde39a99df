//! Independent oracles: dense matrices over exact rationals, built directly
//! from the defining formulas without the crate's scalar or matrix types.

#![allow(dead_code)]

pub mod fixtures;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub fn r(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Q {
    r(n, 1)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Dense {
    pub n: usize,
    pub a: Vec<Vec<Q>>,
}

impl Dense {
    pub fn zero(n: usize) -> Dense {
        Dense { n, a: vec![vec![Q::zero(); n]; n] }
    }

    pub fn identity(n: usize) -> Dense {
        let mut m = Dense::zero(n);
        for i in 0..n {
            m.a[i][i] = Q::one();
        }
        m
    }

    /// 1-based entry update.
    pub fn add(&mut self, i: usize, j: usize, x: &Q) {
        self.a[i - 1][j - 1] += x;
    }

    pub fn mul(&self, o: &Dense) -> Dense {
        let n = self.n;
        let mut out = Dense::zero(n);
        for i in 0..n {
            for k in 0..n {
                if self.a[i][k].is_zero() {
                    continue;
                }
                for j in 0..n {
                    if !o.a[k][j].is_zero() {
                        out.a[i][j] += &self.a[i][k] * &o.a[k][j];
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, x: &Q) -> Dense {
        Dense { n: self.n, a: self.a.iter().map(|row| row.iter().map(|y| y * x).collect()).collect() }
    }

    pub fn plus(&self, o: &Dense) -> Dense {
        let mut out = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                out.a[i][j] += &o.a[i][j];
            }
        }
        out
    }

    pub fn kron(&self, o: &Dense) -> Dense {
        let (n, m) = (self.n, o.n);
        let mut out = Dense::zero(n * m);
        for i in 0..n {
            for j in 0..n {
                for k in 0..m {
                    for l in 0..m {
                        out.a[i * m + k][j * m + l] = &self.a[i][j] * &o.a[k][l];
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Dense {
        let mut out = Dense::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.a[j][i] = self.a[i][j].clone();
            }
        }
        out
    }
}

/// `E_ij ⊗ E_kl` index helper for `C^n ⊗ C^n`, 1-based.
fn pair(n: usize, i: usize, k: usize) -> usize {
    (i - 1) * n + (k - 1)
}

/// `R_q` directly from its definition.
pub fn rq(n: usize, q: &Q) -> Dense {
    let mut m = Dense::zero(n * n);
    for i in 1..=n {
        for j in 1..=n {
            m.a[pair(n, i, j)][pair(n, i, j)] = if i == j { q.clone() } else { Q::one() };
            if i < j {
                m.a[pair(n, i, j)][pair(n, j, i)] = q - q.recip();
            }
        }
    }
    m
}

pub fn flip(n: usize) -> Dense {
    let mut m = Dense::zero(n * n);
    for i in 1..=n {
        for j in 1..=n {
            m.a[pair(n, i, j)][pair(n, j, i)] = Q::one();
        }
    }
    m
}

/// `R(x)` with `q = -s^2`.
pub fn rmat(n: usize, s: &Q, x: &Q) -> Dense {
    let q = -(s * s);
    let fq = |qq: &Q, y: &Q| (qq - y / qq).recip();
    let p = flip(n);
    let a = rq(n, &q).scale(&fq(&q, x));
    let qi = q.recip();
    let b = p.mul(&rq(n, &qi)).mul(&p).scale(&fq(&qi, &x.recip()));
    a.plus(&b)
}

/// Partial transpose in the first factor.
pub fn t1(m: &Dense, n: usize) -> Dense {
    let mut out = Dense::zero(m.n);
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                for l in 1..=n {
                    out.a[pair(n, j, k)][pair(n, i, l)] = m.a[pair(n, i, k)][pair(n, j, l)].clone();
                }
            }
        }
    }
    out
}

/// `C = Σ s^{2i} E_{N+1-i, i}`.
pub fn cmat(n: usize, s: &Q) -> Dense {
    let mut c = Dense::zero(n);
    let s2 = s * s;
    let mut pw = Q::one();
    for i in 1..=n {
        pw *= &s2;
        c.a[n - i][i - 1] = pw.clone();
    }
    c
}

fn anti_inverse(c: &Dense) -> Dense {
    let n = c.n;
    let mut out = Dense::zero(n);
    for i in 0..n {
        for j in 0..n {
            if !c.a[i][j].is_zero() {
                out.a[j][i] = c.a[i][j].recip();
            }
        }
    }
    out
}

/// `R^∨(x) = C_2^{-1} R^{t1}(tq^2 / x) C_2`.
pub fn rcheck_dual(n: usize, s: &Q, x: &Q) -> Dense {
    let tq = num_traits::pow(s.clone(), n);
    let c = cmat(n, s);
    let id = Dense::identity(n);
    let c2 = id.kron(&c);
    let c2i = id.kron(&anti_inverse(&c));
    c2i.mul(&t1(&rmat(n, s, &(&tq * &tq / x)), n)).mul(&c2)
}

/// Both sides of `R21(u/v) K1(u) R(uv) K2(v) = K2(v) R21(uv) K1(u) R(u/v)`.
pub fn re_holds(n: usize, s: &Q, u: &Q, v: &Q, k: impl Fn(&Q) -> Dense) -> bool {
    let p = flip(n);
    let id = Dense::identity(n);
    let r21 = |x: &Q| p.mul(&rmat(n, s, x)).mul(&p);
    let (ku, kv) = (k(u).kron(&id), id.kron(&k(v)));
    let lhs = r21(&(u / v)).mul(&ku).mul(&rmat(n, s, &(u * v))).mul(&kv);
    let rhs = kv.mul(&r21(&(u * v))).mul(&ku).mul(&rmat(n, s, &(u / v)));
    lhs == rhs
}

/// The same identity with `R^∨` in the middle.
pub fn ctre_holds(n: usize, s: &Q, u: &Q, v: &Q, k: impl Fn(&Q) -> Dense) -> bool {
    let p = flip(n);
    let id = Dense::identity(n);
    let r21 = |x: &Q| p.mul(&rmat(n, s, x)).mul(&p);
    let rc = rcheck_dual(n, s, &(u * v));
    let (ku, kv) = (k(u).kron(&id), id.kron(&k(v)));
    let lhs = r21(&(u / v)).mul(&ku).mul(&rc).mul(&kv);
    let rhs = kv.mul(&p.mul(&rc).mul(&p)).mul(&ku).mul(&rmat(n, s, &(u / v)));
    lhs == rhs
}

/// `K^S` evaluated at rationals, from its defining formula.
pub fn ks_dense(n: usize, l: usize, rr: usize, u: &Q, lam: &Q, mu: &Q) -> Dense {
    let theta = (u - u.recip()) / ((lam * mu).recip() + u.recip());
    let chi = (lam - mu * u).recip();
    let mut k = Dense::identity(n);
    for i in 1..=l {
        k.add(i, i, &theta);
    }
    let tc = &theta * &chi;
    for i in l + 1..=rr {
        let s = n + l + 1 - i;
        k.add(i, i, &(&tc * lam));
        k.add(s, s, &(&tc / lam));
        k.add(i, s, &(-&tc));
        k.add(s, i, &(-&tc));
    }
    k
}

/// All involutions of `{1..n}` as image vectors.
pub fn all_involutions(n: usize) -> Vec<Vec<usize>> {
    fn rec(img: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        match img.iter().position(|&x| x == 0) {
            None => out.push(img.clone()),
            Some(i) => {
                img[i] = i + 1;
                rec(img, out);
                img[i] = 0;
                for j in i + 1..img.len() {
                    if img[j] == 0 {
                        img[i] = j + 1;
                        img[j] = i + 1;
                        rec(img, out);
                        img[i] = 0;
                        img[j] = 0;
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut vec![0; n], &mut out);
    out
}
