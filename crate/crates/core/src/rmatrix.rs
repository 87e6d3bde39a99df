//! The trigonometric R-matrix of type `A^(1)_{N-1}` and the objects derived
//! from it: the flip `P`, the constant matrix `R_q`, the braided form
//! `Ř = P R`, the charge conjugation `C`, and the C-conjugated matrix `R^∨`.
//!
//! Every entry lives in the field generated by `s` and `u`, with
//! `q = -s^2` and `tq = (-q)^{N/2} = s^N`.

use crate::linalg::{flip, Mat, Mismatch};
use crate::scalar::{q, s_pow, u, v, Bindings, Point, Scalar, ScalarError, Var};

/// `f_q(x) = 1 / (q - q^{-1} x)` for an arbitrary value of `q`.
fn f(qq: &Scalar, x: &Scalar) -> Scalar {
    let q_inv = qq.inv().expect("q is invertible");
    qq.sub(&q_inv.mul(x)).inv().expect("q - x/q is nonzero")
}

/// `R_q = Σ q^{δij} E_ii ⊗ E_jj + Σ_{i<j} (q - q^{-1}) E_ij ⊗ E_ji`.
pub fn build_rq(n: usize, qq: &Scalar) -> Mat {
    let mut m = Mat::zero(n * n);
    let gap = qq.sub(&qq.inv().expect("q is invertible"));
    for i in 1..=n {
        for j in 1..=n {
            let d = (i - 1) * n + j;
            m.set(d, d, if i == j { qq.clone() } else { Scalar::one() });
            if i < j {
                m.set((i - 1) * n + j, (j - 1) * n + i, gap.clone());
            }
        }
    }
    m
}

/// `R(x) = f_q(x) R_q + f_{q^{-1}}(x^{-1}) P R_{q^{-1}} P`.
pub fn build_r_at(n: usize, x: &Scalar) -> Mat {
    let qq = q();
    let q_inv = qq.inv().expect("q is invertible");
    let x_inv = x.inv().expect("spectral parameter is nonzero");
    let a = build_rq(n, &qq).scale(&f(&qq, x));
    let b = build_rq(n, &q_inv).swap_factors(n).scale(&f(&q_inv, &x_inv));
    a.add(&b)
}

/// `C = Σ (-q)^i E_{ī i}`, i.e. `s^{2i}` on the antidiagonal.
pub fn build_c(n: usize) -> Mat {
    Mat::from_entries(n, (1..=n).map(|i| (n + 1 - i, i, s_pow(2 * i as i32))))
}

/// `Z^ρ(u) = Σ_{i<N} E_{i,i+1} + u E_{N1}`.
pub fn build_zrho(n: usize) -> Mat {
    let mut z = Mat::zero(n);
    for i in 1..n {
        z.set(i, i + 1, Scalar::one());
    }
    z.set(n, 1, u());
    z
}

/// The antidiagonal matrix `J = Σ E_{i ī}`.
pub fn build_j(n: usize) -> Mat {
    Mat::from_entries(n, (1..=n).map(|i| (i, n + 1 - i, Scalar::one())))
}

/// `tq = (-q)^{N/2} = s^N`.
pub fn tq(n: usize) -> Scalar {
    s_pow(n as i32)
}

/// All R-type objects for a fixed `N`, symbolic in `s` and `u`.
///
/// The derived members are computed from `r`, so a bundle built with
/// [`RBundle::from_r`] around a modified `R` stays self-consistent.
#[derive(Debug, Clone)]
pub struct RBundle {
    pub n: usize,
    pub p: Mat,
    pub rq: Mat,
    pub r: Mat,
    pub r_check: Mat,
    pub c: Mat,
    pub c_inv: Mat,
    pub rc: Mat,
    pub rc_check: Mat,
    pub rc_q: Mat,
}

impl RBundle {
    pub fn new(n: usize) -> RBundle {
        assert!(n >= 2, "N must be at least 2");
        RBundle::from_r(n, build_r_at(n, &u()))
    }

    /// Bundle around an arbitrary `R(u)`; used to probe the checkers.
    pub fn from_r(n: usize, r: Mat) -> RBundle {
        assert_eq!(r.dim(), n * n, "R must act on two factors");
        let p = flip(n);
        let rq = build_rq(n, &q());
        let c = build_c(n);
        let c_inv = c.inverse().expect("C is invertible");
        let mut b = RBundle {
            n,
            r_check: p.mul(&r),
            rc_q: Mat::zero(n * n),
            rc: Mat::zero(n * n),
            rc_check: Mat::zero(n * n),
            p,
            rq,
            r,
            c,
            c_inv,
        };
        b.rc = b.rc_from(&b.r, &u());
        b.rc_check = b.p.mul(&b.rc);
        b.rc_q = b.conj_c2(&b.rq.t1(n));
        b
    }

    fn c2(&self) -> Mat {
        Mat::identity(self.n).kron(&self.c)
    }

    fn c2_inv(&self) -> Mat {
        Mat::identity(self.n).kron(&self.c_inv)
    }

    /// `C_2^{-1} M C_2`.
    fn conj_c2(&self, m: &Mat) -> Mat {
        Mat::product([&self.c2_inv(), m, &self.c2()])
    }

    /// `C_2^{-1} R^{t1}(tq^2 / x) C_2` computed from the given `R(u)`.
    fn rc_from(&self, r: &Mat, x: &Scalar) -> Mat {
        let arg = tq(self.n).pow(2).expect("s is invertible").checked_div(x).expect("x is nonzero");
        let shifted = r.subst(&Bindings::new().with(Var::U, arg)).expect("R has no pole at tq^2/x");
        self.conj_c2(&shifted.t1(self.n))
    }

    /// Identity matrix on two factors.
    pub fn id2(&self) -> Mat {
        Mat::identity(self.n * self.n)
    }

    /// `R(x)` by substitution into the stored `R(u)`.
    pub fn r_at(&self, x: &Scalar) -> Mat {
        subst_u(&self.r, x)
    }

    /// `R_21(x) = P R(x) P`.
    pub fn r21_at(&self, x: &Scalar) -> Mat {
        self.r_at(x).swap_factors(self.n)
    }

    pub fn r_check_at(&self, x: &Scalar) -> Mat {
        subst_u(&self.r_check, x)
    }

    pub fn rc_at(&self, x: &Scalar) -> Mat {
        subst_u(&self.rc, x)
    }

    pub fn rc21_at(&self, x: &Scalar) -> Mat {
        self.rc_at(x).swap_factors(self.n)
    }

    pub fn rc_check_at(&self, x: &Scalar) -> Mat {
        subst_u(&self.rc_check, x)
    }

    /// `R^{t1}(x)`.
    pub fn r_t1_at(&self, x: &Scalar) -> Mat {
        self.r_at(x).t1(self.n)
    }

    /// Rational value of `R(x)` with `s` and `x` given.
    pub fn r_eval(&self, s: &Point, x: &num_rational::BigRational) -> Result<Mat, ScalarError> {
        self.r.eval(&point_with_u(s, x))
    }

    pub fn rc_eval(&self, s: &Point, x: &num_rational::BigRational) -> Result<Mat, ScalarError> {
        self.rc.eval(&point_with_u(s, x))
    }

    /// `Ř_q = P R_q`.
    pub fn rq_check(&self) -> Mat {
        self.p.mul(&self.rq)
    }

    /// `Ř^∨_q = P R^∨_q`.
    pub fn rc_q_check(&self) -> Mat {
        self.p.mul(&self.rc_q)
    }

    /// `J_1 J_2 R(u) J_1^{-1} J_2^{-1} = R_21(u) = R^t(u)` for a generic
    /// invertible antidiagonal `J = Σ d_i E_{i ī}`.
    pub fn check_r21(&self) -> Result<(), Mismatch> {
        let n = self.n;
        let j = Mat::from_entries(n, (1..=n).map(|i| (i, n + 1 - i, Scalar::var(Var::d(i)))));
        let jj = j.kron(&j);
        let jj_inv = jj.inverse().expect("J is invertible");
        let conj = Mat::product([&jj, &self.r, &jj_inv]);
        let r21 = self.r.swap_factors(n);
        conj.compare(&r21)?;
        r21.compare(&self.r.t())
    }

    /// `R(u^{-1})|_{q -> q^{-1}} = R_21(u)`.
    pub fn check_rbar(&self) -> Result<(), Mismatch> {
        let lhs = invert_s(&self.r_at(&inv_u()));
        lhs.compare(&self.r.swap_factors(self.n))
    }

    /// `(w ⊗ w)(R(u^{-1}))|_{q -> q^{-1}} = R_21(u)`.
    pub fn check_wr(&self) -> Result<(), Mismatch> {
        let lhs = invert_s(&self.r_at(&inv_u()).w_both(self.n));
        lhs.compare(&self.r.swap_factors(self.n))
    }

    /// `(w ⊗ w)(R^∨_21(u^{-1}))|_{q -> q^{-1}} = R^∨(u)`.
    pub fn check_wrc(&self) -> Result<(), Mismatch> {
        let lhs = invert_s(&self.rc21_at(&inv_u()).w_both(self.n));
        lhs.compare(&self.rc)
    }

    /// `[R(u/v), Z(u) ⊗ Z(v)] = 0`.
    pub fn is_symmetry(&self, z: &Mat) -> Result<(), Mismatch> {
        assert_eq!(z.dim(), self.n, "Z must act on one factor");
        assert!(!z.vars().contains(&Var::V), "Z may depend on u only");
        let ratio = u().checked_div(&v()).expect("v is nonzero");
        let r = self.r_at(&ratio);
        let zz = z.kron(&subst_u(z, &v()));
        r.mul(&zz).compare(&zz.mul(&r))
    }

    /// `(Ř_q - q I)(Ř_q + q^{-1} I) = 0`.
    pub fn check_characteristic(&self) -> Result<(), Mismatch> {
        let rc = self.rq_check();
        let qq = q();
        let id = self.id2();
        let a = rc.sub(&id.scale(&qq));
        let b = rc.add(&id.scale(&qq.inv().expect("q is invertible")));
        a.mul(&b).compare(&Mat::zero(self.n * self.n))
    }

    /// `Ř(u) = f_q(u) ((1 - u) Ř_q + (q - q^{-1}) u I)`.
    pub fn check_braided_affine(&self) -> Result<(), Mismatch> {
        let qq = q();
        let gap = qq.sub(&qq.inv().expect("q is invertible"));
        let one_minus_u = Scalar::one().sub(&u());
        let inner = self.rq_check().scale(&one_minus_u).add(&self.id2().scale(&gap.mul(&u())));
        inner.scale(&f(&qq, &u())).compare(&self.r_check)
    }
}

fn inv_u() -> Scalar {
    u().inv().expect("u is nonzero")
}

fn subst_u(m: &Mat, x: &Scalar) -> Mat {
    m.subst(&Bindings::new().with(Var::U, x.clone())).expect("no pole at the spectral argument")
}

/// `s -> 1/s`, which realizes `q -> q^{-1}` and `(-q)^{1/2} -> (-q)^{-1/2}`.
pub fn invert_s(m: &Mat) -> Mat {
    m.subst(&Bindings::new().with(Var::S, s_pow(-1))).expect("s -> 1/s has no poles")
}

fn point_with_u(p: &Point, x: &num_rational::BigRational) -> Point {
    let mut out = Point::new();
    if let Some(s) = p.get(Var::S) {
        out.set(Var::S, s.clone());
    }
    out.set(Var::U, x.clone());
    out
}
