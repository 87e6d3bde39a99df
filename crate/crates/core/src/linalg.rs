//! Sparse square matrices over [`Scalar`] with the tensor-leg operations
//! used on `End(C^N)`, `End(C^N ⊗ C^N)` and `End(C^N ⊗ C^N ⊗ C^N)`.
//!
//! Indices in the public API are 1-based. A tensor index `(i, k)` of
//! `C^N ⊗ C^N` is flattened to `(i - 1) N + k`, and likewise for three
//! factors.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::{parse_scalar, Bindings, Point, Scalar, ScalarError, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("dimension {dim} is not a power of the factor size {n}")]
    NotTensorSpace { dim: usize, n: usize },
    #[error("invalid leg pair ({0}, {1}) for three tensor factors")]
    InvalidLeg(usize, usize),
    #[error("singular matrix: determinant is {det}")]
    Singular { det: String },
    #[error("index ({row}, {col}) out of range for dimension {dim}")]
    OutOfRange { row: usize, col: usize, dim: usize },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("matrix JSON: {0}")]
    Json(String),
}

/// First entry (row-major) where two matrices differ, with `left - right`.
#[derive(Debug, Clone, PartialEq)]
pub struct Mismatch {
    pub row: usize,
    pub col: usize,
    pub residual: Scalar,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "entry ({}, {}) differs by {}", self.row, self.col, self.residual)
    }
}

#[derive(Clone, PartialEq)]
pub struct Mat {
    dim: usize,
    /// 0-based sparse rows; stored values are nonzero.
    rows: Vec<BTreeMap<usize, Scalar>>,
}

impl Mat {
    pub fn zero(dim: usize) -> Mat {
        assert!(dim > 0, "matrices have positive dimension");
        Mat { dim, rows: vec![BTreeMap::new(); dim] }
    }

    pub fn identity(dim: usize) -> Mat {
        Mat::scalar(dim, &Scalar::one())
    }

    /// `x` times the identity.
    pub fn scalar(dim: usize, x: &Scalar) -> Mat {
        let mut m = Mat::zero(dim);
        for i in 1..=dim {
            m.set(i, i, x.clone());
        }
        m
    }

    /// The unit matrix `E_ij`.
    pub fn unit(dim: usize, i: usize, j: usize) -> Mat {
        let mut m = Mat::zero(dim);
        m.set(i, j, Scalar::one());
        m
    }

    pub fn diag(entries: &[Scalar]) -> Mat {
        let mut m = Mat::zero(entries.len());
        for (k, x) in entries.iter().enumerate() {
            m.set(k + 1, k + 1, x.clone());
        }
        m
    }

    pub fn from_entries(dim: usize, entries: impl IntoIterator<Item = (usize, usize, Scalar)>) -> Mat {
        let mut m = Mat::zero(dim);
        for (i, j, x) in entries {
            m.add_to(i, j, &x);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(BTreeMap::len).sum()
    }

    fn check_index(&self, i: usize, j: usize) {
        assert!(
            (1..=self.dim).contains(&i) && (1..=self.dim).contains(&j),
            "index ({i}, {j}) out of range for dimension {}",
            self.dim
        );
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.check_index(i, j);
        self.rows[i - 1].get(&(j - 1)).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.check_index(i, j);
        if x.is_zero() {
            self.rows[i - 1].remove(&(j - 1));
        } else {
            self.rows[i - 1].insert(j - 1, x);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, x: &Scalar) {
        let cur = self.get(i, j);
        self.set(i, j, cur.add(x));
    }

    /// Nonzero entries as `(row, col, value)` in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().map(move |(&j, x)| (i + 1, j + 1, x)))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BTreeMap::is_empty)
    }

    pub fn is_identity(&self) -> bool {
        self.first_difference(&Mat::identity(self.dim)).is_none()
    }

    /// First `(row, col, self - other)` in row-major order where the two differ.
    pub fn first_difference(&self, other: &Mat) -> Option<(usize, usize, Scalar)> {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        for i in 0..self.dim {
            let (a, b) = (&self.rows[i], &other.rows[i]);
            let mut cols: Vec<usize> = a.keys().chain(b.keys()).copied().collect();
            cols.sort_unstable();
            cols.dedup();
            for j in cols {
                let d = match (a.get(&j), b.get(&j)) {
                    (Some(x), Some(y)) => x.sub(y),
                    (Some(x), None) => x.clone(),
                    (None, Some(y)) => y.neg(),
                    (None, None) => unreachable!(),
                };
                if !d.is_zero() {
                    return Some((i + 1, j + 1, d));
                }
            }
        }
        None
    }

    /// All nonzero entries of `self - other`.
    pub fn differences(&self, other: &Mat) -> Vec<(usize, usize, Scalar)> {
        self.sub(other).entries().map(|(i, j, x)| (i, j, x.clone())).collect()
    }

    /// Exact comparison reporting the first differing entry.
    pub fn compare(&self, other: &Mat) -> Result<(), Mismatch> {
        match self.first_difference(other) {
            None => Ok(()),
            Some((row, col, residual)) => Err(Mismatch { row, col, residual }),
        }
    }

    fn map_rows<F>(&self, f: F) -> Result<Mat, ScalarError>
    where
        F: Fn(&Scalar) -> Result<Scalar, ScalarError> + Sync,
    {
        let rows = self
            .rows
            .par_iter()
            .map(|row| {
                let mut out = BTreeMap::new();
                for (&j, x) in row {
                    let y = f(x)?;
                    if !y.is_zero() {
                        out.insert(j, y);
                    }
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>, ScalarError>>()?;
        Ok(Mat { dim: self.dim, rows })
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar + Sync) -> Mat {
        self.map_rows(|x| Ok(f(x))).expect("infallible map")
    }

    pub fn try_map(&self, f: impl Fn(&Scalar) -> Result<Scalar, ScalarError> + Sync) -> Result<Mat, ScalarError> {
        self.map_rows(f)
    }

    pub fn subst(&self, bindings: &Bindings) -> Result<Mat, ScalarError> {
        self.map_rows(|x| x.subst(bindings))
    }

    /// Substitution resolving removable singularities in `v`.
    pub fn subst_limit(&self, v: Var, value: i64) -> Result<Mat, ScalarError> {
        self.map_rows(|x| x.subst_limit(v, value))
    }

    /// Exact evaluation of every entry at a rational point.
    pub fn eval(&self, point: &Point) -> Result<Mat, ScalarError> {
        self.map_rows(|x| x.eval(point).map(|r| Scalar::from_big_rational(&r)))
    }

    pub fn eval_rational(&self, point: &Point) -> Result<Vec<Vec<BigRational>>, ScalarError> {
        let e = self.eval(point)?;
        Ok((1..=self.dim)
            .map(|i| (1..=self.dim).map(|j| e.get(i, j).as_rational().expect("constant")).collect())
            .collect())
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self.entries().flat_map(|(_, _, x)| x.vars()).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    pub fn term_count(&self) -> usize {
        self.entries().map(|(_, _, x)| x.term_count()).sum()
    }

    pub fn neg(&self) -> Mat {
        self.map(Scalar::neg)
    }

    pub fn scale(&self, x: &Scalar) -> Mat {
        if x.is_zero() {
            return Mat::zero(self.dim);
        }
        self.map(|y| y.mul(x))
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let mut out = self.clone();
        for (i, j, x) in other.entries() {
            out.add_to(i, j, x);
        }
        out
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let rows = self
            .rows
            .par_iter()
            .map(|row| {
                let mut acc: HashMap<usize, Vec<Scalar>> = HashMap::new();
                for (&k, a) in row {
                    for (&j, b) in &other.rows[k] {
                        acc.entry(j).or_default().push(a.mul(b));
                    }
                }
                acc.into_iter()
                    .filter_map(|(j, terms)| {
                        let x = Scalar::sum(terms.iter());
                        (!x.is_zero()).then_some((j, x))
                    })
                    .collect::<BTreeMap<_, _>>()
            })
            .collect();
        Mat { dim: self.dim, rows }
    }

    pub fn try_mul(&self, other: &Mat) -> Result<Mat, LinalgError> {
        if self.dim != other.dim {
            return Err(LinalgError::DimensionMismatch { left: self.dim, right: other.dim });
        }
        Ok(self.mul(other))
    }

    /// Left-to-right product of a non-empty chain.
    pub fn product<'a>(factors: impl IntoIterator<Item = &'a Mat>) -> Mat {
        let mut it = factors.into_iter();
        let first = it.next().expect("empty product").clone();
        it.fold(first, |acc, m| acc.mul(m))
    }

    pub fn pow(&self, e: u32) -> Mat {
        (0..e).fold(Mat::identity(self.dim), |acc, _| acc.mul(self))
    }

    /// `a ⊗ b` with `(a ⊗ b)[(i-1) n_b + k, (j-1) n_b + l] = a[i,j] b[k,l]`.
    pub fn kron(&self, other: &Mat) -> Mat {
        let nb = other.dim;
        let mut out = Mat::zero(self.dim * nb);
        for (i, j, a) in self.entries() {
            for (k, l, b) in other.entries() {
                out.set((i - 1) * nb + k, (j - 1) * nb + l, a.mul(b));
            }
        }
        out
    }

    fn remap(&self, f: impl Fn(usize, usize) -> (usize, usize)) -> Mat {
        let mut out = Mat::zero(self.dim);
        for (i, j, x) in self.entries() {
            let (a, b) = f(i, j);
            out.set(a, b, x.clone());
        }
        out
    }

    /// Ordinary transpose.
    pub fn t(&self) -> Mat {
        self.remap(|i, j| (j, i))
    }

    /// Transpose about the main antidiagonal: `E_ij -> E_{j̄ ī}` with `ī = dim + 1 - i`.
    pub fn w(&self) -> Mat {
        let n = self.dim;
        self.remap(|i, j| (n + 1 - j, n + 1 - i))
    }

    /// Partial transpose in the first factor of `C^n ⊗ C^n`.
    pub fn t1(&self, n: usize) -> Mat {
        assert_eq!(self.dim, n * n, "t1 needs a two-factor matrix");
        self.remap(|r, c| {
            let ((i, k), (j, l)) = (split2(r, n), split2(c, n));
            (join2(j, k, n), join2(i, l, n))
        })
    }

    /// `w` applied in both factors of `C^n ⊗ C^n`.
    pub fn w_both(&self, n: usize) -> Mat {
        assert_eq!(self.dim, n * n, "needs a two-factor matrix");
        self.remap(|r, c| {
            let ((i, k), (j, l)) = (split2(r, n), split2(c, n));
            (join2(n + 1 - j, n + 1 - l, n), join2(n + 1 - i, n + 1 - k, n))
        })
    }

    /// Swap of the two factors, `P a P`.
    pub fn swap_factors(&self, n: usize) -> Mat {
        assert_eq!(self.dim, n * n, "needs a two-factor matrix");
        self.remap(|r, c| {
            let ((i, k), (j, l)) = (split2(r, n), split2(c, n));
            (join2(k, i, n), join2(l, j, n))
        })
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Scalar {
        let n = self.dim;
        let mut a: Vec<Vec<Scalar>> =
            (1..=n).map(|i| (1..=n).map(|j| self.get(i, j)).collect()).collect();
        let mut sign = false;
        let mut prev = Scalar::one();
        for k in 0..n {
            let Some(p) = pick_pivot(&a, k) else {
                return Scalar::zero();
            };
            if p != k {
                a.swap(p, k);
                sign = !sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let x = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                    a[i][j] = x.checked_div(&prev).expect("Bareiss divisor is a previous pivot");
                }
                a[i][k] = Scalar::zero();
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        if sign {
            d.neg()
        } else {
            d
        }
    }

    /// Inverse by Gauss-Jordan elimination over the rational-function field.
    pub fn inverse(&self) -> Result<Mat, LinalgError> {
        let n = self.dim;
        let mut a: Vec<Vec<Scalar>> =
            (1..=n).map(|i| (1..=n).map(|j| self.get(i, j)).collect()).collect();
        let mut inv: Vec<Vec<Scalar>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect())
            .collect();
        for k in 0..n {
            let Some(p) = pick_pivot(&a, k) else {
                return Err(LinalgError::Singular { det: "0".into() });
            };
            a.swap(p, k);
            inv.swap(p, k);
            let pivot_inv = a[k][k].inv()?;
            for j in 0..n {
                a[k][j] = a[k][j].mul(&pivot_inv);
                inv[k][j] = inv[k][j].mul(&pivot_inv);
            }
            for i in 0..n {
                if i == k || a[i][k].is_zero() {
                    continue;
                }
                let f = a[i][k].clone();
                for j in 0..n {
                    if !a[k][j].is_zero() {
                        a[i][j] = a[i][j].sub(&f.mul(&a[k][j]));
                    }
                    if !inv[k][j].is_zero() {
                        inv[i][j] = inv[i][j].sub(&f.mul(&inv[k][j]));
                    }
                }
            }
        }
        Ok(Mat::from_entries(
            n,
            inv.into_iter()
                .enumerate()
                .flat_map(|(i, row)| row.into_iter().enumerate().map(move |(j, x)| (i + 1, j + 1, x))),
        ))
    }

    /// `Some(g)` when `self = g · other` for a scalar `g`.
    pub fn ratio_to(&self, other: &Mat) -> Option<Scalar> {
        let (i, j, y) = other.entries().next()?;
        let g = self.get(i, j).checked_div(y).ok()?;
        other.scale(&g).first_difference(self).is_none().then_some(g)
    }

    pub fn to_json(&self) -> MatJson {
        MatJson {
            dim: self.dim,
            entries: self
                .entries()
                .map(|(row, col, x)| EntryJson { row, col, value: x.to_string() })
                .collect(),
        }
    }

    pub fn from_json(j: &MatJson) -> Result<Mat, LinalgError> {
        if j.dim == 0 {
            return Err(LinalgError::Json("dim must be positive".into()));
        }
        let mut m = Mat::zero(j.dim);
        for (k, e) in j.entries.iter().enumerate() {
            if !(1..=j.dim).contains(&e.row) || !(1..=j.dim).contains(&e.col) {
                return Err(LinalgError::OutOfRange { row: e.row, col: e.col, dim: j.dim });
            }
            let x = parse_scalar(&e.value)
                .map_err(|err| LinalgError::Json(format!("entry {k} ({}, {}): {err}", e.row, e.col)))?;
            m.add_to(e.row, e.col, &x);
        }
        Ok(m)
    }

    pub fn from_json_str(text: &str) -> Result<Mat, LinalgError> {
        let j: MatJson = serde_json::from_str(text).map_err(|e| {
            LinalgError::Json(format!("line {} column {}: {e}", e.line(), e.column()))
        })?;
        Mat::from_json(&j)
    }
}

fn pick_pivot(a: &[Vec<Scalar>], k: usize) -> Option<usize> {
    (k..a.len())
        .filter(|&i| !a[i][k].is_zero())
        .min_by_key(|&i| a[i][k].term_count())
}

fn split2(idx: usize, n: usize) -> (usize, usize) {
    ((idx - 1) / n + 1, (idx - 1) % n + 1)
}

fn join2(i: usize, k: usize, n: usize) -> usize {
    (i - 1) * n + k
}

fn split3(idx: usize, n: usize) -> [usize; 3] {
    let z = idx - 1;
    [z / (n * n) + 1, (z / n) % n + 1, z % n + 1]
}

fn join3(f: [usize; 3], n: usize) -> usize {
    (f[0] - 1) * n * n + (f[1] - 1) * n + f[2]
}

/// Places a single-factor matrix on factor `leg` (1-based) of `factors` copies of `C^n`.
pub fn on_leg(a: &Mat, leg: usize, factors: usize) -> Mat {
    assert!((1..=factors).contains(&leg), "leg {leg} out of range");
    let id = Mat::identity(a.dim());
    (1..=factors)
        .map(|k| if k == leg { a.clone() } else { id.clone() })
        .reduce(|acc, m| acc.kron(&m))
        .expect("at least one factor")
}

/// Places a two-factor matrix `a` on factors `(i, j)` of `C^n ⊗ C^n ⊗ C^n`:
/// the first factor of `a` acts on leg `i`, the second on leg `j`.
pub fn embed(a: &Mat, n: usize, legs: (usize, usize)) -> Result<Mat, LinalgError> {
    let (i, j) = legs;
    if i == j || !(1..=3).contains(&i) || !(1..=3).contains(&j) {
        return Err(LinalgError::InvalidLeg(i, j));
    }
    if a.dim() != n * n {
        return Err(LinalgError::NotTensorSpace { dim: a.dim(), n });
    }
    let k = 6 - i - j;
    let mut out = Mat::zero(n * n * n);
    for (r, c, x) in a.entries() {
        let ((r1, r2), (c1, c2)) = (split2(r, n), split2(c, n));
        for t in 1..=n {
            let mut row = [0; 3];
            let mut col = [0; 3];
            row[i - 1] = r1;
            col[i - 1] = c1;
            row[j - 1] = r2;
            col[j - 1] = c2;
            row[k - 1] = t;
            col[k - 1] = t;
            out.set(join3(row, n), join3(col, n), x.clone());
        }
    }
    Ok(out)
}

/// Inverse of the three-factor flattening, exposed for tests and witnesses.
pub fn tensor_index3(idx: usize, n: usize) -> [usize; 3] {
    split3(idx, n)
}

/// Inverse of the two-factor flattening.
pub fn tensor_index2(idx: usize, n: usize) -> (usize, usize) {
    split2(idx, n)
}

/// The flip `P = Σ E_ij ⊗ E_ji` on `C^n ⊗ C^n`.
pub fn flip(n: usize) -> Mat {
    let mut p = Mat::zero(n * n);
    for i in 1..=n {
        for j in 1..=n {
            p.set(join2(i, j, n), join2(j, i, n), Scalar::one());
        }
    }
    p
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.dim, self.dim)?;
        for (i, j, x) in self.entries() {
            writeln!(f, "  ({i}, {j}): {x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatJson {
    pub dim: usize,
    pub entries: Vec<EntryJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryJson {
    pub row: usize,
    pub col: usize,
    pub value: String,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{u, Var};

    fn e(n: usize, i: usize, j: usize) -> Mat {
        Mat::unit(n, i, j)
    }

    #[test]
    fn kron_of_units_lands_at_flattened_index() {
        let k = e(2, 1, 2).kron(&e(2, 2, 1));
        assert_eq!(k.nnz(), 1);
        assert!(k.get(2, 3).is_one());
        assert!(Mat::identity(3).kron(&Mat::identity(3)).is_identity());
    }

    #[test]
    fn flip_is_sum_of_unit_krons() {
        let n = 3;
        let mut p = Mat::zero(n * n);
        for i in 1..=n {
            for j in 1..=n {
                p = p.add(&e(n, i, j).kron(&e(n, j, i)));
            }
        }
        assert_eq!(p, flip(n));
    }

    #[test]
    fn transposes_are_involutions() {
        let m = Mat::from_entries(3, [(1, 2, u()), (3, 1, Scalar::int(5)), (2, 2, Scalar::var(Var::S))]);
        assert_eq!(m.t().t(), m);
        assert_eq!(m.w().w(), m);
        assert_eq!(e(4, 1, 3).w(), e(4, 2, 4));
        let mut j = Mat::zero(3);
        for i in 1..=3 {
            j.set(i, 4 - i, Scalar::one());
        }
        assert_eq!(m.w(), Mat::product([&j, &m.t(), &j]));
        let big = m.kron(&m.t());
        assert_eq!(big.t1(3).t1(3), big);
        assert_eq!(big.t1(3), m.t().kron(&m.t()));
    }

    #[test]
    fn swapped_flip_braid() {
        let n = 2;
        let p = flip(n);
        let p12 = embed(&p, n, (1, 2)).unwrap();
        let p23 = embed(&p, n, (2, 3)).unwrap();
        let p13 = embed(&p, n, (1, 3)).unwrap();
        assert_eq!(Mat::product([&p12, &p23, &p12]), p13);
        assert_eq!(embed(&p, n, (2, 1)).unwrap(), p12);
        assert!(embed(&p, n, (2, 2)).is_err());
    }

    #[test]
    fn embed_places_factors_by_index_map() {
        let n = 2;
        let a = e(n, 1, 1).kron(&e(n, 2, 2));
        let m = embed(&a, n, (1, 3)).unwrap();
        // oracle: brute-force scan of (x1, x2, x3) triples
        let mut expected = Vec::new();
        for x2 in 1..=n {
            let row = join3([1, x2, 2], n);
            expected.push((row, row));
        }
        let got: Vec<(usize, usize)> = m.entries().map(|(i, j, _)| (i, j)).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn generalized_permutation_inverse() {
        let m = Mat::from_entries(3, [(1, 2, Scalar::one()), (2, 3, Scalar::one()), (3, 1, u())]);
        let inv = m.inverse().unwrap();
        let expect = Mat::from_entries(
            3,
            [(2, 1, Scalar::one()), (3, 2, Scalar::one()), (1, 3, u().inv().unwrap())],
        );
        assert_eq!(inv, expect);
        assert!(inv.mul(&m).is_identity());
        assert_eq!(m.det(), u());
        assert!(Mat::identity(4).inverse().unwrap().is_identity());
    }

    #[test]
    fn singular_inverse_errors() {
        let m = Mat::from_entries(2, [(1, 1, u()), (1, 2, u()), (2, 1, Scalar::one()), (2, 2, Scalar::one())]);
        assert!(m.det().is_zero());
        assert!(matches!(m.inverse(), Err(LinalgError::Singular { .. })));
    }

    #[test]
    fn json_roundtrip() {
        let m = Mat::from_entries(2, [(1, 2, u().inv().unwrap()), (2, 1, Scalar::int(-3))]);
        let text = serde_json::to_string(&m.to_json()).unwrap();
        assert_eq!(Mat::from_json_str(&text).unwrap(), m);
        assert!(Mat::from_json_str("{\"dim\": 2, \"entries\": [{\"row\": 3, \"col\": 1, \"value\": \"1\"}]}").is_err());
        assert!(Mat::from_json_str("{\"dim\": 2,").is_err());
    }
}
