//! Matrices as printed for N = 4, entered textually.

use reflectk::families::SymClass;
use reflectk::linalg::Mat;
use reflectk::scalar::parse_scalar;

fn p(text: &str) -> reflectk::scalar::Scalar {
    parse_scalar(text).unwrap()
}

fn sym(n: usize, l: usize, r: usize) -> SymClass {
    SymClass::new(n, l, r).unwrap()
}

pub fn from_grid(rows: &[&[&str]]) -> Mat {
    let n = rows.len();
    let mut m = Mat::zero(n);
    for (i, row) in rows.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if !x.is_empty() {
                m.set(i + 1, j + 1, p(x));
            }
        }
    }
    m
}

/// The four printed symmetric matrices at N = 4, written with the printed
/// abbreviations substituted textually.
pub fn printed_symmetric() -> Vec<(SymClass, Mat)> {
    let theta = "((u - 1/u)/(1/(lambda*mu) + 1/u))";
    let chi = "(1/(lambda - mu*u))";
    let a = format!("1 + {theta}");
    let b = format!("1 + lambda*{theta}*{chi}");
    let c = format!("1 + {theta}*{chi}/lambda");
    let d = format!("-{theta}*{chi}");
    let (a, b, c, d) = (a.as_str(), b.as_str(), c.as_str(), d.as_str());
    vec![
        (sym(4, 2, 3), from_grid(&[&[a, "", "", ""], &["", a, "", ""], &["", "", b, d], &["", "", d, c]])),
        (sym(4, 1, 2), from_grid(&[&[a, "", "", ""], &["", b, "", d], &["", "", "1", ""], &["", d, "", c]])),
        (sym(4, 0, 1), from_grid(&[&[b, "", "", d], &["", "1", "", ""], &["", "", "1", ""], &[d, "", "", c]])),
        (sym(4, 0, 2), from_grid(&[&[b, "", "", d], &["", b, d, ""], &["", d, c, ""], &[d, "", "", c]])),
    ]
}

/// Diagonal positions of `a` and off-diagonal positions of `b`.
type Shape = (&'static [usize], &'static [(usize, usize)]);

/// The eleven printed triangular matrices at N = 4; every diagonal entry
/// not listed as `a` is 1.
pub fn printed_triangular() -> Vec<Mat> {
    let a = "(alpha - 1/u)/(alpha - u)";
    let b = "(u - 1/u)/(alpha - u)";
    let shapes: [Shape; 11] = [
        (&[], &[]),
        (&[4], &[]),
        (&[3, 4], &[]),
        (&[4], &[(1, 4)]),
        (&[4], &[(2, 4)]),
        (&[4], &[(3, 4)]),
        (&[3, 4], &[(1, 3)]),
        (&[3, 4], &[(1, 4)]),
        (&[3, 4], &[(2, 4)]),
        (&[3, 4], &[(1, 4), (2, 3)]),
        (&[3, 4], &[(1, 4), (3, 2)]),
    ];
    shapes
        .iter()
        .map(|(diag_a, bs)| {
            let mut m = Mat::identity(4);
            for &i in diag_a.iter() {
                m.set(i, i, p(a));
            }
            for &(i, j) in bs.iter() {
                m.set(i, j, p(b));
            }
            m
        })
        .collect()
}

/// The dense twisted matrix with `a = (q + 1)/(sqrt(-q)(q + u))`, `sqrt(-q) = s`.
pub fn printed_onsager() -> Mat {
    let a = "((q + 1)/(s*(q + u)))";
    let rows = [
        ["a*q*u", "-a*r*u", "-a*u", "1"],
        ["-a*r*u", "-a*u", "1", "a*q"],
        ["-a*u", "1", "a*q", "-a*r"],
        ["1", "a*q", "-a*r", "-a"],
    ];
    let mut m = Mat::zero(4);
    for (i, row) in rows.iter().enumerate() {
        for (j, t) in row.iter().enumerate() {
            m.set(i + 1, j + 1, p(&t.replace('a', a).replace('r', "s")));
        }
    }
    m
}
