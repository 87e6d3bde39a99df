//! Exact checkers for the Yang-Baxter equation, the three reflection
//! equations, the constant-matrix identities, unitarity and regularity.
//!
//! Symbolic mode compares both sides as matrices of rational functions in
//! `u` and `v` (plus whatever parameters the input carries). Sampled mode
//! evaluates every constituent matrix at an exact rational point before
//! multiplying; a point where some denominator vanishes is logged and
//! replaced by the next point of a fixed sequence.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::families::ConstPair;
use crate::linalg::{embed, Mat};
use crate::rmatrix::RBundle;
use crate::scalar::{max_terms, q, u, v, Bindings, Point, Scalar, ScalarError, Var};

/// How many consecutive pole hits a sampled check tolerates.
pub const MAX_RETRIES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("matrix has dimension {got}, expected {expected}")]
    Dimension { got: usize, expected: usize },
    #[error("K may not depend on v; v is reserved for the second spectral parameter")]
    UsesV,
    #[error("no usable sample point after {0} retries")]
    NoSamplePoint(usize),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Equation {
    Ybe,
    Re,
    Tre,
    Ctre,
    Unitary,
    Regular,
    ConstIdentities,
    ConstTwisted,
}

impl Equation {
    pub fn label(self) -> &'static str {
        match self {
            Equation::Ybe => "ybe",
            Equation::Re => "re",
            Equation::Tre => "tre",
            Equation::Ctre => "ctre",
            Equation::Unitary => "unitary",
            Equation::Regular => "regular",
            Equation::ConstIdentities => "const-identities",
            Equation::ConstTwisted => "const-twisted",
        }
    }

    pub fn from_label(s: &str) -> Option<Equation> {
        [
            Equation::Ybe,
            Equation::Re,
            Equation::Tre,
            Equation::Ctre,
            Equation::Unitary,
            Equation::Regular,
            Equation::ConstIdentities,
            Equation::ConstTwisted,
        ]
        .into_iter()
        .find(|e| e.label() == s)
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Mode {
    Symbolic,
    Sampled { samples: usize },
}

impl Mode {
    pub fn sampled(samples: usize) -> Mode {
        Mode::Sampled { samples: samples.max(1) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    /// Which sub-identity failed (for example `braided` or `quadratic`).
    pub identity: String,
    pub row: usize,
    pub col: usize,
    pub residual: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<BTreeMap<String, String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub equation: Equation,
    pub mode: Mode,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Number of nonzero residual entries (symbolic mode is exhaustive).
    #[serde(default)]
    pub failing_entries: usize,
    /// Every sub-identity with a nonzero residual, in check order.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub failed: Vec<String>,
    /// Sample points rejected because a denominator vanished there.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub retries: Vec<String>,
    /// Points at which the check was actually evaluated.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl VerifyReport {
    fn new(equation: Equation, mode: Mode) -> VerifyReport {
        VerifyReport {
            equation,
            mode,
            pass: true,
            witness: None,
            failing_entries: 0,
            failed: Vec::new(),
            retries: Vec::new(),
            points: Vec::new(),
            seed: None,
            notes: Vec::new(),
        }
    }

    pub fn with_seed(mut self, seed: u64) -> VerifyReport {
        self.seed = Some(seed);
        self
    }

    fn fail(&mut self, identity: &str, row: usize, col: usize, residual: &Scalar, point: Option<&Point>, count: usize) {
        self.failing_entries += count;
        if !self.failed.iter().any(|f| f == identity) {
            self.failed.push(identity.to_string());
        }
        if self.pass {
            self.pass = false;
            self.witness = Some(Witness {
                identity: identity.to_string(),
                row,
                col,
                residual: residual.to_string(),
                point: point.map(point_map),
            });
        }
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mode = match self.mode {
            Mode::Symbolic => "symbolic".to_string(),
            Mode::Sampled { samples } => format!("sampled x{samples}"),
        };
        write!(f, "{} [{}]: {}", self.equation, mode, if self.pass { "pass" } else { "FAIL" })?;
        if let Some(w) = &self.witness {
            write!(f, " ({} at ({}, {}): {})", w.identity, w.row, w.col, w.residual)?;
        }
        Ok(())
    }
}

fn point_map(p: &Point) -> BTreeMap<String, String> {
    p.iter().map(|(v, x)| (v.name(), x.to_string())).collect()
}

fn primes_upto(count: usize) -> Vec<u64> {
    let mut ps: Vec<u64> = Vec::with_capacity(count);
    let mut x = 2u64;
    while ps.len() < count {
        if ps.iter().take_while(|&&p| p * p <= x).all(|&p| !x.is_multiple_of(p)) {
            ps.push(x);
        }
        x += 1;
    }
    ps
}

/// The `k`-th point of the fixed sample sequence restricted to `vars`.
///
/// Point 0 assigns consecutive primes in registry order
/// (`s = 2, u = 3, v = 5, lambda = 7, mu = 11, ...`); later points use
/// `prime / (k + 1)`, which keeps `|s| > 1` so `q` is never a root of unity.
pub fn sample_point(k: usize, vars: &[Var]) -> Point {
    let need = vars.iter().map(|v| v.ordinal()).max().unwrap_or(0) + 3 * k + 1;
    let primes = primes_upto(need);
    let mut p = Point::new();
    for &var in vars {
        let num = BigInt::from(primes[var.ordinal() + 3 * k]);
        p.set(var, BigRational::new(num, BigInt::from(k + 1)));
    }
    p
}

fn is_pole(e: &ScalarError) -> bool {
    matches!(
        e,
        ScalarError::DenominatorVanishes { .. } | ScalarError::DivisionByZero | ScalarError::Pole { .. }
    )
}

/// Where matrices are evaluated: symbolically, or at a rational point.
enum Env<'a> {
    Symbolic,
    At(&'a Point),
}

impl Env<'_> {
    /// `m` with its spectral parameter `u` replaced by `arg`.
    fn at(&self, m: &Mat, arg: &Scalar) -> Result<Mat, ScalarError> {
        match self {
            Env::Symbolic => {
                if *arg == u() {
                    return Ok(m.clone());
                }
                m.subst(&Bindings::new().with(Var::U, arg.clone()))
            }
            Env::At(p) => {
                let x = arg.eval(p)?;
                let mut p2 = (*p).clone();
                p2.set(Var::U, x);
                m.eval(&p2)
            }
        }
    }

    /// A matrix without spectral dependence.
    fn fixed(&self, m: &Mat) -> Result<Mat, ScalarError> {
        match self {
            Env::Symbolic => Ok(m.clone()),
            Env::At(p) => m.eval(p),
        }
    }

    fn point(&self) -> Option<&Point> {
        match self {
            Env::Symbolic => None,
            Env::At(p) => Some(p),
        }
    }
}

/// A named matrix identity `lhs = rhs` evaluated in some environment.
type Sides = Vec<(&'static str, Mat, Mat)>;

fn guard(m: &Mat) -> Result<(), ScalarError> {
    let limit = max_terms();
    for (_, _, x) in m.entries() {
        if x.term_count() > limit {
            return Err(ScalarError::TooLarge { terms: x.term_count(), limit });
        }
    }
    Ok(())
}

fn product(factors: &[&Mat]) -> Result<Mat, ScalarError> {
    let mut acc = factors[0].clone();
    for m in &factors[1..] {
        acc = acc.mul(m);
        guard(&acc)?;
    }
    Ok(acc)
}

/// Runs `build` once symbolically or at `samples` good points, recording failures.
fn run<F>(equation: Equation, mode: Mode, vars: &[Var], build: F) -> Result<VerifyReport, VerifyError>
where
    F: Fn(&Env) -> Result<Sides, ScalarError>,
{
    let mut report = VerifyReport::new(equation, mode);
    match mode {
        Mode::Symbolic => {
            for (name, lhs, rhs) in build(&Env::Symbolic)? {
                record(&mut report, name, &lhs, &rhs, None);
            }
        }
        Mode::Sampled { samples } => {
            let mut k = 0;
            let mut good = 0;
            while good < samples {
                if report.retries.len() > MAX_RETRIES {
                    return Err(VerifyError::NoSamplePoint(report.retries.len()));
                }
                let p = sample_point(k, vars);
                k += 1;
                match build(&Env::At(&p)) {
                    Ok(sides) => {
                        good += 1;
                        report.points.push(point_map(&p));
                        for (name, lhs, rhs) in sides {
                            record(&mut report, name, &lhs, &rhs, Some(&p));
                        }
                    }
                    Err(e) if is_pole(&e) => report.retries.push(format!("{p}: {e}")),
                    Err(e) => return Err(e.into()),
                }
            }
        }
    }
    Ok(report)
}

fn record(report: &mut VerifyReport, name: &str, lhs: &Mat, rhs: &Mat, point: Option<&Point>) {
    let diffs = lhs.differences(rhs);
    if let Some((i, j, x)) = diffs.first() {
        report.fail(name, *i, *j, x, point, diffs.len());
    }
}

fn vars_of(mats: &[&Mat], extra: &[Var]) -> Vec<Var> {
    let mut vs: Vec<Var> = mats.iter().flat_map(|m| m.vars()).chain(extra.iter().copied()).collect();
    vs.push(Var::S);
    vs.sort_unstable();
    vs.dedup();
    vs
}

fn check_k(bundle: &RBundle, k: &Mat) -> Result<(), VerifyError> {
    if k.dim() != bundle.n {
        return Err(VerifyError::Dimension { got: k.dim(), expected: bundle.n });
    }
    if k.vars().contains(&Var::V) {
        return Err(VerifyError::UsesV);
    }
    Ok(())
}

fn ratio() -> Scalar {
    u().checked_div(&v()).expect("v is nonzero")
}

fn prod_uv() -> Scalar {
    u().mul(&v())
}

/// `R12(u) R13(uv) R23(v) = R23(v) R13(uv) R12(u)`, where `u` and `v` stand
/// for the two independent ratios `u/v` and `v/w`.
pub fn check_ybe(bundle: &RBundle, mode: Mode) -> Result<VerifyReport, VerifyError> {
    let n = bundle.n;
    let vars = vars_of(&[&bundle.r], &[Var::U, Var::V]);
    run(Equation::Ybe, mode, &vars, |env| {
        let r12 = embed(&env.at(&bundle.r, &u())?, n, (1, 2)).expect("valid legs");
        let r13 = embed(&env.at(&bundle.r, &prod_uv())?, n, (1, 3)).expect("valid legs");
        let r23 = embed(&env.at(&bundle.r, &v())?, n, (2, 3)).expect("valid legs");
        let lhs = product(&[&r12, &r13, &r23])?;
        let rhs = product(&[&r23, &r13, &r12])?;
        Ok(vec![("ybe", lhs, rhs)])
    })
}

/// Untwisted reflection equation, plain and braided.
pub fn check_re(bundle: &RBundle, k: &Mat, mode: Mode) -> Result<VerifyReport, VerifyError> {
    check_k(bundle, k)?;
    let n = bundle.n;
    let id = Mat::identity(n);
    let vars = vars_of(&[&bundle.r, k], &[Var::U, Var::V]);
    let mut report = run(Equation::Re, mode, &vars, |env| {
        let ku = env.at(k, &u())?;
        let kv = env.at(k, &v())?;
        let (k1u, k2u, k2v) = (ku.kron(&id), id.kron(&ku), id.kron(&kv));
        let r_ratio = env.at(&bundle.r, &ratio())?;
        let r_prod = env.at(&bundle.r, &prod_uv())?;
        let r21_ratio = r_ratio.swap_factors(n);
        let r21_prod = r_prod.swap_factors(n);
        let plain = (
            "plain",
            product(&[&r21_ratio, &k1u, &r_prod, &k2v])?,
            product(&[&k2v, &r21_prod, &k1u, &r_ratio])?,
        );
        let (rc_ratio, rc_prod) = (bundle.p.mul(&r_ratio), bundle.p.mul(&r_prod));
        let braided = (
            "braided",
            product(&[&rc_ratio, &k2u, &rc_prod, &k2v])?,
            product(&[&k2v, &rc_prod, &k2u, &rc_ratio])?,
        );
        Ok(vec![plain, braided])
    })?;
    note_form_agreement(&mut report);
    Ok(report)
}

/// Twisted reflection equation with `R^{t1}(1/(uv))`.
pub fn check_tre(bundle: &RBundle, kt: &Mat, mode: Mode) -> Result<VerifyReport, VerifyError> {
    check_k(bundle, kt)?;
    let n = bundle.n;
    let id = Mat::identity(n);
    let vars = vars_of(&[&bundle.r, kt], &[Var::U, Var::V]);
    run(Equation::Tre, mode, &vars, |env| {
        let ku = env.at(kt, &u())?;
        let kv = env.at(kt, &v())?;
        let (k1u, k2v) = (ku.kron(&id), id.kron(&kv));
        let r_ratio = env.at(&bundle.r, &ratio())?;
        let inv_prod = prod_uv().inv().expect("uv is nonzero");
        let rt1 = env.at(&bundle.r, &inv_prod)?.t1(n);
        Ok(vec![(
            "plain",
            product(&[&r_ratio, &k1u, &rt1, &k2v])?,
            product(&[&k2v, &rt1, &k1u, &r_ratio])?,
        )])
    })
}

/// C-conjugated twisted reflection equation, plain and braided.
pub fn check_ctre(bundle: &RBundle, k: &Mat, mode: Mode) -> Result<VerifyReport, VerifyError> {
    check_k(bundle, k)?;
    let n = bundle.n;
    let id = Mat::identity(n);
    let vars = vars_of(&[&bundle.rc, k], &[Var::U, Var::V]);
    let mut report = run(Equation::Ctre, mode, &vars, |env| {
        let ku = env.at(k, &u())?;
        let kv = env.at(k, &v())?;
        let (k1u, k2u, k2v) = (ku.kron(&id), id.kron(&ku), id.kron(&kv));
        let r_ratio = env.at(&bundle.r, &ratio())?;
        let rc_prod = env.at(&bundle.rc, &prod_uv())?;
        let plain = (
            "plain",
            product(&[&r_ratio.swap_factors(n), &k1u, &rc_prod, &k2v])?,
            product(&[&k2v, &rc_prod.swap_factors(n), &k1u, &r_ratio])?,
        );
        let (rch, rcch) = (bundle.p.mul(&r_ratio), bundle.p.mul(&rc_prod));
        let braided = (
            "braided",
            product(&[&rch, &k2u, &rcch, &k2v])?,
            product(&[&k2v, &rcch, &k2u, &rch])?,
        );
        Ok(vec![plain, braided])
    })?;
    note_form_agreement(&mut report);
    Ok(report)
}

fn note_form_agreement(report: &mut VerifyReport) {
    if let Some(w) = &report.witness {
        report.notes.push(format!("first failure in the {} form", w.identity));
    }
}

/// `K(u) K(u^{-1}) = I`.
pub fn check_unitary(k: &Mat, mode: Mode) -> Result<VerifyReport, VerifyError> {
    let vars = vars_of(&[k], &[Var::U]);
    let id = Mat::identity(k.dim());
    run(Equation::Unitary, mode, &vars, |env| {
        let a = env.at(k, &u())?;
        let b = env.at(k, &u().inv().expect("u is nonzero"))?;
        Ok(vec![("unitary", a.mul(&b), id.clone())])
    })
}

/// `K(1) = I` or `K(-1) = I`, with removable singularities at `u = ±1`
/// resolved by cancellation. Other parameters are evaluated at sample
/// points in sampled mode.
pub fn check_regular(k: &Mat, mode: Mode) -> Result<VerifyReport, VerifyError> {
    let mut report = VerifyReport::new(Equation::Regular, mode);
    let id = Mat::identity(k.dim());
    let mut first_failure: Option<(String, Mat)> = None;
    for value in [1i64, -1] {
        let label = if value == 1 { "u=1" } else { "u=-1" };
        match k.subst_limit(Var::U, value) {
            Ok(at) => {
                let sub = run(Equation::Regular, mode, &vars_of(&[&at], &[]), |env| {
                    Ok(vec![("regular", env.fixed(&at)?, id.clone())])
                })?;
                if sub.pass {
                    report.points = sub.points;
                    report.retries.extend(sub.retries);
                    report.notes.push(format!("K({value}) = I"));
                    return Ok(report);
                }
                if first_failure.is_none() {
                    first_failure = Some((label.to_string(), at));
                }
            }
            Err(e) if is_pole(&e) => report.notes.push(format!("pole at {label}: {e}")),
            Err(e) => return Err(e.into()),
        }
    }
    match first_failure {
        Some((label, at)) => {
            let diffs = at.differences(&id);
            let (i, j, x) = &diffs[0];
            report.fail(&format!("K({})", &label[2..]), *i, *j, x, None, diffs.len());
        }
        None => {
            report.pass = false;
            report.witness = Some(Witness {
                identity: "pole".into(),
                row: 0,
                col: 0,
                residual: "K has poles at both u=1 and u=-1".into(),
                point: None,
            });
        }
    }
    Ok(report)
}

/// The constant-matrix identities behind the symmetric solutions: the
/// quadratic (or cubic) relation for `G`, the projector relations for `Q`,
/// and the four braided constant reflection equations.
pub fn check_const_identities(p: &ConstPair, bundle: &RBundle, mode: Mode) -> Result<VerifyReport, VerifyError> {
    let n = bundle.n;
    if p.g.dim() != n {
        return Err(VerifyError::Dimension { got: p.g.dim(), expected: n });
    }
    let vars = vars_of(&[&p.g, &p.q, &bundle.rq], &[]);
    run(Equation::ConstIdentities, mode, &vars, |env| {
        let g = env.fixed(&p.g)?;
        let qm = env.fixed(&p.q)?;
        let lam = match env.point() {
            None => Scalar::var(Var::LAMBDA),
            Some(pt) => Scalar::var(Var::LAMBDA).subst(&pt.to_bindings())?,
        };
        let qq = match env.point() {
            None => q(),
            Some(pt) => q().subst(&pt.to_bindings())?,
        };
        let lam_inv = lam.inv()?;
        let id = Mat::identity(n);
        let zero = Mat::zero(n);
        let quad = g.sub(&id.scale(&lam)).mul(&g.add(&id.scale(&lam_inv)));
        let mut sides: Sides = Vec::new();
        if p.l == 0 {
            sides.push(("quadratic", quad, zero.clone()));
        } else {
            sides.push(("cubic", quad.mul(&g), zero.clone()));
            sides.push(("idempotent", qm.mul(&qm), qm.clone()));
            sides.push(("GQ=0", g.mul(&qm), zero.clone()));
            sides.push(("QG=0", qm.mul(&g), zero.clone()));
            let q_from_g = id.add(&g.scale(&lam.sub(&lam_inv))).sub(&g.mul(&g));
            sides.push(("Q-from-G", q_from_g, qm.clone()));
        }
        let rc = env.fixed(&bundle.rq_check())?;
        let (g2, q2) = (id.kron(&g), id.kron(&qm));
        let gap = qq.sub(&qq.inv()?);
        sides.push(("braided-GG", product(&[&rc, &g2, &rc, &g2])?, product(&[&g2, &rc, &g2, &rc])?));
        sides.push(("braided-GQ", product(&[&rc, &g2, &rc, &q2])?, product(&[&q2, &rc, &g2, &rc])?));
        let c3_lhs = product(&[&rc, &q2, &rc, &q2])?.sub(&product(&[&q2, &rc, &q2, &rc])?);
        let c3_rhs = rc.mul(&q2).sub(&q2.mul(&rc)).scale(&gap);
        sides.push(("braided-QQ", c3_lhs, c3_rhs));
        let c4_lhs = product(&[&rc, &q2, &rc, &g2])?.sub(&product(&[&g2, &rc, &q2, &rc])?);
        let c4_rhs = product(&[&q2, &rc, &g2])?.sub(&product(&[&g2, &rc, &q2])?).scale(&gap);
        sides.push(("braided-QG", c4_lhs, c4_rhs));
        Ok(sides)
    })
}

/// `Ř_q G_2 (Ř^∨_q)^{-1} G_2 = G_2 (Ř^∨_q)^{-1} G_2 Ř_q`.
pub fn check_const_twisted(g: &Mat, bundle: &RBundle, mode: Mode) -> Result<VerifyReport, VerifyError> {
    let n = bundle.n;
    if g.dim() != n {
        return Err(VerifyError::Dimension { got: g.dim(), expected: n });
    }
    let vars = vars_of(&[g, &bundle.rq], &[]);
    let rcq_inv_sym = bundle.rc_q_check().inverse().map_err(|e| match e {
        crate::linalg::LinalgError::Scalar(s) => VerifyError::Scalar(s),
        _ => VerifyError::Scalar(ScalarError::DivisionByZero),
    })?;
    run(Equation::ConstTwisted, mode, &vars, |env| {
        let g2 = Mat::identity(n).kron(&env.fixed(g)?);
        let rc = env.fixed(&bundle.rq_check())?;
        let rv = env.fixed(&rcq_inv_sym)?;
        Ok(vec![(
            "const-twisted",
            product(&[&rc, &g2, &rv, &g2])?,
            product(&[&g2, &rv, &g2, &rc])?,
        )])
    })
}
