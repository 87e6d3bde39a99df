use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::atomic::{AtomicUsize, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::poly::Poly;
use super::var::Var;
use super::ScalarError;

/// Default ceiling on the number of stored terms in one scalar.
pub const DEFAULT_MAX_TERMS: usize = 200_000;

static MAX_TERMS: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_TERMS);

/// Numerators above this size are not trial-divided by denominator factors.
const TRIAL_DIVISION_LIMIT: usize = 400;

pub fn max_terms() -> usize {
    MAX_TERMS.load(Ordering::Relaxed)
}

pub fn set_max_terms(limit: usize) {
    MAX_TERMS.store(limit.max(1), Ordering::Relaxed);
}

/// Reads `REFLECTK_MAX_TERMS`; returns the limit now in force.
pub fn max_terms_from_env() -> Result<usize, ScalarError> {
    if let Ok(raw) = std::env::var("REFLECTK_MAX_TERMS") {
        let limit: usize = raw
            .trim()
            .parse()
            .map_err(|_| ScalarError::BadTermLimit(raw.clone()))?;
        set_max_terms(limit);
    }
    Ok(max_terms())
}

/// An element of the rational function field over the registry indeterminates.
///
/// The value is `num / (den_const * prod(factor^exp))`. Denominator factors
/// are non-constant primitive polynomials with positive leading coefficient;
/// a factor is either a single indeterminate or has no monomial content.
/// Fractions are never reduced by a gcd: zero-testing only needs the
/// numerator, and equality is decided by cross-multiplication.
#[derive(Clone)]
pub struct Scalar {
    num: Poly,
    den_const: BigInt,
    den: Vec<(Poly, u32)>,
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        Scalar::from_poly(Poly::one())
    }

    pub fn int(c: impl Into<BigInt>) -> Self {
        Scalar::from_poly(Poly::constant(c))
    }

    pub fn var(v: Var) -> Self {
        Scalar::from_poly(Poly::var(v))
    }

    pub fn from_poly(num: Poly) -> Self {
        Scalar { num, den_const: BigInt::one(), den: Vec::new() }
    }

    pub fn rational(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Self, ScalarError> {
        let d = d.into();
        if d.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::int(n).div_int(&d))
    }

    pub fn from_big_rational(r: &BigRational) -> Self {
        Scalar::int(r.numer().clone()).div_int(r.denom())
    }

    /// `num / den` for polynomial numerator and denominator.
    pub fn ratio(num: Poly, den: &Poly) -> Result<Self, ScalarError> {
        Ok(Scalar::from_poly(num).mul(&Scalar::from_poly(den.clone()).inv()?))
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    /// The denominator expanded into a single polynomial.
    pub fn denominator(&self) -> Poly {
        let mut d = Poly::constant(self.den_const.clone());
        for (f, e) in &self.den {
            d = d.mul(&f.pow(*e));
        }
        d
    }

    pub fn denominator_factors(&self) -> impl Iterator<Item = (&Poly, u32)> {
        self.den.iter().map(|(f, e)| (f, *e))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.sub(&Scalar::one()).is_zero()
    }

    /// True when the value does not depend on any indeterminate.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_empty()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if !self.den.is_empty() {
            return None;
        }
        let n = self.num.constant_value()?;
        Some(BigRational::new(n, self.den_const.clone()))
    }

    /// Stored size: numerator terms plus all denominator factor terms.
    pub fn term_count(&self) -> usize {
        self.num.len() + self.den.iter().map(|(f, _)| f.len()).sum::<usize>()
    }

    pub fn check_size(&self) -> Result<(), ScalarError> {
        let terms = self.term_count();
        let limit = max_terms();
        if terms > limit {
            Err(ScalarError::TooLarge { terms, limit })
        } else {
            Ok(())
        }
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.num.contains_var(v) || self.den.iter().any(|(f, _)| f.contains_var(v))
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut vs = self.num.vars();
        for (f, _) in &self.den {
            vs.extend(f.vars());
        }
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    pub fn neg(&self) -> Scalar {
        Scalar { num: self.num.neg(), den_const: self.den_const.clone(), den: self.den.clone() }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        Scalar::sum([self, other])
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        if other.is_zero() {
            return self.clone();
        }
        self.add(&other.neg())
    }

    /// Sum over a common denominator formed by the least common multiple of
    /// the factored denominators.
    pub fn sum<'a>(items: impl IntoIterator<Item = &'a Scalar>) -> Scalar {
        let items: Vec<&Scalar> = items.into_iter().filter(|x| !x.is_zero()).collect();
        match items.len() {
            0 => return Scalar::zero(),
            1 => return items[0].clone(),
            _ => {}
        }
        if items.iter().all(|x| x.den.is_empty() && x.den_const.is_one()) {
            return Scalar::from_poly(Poly::sum(items.iter().map(|x| &x.num)));
        }
        let mut lcm_const = BigInt::one();
        let mut lcm: Vec<(Poly, u32)> = Vec::new();
        for x in &items {
            lcm_const = lcm_const.lcm(&x.den_const);
            for (f, e) in &x.den {
                match lcm.iter_mut().find(|(g, _)| g == f) {
                    Some((_, ge)) => *ge = (*ge).max(*e),
                    None => lcm.push((f.clone(), *e)),
                }
            }
        }
        let scaled: Vec<Poly> = items
            .iter()
            .map(|x| {
                let mut p = x.num.scale(&(&lcm_const / &x.den_const));
                for (f, e) in &lcm {
                    let have = x.den.iter().find(|(g, _)| g == f).map_or(0, |(_, ge)| *ge);
                    if *e > have {
                        p = p.mul(&f.pow(e - have));
                    }
                }
                p
            })
            .collect();
        let num = Poly::sum(scaled.iter());
        Scalar { num, den_const: lcm_const, den: lcm }.reduced()
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        if self.is_zero() || other.is_zero() {
            return Scalar::zero();
        }
        let mut den = self.den.clone();
        for (f, e) in &other.den {
            push_factor(&mut den, f.clone(), *e);
        }
        Scalar { num: self.num.mul(&other.num), den_const: &self.den_const * &other.den_const, den }.reduced()
    }

    pub fn mul_int(&self, c: &BigInt) -> Scalar {
        Scalar { num: self.num.scale(c), den_const: self.den_const.clone(), den: self.den.clone() }.reduced()
    }

    pub fn div_int(&self, c: &BigInt) -> Scalar {
        assert!(!c.is_zero(), "division by the integer zero");
        let num = if c.is_negative() { self.num.neg() } else { self.num.clone() };
        Scalar { num, den_const: &self.den_const * c.abs(), den: self.den.clone() }.reduced()
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let (c, mono, prim) = self.num.normalize_parts();
        let mut den = Vec::new();
        for &(v, e) in mono.factors() {
            push_factor(&mut den, Poly::var(v), e);
        }
        if !prim.is_constant() {
            push_factor(&mut den, prim, 1);
        }
        let mut num = self.denominator();
        if c.is_negative() {
            num = num.neg();
        }
        Ok(Scalar { num, den_const: c.abs(), den }.reduced())
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i32) -> Result<Scalar, ScalarError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Scalar::one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = Scalar::mul(&b, &b);
            }
        }
        Ok(acc)
    }

    /// Cancels integer content, variable factors and any denominator factor
    /// that divides the numerator exactly.
    fn reduced(mut self) -> Scalar {
        if self.num.is_zero() {
            return Scalar::zero();
        }
        let g = self.num.content().gcd(&self.den_const);
        if !g.is_one() {
            self.num = self.num.div_exact_int(&g);
            self.den_const /= &g;
        }
        if self.den.is_empty() {
            return self;
        }
        let mono = self.num.monomial_content();
        if !mono.is_one() {
            let mut cancel = Monomial::one();
            for (f, e) in self.den.iter_mut() {
                if let Some((m, _)) = f.leading().filter(|_| f.is_monomial()) {
                    if let [(v, 1)] = m.factors() {
                        let k = mono.exponent(*v).min(*e);
                        if k > 0 {
                            cancel = cancel.mul(&Monomial::pow(*v, k));
                            *e -= k;
                        }
                    }
                }
            }
            if !cancel.is_one() {
                self.num = self.num.div_monomial(&cancel).expect("content divides");
                self.den.retain(|(_, e)| *e > 0);
            }
        }
        if self.num.len() <= TRIAL_DIVISION_LIMIT {
            for k in 0..self.den.len() {
                if self.den[k].0.is_monomial() {
                    continue;
                }
                while self.den[k].1 > 0 {
                    match self.num.div_exact(&self.den[k].0) {
                        Some(q) => {
                            self.num = q;
                            self.den[k].1 -= 1;
                        }
                        None => break,
                    }
                }
            }
            self.den.retain(|(_, e)| *e > 0);
        }
        self
    }

    /// Substitutes exact values for indeterminates.
    pub fn subst(&self, bindings: &Bindings) -> Result<Scalar, ScalarError> {
        if !self.vars().iter().any(|v| bindings.contains(*v)) {
            return Ok(self.clone());
        }
        let mut cache = PowerCache::new(bindings);
        let num = cache.eval_poly(&self.num)?;
        let mut den = Scalar::int(self.den_const.clone());
        for (f, e) in &self.den {
            let fv = cache.eval_poly(f)?;
            if fv.is_zero() {
                return Err(ScalarError::DenominatorVanishes {
                    factor: f.to_string(),
                    bindings: bindings.to_string(),
                });
            }
            den = den.mul(&fv.pow(*e as i32)?);
        }
        Scalar::checked_div(&num, &den)
    }

    /// Like [`Scalar::subst`] for a single indeterminate set to an integer,
    /// resolving removable singularities: common factors `(v - value)` are
    /// cancelled from numerator and denominator before evaluating.
    pub fn subst_limit(&self, v: Var, value: i64) -> Result<Scalar, ScalarError> {
        let at = Bindings::new().with(v, Scalar::int(value));
        let linear = Poly::var(v).sub(&Poly::constant(value));
        let mut strip = 0u32;
        let mut denom = Scalar::int(self.den_const.clone());
        for (f, e) in &self.den {
            let mut f = f.clone();
            while Scalar::from_poly(f.clone()).subst(&at)?.is_zero() {
                f = f.div_exact(&linear).expect("a root gives a linear factor");
                strip += e;
            }
            denom = denom.mul(&Scalar::from_poly(f).pow(*e as i32)?);
        }
        let mut num = self.num.clone();
        for _ in 0..strip {
            // the numerator must lose the same power of (v - value) or the
            // point is a genuine pole
            num = num.div_exact(&linear).ok_or_else(|| ScalarError::Pole {
                var: v.name(),
                value: value.to_string(),
            })?;
        }
        Scalar::checked_div(&Scalar::from_poly(num), &denom)?.subst(&at)
    }

    /// Exact evaluation at a point that binds every occurring indeterminate.
    pub fn eval(&self, point: &Point) -> Result<BigRational, ScalarError> {
        let n = point.eval_poly(&self.num)?;
        let mut d = BigRational::from_integer(self.den_const.clone());
        for (f, e) in &self.den {
            let fv = point.eval_poly(f)?;
            if fv.is_zero() {
                return Err(ScalarError::DenominatorVanishes {
                    factor: f.to_string(),
                    bindings: point.to_string(),
                });
            }
            d *= num_traits::pow(fv, *e as usize);
        }
        Ok(n / d)
    }
}

fn push_factor(den: &mut Vec<(Poly, u32)>, f: Poly, e: u32) {
    match den.iter_mut().find(|(g, _)| *g == f) {
        Some((_, ge)) => *ge += e,
        None => den.push((f, e)),
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() && self.den_const.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.len() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        f.write_str("/")?;
        let mut parts: Vec<String> = Vec::new();
        if !self.den_const.is_one() {
            parts.push(self.den_const.to_string());
        }
        let mut factors: Vec<&(Poly, u32)> = self.den.iter().collect();
        factors.sort_by_cached_key(|(p, _)| p.to_string());
        for (p, e) in factors {
            let base = if p.len() > 1 { format!("({p})") } else { p.to_string() };
            parts.push(if *e == 1 { base } else { format!("{base}^{e}") });
        }
        if parts.len() == 1 {
            f.write_str(&parts[0])
        } else {
            write!(f, "({})", parts.join("*"))
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<i64> for Scalar {
    fn from(c: i64) -> Self {
        Scalar::int(c)
    }
}

impl From<Var> for Scalar {
    fn from(v: Var) -> Self {
        Scalar::var(v)
    }
}

impl From<Poly> for Scalar {
    fn from(p: Poly) -> Self {
        Scalar::from_poly(p)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar::$inner(self, rhs)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar::$inner(&self, &rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar::$inner(&self, rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar::$inner(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, add);
forward_binop!(Sub, sub, sub);
forward_binop!(Mul, mul, mul);

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    /// Panics on division by zero; use [`Scalar::checked_div`] for a checked version.
    fn div(self, rhs: &Scalar) -> Scalar {
        Scalar::checked_div(self, rhs).expect("division by zero scalar")
    }
}

impl Div<Scalar> for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        &self / &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(&self)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

/// A substitution map from indeterminates to exact scalar values.
#[derive(Clone, Default, Debug)]
pub struct Bindings {
    map: Vec<(Var, Scalar)>,
}

impl Bindings {
    pub fn new() -> Self {
        Bindings::default()
    }

    pub fn with(mut self, v: Var, value: impl Into<Scalar>) -> Self {
        self.insert(v, value.into());
        self
    }

    pub fn insert(&mut self, v: Var, value: Scalar) {
        match self.map.iter_mut().find(|(w, _)| *w == v) {
            Some((_, x)) => *x = value,
            None => self.map.push((v, value)),
        }
        self.map.sort_by_key(|(w, _)| *w);
    }

    pub fn get(&self, v: Var) -> Option<&Scalar> {
        self.map.iter().find(|(w, _)| *w == v).map(|(_, x)| x)
    }

    pub fn contains(&self, v: Var) -> bool {
        self.get(v).is_some()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, &Scalar)> {
        self.map.iter().map(|(v, x)| (*v, x))
    }
}

impl fmt::Display for Bindings {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.map.iter().map(|(v, x)| format!("{v}={x}")).collect();
        f.write_str(&parts.join(", "))
    }
}

struct PowerCache<'a> {
    bindings: &'a Bindings,
    powers: HashMap<(Var, u32), Scalar>,
}

impl<'a> PowerCache<'a> {
    fn new(bindings: &'a Bindings) -> Self {
        PowerCache { bindings, powers: HashMap::new() }
    }

    fn power(&mut self, v: Var, e: u32) -> Scalar {
        if let Some(x) = self.powers.get(&(v, e)) {
            return x.clone();
        }
        let value = match self.bindings.get(v) {
            Some(x) => {
                if e == 1 {
                    x.clone()
                } else {
                    let half = self.power(v, e / 2);
                    let sq = Scalar::mul(&half, &half);
                    if e % 2 == 1 {
                        sq.mul(x)
                    } else {
                        sq
                    }
                }
            }
            None => Scalar::from_poly(Poly::monomial(Monomial::pow(v, e), 1)),
        };
        self.powers.insert((v, e), value.clone());
        value
    }

    fn eval_poly(&mut self, p: &Poly) -> Result<Scalar, ScalarError> {
        let mut terms = Vec::with_capacity(p.len());
        for (m, c) in p.terms() {
            let mut t = Scalar::int(c.clone());
            let mut free = Monomial::one();
            for &(v, e) in m.factors() {
                if self.bindings.contains(v) {
                    t = t.mul(&self.power(v, e));
                } else {
                    free = free.mul(&Monomial::pow(v, e));
                }
            }
            if !free.is_one() {
                t = t.mul(&Scalar::from_poly(Poly::monomial(free, 1)));
            }
            terms.push(t);
        }
        Ok(Scalar::sum(terms.iter()))
    }
}

/// A sample point assigning exact rationals to indeterminates.
#[derive(Clone, Default, Debug, PartialEq)]
pub struct Point {
    values: Vec<(Var, BigRational)>,
}

impl Point {
    pub fn new() -> Self {
        Point::default()
    }

    pub fn with(mut self, v: Var, value: BigRational) -> Self {
        self.set(v, value);
        self
    }

    pub fn with_int(self, v: Var, value: i64) -> Self {
        self.with(v, BigRational::from_integer(value.into()))
    }

    pub fn set(&mut self, v: Var, value: BigRational) {
        match self.values.iter_mut().find(|(w, _)| *w == v) {
            Some((_, x)) => *x = value,
            None => self.values.push((v, value)),
        }
        self.values.sort_by_key(|(w, _)| *w);
    }

    pub fn get(&self, v: Var) -> Option<&BigRational> {
        self.values.iter().find(|(w, _)| *w == v).map(|(_, x)| x)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, &BigRational)> {
        self.values.iter().map(|(v, x)| (*v, x))
    }

    pub fn to_bindings(&self) -> Bindings {
        let mut b = Bindings::new();
        for (v, x) in &self.values {
            b.insert(*v, Scalar::from_big_rational(x));
        }
        b
    }

    fn eval_poly(&self, p: &Poly) -> Result<BigRational, ScalarError> {
        let mut acc = BigRational::zero();
        for (m, c) in p.terms() {
            let mut t = BigRational::from_integer(c.clone());
            for &(v, e) in m.factors() {
                let x = self.get(v).ok_or_else(|| ScalarError::Unbound(v.name()))?;
                t *= num_traits::pow(x.clone(), e as usize);
            }
            acc += t;
        }
        Ok(acc)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|(v, x)| format!("{v}={x}")).collect();
        f.write_str(&parts.join(", "))
    }
}
