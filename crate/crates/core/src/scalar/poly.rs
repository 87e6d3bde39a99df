use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::var::Var;

/// A multivariate polynomial with arbitrary-precision integer coefficients.
///
/// Terms are kept sorted in descending graded-lex order with no zero
/// coefficients; the empty term list is the zero polynomial.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Monomial, BigInt)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        let c = c.into();
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(Monomial::one(), c)] }
        }
    }

    pub fn var(v: Var) -> Self {
        Poly::monomial(Monomial::var(v), BigInt::one())
    }

    pub fn monomial(m: Monomial, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    /// Normalizing constructor: merges equal monomials and drops zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_default() += c;
        }
        Poly::from_map(acc)
    }

    fn from_map(acc: HashMap<Monomial, BigInt>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, BigInt)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    /// The value of a constant polynomial.
    pub fn constant_value(&self) -> Option<BigInt> {
        match self.terms.as_slice() {
            [] => Some(BigInt::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading(&self) -> Option<&(Monomial, BigInt)> {
        self.terms.first()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map_or(0, |(m, _)| m.degree())
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.iter().map(|(m, _)| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.iter().any(|(m, _)| m.exponent(v) > 0)
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self.terms.iter().flat_map(|(m, _)| m.vars()).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.merge(other, true)
    }

    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(
            b[j..]
                .iter()
                .map(|(m, c)| (m.clone(), if negate { -c } else { c.clone() })),
        );
        Poly { terms: out }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        if small.len() == 1 {
            let (m, c) = &small.terms[0];
            return big.mul_term(m, c);
        }
        let mut acc: HashMap<Monomial, BigInt> = HashMap::with_capacity(small.len() * big.len());
        for (ma, ca) in &small.terms {
            for (mb, cb) in &big.terms {
                *acc.entry(ma.mul(mb)).or_default() += ca * cb;
            }
        }
        Poly::from_map(acc)
    }

    /// Multiplication by a single term keeps the order intact.
    pub fn mul_term(&self, m: &Monomial, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(mm, cc)| (mm.mul(m), cc * c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        self.mul_term(&Monomial::one(), c)
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Sum of many polynomials with a single accumulation pass.
    pub fn sum<'a>(polys: impl IntoIterator<Item = &'a Poly>) -> Poly {
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for p in polys {
            for (m, c) in &p.terms {
                *acc.entry(m.clone()).or_default() += c;
            }
        }
        Poly::from_map(acc)
    }

    /// Non-negative gcd of all coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Gcd of all monomials occurring in the polynomial.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        let Some((first, _)) = it.next() else {
            return Monomial::one();
        };
        let mut g = first.clone();
        for (m, _) in it {
            if g.is_one() {
                break;
            }
            g = g.gcd(m);
        }
        g
    }

    /// Exact division of every coefficient by `c`.
    pub fn div_exact_int(&self, c: &BigInt) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x / c)).collect(),
        }
    }

    /// Exact division by a monomial that divides every term.
    pub fn div_monomial(&self, m: &Monomial) -> Option<Poly> {
        let terms = self
            .terms
            .iter()
            .map(|(mm, c)| mm.div(m).map(|q| (q, c.clone())))
            .collect::<Option<Vec<_>>>()?;
        Some(Poly { terms })
    }

    /// Returns `q` with `self = q * divisor` over the integers, or `None`.
    ///
    /// Leading-term reduction in graded-lex order: a polynomial multiple of
    /// `divisor` always has a leading monomial divisible by the divisor's, so
    /// the first failure proves non-divisibility.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let (lm, lc) = divisor.leading()?;
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if divisor.is_monomial() {
            let q = self.div_monomial(lm)?;
            if lc.is_one() {
                return Some(q);
            }
            if q.terms.iter().any(|(_, c)| !c.is_multiple_of(lc)) {
                return None;
            }
            return Some(q.div_exact_int(lc));
        }
        if self.total_degree() < divisor.total_degree() {
            return None;
        }
        let mut rem: BTreeMap<Monomial, BigInt> = self.terms.iter().cloned().collect();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            let qm = m.div(lm)?;
            let (qc, r) = c.div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            for (dm, dc) in &divisor.terms[1..] {
                let key = dm.mul(&qm);
                let delta = &qc * dc;
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= delta;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-delta);
                    }
                }
            }
            quot.push((qm, qc));
        }
        // quotient terms were produced in descending order
        Some(Poly { terms: quot })
    }

    /// Splits into integer content, monomial content and a primitive part
    /// whose leading coefficient is positive.
    pub fn normalize_parts(&self) -> (BigInt, Monomial, Poly) {
        if self.is_zero() {
            return (BigInt::zero(), Monomial::one(), Poly::zero());
        }
        let mut c = self.content();
        if self.terms[0].1.is_negative() {
            c = -c;
        }
        let mono = self.monomial_content();
        let mut p = if c.is_one() { self.clone() } else { self.div_exact_int(&c) };
        if !mono.is_one() {
            p = p.div_monomial(&mono).expect("monomial content divides every term");
        }
        (c, mono, p)
    }

    /// Evaluates with integer or rational values via a caller-supplied map of
    /// variable powers; used by the fast numeric paths.
    pub fn eval_with<T, F>(&self, zero: T, mut term: F) -> T
    where
        F: FnMut(&Monomial, &BigInt) -> T,
        T: std::ops::Add<Output = T>,
    {
        let mut acc = zero;
        for (m, c) in &self.terms {
            acc = acc + term(m, c);
        }
        acc
    }

    /// Views the polynomial as univariate in `v`: coefficient list indexed by degree.
    pub fn coefficients_in(&self, v: Var) -> Vec<Poly> {
        let deg = self.degree_in(v) as usize;
        let mut buckets: Vec<Vec<(Monomial, BigInt)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let (e, rest) = m.split_var(v);
            buckets[e as usize].push((rest, c.clone()));
        }
        buckets.into_iter().map(Poly::from_terms).collect()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(v: Var) -> Poly {
        Poly::var(v)
    }

    #[test]
    fn arithmetic_basics() {
        let s = x(Var::S);
        let u = x(Var::U);
        let a = s.add(&u);
        let b = s.sub(&u);
        let prod = a.mul(&b);
        assert_eq!(prod, s.mul(&s).sub(&u.mul(&u)));
        assert_eq!(prod.to_string(), "s^2 - u^2");
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.pow(3), a.mul(&a).mul(&a));
    }

    #[test]
    fn exact_division() {
        let s = x(Var::S);
        let u = x(Var::U);
        let f = s.pow(4).sub(&u);
        let g = u.add(&Poly::constant(3)).mul(&x(Var::LAMBDA)).sub(&s);
        let p = f.mul(&g);
        assert_eq!(p.div_exact(&f), Some(g.clone()));
        assert_eq!(p.div_exact(&g), Some(f.clone()));
        assert_eq!(p.add(&Poly::one()).div_exact(&f), None);
        assert_eq!(p.scale(&BigInt::from(6)).div_exact(&Poly::constant(4)), None);
        assert_eq!(p.scale(&BigInt::from(6)).div_exact(&Poly::constant(3)), Some(p.scale(&BigInt::from(2))));
    }

    #[test]
    fn normalize_parts_extracts_content() {
        let u = x(Var::U);
        let l = x(Var::LAMBDA);
        // -6 u^2 lambda + 4 u
        let p = u.mul(&u).mul(&l).scale(&BigInt::from(-6)).add(&u.scale(&BigInt::from(4)));
        let (c, m, prim) = p.normalize_parts();
        assert_eq!(c, BigInt::from(-2));
        assert_eq!(m, Monomial::var(Var::U));
        assert_eq!(prim.to_string(), "3*u*lambda - 2");
    }

    #[test]
    fn coefficients_in_var() {
        let u = x(Var::U);
        let s = x(Var::S);
        let p = u.mul(&u).mul(&s).add(&s).sub(&Poly::constant(2));
        let cs = p.coefficients_in(Var::U);
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[0], s.sub(&Poly::constant(2)));
        assert!(cs[1].is_zero());
        assert_eq!(cs[2], s);
    }
}
