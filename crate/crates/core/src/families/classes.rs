use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::FamilyError;

/// An involution of `{1..N}` stored as its image sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Involution(Vec<usize>);

impl Involution {
    pub fn identity(n: usize) -> Involution {
        Involution((1..=n).collect())
    }

    pub fn new(images: Vec<usize>) -> Result<Involution, FamilyError> {
        let n = images.len();
        for (k, &x) in images.iter().enumerate() {
            if !(1..=n).contains(&x) || images[x - 1] != k + 1 {
                return Err(FamilyError::InvalidClass(format!(
                    "sigma must be an involution of 1..{n}; sigma(sigma({})) != {}",
                    k + 1,
                    k + 1
                )));
            }
        }
        Ok(Involution(images))
    }

    /// Product of disjoint transpositions `(a b)`.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Involution, FamilyError> {
        let mut img: Vec<usize> = (1..=n).collect();
        for &(a, b) in pairs {
            if !(1..=n).contains(&a) || !(1..=n).contains(&b) {
                return Err(FamilyError::InvalidClass(format!("transposition ({a} {b}) outside 1..{n}")));
            }
            img[a - 1] = b;
            img[b - 1] = a;
        }
        Involution::new(img)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(k, &x)| x == k + 1)
    }

    /// Unordered 2-cycles as `(smaller, larger)`, by smaller element.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (1..=self.n()).filter(|&i| i < self.apply(i)).map(|i| (i, self.apply(i))).collect()
    }

    /// `ρ σ ρ` for the half shift `ρ(i) = i + N/2 (mod N)`.
    pub fn half_shift_conjugate(&self) -> Involution {
        let n = self.n();
        let rho = |i: usize| if i <= n / 2 { i + n / 2 } else { i - n / 2 };
        let mut img = vec![0; n];
        for i in 1..=n {
            img[rho(i) - 1] = rho(self.apply(i));
        }
        Involution(img)
    }
}

impl TryFrom<Vec<usize>> for Involution {
    type Error = FamilyError;
    fn try_from(v: Vec<usize>) -> Result<Self, Self::Error> {
        Involution::new(v)
    }
}

impl From<Involution> for Vec<usize> {
    fn from(s: Involution) -> Vec<usize> {
        s.0
    }
}

impl fmt::Display for Involution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs = self.pairs();
        if pairs.is_empty() {
            return f.write_str("id");
        }
        for (a, b) in pairs {
            write!(f, "({a}{b})")?;
        }
        Ok(())
    }
}

/// Label of a symmetric solution: `0 <= l < r` and `2r <= N + l`, with
/// `σ(i) = N + l - i + 1` for `l < i <= r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "SymRaw")]
pub struct SymClass {
    #[serde(rename = "N")]
    pub n: usize,
    pub l: usize,
    pub r: usize,
}

#[derive(Deserialize)]
struct SymRaw {
    #[serde(rename = "N")]
    n: usize,
    l: usize,
    r: usize,
}

impl TryFrom<SymRaw> for SymClass {
    type Error = FamilyError;
    fn try_from(raw: SymRaw) -> Result<Self, Self::Error> {
        SymClass::new(raw.n, raw.l, raw.r)
    }
}

impl SymClass {
    pub fn new(n: usize, l: usize, r: usize) -> Result<SymClass, FamilyError> {
        if n < 2 {
            return Err(FamilyError::InvalidClass(format!("N >= 2 violated (N = {n})")));
        }
        if l >= r {
            return Err(FamilyError::InvalidClass(format!("l < r violated (l = {l}, r = {r})")));
        }
        if 2 * r > n + l {
            return Err(FamilyError::InvalidClass(format!(
                "r <= (N + l)/2 violated (N = {n}, l = {l}, r = {r})"
            )));
        }
        Ok(SymClass { n, l, r })
    }

    pub fn sigma(&self) -> Involution {
        let mut img: Vec<usize> = (1..=self.n).collect();
        for i in self.l + 1..=self.r {
            let j = self.n + self.l + 1 - i;
            img[i - 1] = j;
            img[j - 1] = i;
        }
        Involution(img)
    }
}

impl fmt::Display for SymClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sym N={} l={} r={}", self.n, self.l, self.r)
    }
}

/// Label of a triangular solution.
///
/// `eps` holds the ordered pairs `(i, σ(i))` whose unit matrix appears
/// with coefficient 1; exactly one orientation of every 2-cycle is listed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "TriRaw", into = "TriRaw")]
pub struct TriClass {
    pub n: usize,
    pub m: usize,
    pub sigma: Involution,
    pub eps: BTreeSet<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct TriRaw {
    #[serde(rename = "N")]
    n: usize,
    m: usize,
    #[serde(default)]
    sigma: Option<Vec<usize>>,
    #[serde(default)]
    eps: Vec<[usize; 2]>,
}

impl TryFrom<TriRaw> for TriClass {
    type Error = FamilyError;
    fn try_from(raw: TriRaw) -> Result<Self, Self::Error> {
        let sigma = match raw.sigma {
            Some(img) => {
                if img.len() != raw.n {
                    return Err(FamilyError::InvalidClass(format!("sigma must list {} images", raw.n)));
                }
                Involution::new(img)?
            }
            None => Involution::identity(raw.n),
        };
        TriClass::new(raw.n, raw.m, sigma, raw.eps.iter().map(|p| (p[0], p[1])).collect())
    }
}

impl From<TriClass> for TriRaw {
    fn from(c: TriClass) -> TriRaw {
        TriRaw {
            n: c.n,
            m: c.m,
            sigma: Some(c.sigma.into()),
            eps: c.eps.into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }
}

impl TriClass {
    /// Validates the full label, including the orientation rule for the
    /// first 2-cycle and, at `m = N/2`, the choice of representative.
    pub fn new(n: usize, m: usize, sigma: Involution, eps: BTreeSet<(usize, usize)>) -> Result<TriClass, FamilyError> {
        let c = TriClass::unchecked(n, m, sigma, eps)?;
        if n.is_multiple_of(2) && 2 * m == n {
            let other = c.sigma.half_shift_conjugate();
            if other < c.sigma {
                return Err(FamilyError::InvalidClass(format!(
                    "sigma = {} is related to the lexicographically smaller {}; use that representative",
                    c.sigma, other
                )));
            }
        }
        Ok(c)
    }

    /// Validation without the representative rule.
    pub fn unchecked(n: usize, m: usize, sigma: Involution, eps: BTreeSet<(usize, usize)>) -> Result<TriClass, FamilyError> {
        if n < 2 {
            return Err(FamilyError::InvalidClass(format!("N >= 2 violated (N = {n})")));
        }
        if sigma.n() != n {
            return Err(FamilyError::InvalidClass(format!("sigma acts on {} points, N = {n}", sigma.n())));
        }
        if 2 * m < n || m > n {
            return Err(FamilyError::InvalidClass(format!("N/2 <= m <= N violated (N = {n}, m = {m})")));
        }
        let pairs = sigma.pairs();
        for &(a, b) in &pairs {
            if a > m || b <= m {
                return Err(FamilyError::InvalidClass(format!(
                    "2-cycle ({a} {b}) must join some i <= m = {m} with some j > m"
                )));
            }
        }
        // for m < i < j moved by σ: σ(j) < σ(i)
        let moved: Vec<usize> = (m + 1..=n).filter(|&i| sigma.apply(i) != i).collect();
        for w in moved.windows(2) {
            if sigma.apply(w[1]) >= sigma.apply(w[0]) {
                return Err(FamilyError::InvalidClass(format!(
                    "0 < sigma(j) <= sigma(i) <= m violated for i = {}, j = {}",
                    w[0], w[1]
                )));
            }
        }
        for &(i, j) in &eps {
            if i == j || sigma.apply(i) != j {
                return Err(FamilyError::InvalidClass(format!("eps pair ({i}, {j}) is not a 2-cycle of sigma")));
            }
        }
        for &(a, b) in &pairs {
            let k = eps.contains(&(a, b)) as u8 + eps.contains(&(b, a)) as u8;
            if k != 1 {
                return Err(FamilyError::InvalidClass(format!(
                    "eps_({a},{b}) + eps_({b},{a}) = 1 violated"
                )));
            }
        }
        if let Some(&(j, sj)) = pairs.first() {
            if !eps.contains(&(j, sj)) {
                return Err(FamilyError::InvalidClass(format!(
                    "eps_({j},{sj}) = 1 is required for j = min{{i : i < sigma(i)}}"
                )));
            }
        }
        Ok(TriClass { n, m, sigma, eps })
    }

    pub fn eps(&self, i: usize, j: usize) -> bool {
        self.eps.contains(&(i, j))
    }

    /// `Q = Σ_{m<i<=N} (E_ii + ε_{iσ(i)} E_{iσ(i)} + ε_{σ(i)i} E_{σ(i)i})` as
    /// a list of `(row, col)` positions with unit coefficient.
    pub fn q_positions(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in self.m + 1..=self.n {
            out.push((i, i));
            let s = self.sigma.apply(i);
            if s != i {
                if self.eps(i, s) {
                    out.push((i, s));
                }
                if self.eps(s, i) {
                    out.push((s, i));
                }
            }
        }
        out
    }
}

impl fmt::Display for TriClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tri N={} m={} sigma={}", self.n, self.m, self.sigma)?;
        if !self.eps.is_empty() {
            let e: Vec<String> = self.eps.iter().map(|(a, b)| format!("{a}{b}")).collect();
            write!(f, " eps={}", e.join(","))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TwistedKind {
    QOnsager,
    AntiDiag,
    PairSwap,
    HalfShift,
}

impl TwistedKind {
    pub const ALL: [TwistedKind; 4] =
        [TwistedKind::QOnsager, TwistedKind::AntiDiag, TwistedKind::PairSwap, TwistedKind::HalfShift];

    pub fn needs_even(self) -> bool {
        matches!(self, TwistedKind::PairSwap | TwistedKind::HalfShift)
    }

    pub fn label(self) -> &'static str {
        match self {
            TwistedKind::QOnsager => "q-onsager",
            TwistedKind::AntiDiag => "anti-diag",
            TwistedKind::PairSwap => "pair-swap",
            TwistedKind::HalfShift => "half-shift",
        }
    }

    pub fn from_label(s: &str) -> Option<TwistedKind> {
        TwistedKind::ALL.into_iter().find(|k| k.label() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "TwistedRaw")]
pub struct TwistedClass {
    #[serde(rename = "N")]
    pub n: usize,
    pub kind: TwistedKind,
}

#[derive(Deserialize)]
struct TwistedRaw {
    #[serde(rename = "N")]
    n: usize,
    kind: TwistedKind,
}

impl TryFrom<TwistedRaw> for TwistedClass {
    type Error = FamilyError;
    fn try_from(raw: TwistedRaw) -> Result<Self, Self::Error> {
        TwistedClass::new(raw.n, raw.kind)
    }
}

impl TwistedClass {
    pub fn new(n: usize, kind: TwistedKind) -> Result<TwistedClass, FamilyError> {
        if n < 2 {
            return Err(FamilyError::InvalidClass(format!("N >= 2 violated (N = {n})")));
        }
        if kind.needs_even() && n % 2 == 1 {
            return Err(FamilyError::Parity { kind: kind.label(), n });
        }
        Ok(TwistedClass { n, kind })
    }
}

impl fmt::Display for TwistedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "twisted N={} {}", self.n, self.kind.label())
    }
}

/// Any class label, tagged by family in JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum ClassLabel {
    Sym(SymClass),
    Tri(TriClass),
    Twisted(TwistedClass),
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassLabel::Sym(c) => c.fmt(f),
            ClassLabel::Tri(c) => c.fmt(f),
            ClassLabel::Twisted(c) => c.fmt(f),
        }
    }
}

/// All `(l, r)` with `0 <= l < r` and `2r <= N + l`, ordered by `l` then `r`.
pub fn enum_sym_classes(n: usize) -> Vec<SymClass> {
    let mut out = Vec::new();
    for l in 0..n {
        for r in l + 1..=n {
            if 2 * r <= n + l {
                out.push(SymClass { n, l, r });
            }
        }
    }
    out
}

fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (idx, &x) in items.iter().enumerate() {
        for mut rest in subsets(&items[idx + 1..], k - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

/// All triangular labels with the related-involution quotient applied at
/// `m = N/2`; ordered by `m` descending, then `σ`, then `eps`.
pub fn enum_tri_classes(n: usize) -> Vec<TriClass> {
    let mut out = Vec::new();
    for m in (n.div_ceil(2)..=n).rev() {
        let upper: Vec<usize> = (m + 1..=n).collect();
        let lower: Vec<usize> = (1..=m).collect();
        let mut block = Vec::new();
        for k in 0..=upper.len().min(lower.len()) {
            for a in subsets(&upper, k) {
                for b in subsets(&lower, k) {
                    // the increasing upper points map to decreasing lower points
                    let pairs: Vec<(usize, usize)> = a.iter().copied().zip(b.iter().rev().copied()).collect();
                    let Ok(sigma) = Involution::from_pairs(n, &pairs) else { continue };
                    let cycles = sigma.pairs();
                    for mask in 0..(1usize << k.saturating_sub(1)) {
                        let mut eps = BTreeSet::new();
                        for (idx, &(lo, hi)) in cycles.iter().enumerate() {
                            let upper_orientation = idx == 0 || (mask >> (idx - 1)) & 1 == 0;
                            eps.insert(if upper_orientation { (lo, hi) } else { (hi, lo) });
                        }
                        if let Ok(c) = TriClass::new(n, m, sigma.clone(), eps) {
                            block.push(c);
                        }
                    }
                }
            }
        }
        block.sort_by(|x, y| (&x.sigma, &x.eps).cmp(&(&y.sigma, &y.eps)));
        out.extend(block);
    }
    out
}

pub fn enum_twisted_classes(n: usize) -> Vec<TwistedClass> {
    TwistedKind::ALL.into_iter().filter_map(|k| TwistedClass::new(n, k).ok()).collect()
}
