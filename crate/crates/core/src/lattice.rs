//! Divisor and curve classes on the blow-up `X^n_s` of projective n-space at
//! `s` general points, with the Dolgachev–Mukai pairing and the action of
//! standard Cremona transformations.
//!
//! A divisor `dH - Σ m_i E_i` is stored as `(d; m_1..m_s)`; a curve
//! `δh¹ - Σ μ_i e_i¹` as `(δ; μ_1..μ_s)`. Point indices are 1-based in every
//! public interface.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sorted, duplicate-free set of 1-based point indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    /// Builds an index set, sorting the input. Duplicates and zero are rejected.
    pub fn new(mut indices: Vec<usize>) -> Result<Self> {
        indices.sort_unstable();
        if indices.first() == Some(&0) {
            return Err(Error::InvalidIndexSet("indices are 1-based".into()));
        }
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidIndexSet(format!("duplicate index in {indices:?}")));
        }
        Ok(IndexSet(indices))
    }

    pub fn from_slice(indices: &[usize]) -> Result<Self> {
        Self::new(indices.to_vec())
    }

    /// Checks that every index is at most `s`.
    pub fn check_bound(&self, s: usize) -> Result<()> {
        match self.0.last() {
            Some(&max) if max > s => Err(Error::InvalidIndexSet(format!(
                "index {max} out of range 1..={s}"
            ))),
            _ => Ok(()),
        }
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

impl TryFrom<Vec<usize>> for IndexSet {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        IndexSet::new(v)
    }
}

impl From<IndexSet> for Vec<usize> {
    fn from(set: IndexSet) -> Self {
        set.0
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.iter().join(","))
    }
}

impl FromStr for IndexSet {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches(['{', '[']).trim_end_matches(['}', ']']);
        let indices = parse_list::<usize>(trimmed)?;
        IndexSet::new(indices)
    }
}

/// All `k`-element subsets of `{1..s}` in lexicographic order.
pub fn index_sets(s: usize, k: usize) -> Vec<IndexSet> {
    (1..=s).combinations(k).map(IndexSet).collect()
}

/// A divisor class `dH - Σ m_i E_i` in `Pic(X^n_s)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ClassJson", into = "ClassJson")]
pub struct DivisorClass {
    n: usize,
    d: i64,
    m: Vec<i64>,
}

/// A curve class `δh¹ - Σ μ_i e_i¹` in `A^{n-1}(X^n_s)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ClassJson", into = "ClassJson")]
pub struct CurveClass {
    n: usize,
    delta: i64,
    mu: Vec<i64>,
}

fn check_dimension(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidAmbient(format!("dimension n={n} must be at least 2")));
    }
    Ok(())
}

impl DivisorClass {
    pub fn new(n: usize, d: i64, m: Vec<i64>) -> Result<Self> {
        check_dimension(n)?;
        Ok(DivisorClass { n, d, m })
    }

    /// `dH` with all multiplicities zero.
    pub fn hyperplane_multiple(n: usize, s: usize, d: i64) -> Result<Self> {
        Self::new(n, d, vec![0; s])
    }

    /// The exceptional divisor `E_i` (1-based `i`).
    pub fn exceptional(n: usize, s: usize, i: usize) -> Result<Self> {
        if i == 0 || i > s {
            return Err(Error::InvalidIndexSet(format!("index {i} out of range 1..={s}")));
        }
        let mut m = vec![0; s];
        m[i - 1] = -1;
        Self::new(n, 0, m)
    }

    /// The hyperplane `H - Σ_{i∈J} E_i` through the points of `J`.
    pub fn linear(n: usize, s: usize, support: &IndexSet) -> Result<Self> {
        support.check_bound(s)?;
        let mut m = vec![0; s];
        for i in support.iter() {
            m[i - 1] = 1;
        }
        Self::new(n, 1, m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> usize {
        self.m.len()
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn m(&self) -> &[i64] {
        &self.m
    }

    /// Multiplicity at the 1-based point `i`.
    pub fn mult(&self, i: usize) -> i64 {
        self.m[i - 1]
    }

    /// Same class with negative multiplicities replaced by zero.
    pub fn clamped(&self) -> DivisorClass {
        DivisorClass {
            n: self.n,
            d: self.d,
            m: self.m.iter().map(|&x| x.max(0)).collect(),
        }
    }

    /// Degree followed by multiplicities sorted in descending order. Two
    /// classes differ by a permutation of the points iff their keys agree.
    pub fn canonical_key(&self) -> (i64, Vec<i64>) {
        let mut m = self.m.clone();
        m.sort_unstable_by(|a, b| b.cmp(a));
        (self.d, m)
    }

    /// Coordinates `(d, m_1, .., m_s)`.
    pub fn coords(&self) -> Vec<i64> {
        std::iter::once(self.d).chain(self.m.iter().copied()).collect()
    }

    pub fn scale(&self, k: i64) -> DivisorClass {
        DivisorClass {
            n: self.n,
            d: k * self.d,
            m: self.m.iter().map(|x| k * x).collect(),
        }
    }

    pub fn add(&self, other: &DivisorClass) -> Result<DivisorClass> {
        same_ambient(self.n, self.s(), other.n, other.s())?;
        Ok(DivisorClass {
            n: self.n,
            d: self.d + other.d,
            m: self.m.iter().zip(&other.m).map(|(a, b)| a + b).collect(),
        })
    }

    /// Applies a permutation of the points: `perm[k]` is the 1-based index
    /// receiving the multiplicity currently at position `k + 1`.
    pub fn permuted(&self, perm: &[usize]) -> DivisorClass {
        let mut m = vec![0; self.s()];
        for (k, &target) in perm.iter().enumerate() {
            m[target - 1] = self.m[k];
        }
        DivisorClass { n: self.n, d: self.d, m }
    }
}

impl CurveClass {
    pub fn new(n: usize, delta: i64, mu: Vec<i64>) -> Result<Self> {
        check_dimension(n)?;
        Ok(CurveClass { n, delta, mu })
    }

    /// The general line class `h¹`.
    pub fn line(n: usize, s: usize) -> Result<Self> {
        Self::new(n, 1, vec![0; s])
    }

    /// The class `δh¹ - Σ_{i∈J} e_i¹`.
    pub fn through(n: usize, s: usize, delta: i64, support: &IndexSet) -> Result<Self> {
        support.check_bound(s)?;
        let mut mu = vec![0; s];
        for i in support.iter() {
            mu[i - 1] = 1;
        }
        Self::new(n, delta, mu)
    }

    /// The line `L_ij = h¹ - e_i¹ - e_j¹`.
    pub fn line_through(n: usize, s: usize, i: usize, j: usize) -> Result<Self> {
        Self::through(n, s, 1, &IndexSet::new(vec![i, j])?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> usize {
        self.mu.len()
    }

    pub fn delta(&self) -> i64 {
        self.delta
    }

    pub fn mu(&self) -> &[i64] {
        &self.mu
    }

    pub fn mult(&self, i: usize) -> i64 {
        self.mu[i - 1]
    }

    pub fn canonical_key(&self) -> (i64, Vec<i64>) {
        let mut mu = self.mu.clone();
        mu.sort_unstable_by(|a, b| b.cmp(a));
        (self.delta, mu)
    }

    pub fn add(&self, other: &CurveClass) -> Result<CurveClass> {
        same_ambient(self.n, self.s(), other.n, other.s())?;
        Ok(CurveClass {
            n: self.n,
            delta: self.delta + other.delta,
            mu: self.mu.iter().zip(&other.mu).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn neg(&self) -> CurveClass {
        CurveClass {
            n: self.n,
            delta: -self.delta,
            mu: self.mu.iter().map(|x| -x).collect(),
        }
    }

    pub fn permuted(&self, perm: &[usize]) -> CurveClass {
        let mut mu = vec![0; self.s()];
        for (k, &target) in perm.iter().enumerate() {
            mu[target - 1] = self.mu[k];
        }
        CurveClass { n: self.n, delta: self.delta, mu }
    }
}

fn same_ambient(n1: usize, s1: usize, n2: usize, s2: usize) -> Result<()> {
    if n1 != n2 || s1 != s2 {
        return Err(Error::IncompatibleAmbient { n1, s1, n2, s2 });
    }
    Ok(())
}

fn check_cremona_set(n: usize, s: usize, set: &IndexSet) -> Result<()> {
    if set.len() != n + 1 {
        return Err(Error::InvalidIndexSet(format!(
            "a standard Cremona transformation in dimension {n} needs {} indices, got {set}",
            n + 1
        )));
    }
    set.check_bound(s)
}

/// Dolgachev–Mukai pairing `(n-1)·d·d' - Σ m_i m_i'`.
pub fn dm_pairing(a: &DivisorClass, b: &DivisorClass) -> Result<i64> {
    same_ambient(a.n, a.s(), b.n, b.s())?;
    let dot: i64 = a.m.iter().zip(&b.m).map(|(x, y)| x * y).sum();
    Ok((a.n as i64 - 1) * a.d * b.d - dot)
}

/// `-K = (n+1)H - (n-1)ΣE_i`.
pub fn anticanonical(n: usize, s: usize) -> Result<DivisorClass> {
    DivisorClass::new(n, n as i64 + 1, vec![n as i64 - 1; s])
}

/// Action of `Cr_I` on a divisor class.
pub fn cremona_divisor(class: &DivisorClass, set: &IndexSet) -> Result<DivisorClass> {
    check_cremona_set(class.n, class.s(), set)?;
    let c = cremona_excess(class, set);
    let mut m = class.m.clone();
    for i in set.iter() {
        m[i - 1] -= c;
    }
    Ok(DivisorClass { n: class.n, d: class.d - c, m })
}

/// `c = Σ_{i∈I} m_i - (n-1)d`; no size check.
pub fn cremona_excess(class: &DivisorClass, set: &IndexSet) -> i64 {
    let sum: i64 = set.iter().map(|i| class.m[i - 1]).sum();
    sum - (class.n as i64 - 1) * class.d
}

/// Action of `Cr_J` on a curve class, for `n ∈ {3, 4}`:
/// `δ' = nδ - (n-1)σ` and `μ_j' = δ - σ + μ_j` on `J`, with `σ = Σ_{j∈J} μ_j`.
pub fn cremona_curve(class: &CurveClass, set: &IndexSet) -> Result<CurveClass> {
    if !(3..=4).contains(&class.n) {
        return Err(Error::Unsupported(format!(
            "curve Cremona action is only available for n = 3, 4 (got n = {})",
            class.n
        )));
    }
    check_cremona_set(class.n, class.s(), set)?;
    let n = class.n as i64;
    let sigma: i64 = set.iter().map(|j| class.mu[j - 1]).sum();
    let mut mu = class.mu.clone();
    for j in set.iter() {
        mu[j - 1] = class.delta - sigma + class.mu[j - 1];
    }
    Ok(CurveClass {
        n: class.n,
        delta: n * class.delta - (n - 1) * sigma,
        mu,
    })
}

/// Intersection number `D·C = dδ - Σ m_i μ_i`.
pub fn intersect_div_curve(divisor: &DivisorClass, curve: &CurveClass) -> Result<i64> {
    same_ambient(divisor.n, divisor.s(), curve.n, curve.s())?;
    let dot: i64 = divisor.m.iter().zip(&curve.mu).map(|(x, y)| x * y).sum();
    Ok(divisor.d * curve.delta - dot)
}

/// Result of greedy Cremona reduction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reduction {
    pub class: DivisorClass,
    pub steps: Vec<IndexSet>,
    /// Set when the walk reached `d < 0` or some `m_i > d ≥ 0`, which
    /// certifies that the input is not effective.
    pub non_effective: bool,
}

/// Repeatedly applies `Cr_I` for the lexicographically first `I` of maximal
/// excess `c > 0` until the class is Cremona reduced or visibly non-effective.
pub fn cremona_reduce(class: &DivisorClass) -> Reduction {
    let n = class.n;
    let s = class.s();
    let mut current = class.clone();
    let mut steps = Vec::new();
    if s < n + 1 {
        let non_effective = obviously_non_effective(&current);
        return Reduction { class: current, steps, non_effective };
    }
    let sets = index_sets(s, n + 1);
    loop {
        if obviously_non_effective(&current) {
            return Reduction { class: current, steps, non_effective: true };
        }
        let mut best: Option<(i64, &IndexSet)> = None;
        for set in &sets {
            let c = cremona_excess(&current, set);
            if best.is_none_or(|(b, _)| c > b) {
                best = Some((c, set));
            }
        }
        match best {
            Some((c, set)) if c > 0 => {
                current = cremona_divisor(&current, set).expect("set size checked");
                steps.push(set.clone());
            }
            _ => return Reduction { class: current, steps, non_effective: false },
        }
    }
}

fn obviously_non_effective(class: &DivisorClass) -> bool {
    class.d < 0 || class.m.iter().any(|&m| m > class.d)
}

/// True when `c ≤ 0` for every index set of size `n+1`.
pub fn is_cremona_reduced(class: &DivisorClass) -> bool {
    let n = class.n;
    if class.s() < n + 1 {
        return true;
    }
    // The largest excess comes from the n+1 largest multiplicities.
    let (_, sorted) = class.canonical_key();
    let top: i64 = sorted[..=n].iter().sum();
    top - (n as i64 - 1) * class.d <= 0
}

/// A linear cycle `L_{I_1}` that `Cr_I(D)` contains `multiplicity` times.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtraComponent {
    pub support: IndexSet,
    pub multiplicity: i64,
}

impl ExtraComponent {
    /// Dimension of the linear span of the support points.
    pub fn dimension(&self) -> usize {
        self.support.len() - 1
    }
}

/// Linear cycles of the indeterminacy locus of `Cr_I` acquired by `Cr_I(D)`:
/// for each split `I = I_1 ⊔ I_2` with `|I_1| = m+1`, `1 ≤ m ≤ n-1`, the
/// m-plane `L_{I_1}` appears `a = (n-m-1)d - Σ_{I_2} m_i` times when `a ≥ 1`.
pub fn cremona_extra_components(class: &DivisorClass, set: &IndexSet) -> Result<Vec<ExtraComponent>> {
    let n = class.n;
    check_cremona_set(n, class.s(), set)?;
    let mut out = Vec::new();
    for dim in 1..n {
        for second in set.as_slice().iter().copied().combinations(n - dim) {
            let a = (n - dim) as i64 * class.d
                - class.d
                - second.iter().map(|&i| class.m[i - 1]).sum::<i64>();
            if a >= 1 {
                let first = set.iter().filter(|i| !second.contains(i)).collect();
                out.push(ExtraComponent {
                    support: IndexSet(first),
                    multiplicity: a,
                });
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Text and JSON formats
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum ClassJson {
    Divisor { n: usize, s: usize, d: i64, m: Vec<i64> },
    Curve { n: usize, s: usize, delta: i64, mu: Vec<i64> },
}

impl From<DivisorClass> for ClassJson {
    fn from(c: DivisorClass) -> Self {
        ClassJson::Divisor { n: c.n, s: c.s(), d: c.d, m: c.m }
    }
}

impl From<CurveClass> for ClassJson {
    fn from(c: CurveClass) -> Self {
        ClassJson::Curve { n: c.n, s: c.s(), delta: c.delta, mu: c.mu }
    }
}

impl TryFrom<ClassJson> for DivisorClass {
    type Error = Error;
    fn try_from(json: ClassJson) -> Result<Self> {
        match json {
            ClassJson::Divisor { n, s, d, m } => {
                check_len(s, m.len())?;
                DivisorClass::new(n, d, m)
            }
            ClassJson::Curve { .. } => Err(Error::Parse("expected kind \"divisor\"".into())),
        }
    }
}

impl TryFrom<ClassJson> for CurveClass {
    type Error = Error;
    fn try_from(json: ClassJson) -> Result<Self> {
        match json {
            ClassJson::Curve { n, s, delta, mu } => {
                check_len(s, mu.len())?;
                CurveClass::new(n, delta, mu)
            }
            ClassJson::Divisor { .. } => Err(Error::Parse("expected kind \"curve\"".into())),
        }
    }
}

fn check_len(s: usize, len: usize) -> Result<()> {
    if s != len {
        return Err(Error::Parse(format!("s={s} but {len} multiplicities given")));
    }
    Ok(())
}

fn parse_list<T: FromStr>(text: &str) -> Result<Vec<T>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<T>()
                .map_err(|_| Error::Parse(format!("bad list entry {tok:?}")))
        })
        .collect()
}

/// Parses `key=value` tokens separated by whitespace.
fn parse_fields<'a>(text: &'a str, keys: &[&str]) -> Result<Vec<&'a str>> {
    let mut values: Vec<Option<&str>> = vec![None; keys.len()];
    for token in text.split_whitespace() {
        let (key, value) = token
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected key=value, got {token:?}")))?;
        let slot = keys
            .iter()
            .position(|k| *k == key)
            .ok_or_else(|| Error::Parse(format!("unknown key {key:?}")))?;
        if values[slot].replace(value).is_some() {
            return Err(Error::Parse(format!("duplicate key {key:?}")));
        }
    }
    keys.iter()
        .zip(values)
        .map(|(k, v)| v.ok_or_else(|| Error::Parse(format!("missing key {k:?}"))))
        .collect()
}

fn parse_scalar<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::Parse(format!("bad value for {key}: {value:?}")))
}

impl FromStr for DivisorClass {
    type Err = Error;

    /// Accepts `n=3 s=7 d=4 m=3,2,2,2,2,2,2` or the JSON object form.
    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.starts_with('{') {
            return serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()));
        }
        let f = parse_fields(text, &["n", "s", "d", "m"])?;
        let m = parse_list(f[3])?;
        check_len(parse_scalar("s", f[1])?, m.len())?;
        DivisorClass::new(parse_scalar("n", f[0])?, parse_scalar("d", f[2])?, m)
    }
}

impl FromStr for CurveClass {
    type Err = Error;

    /// Accepts `n=4 s=8 delta=1 mu=1,1,0,0,0,0,0,0` or the JSON object form.
    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.starts_with('{') {
            return serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()));
        }
        let f = parse_fields(text, &["n", "s", "delta", "mu"])?;
        let mu = parse_list(f[3])?;
        check_len(parse_scalar("s", f[1])?, mu.len())?;
        CurveClass::new(parse_scalar("n", f[0])?, parse_scalar("delta", f[2])?, mu)
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} s={} d={} m={}", self.n, self.s(), self.d, self.m.iter().join(","))
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} s={} delta={} mu={}",
            self.n,
            self.s(),
            self.delta,
            self.mu.iter().join(",")
        )
    }
}

/// Human-readable `2H - 2E1 - E2 ...` rendering.
pub fn pretty_divisor(class: &DivisorClass) -> String {
    pretty(class.d, &class.m, "H", "E")
}

/// Human-readable `4h - e1 - ...` rendering.
pub fn pretty_curve(class: &CurveClass) -> String {
    pretty(class.delta, &class.mu, "h", "e")
}

fn pretty(lead: i64, mults: &[i64], h: &str, e: &str) -> String {
    let mut out = String::new();
    if lead != 0 {
        out.push_str(&coefficient(lead, h));
    }
    for (i, &m) in mults.iter().enumerate() {
        if m == 0 {
            continue;
        }
        let term = coefficient(m.abs(), &format!("{e}{}", i + 1));
        let sign = if m > 0 { '-' } else { '+' };
        if out.is_empty() {
            if m > 0 {
                out.push('-');
            }
            out.push_str(&term);
        } else {
            out.push_str(&format!(" {sign} {term}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn coefficient(c: i64, symbol: &str) -> String {
    match c {
        1 => symbol.to_string(),
        -1 => format!("-{symbol}"),
        _ => format!("{c}{symbol}"),
    }
}
