//! Intersection products on `X^4_{8,(1)}`, the blow-up of `X^4_8` along the
//! 28 lines `L_ij` and the 8 rational normal quartics `C_î`.
//!
//! Degree-one classes are combinations of `H, E_i, E_ij, E_{C_î}`; products
//! land in `A^2` with free basis `h, e_i, e_ij, f_ij, e_{C_î}, f_{C_î}`.
//! The multiplication table on point and line exceptionals is the standard
//! one; for the quartic exceptionals:
//!
//! ```text
//! H·E_C(î)      = 4 f_C(î)
//! E_j·E_C(î)    = f_C(î)  for j ≠ i,   0 for j = i
//! E_jk·E_C(î)   = 0
//! E_C(î)·E_C(ĵ) = 0       for i ≠ j
//! E_C(î)²       = -e_C(î) - f_C(î)
//! ```

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::baselocus::mult_surface;
use crate::error::{Error, Result};
use crate::lattice::{intersect_div_curve, CurveClass, DivisorClass, IndexSet};
use crate::weyl::{SurfaceKind, WeylSurface};

pub const POINTS: usize = 8;
pub const PAIRS: usize = 28;

/// Degree of the rational normal quartic.
const QUARTIC_DEGREE: i64 = 4;
/// Coefficient of `f_C` in `E_C²`.
const QUARTIC_NORMAL_TWIST: i64 = 1;

/// Position of the pair `{i, j}` (1-based, any order) in the lexicographic
/// list `12, 13, .., 78`.
pub fn pair_index(i: usize, j: usize) -> usize {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    assert!(a >= 1 && b <= POINTS && a < b, "bad pair ({i}, {j})");
    // pairs starting with 1..a-1 come first
    (a - 1) * (2 * POINTS - a) / 2 + (b - a - 1)
}

/// The 1-based pair at a given position.
pub fn pair_at(index: usize) -> (usize, usize) {
    let mut k = 0;
    for a in 1..POINTS {
        for b in a + 1..=POINTS {
            if k == index {
                return (a, b);
            }
            k += 1;
        }
    }
    panic!("pair index {index} out of range");
}

/// Degree-one class on `X^4_{8,(1)}`: `D - Σ k_ij E_ij - Σ k_C(î) E_C(î)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtPicClass {
    pub base: DivisorClass,
    pub k_line: [i64; PAIRS],
    pub k_curve: [i64; POINTS],
}

impl ExtPicClass {
    /// Pullback of a class from `X^4_8` with no exceptional correction.
    pub fn pullback(base: DivisorClass) -> Result<Self> {
        check_ambient(&base)?;
        Ok(ExtPicClass { base, k_line: [0; PAIRS], k_curve: [0; POINTS] })
    }

    pub fn add(&self, other: &ExtPicClass) -> Result<ExtPicClass> {
        let mut out = self.clone();
        out.base = self.base.add(&other.base)?;
        for (a, b) in out.k_line.iter_mut().zip(&other.k_line) {
            *a += b;
        }
        for (a, b) in out.k_curve.iter_mut().zip(&other.k_curve) {
            *a += b;
        }
        Ok(out)
    }

    pub fn scale(&self, k: i64) -> ExtPicClass {
        ExtPicClass {
            base: self.base.scale(k),
            k_line: self.k_line.map(|x| k * x),
            k_curve: self.k_curve.map(|x| k * x),
        }
    }

    /// Coefficients on `H`, `E_i`, `E_ij`, `E_C(î)`.
    fn coefficients(&self) -> (i64, [i64; POINTS], [i64; PAIRS], [i64; POINTS]) {
        let mut e = [0; POINTS];
        for (slot, m) in e.iter_mut().zip(self.base.m()) {
            *slot = -m;
        }
        (self.base.d(), e, self.k_line.map(|k| -k), self.k_curve.map(|k| -k))
    }
}

fn check_ambient(class: &DivisorClass) -> Result<()> {
    if class.n() != 4 || class.s() != POINTS {
        return Err(Error::InvalidAmbient(format!(
            "the further blow-up is defined over X^4_8, got n={} s={}",
            class.n(),
            class.s()
        )));
    }
    Ok(())
}

/// The rational normal quartic `C_î` through every point except `i`.
pub fn quartic(i: usize) -> CurveClass {
    let mut mu = vec![1; POINTS];
    mu[i - 1] = 0;
    CurveClass::new(4, QUARTIC_DEGREE, mu).expect("valid ambient")
}

/// Strict transform of `D` on `X^4_{8,(1)}`, subtracting each line and
/// quartic exceptional with its base-locus multiplicity in `D`.
pub fn strict_transform(divisor: &DivisorClass) -> Result<ExtPicClass> {
    check_ambient(divisor)?;
    let mut k_line = [0; PAIRS];
    for (idx, slot) in k_line.iter_mut().enumerate() {
        let (i, j) = pair_at(idx);
        let line = CurveClass::line_through(4, POINTS, i, j)?;
        *slot = (-intersect_div_curve(divisor, &line)?).max(0);
    }
    let mut k_curve = [0; POINTS];
    for (idx, slot) in k_curve.iter_mut().enumerate() {
        *slot = (-intersect_div_curve(divisor, &quartic(idx + 1))?).max(0);
    }
    Ok(ExtPicClass { base: divisor.clone(), k_line, k_curve })
}

/// Class in `A^2(X^4_{8,(1)})` on the free basis
/// `h, e_i, e_ij, f_ij, e_C(î), f_C(î)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct TwoCycleClass {
    pub h: i64,
    pub e: [i64; POINTS],
    pub e_line: [i64; PAIRS],
    pub f_line: [i64; PAIRS],
    pub e_curve: [i64; POINTS],
    pub f_curve: [i64; POINTS],
}

/// Number of coordinates of a [`TwoCycleClass`].
pub const TWO_CYCLE_DIM: usize = 1 + POINTS + 2 * PAIRS + 2 * POINTS;

impl TwoCycleClass {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `h - Σ_{i∈J} e_i - Σ_{pairs in J} (e_ij - f_ij)`, the class of the plane
    /// through three points.
    pub fn plane(support: &IndexSet) -> Self {
        let mut z = TwoCycleClass { h: 1, ..Default::default() };
        for i in support.iter() {
            z.e[i - 1] -= 1;
        }
        z.sub_line_pairs(support.as_slice(), 1);
        z
    }

    /// Subtracts `c·(e_ij - f_ij)` for every pair inside `points`.
    fn sub_line_pairs(&mut self, points: &[usize], c: i64) {
        for (a, &i) in points.iter().enumerate() {
            for &j in &points[a + 1..] {
                self.sub_line(i, j, c);
            }
        }
    }

    fn sub_line(&mut self, i: usize, j: usize, c: i64) {
        let p = pair_index(i, j);
        self.e_line[p] -= c;
        self.f_line[p] += c;
    }

    fn sub_curve(&mut self, i: usize, c: i64) {
        self.e_curve[i - 1] -= c;
        self.f_curve[i - 1] += c;
    }

    /// Chow class of the strict transform of a Weyl surface.
    pub fn of_surface(kind: SurfaceKind, indices: &[usize]) -> Self {
        let all: Vec<usize> = (1..=POINTS).collect();
        let others = |skip: &[usize]| -> Vec<usize> {
            all.iter().copied().filter(|i| !skip.contains(i)).collect()
        };
        let mut z = TwoCycleClass::zero();
        match kind {
            SurfaceKind::S1 => {
                return TwoCycleClass::plane(&IndexSet::from_slice(indices).expect("3 indices"));
            }
            SurfaceKind::S3 => {
                let (apex, missing) = (indices[0], indices[1]);
                z.h = 3;
                z.e[apex - 1] = -3;
                for k in others(&[apex, missing]) {
                    z.e[k - 1] = -1;
                    z.sub_line(apex, k, 1);
                }
                z.sub_curve(missing, 1);
            }
            SurfaceKind::S6 => {
                z.h = 6;
                let rest = others(indices);
                for &k in &rest {
                    z.e[k - 1] = -3;
                }
                for &k in indices {
                    z.e[k - 1] = -1;
                    z.sub_curve(k, 1);
                }
                z.sub_line_pairs(&rest, 1);
            }
            SurfaceKind::S10 => {
                let (a, b) = (indices[0], indices[1]);
                z.h = 10;
                z.e[a - 1] = -6;
                z.e[b - 1] = -6;
                z.sub_line(a, b, 3);
                for k in others(indices) {
                    z.e[k - 1] = -3;
                    z.sub_line(a, k, 1);
                    z.sub_line(b, k, 1);
                    z.sub_curve(k, 1);
                }
            }
            SurfaceKind::S15 => {
                let apex = indices[0];
                z.h = 15;
                let rest = others(indices);
                for &k in &rest {
                    z.e[k - 1] = -6;
                    z.sub_curve(k, 1);
                }
                z.e[apex - 1] = -3;
                z.sub_line_pairs(&rest, 1);
                z.sub_curve(apex, 3);
            }
        }
        z
    }

    /// Flat coordinate vector in the order h, e, e_line, f_line, e_curve, f_curve.
    pub fn coords(&self) -> Vec<i64> {
        let mut v = Vec::with_capacity(TWO_CYCLE_DIM);
        v.push(self.h);
        v.extend_from_slice(&self.e);
        v.extend_from_slice(&self.e_line);
        v.extend_from_slice(&self.f_line);
        v.extend_from_slice(&self.e_curve);
        v.extend_from_slice(&self.f_curve);
        v
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::zero()
    }

    pub fn scale(&self, k: i64) -> Self {
        TwoCycleClass {
            h: k * self.h,
            e: self.e.map(|x| k * x),
            e_line: self.e_line.map(|x| k * x),
            f_line: self.f_line.map(|x| k * x),
            e_curve: self.e_curve.map(|x| k * x),
            f_curve: self.f_curve.map(|x| k * x),
        }
    }
}

fn zip_add<const N: usize>(a: &mut [i64; N], b: &[i64; N], sign: i64) {
    for (x, y) in a.iter_mut().zip(b) {
        *x += sign * y;
    }
}

impl std::ops::Add for TwoCycleClass {
    type Output = TwoCycleClass;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl std::ops::AddAssign for TwoCycleClass {
    fn add_assign(&mut self, rhs: Self) {
        self.h += rhs.h;
        zip_add(&mut self.e, &rhs.e, 1);
        zip_add(&mut self.e_line, &rhs.e_line, 1);
        zip_add(&mut self.f_line, &rhs.f_line, 1);
        zip_add(&mut self.e_curve, &rhs.e_curve, 1);
        zip_add(&mut self.f_curve, &rhs.f_curve, 1);
    }
}

impl std::ops::Sub for TwoCycleClass {
    type Output = TwoCycleClass;
    fn sub(self, rhs: Self) -> Self {
        self + rhs.scale(-1)
    }
}

impl std::iter::Sum for TwoCycleClass {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(TwoCycleClass::zero(), |a, b| a + b)
    }
}

impl fmt::Display for TwoCycleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(i64, String)> = vec![(self.h, "h".into())];
        for (i, &c) in self.e.iter().enumerate() {
            terms.push((c, format!("e{}", i + 1)));
        }
        for p in 0..PAIRS {
            let (i, j) = pair_at(p);
            terms.push((self.e_line[p], format!("e{i}{j}")));
            terms.push((self.f_line[p], format!("f{i}{j}")));
        }
        for i in 0..POINTS {
            terms.push((self.e_curve[i], format!("eC{}", i + 1)));
            terms.push((self.f_curve[i], format!("fC{}", i + 1)));
        }
        let mut first = true;
        for (c, name) in terms.into_iter().filter(|(c, _)| *c != 0) {
            let sign = if c < 0 { "-" } else { "+" };
            let mag = if c.abs() == 1 { String::new() } else { c.abs().to_string() };
            if first {
                let lead = if c < 0 { "-" } else { "" };
                write!(f, "{lead}{mag}{name}")?;
                first = false;
            } else {
                write!(f, " {sign} {mag}{name}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TwoCycleJson {
    h: i64,
    e: Vec<i64>,
    e_line: BTreeMap<String, i64>,
    f_line: BTreeMap<String, i64>,
    e_curve: Vec<i64>,
    f_curve: Vec<i64>,
}

impl Serialize for TwoCycleClass {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let lines = |v: &[i64; PAIRS]| {
            (0..PAIRS)
                .map(|p| {
                    let (i, j) = pair_at(p);
                    (format!("{i}{j}"), v[p])
                })
                .collect::<BTreeMap<_, _>>()
        };
        TwoCycleJson {
            h: self.h,
            e: self.e.to_vec(),
            e_line: lines(&self.e_line),
            f_line: lines(&self.f_line),
            e_curve: self.e_curve.to_vec(),
            f_curve: self.f_curve.to_vec(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TwoCycleClass {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let json = TwoCycleJson::deserialize(deserializer)?;
        let points = |v: Vec<i64>, name: &str| -> std::result::Result<[i64; POINTS], D::Error> {
            v.try_into()
                .map_err(|_| D::Error::custom(format!("{name} must have {POINTS} entries")))
        };
        let lines = |map: BTreeMap<String, i64>| -> std::result::Result<[i64; PAIRS], D::Error> {
            let mut out = [0; PAIRS];
            for (key, value) in map {
                let digits: Vec<usize> = key
                    .chars()
                    .map(|c| c.to_digit(10).map(|d| d as usize))
                    .collect::<Option<_>>()
                    .ok_or_else(|| D::Error::custom(format!("bad pair key {key:?}")))?;
                match digits[..] {
                    [i, j] if i >= 1 && j <= POINTS && i < j => out[pair_index(i, j)] = value,
                    _ => return Err(D::Error::custom(format!("bad pair key {key:?}"))),
                }
            }
            Ok(out)
        };
        Ok(TwoCycleClass {
            h: json.h,
            e: points(json.e, "e")?,
            e_line: lines(json.e_line)?,
            f_line: lines(json.f_line)?,
            e_curve: points(json.e_curve, "e_curve")?,
            f_curve: points(json.f_curve, "f_curve")?,
        })
    }
}

/// Product of two degree-one classes, expanded bilinearly.
pub fn ext_product(a: &ExtPicClass, b: &ExtPicClass) -> TwoCycleClass {
    let (ah, ae, al, ac) = a.coefficients();
    let (bh, be, bl, bc) = b.coefficients();
    let mut z = TwoCycleClass { h: ah * bh, ..Default::default() };
    for i in 0..POINTS {
        z.e[i] = -ae[i] * be[i];
    }
    for p in 0..PAIRS {
        let (i, j) = pair_at(p);
        let (i, j) = (i - 1, j - 1);
        z.e_line[p] = -al[p] * bl[p];
        z.f_line[p] = ah * bl[p] + al[p] * bh
            + (ae[i] + ae[j]) * bl[p]
            + al[p] * (be[i] + be[j])
            - al[p] * bl[p];
    }
    for c in 0..POINTS {
        let a_others: i64 = (0..POINTS).filter(|&j| j != c).map(|j| ae[j]).sum();
        let b_others: i64 = (0..POINTS).filter(|&j| j != c).map(|j| be[j]).sum();
        z.e_curve[c] = -ac[c] * bc[c];
        z.f_curve[c] = QUARTIC_DEGREE * (ah * bc[c] + ac[c] * bh)
            + a_others * bc[c]
            + ac[c] * b_others
            - QUARTIC_NORMAL_TWIST * ac[c] * bc[c];
    }
    z
}

/// `D̃ · F̃` in `A^2(X^4_{8,(1)})`.
pub fn intersect_strict_transforms(d: &DivisorClass, f: &DivisorClass) -> Result<TwoCycleClass> {
    Ok(ext_product(&strict_transform(d)?, &strict_transform(f)?))
}

/// Surfaces and coefficients solving `Z = Σ c_S [S]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub components: Vec<(WeylSurface, i64)>,
    /// More than one nonnegative integer solution exists over the candidates.
    pub non_unique: bool,
}

impl Decomposition {
    pub fn labels(&self) -> Vec<String> {
        self.components.iter().map(|(s, _)| s.label()).collect()
    }
}

/// Writes `Z` as a nonnegative integer combination of the Chow classes of
/// the Weyl surfaces contained in both `D` and `F`.
pub fn decompose_two_cycle(
    z: &TwoCycleClass,
    d: &DivisorClass,
    f: &DivisorClass,
    surfaces: &[WeylSurface],
) -> Result<Decomposition> {
    check_ambient(d)?;
    check_ambient(f)?;
    if z.is_zero() {
        return Ok(Decomposition { components: Vec::new(), non_unique: false });
    }
    let mut candidates: Vec<&WeylSurface> = Vec::new();
    for s in surfaces {
        if mult_surface(d, s)? >= 1 && mult_surface(f, s)? >= 1 {
            candidates.push(s);
        }
    }
    let columns: Vec<Vec<i64>> = candidates.iter().map(|s| s.chow_class.coords()).collect();
    let (solution, non_unique) = solve_nonnegative_integer(&columns, &z.coords())
        .ok_or_else(|| Error::NoDecomposition(z.to_string()))?;
    let components = candidates
        .into_iter()
        .zip(solution)
        .filter(|(_, c)| *c > 0)
        .map(|(s, c)| (s.clone(), c))
        .collect();
    Ok(Decomposition { components, non_unique })
}

/// Finds `x ≥ 0` integral with `Σ x_j col_j = target`. Returns the first
/// solution found and whether another one exists.
fn solve_nonnegative_integer(columns: &[Vec<i64>], target: &[i64]) -> Option<(Vec<i64>, bool)> {
    let rows = target.len();
    let cols = columns.len();
    let q = |x: i64| BigRational::from_integer(BigInt::from(x));
    // augmented matrix [A | b] in reduced row echelon form
    let mut m: Vec<Vec<BigRational>> = (0..rows)
        .map(|r| {
            let mut row: Vec<BigRational> = columns.iter().map(|c| q(c[r])).collect();
            row.push(q(target[r]));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = BigRational::one() / &m[r][c];
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (v, pv) in m[i].iter_mut().zip(&pivot_row) {
                    *v -= &factor * pv;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    // Every Weyl surface has positive h-degree, so no coefficient exceeds the
    // h-coordinate of the target.
    let bound = target[0].max(0);
    let mut found: Vec<Vec<i64>> = Vec::new();
    let mut assignment = vec![0i64; free.len()];
    loop {
        let mut x = vec![0i64; cols];
        for (&fc, &v) in free.iter().zip(&assignment) {
            x[fc] = v;
        }
        let mut ok = true;
        for (row, &pc) in pivots.iter().enumerate() {
            let mut val = m[row][cols].clone();
            for (&fc, &v) in free.iter().zip(&assignment) {
                val -= &m[row][fc] * q(v);
            }
            if !val.is_integer() || val.is_negative() {
                ok = false;
                break;
            }
            x[pc] = val.to_integer().to_i64().expect("small coefficient");
        }
        if ok {
            found.push(x);
            if found.len() > 1 {
                break;
            }
        }
        // odometer over the free variables
        let mut k = 0;
        while k < assignment.len() {
            assignment[k] += 1;
            if assignment[k] <= bound {
                break;
            }
            assignment[k] = 0;
            k += 1;
        }
        if k == assignment.len() {
            break;
        }
    }
    let non_unique = found.len() > 1;
    found.into_iter().next().map(|x| (x, non_unique))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::weyl_surface_catalog;

    fn div(d: i64, m: [i64; 8]) -> DivisorClass {
        DivisorClass::new(4, d, m.to_vec()).unwrap()
    }

    fn set(v: &[usize]) -> IndexSet {
        IndexSet::from_slice(v).unwrap()
    }

    fn pure(d: DivisorClass) -> ExtPicClass {
        ExtPicClass::pullback(d).unwrap()
    }

    #[test]
    fn pair_indexing_is_lexicographic() {
        assert_eq!(pair_index(1, 2), 0);
        assert_eq!(pair_index(1, 8), 6);
        assert_eq!(pair_index(2, 3), 7);
        assert_eq!(pair_index(7, 8), 27);
        for p in 0..PAIRS {
            let (i, j) = pair_at(p);
            assert_eq!(pair_index(i, j), p);
            assert_eq!(pair_index(j, i), p);
        }
    }

    #[test]
    fn point_relations() {
        let h = pure(DivisorClass::hyperplane_multiple(4, 8, 1).unwrap());
        assert_eq!(ext_product(&h, &h), TwoCycleClass { h: 1, ..Default::default() });
        let e1 = pure(DivisorClass::exceptional(4, 8, 1).unwrap());
        let e2 = pure(DivisorClass::exceptional(4, 8, 2).unwrap());
        assert!(ext_product(&e1, &e2).is_zero());
        assert!(ext_product(&h, &e1).is_zero());
        let mut expected = TwoCycleClass::zero();
        expected.e[0] = -1;
        assert_eq!(ext_product(&e1, &e1), expected);
    }

    #[test]
    fn line_and_quartic_relations() {
        let h = pure(DivisorClass::hyperplane_multiple(4, 8, 1).unwrap());
        let zero = DivisorClass::hyperplane_multiple(4, 8, 0).unwrap();
        let mut e12 = pure(zero.clone());
        e12.k_line[pair_index(1, 2)] = -1;
        let mut e34 = pure(zero.clone());
        e34.k_line[pair_index(3, 4)] = -1;
        let mut c8 = pure(zero);
        c8.k_curve[7] = -1;
        let e1 = pure(DivisorClass::exceptional(4, 8, 1).unwrap());
        let e8 = pure(DivisorClass::exceptional(4, 8, 8).unwrap());

        let p12 = pair_index(1, 2);
        assert_eq!(ext_product(&h, &e12).f_line[p12], 1);
        assert_eq!(ext_product(&e1, &e12).f_line[p12], 1);
        assert!(ext_product(&e8, &e12).is_zero());
        assert!(ext_product(&e12, &e34).is_zero());
        let sq = ext_product(&e12, &e12);
        assert_eq!((sq.e_line[p12], sq.f_line[p12]), (-1, -1));

        assert_eq!(ext_product(&h, &c8).f_curve[7], 4);
        assert_eq!(ext_product(&e1, &c8).f_curve[7], 1);
        assert!(ext_product(&e8, &c8).is_zero());
        assert!(ext_product(&e12, &c8).is_zero());
        let sq = ext_product(&c8, &c8);
        assert_eq!((sq.e_curve[7], sq.f_curve[7]), (-1, -1));
    }

    #[test]
    fn strict_transform_of_d1() {
        let d1 = div(2, [2, 1, 2, 1, 1, 1, 1, 0]);
        let t = strict_transform(&d1).unwrap();
        for p in 0..PAIRS {
            let (i, j) = pair_at(p);
            let expected = match (i, j) {
                (1, 3) => 2,
                (1, k) | (3, k) if [2, 4, 5, 6, 7].contains(&k) => 1,
                (2, 3) => 1,
                _ => 0,
            };
            assert_eq!(t.k_line[p], expected, "pair {i}{j}");
        }
        assert_eq!(t.k_curve, [0, 0, 0, 0, 0, 0, 0, 1]);
    }

    #[test]
    fn strict_transform_of_f2() {
        let f2 = div(3, [2, 3, 2, 2, 2, 1, 1, 1]);
        let t = strict_transform(&f2).unwrap();
        for p in 0..PAIRS {
            let (i, j) = pair_at(p);
            let expected = if i == 2 || j == 2 {
                let other = if i == 2 { j } else { i };
                if [1, 3, 4, 5].contains(&other) { 2 } else { 1 }
            } else if [1, 3, 4, 5].contains(&i) && [1, 3, 4, 5].contains(&j) {
                1
            } else {
                0
            };
            assert_eq!(t.k_line[p], expected, "pair {i}{j}");
        }
        assert_eq!(t.k_curve, [0, 0, 0, 0, 0, 1, 1, 1]);

        let quadric = div(2, [1; 8]);
        let t = strict_transform(&quadric).unwrap();
        assert!(t.k_line.iter().chain(&t.k_curve).all(|&k| k == 0));
    }

    #[test]
    fn plane_from_two_hyperplanes() {
        let d0 = div(1, [1, 0, 1, 1, 1, 0, 0, 0]);
        let f0 = div(1, [1, 1, 0, 1, 1, 0, 0, 0]);
        let z = intersect_strict_transforms(&d0, &f0).unwrap();
        assert_eq!(z, TwoCycleClass::plane(&set(&[1, 4, 5])));
        assert_eq!(z, TwoCycleClass::of_surface(SurfaceKind::S1, &[1, 4, 5]));
    }

    #[test]
    fn cone_over_quartic_intersection() {
        let d1 = div(2, [2, 1, 2, 1, 1, 1, 1, 0]);
        let f1 = div(2, [2, 2, 1, 1, 1, 1, 1, 0]);
        let z = intersect_strict_transforms(&d1, &f1).unwrap();

        // h - e1 - e2 - e3 - Σ(e_ij - f_ij) over {1,2,3}
        let plane = TwoCycleClass::plane(&set(&[1, 2, 3]));
        // 3h - 3e1 - Σ_{2..7} e_i - (eC8 - fC8) - Σ_{2..7}(e_1i - f_1i)
        let mut cubic = TwoCycleClass { h: 3, ..Default::default() };
        cubic.e[0] = -3;
        for i in 2..=7 {
            cubic.e[i - 1] = -1;
            cubic.e_line[pair_index(1, i)] = -1;
            cubic.f_line[pair_index(1, i)] = 1;
        }
        cubic.e_curve[7] = -1;
        cubic.f_curve[7] = 1;
        assert_eq!(z, plane + cubic);
        assert_eq!(cubic, TwoCycleClass::of_surface(SurfaceKind::S3, &[1, 8]));
    }

    #[test]
    fn product_is_symmetric_and_bilinear() {
        let samples = [
            div(2, [2, 1, 2, 1, 1, 1, 1, 0]),
            div(3, [2, 3, 2, 2, 2, 1, 1, 1]),
            div(5, [4, 4, 3, 2, 2, 3, 3, 3]),
            div(7, [4, 4, 5, 4, 4, 5, 5, 3]),
        ];
        let ts: Vec<_> = samples.iter().map(|d| strict_transform(d).unwrap()).collect();
        for a in &ts {
            for b in &ts {
                assert_eq!(ext_product(a, b), ext_product(b, a));
                for c in &ts {
                    let lhs = ext_product(&a.scale(2).add(&b.scale(-3)).unwrap(), c);
                    let rhs = ext_product(a, c).scale(2) + ext_product(b, c).scale(-3);
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn json_schema_round_trip() {
        let z = TwoCycleClass::of_surface(SurfaceKind::S10, &[1, 2]);
        let json = serde_json::to_string(&z).unwrap();
        assert!(json.starts_with(r#"{"h":10,"e":[-6,-6,-3,-3,-3,-3,-3,-3],"e_line":{"12":-3,"#));
        let back: TwoCycleClass = serde_json::from_str(&json).unwrap();
        assert_eq!(back, z);
        assert_eq!(serde_json::to_string(&back).unwrap(), json);
        assert!(serde_json::from_str::<TwoCycleClass>(&json.replace("\"12\"", "\"19\"")).is_err());
    }

    #[test]
    fn decomposition_of_zero_and_of_a_plane() {
        let surfaces = weyl_surface_catalog();
        let d0 = div(1, [1, 0, 1, 1, 1, 0, 0, 0]);
        let f0 = div(1, [1, 1, 0, 1, 1, 0, 0, 0]);
        let dec = decompose_two_cycle(&TwoCycleClass::zero(), &d0, &f0, &surfaces).unwrap();
        assert!(dec.components.is_empty());

        let z = intersect_strict_transforms(&d0, &f0).unwrap();
        let dec = decompose_two_cycle(&z, &d0, &f0, &surfaces).unwrap();
        assert_eq!(dec.labels(), vec!["S1{1,4,5}"]);
        assert!(!dec.non_unique);

        let bad = z + TwoCycleClass { h: 1, ..Default::default() };
        assert!(matches!(
            decompose_two_cycle(&bad, &d0, &f0, &surfaces),
            Err(Error::NoDecomposition(_))
        ));
    }

    #[test]
    fn solver_reports_non_uniqueness() {
        let cols = vec![vec![1, 0], vec![0, 1], vec![1, 1]];
        let (x, non_unique) = solve_nonnegative_integer(&cols, &[1, 1]).unwrap();
        assert!(non_unique);
        assert_eq!(x[0] + x[2], 1);
        assert!(solve_nonnegative_integer(&cols, &[-1, 0]).is_none());
    }
}
