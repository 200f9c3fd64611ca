//! Containment multiplicities of Weyl cycles in the base locus of a divisor,
//! and effectivity tests.

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{dm_pairing, intersect_div_curve, CurveClass, DivisorClass};
use crate::weyl::{WeylSpace, WeylSurface};

/// A Weyl cycle of dimension 1, 2 (surfaces of `X^4_8`) or `n-1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum WeylCycle {
    Curve { class: CurveClass },
    Surface { label: String },
    Divisor { class: DivisorClass },
}

impl WeylCycle {
    pub fn surface(surface: &WeylSurface) -> Self {
        WeylCycle::Surface { label: surface.label() }
    }

    /// Dimension of the cycle in the ambient space of dimension `n`.
    pub fn dimension(&self, n: usize) -> usize {
        match self {
            WeylCycle::Curve { .. } => 1,
            WeylCycle::Surface { .. } => 2,
            WeylCycle::Divisor { .. } => n - 1,
        }
    }
}

impl fmt::Display for WeylCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeylCycle::Curve { class } => write!(f, "curve {}", crate::lattice::pretty_curve(class)),
            WeylCycle::Surface { label } => write!(f, "surface {label}"),
            WeylCycle::Divisor { class } => write!(f, "divisor {}", crate::lattice::pretty_divisor(class)),
        }
    }
}

/// A cycle with positive containment multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleMultiplicity {
    pub cycle: WeylCycle,
    pub k: i64,
}

/// A violated necessary condition for effectivity: `D·C < 0` for a moving
/// curve class `C` of the given family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// Family number 1..6.
    pub family: u8,
    /// Index choice determining the curve within the family.
    pub indices: Vec<usize>,
    pub curve: CurveClass,
    /// `-D·C > 0`.
    pub excess: i64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "family {} at {:?}: D·({}) = {}",
            self.family,
            self.indices,
            crate::lattice::pretty_curve(&self.curve),
            -self.excess
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseLocusReport {
    pub divisor: DivisorClass,
    pub curve_entries: Vec<CycleMultiplicity>,
    /// Only populated on `X^4_8`.
    pub surface_entries: Vec<CycleMultiplicity>,
    pub divisor_entries: Vec<CycleMultiplicity>,
    pub effectivity: Vec<Violation>,
    /// The multiplicity formulas are proved for effective divisors only;
    /// set when the divisor lies outside the effective cone.
    pub unreliable: bool,
}

impl BaseLocusReport {
    pub fn is_empty(&self) -> bool {
        self.curve_entries.is_empty() && self.surface_entries.is_empty() && self.divisor_entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = &CycleMultiplicity> {
        self.curve_entries.iter().chain(&self.surface_entries).chain(&self.divisor_entries)
    }
}

fn is_line(c: &CurveClass) -> bool {
    c.delta() == 1 && c.mu().iter().filter(|&&x| x == 1).count() == 2 && c.mu().iter().all(|&x| x == 0 || x == 1)
}

/// `max{0, -D·C}` without checking that `C` is a Weyl curve.
pub fn mult_curve_unchecked(divisor: &DivisorClass, curve: &CurveClass) -> Result<i64> {
    Ok((-intersect_div_curve(divisor, curve)?).max(0))
}

/// Containment multiplicity `max{0, -D·C}` of a Weyl curve.
pub fn mult_curve(divisor: &DivisorClass, curve: &CurveClass) -> Result<i64> {
    let known = is_line(curve)
        || WeylSpace::shared(curve.n(), curve.s()).is_ok_and(|space| space.curves().contains(curve));
    if !known {
        return Err(Error::CurveNotInCatalog(curve.to_string()));
    }
    mult_curve_unchecked(divisor, curve)
}

fn check_x48(divisor: &DivisorClass) -> Result<()> {
    if divisor.n() != 4 || divisor.s() != 8 {
        return Err(Error::InvalidAmbient(format!(
            "Weyl surfaces live on X^4_8, got n={} s={}",
            divisor.n(),
            divisor.s()
        )));
    }
    Ok(())
}

/// Containment multiplicity `max{0, -D·Σ}` of a Weyl surface, `Σ` its
/// characteristic cycle.
pub fn mult_surface(divisor: &DivisorClass, surface: &WeylSurface) -> Result<i64> {
    check_x48(divisor)?;
    mult_curve_unchecked(divisor, &surface.char_cycle)
}

/// Lower bound from a sweeping pencil `{C(q) : q ∈ base}`: every member
/// meeting `D` negatively lies in the base locus, in addition to the base
/// curve itself.
pub fn pencil_bound(divisor: &DivisorClass, base: &CurveClass, pencil: &CurveClass) -> Result<i64> {
    let through = -intersect_div_curve(divisor, pencil)?;
    Ok((through + mult_curve_unchecked(divisor, base)?).max(0))
}

/// Containment multiplicity `max{0, -⟨D,A⟩}` of a Weyl divisor `A`.
pub fn mult_weyl_divisor(divisor: &DivisorClass, weyl: &DivisorClass) -> Result<i64> {
    let space = WeylSpace::shared(weyl.n(), weyl.s()).map_err(|_| Error::NotAWeylDivisor(weyl.to_string()))?;
    if !space.divisors().contains(weyl) {
        return Err(Error::NotAWeylDivisor(weyl.to_string()));
    }
    Ok((-dm_pairing(divisor, weyl)?).max(0))
}

/// All Weyl cycles with positive multiplicity, plus effectivity diagnostics.
pub fn base_locus_report(divisor: &DivisorClass) -> Result<BaseLocusReport> {
    let space = WeylSpace::shared(divisor.n(), divisor.s())?;
    base_locus_report_in(space, divisor)
}

pub fn base_locus_report_in(space: &WeylSpace, divisor: &DivisorClass) -> Result<BaseLocusReport> {
    let mut curve_entries = Vec::new();
    for c in space.curves().classes() {
        let k = mult_curve_unchecked(divisor, c)?;
        if k >= 1 {
            curve_entries.push(CycleMultiplicity { cycle: WeylCycle::Curve { class: c.clone() }, k });
        }
    }
    let mut surface_entries = Vec::new();
    for s in space.surfaces() {
        let k = mult_surface(divisor, s)?;
        if k >= 1 {
            surface_entries.push(CycleMultiplicity { cycle: WeylCycle::surface(s), k });
        }
    }
    let mut divisor_entries = Vec::new();
    for a in space.divisors().classes() {
        let k = (-dm_pairing(divisor, a)?).max(0);
        if k >= 1 {
            divisor_entries.push(CycleMultiplicity { cycle: WeylCycle::Divisor { class: a.clone() }, k });
        }
    }
    Ok(BaseLocusReport {
        divisor: divisor.clone(),
        curve_entries,
        surface_entries,
        divisor_entries,
        effectivity: effectivity_necessary(divisor),
        unreliable: !space.in_effective_cone(divisor)?,
    })
}

/// The moving curve classes whose nonnegativity against `D` is necessary
/// for effectivity, as `(family, index choice, class)`.
///
/// On `X^4_8` these are the six families
/// `h-e_i`, `4h-Σ_J e` (|J|=6), `7h-2Σ_J e-Σ_rest e` (|J|=3),
/// `10h-e_a-3e_b-2Σ_rest e`, `13h-2Σ_J e-3Σ_rest e` (|J|=3),
/// `16h-4Σ_J e-3Σ_rest e` (|J|=2), 232 classes in all. Elsewhere only
/// lines through a point and rational normal curves through `n+2` points.
pub fn moving_curve_families(n: usize, s: usize) -> Vec<(u8, Vec<usize>, CurveClass)> {
    let mut out = Vec::new();
    let mut push = |family: u8, indices: Vec<usize>, delta: i64, mu: Vec<i64>| {
        let c = CurveClass::new(n, delta, mu).expect("valid dimension");
        out.push((family, indices, c));
    };
    let weights = |inside: &[usize], a: i64, b: i64| -> Vec<i64> {
        (1..=s).map(|i| if inside.contains(&i) { a } else { b }).collect()
    };
    for i in 1..=s {
        push(1, vec![i], 1, weights(&[i], 1, 0));
    }
    if s >= n + 2 {
        for j in (1..=s).combinations(n + 2) {
            let mu = weights(&j, 1, 0);
            push(2, j, n as i64, mu);
        }
    }
    if (n, s) != (4, 8) {
        return out;
    }
    for j in (1..=8).combinations(3) {
        let mu = weights(&j, 2, 1);
        push(3, j, 7, mu);
    }
    for (a, b) in (1..=8).cartesian_product(1..=8).filter(|(a, b)| a != b) {
        let mu = (1..=8).map(|i| if i == a { 1 } else if i == b { 3 } else { 2 }).collect();
        push(4, vec![a, b], 10, mu);
    }
    for j in (1..=8).combinations(3) {
        let mu = weights(&j, 2, 3);
        push(5, j, 13, mu);
    }
    for j in (1..=8).combinations(2) {
        let mu = weights(&j, 4, 3);
        push(6, j, 16, mu);
    }
    out
}

/// Violated necessary conditions; an empty list does not prove effectivity.
pub fn effectivity_necessary(divisor: &DivisorClass) -> Vec<Violation> {
    moving_curve_families(divisor.n(), divisor.s())
        .into_iter()
        .filter_map(|(family, indices, curve)| {
            let dot = intersect_div_curve(divisor, &curve).expect("same ambient");
            (dot < 0).then_some(Violation { family, indices, curve, excess: -dot })
        })
        .collect()
}

/// Exact test that `D` is a nonnegative rational combination of Weyl
/// divisors.
pub fn effective_cone_membership(divisor: &DivisorClass) -> Result<bool> {
    WeylSpace::shared(divisor.n(), divisor.s())?.in_effective_cone(divisor)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::anticanonical;

    fn div(n: usize, d: i64, m: &[i64]) -> DivisorClass {
        DivisorClass::new(n, d, m.to_vec()).unwrap()
    }

    fn surface(label: &str) -> WeylSurface {
        label.parse().unwrap()
    }

    fn d1() -> DivisorClass {
        div(4, 2, &[2, 1, 2, 1, 1, 1, 1, 0])
    }

    #[test]
    fn curve_multiplicities() {
        let l13 = CurveClass::line_through(4, 8, 1, 3).unwrap();
        assert_eq!(mult_curve(&d1(), &l13).unwrap(), 2);
        let c8 = CurveClass::new(4, 4, vec![1, 1, 1, 1, 1, 1, 1, 0]).unwrap();
        assert_eq!(mult_curve(&d1(), &c8).unwrap(), 1);
        assert_eq!(mult_curve(&div(4, 2, &[0; 8]), &c8).unwrap(), 0);
        let not_weyl = CurveClass::new(4, 2, vec![1; 8]).unwrap();
        assert!(matches!(mult_curve(&d1(), &not_weyl), Err(Error::CurveNotInCatalog(_))));
    }

    #[test]
    fn surface_multiplicities() {
        assert_eq!(mult_surface(&d1(), &surface("S1{1,2,3}")).unwrap(), 1);
        let d = div(4, 2, &[2, 2, 1, 1, 1, 1, 1, 0]);
        assert_eq!(mult_surface(&d, &surface("S3{1,^8}")).unwrap(), 1);
        // the degree-15 functional carries +2 m_8
        let d = div(4, 10, &[7, 6, 6, 6, 6, 6, 6, 6]);
        assert_eq!(mult_surface(&d, &surface("S15{8}")).unwrap(), 1);
        assert!(mult_surface(&div(3, 1, &[0; 7]), &surface("S15{8}")).is_err());
    }

    #[test]
    fn weyl_divisor_multiplicities() {
        let space = WeylSpace::shared(4, 8).unwrap();
        for a in space.divisors().classes().iter().step_by(37) {
            assert_eq!(mult_weyl_divisor(a, a).unwrap(), 1);
            assert_eq!(mult_weyl_divisor(&a.scale(2), a).unwrap(), 2);
        }
        let d = div(3, 2, &[1; 7]);
        let space3 = WeylSpace::shared(3, 7).unwrap();
        for a in space3.divisors().classes() {
            assert_eq!(mult_weyl_divisor(&d, a).unwrap(), 0);
        }
        assert!(matches!(
            mult_weyl_divisor(&d, &div(3, 1, &[0; 7])),
            Err(Error::NotAWeylDivisor(_))
        ));
    }

    #[test]
    fn report_for_d3() {
        let d3 = div(4, 5, &[4, 4, 3, 2, 2, 3, 3, 3]);
        let report = base_locus_report(&d3).unwrap();
        let mut labels: Vec<String> = report
            .surface_entries
            .iter()
            .map(|e| match &e.cycle {
                WeylCycle::Surface { label } => label.clone(),
                _ => unreachable!(),
            })
            .collect();
        labels.sort();
        for expected in ["S10{1,2}", "S1{1,2,3}", "S1{1,2,6}", "S1{1,2,7}", "S1{1,2,8}", "S3{2,^4}", "S3{2,^5}"] {
            assert!(labels.iter().any(|l| l == expected), "missing {expected} in {labels:?}");
        }
        assert!(report.surface_entries.iter().all(|e| e.k >= 1));
        assert!(!report.unreliable);
        assert!(report.effectivity.is_empty());
    }

    #[test]
    fn small_reports() {
        let report = base_locus_report(&div(3, 2, &[1; 7])).unwrap();
        assert!(report.is_empty());
        let e1 = DivisorClass::exceptional(4, 8, 1).unwrap();
        let report = base_locus_report(&e1).unwrap();
        assert!(report.curve_entries.is_empty() && report.surface_entries.is_empty());
        assert_eq!(
            report.divisor_entries,
            vec![CycleMultiplicity { cycle: WeylCycle::Divisor { class: e1 }, k: 1 }]
        );
        let bad = div(4, 1, &[1, 1, 1, 1, 1, 0, 0, 0]);
        assert!(base_locus_report(&bad).unwrap().unreliable);
    }

    #[test]
    fn necessary_conditions() {
        let v = effectivity_necessary(&div(4, 1, &[1, 1, 1, 1, 1, 0, 0, 0]));
        assert!(v.iter().any(|x| x.family == 2 && x.excess == 1));
        assert!(effectivity_necessary(&div(4, 3, &[2, 2, 2, 2, 2, 2, 2, 0])).is_empty());
        assert!(effectivity_necessary(&DivisorClass::exceptional(4, 8, 1).unwrap()).is_empty());
        assert_eq!(moving_curve_families(4, 8).len(), 232);
        // general ambient: only the first two families
        let v = effectivity_necessary(&div(3, 1, &[2, 0, 0, 0, 0, 0]));
        assert_eq!(v.len(), 1);
    }

    #[test]
    fn membership() {
        assert!(effective_cone_membership(&anticanonical(4, 8).unwrap()).unwrap());
        assert!(!effective_cone_membership(&div(4, 1, &[1, 1, 1, 1, 1, 0, 0, 0])).unwrap());
        assert!(matches!(
            effective_cone_membership(&div(3, 1, &[0; 6])),
            Err(Error::CatalogUnavailable { n: 3, s: 6 })
        ));
    }

    #[test]
    fn json_round_trip() {
        let report = base_locus_report(&div(4, 2, &[2, 2, 1, 1, 1, 1, 1, 0])).unwrap();
        let json = serde_json::to_string(&report).unwrap();
        let back: BaseLocusReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
    }
}
