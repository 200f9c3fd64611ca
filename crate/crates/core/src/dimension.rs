//! Euler characteristic and Weyl expected dimension on `X^3_7` and `X^4_8`.

use serde::{Deserialize, Serialize};

use crate::baselocus::WeylCycle;
use crate::error::{Error, Result};
use crate::lattice::{cremona_reduce, dm_pairing, intersect_div_curve, DivisorClass, Reduction};
use crate::oracle::{oracle_consensus, Consensus};
use crate::weyl::WeylSpace;

/// `C(a, k)`, zero when `a < k`.
pub fn binomial(a: i64, k: i64) -> i64 {
    if k < 0 || a < k {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (a - i) / (i + 1))
}

/// `χ(D) = C(n+d, n) - Σ_{m_i > 0} C(n+m_i-1, n)`.
pub fn euler_char(divisor: &DivisorClass) -> i64 {
    let n = divisor.n() as i64;
    let points: i64 = divisor
        .m()
        .iter()
        .filter(|&&m| m > 0)
        .map(|&m| binomial(n + m - 1, n))
        .sum();
    binomial(n + divisor.d(), n) - points
}

/// Correction `(-1)^{r+1} C(n+k-r-1, n)` for an `r`-cycle contained `k`
/// times.
pub fn correction(n: usize, r: usize, k: i64) -> i64 {
    let sign = if r % 2 == 1 { 1 } else { -1 };
    sign * binomial(n as i64 + k - r as i64 - 1, n as i64)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WdimTerm {
    pub cycle: WeylCycle,
    pub r: usize,
    pub k: i64,
    pub term: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WdimBreakdown {
    pub divisor: DivisorClass,
    pub chi: i64,
    /// Every cycle with `k ≥ 1`, including those whose term vanishes.
    pub contributions: Vec<WdimTerm>,
    pub total: i64,
}

/// Weyl expected dimension with its breakdown. Refuses divisors outside the
/// effective cone.
pub fn wdim(divisor: &DivisorClass) -> Result<WdimBreakdown> {
    wdim_in(WeylSpace::shared(divisor.n(), divisor.s())?, divisor)
}

pub fn wdim_in(space: &WeylSpace, divisor: &DivisorClass) -> Result<WdimBreakdown> {
    if !space.in_effective_cone(divisor)? {
        return Err(Error::WdimUndefined(divisor.to_string()));
    }
    Ok(wdim_breakdown_unchecked(space, divisor))
}

/// The formula evaluated without the effectivity check. Negative
/// multiplicities are read as 0 throughout.
pub fn wdim_breakdown_unchecked(space: &WeylSpace, divisor: &DivisorClass) -> WdimBreakdown {
    let d = divisor.clamped();
    let n = d.n();
    let chi = euler_char(&d);
    let mut contributions = Vec::new();
    let mut push = |cycle: WeylCycle, r: usize, k: i64| {
        if k >= 1 {
            contributions.push(WdimTerm { cycle, r, k, term: correction(n, r, k) });
        }
    };
    for c in space.curves().classes() {
        let k = (-intersect_div_curve(&d, c).expect("same ambient")).max(0);
        push(WeylCycle::Curve { class: c.clone() }, 1, k);
    }
    for s in space.surfaces() {
        let k = (-intersect_div_curve(&d, &s.char_cycle).expect("same ambient")).max(0);
        push(WeylCycle::surface(s), 2, k);
    }
    for a in space.divisors().classes() {
        let k = (-dm_pairing(&d, a).expect("same ambient")).max(0);
        push(WeylCycle::Divisor { class: a.clone() }, n - 1, k);
    }
    let total = chi + contributions.iter().map(|t| t.term).sum::<i64>();
    WdimBreakdown { divisor: divisor.clone(), chi, contributions, total }
}

/// The total alone, without allocating the breakdown.
pub fn wdim_value_unchecked(space: &WeylSpace, divisor: &DivisorClass) -> i64 {
    let d = divisor.clamped();
    let n = d.n();
    let mut total = euler_char(&d);
    for c in space.curves().classes() {
        total += correction(n, 1, -intersect_div_curve(&d, c).expect("same ambient"));
    }
    for s in space.surfaces() {
        total += correction(n, 2, -intersect_div_curve(&d, &s.char_cycle).expect("same ambient"));
    }
    for a in space.divisors().classes() {
        total += correction(n, n - 1, -dm_pairing(&d, a).expect("same ambient"));
    }
    total
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct H0Report {
    pub divisor: DivisorClass,
    pub effective: bool,
    pub h0: i64,
    /// Reduction walk used by the proof path.
    pub reduction: Reduction,
    /// `wdim` of the reduced class, when effective.
    pub reduced_wdim: Option<i64>,
    /// `wdim(D) = wdim(reduced class)`.
    pub proof_path_agrees: bool,
}

/// `h⁰(X^3_7, D)`: zero off the effective cone, `wdim(D)` on it.
pub fn h0_p3(divisor: &DivisorClass) -> Result<H0Report> {
    if divisor.n() != 3 || divisor.s() != 7 {
        return Err(Error::InvalidAmbient(format!(
            "h0 is computed on X^3_7, got n={} s={}",
            divisor.n(),
            divisor.s()
        )));
    }
    let space = WeylSpace::shared(3, 7)?;
    let effective = space.in_effective_cone(divisor)?;
    let reduction = cremona_reduce(divisor);
    if !effective {
        return Ok(H0Report {
            divisor: divisor.clone(),
            effective,
            h0: 0,
            reduction,
            reduced_wdim: None,
            proof_path_agrees: true,
        });
    }
    let h0 = wdim_value_unchecked(space, divisor);
    let reduced = wdim_value_unchecked(space, &reduction.class);
    Ok(H0Report {
        divisor: divisor.clone(),
        effective,
        h0,
        reduction,
        reduced_wdim: Some(reduced),
        proof_path_agrees: reduced == h0,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub divisor: DivisorClass,
    pub effective: bool,
    /// Absent for non-effective divisors, where the expected value is 0.
    pub wdim: Option<WdimBreakdown>,
    pub oracle: Consensus,
    pub agree: bool,
}

/// Compares `wdim(D)` with the interpolation oracle on `X^4_8`, one run per
/// prime with the given seed.
pub fn check_conjecture(divisor: &DivisorClass, primes: &[u64], seed: u64) -> Result<ConjectureReport> {
    let runs: Vec<(u64, u64)> = primes.iter().map(|&p| (p, seed)).collect();
    check_conjecture_runs(divisor, &runs)
}

pub fn check_conjecture_runs(divisor: &DivisorClass, runs: &[(u64, u64)]) -> Result<ConjectureReport> {
    if divisor.n() != 4 || divisor.s() != 8 {
        return Err(Error::InvalidAmbient(format!(
            "the conjecture harness runs on X^4_8, got n={} s={}",
            divisor.n(),
            divisor.s()
        )));
    }
    let space = WeylSpace::shared(4, 8)?;
    let effective = space.in_effective_cone(divisor)?;
    let wdim = effective.then(|| wdim_breakdown_unchecked(space, divisor));
    let oracle = oracle_consensus(divisor, runs)?;
    let expected = wdim.as_ref().map_or(0, |w| w.total);
    let agree = oracle.agree && oracle.h0 as i64 == expected;
    Ok(ConjectureReport { divisor: divisor.clone(), effective, wdim, oracle, agree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::cremona_divisor;
    use crate::oracle::{run_grid, DEFAULT_PRIMES};

    fn div(n: usize, d: i64, m: &[i64]) -> DivisorClass {
        DivisorClass::new(n, d, m.to_vec()).unwrap()
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(2, 3), 0);
        assert_eq!(binomial(-1, 3), 0);
        assert_eq!(binomial(3, 0), 1);
        assert_eq!(correction(3, 1, 2), 1);
        assert_eq!(correction(3, 2, 3), -1);
        assert_eq!(correction(4, 2, 2), 0);
    }

    #[test]
    fn euler_characteristic() {
        assert_eq!(euler_char(&div(3, 3, &[])), 20);
        assert_eq!(euler_char(&div(3, 2, &[2, 1, 1, 1, 1, 1, 0])), 1);
        assert_eq!(euler_char(&div(3, 3, &[2; 7])), -8);
        assert_eq!(euler_char(&div(3, 0, &[-1, 0, 0, 0, 0, 0, 0])), 1);
    }

    #[test]
    fn wdim_examples() {
        assert_eq!(wdim(&div(3, 2, &[1; 7])).unwrap().total, 3);
        let w = wdim(&div(3, 2, &[2, 1, 1, 1, 1, 1, 0])).unwrap();
        assert_eq!((w.chi, w.total), (1, 1));
        assert!(w.contributions.iter().all(|t| t.term == 0));
        assert!(matches!(
            wdim(&div(3, 3, &[2; 7])),
            Err(Error::WdimUndefined(_))
        ));
        assert_eq!(wdim(&div(4, 2, &[1; 8])).unwrap().total, 7);
        assert_eq!(wdim(&div(4, 0, &[0; 8])).unwrap().total, 1);
    }

    #[test]
    fn wdim_of_weyl_divisors_is_one() {
        for (n, s) in [(3, 7), (4, 8)] {
            let space = WeylSpace::shared(n, s).unwrap();
            for a in space.divisors().classes() {
                assert_eq!(wdim_value_unchecked(space, a), 1, "{a}");
            }
        }
    }

    #[test]
    fn value_matches_breakdown() {
        let space = WeylSpace::shared(4, 8).unwrap();
        for d in [div(4, 5, &[4, 4, 3, 2, 2, 3, 3, 3]), div(4, 6, &[3; 8]), div(4, 4, &[2, 2, 2, 2, 2, 1, 1, 0])] {
            assert_eq!(wdim_breakdown_unchecked(space, &d).total, wdim_value_unchecked(space, &d));
        }
    }

    #[test]
    fn h0_examples() {
        assert_eq!(h0_p3(&div(3, 2, &[1; 7])).unwrap().h0, 3);
        let r = h0_p3(&div(3, 4, &[3, 2, 2, 2, 2, 2, 2])).unwrap();
        assert_eq!(r.h0, 1);
        assert!(r.proof_path_agrees);
        let r = h0_p3(&div(3, 3, &[2; 7])).unwrap();
        assert_eq!((r.effective, r.h0), (false, 0));
        assert!(h0_p3(&div(4, 1, &[0; 8])).is_err());
    }

    #[test]
    fn cremona_invariance_on_samples() {
        let space = WeylSpace::shared(3, 7).unwrap();
        let d = div(3, 6, &[3, 3, 3, 2, 2, 1, 1]);
        let w = wdim_value_unchecked(space, &d);
        for set in crate::lattice::index_sets(7, 4) {
            assert_eq!(wdim_value_unchecked(space, &cremona_divisor(&d, &set).unwrap()), w);
        }
    }

    #[test]
    fn conjecture_harness() {
        let r = check_conjecture(&div(4, 2, &[1; 8]), &DEFAULT_PRIMES, 3).unwrap();
        assert!(r.agree);
        assert_eq!(r.oracle.h0, 7);
        let r = check_conjecture(&div(4, 3, &[2, 2, 2, 2, 2, 2, 2, 0]), &DEFAULT_PRIMES, 3).unwrap();
        assert!(r.agree);
        assert_eq!(r.wdim.unwrap().total, 1);
        let r = check_conjecture_runs(&div(4, 1, &[1, 1, 1, 1, 1, 0, 0, 0]), &run_grid(&DEFAULT_PRIMES, &[1])).unwrap();
        assert!(!r.effective && r.agree);
    }
}
