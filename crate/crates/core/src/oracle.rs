//! Brute-force `h⁰` of fat-point linear systems: the corank of the
//! interpolation matrix at random points over a prime field.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::DivisorClass;

pub const DEFAULT_PRIMES: [u64; 2] = [2_147_483_647, 2_147_483_629];
pub const DEFAULT_SEED: u64 = 7;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InterpolationProblem {
    pub n: usize,
    pub d: i64,
    /// Point multiplicities; negative entries are treated as 0.
    pub mults: Vec<i64>,
    pub prime: u64,
    pub seed: u64,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut q = 2;
    while q * q <= p {
        if p.is_multiple_of(q) {
            return false;
        }
        q += 1;
    }
    true
}

impl InterpolationProblem {
    pub fn new(n: usize, d: i64, mults: Vec<i64>, prime: u64, seed: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidProblem("dimension must be positive".into()));
        }
        if prime >= 1 << 32 {
            return Err(Error::InvalidProblem(format!("prime {prime} must be below 2^32")));
        }
        if !is_prime(prime) {
            return Err(Error::InvalidProblem(format!("{prime} is not prime")));
        }
        if d >= 0 && prime <= d as u64 {
            return Err(Error::InvalidProblem(format!("prime {prime} must exceed the degree {d}")));
        }
        let mults = mults.into_iter().map(|m| m.max(0)).collect();
        Ok(InterpolationProblem { n, d, mults, prime, seed })
    }

    pub fn for_divisor(divisor: &DivisorClass, prime: u64, seed: u64) -> Result<Self> {
        Self::new(divisor.n(), divisor.d(), divisor.m().to_vec(), prime, seed)
    }
}

/// `C(n+m-1, n)`, the number of conditions imposed by a point of
/// multiplicity `m`.
pub fn conditions_count(n: usize, m: i64) -> u64 {
    if m <= 0 {
        return 0;
    }
    let (top, k) = (n as u64 + m as u64 - 1, n as u64);
    // C(top, k) with exact intermediate division
    (0..k).fold(1u64, |acc, i| acc * (top - i) / (i + 1))
}

/// Exponent vectors of degree `d` in `vars` variables, lexicographically
/// decreasing (`x_0^d` first).
fn monomials(vars: usize, d: u32) -> Vec<Vec<u32>> {
    fn fill(vars: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == vars {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            fill(vars, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    fill(vars, d, &mut Vec::with_capacity(vars), &mut out);
    out
}

/// Reduction modulo a fixed prime below `2^32` via a precomputed reciprocal.
#[derive(Clone, Copy)]
struct Modulus {
    p: u64,
    inv: u64,
}

impl Modulus {
    fn new(p: u64) -> Self {
        Modulus { p, inv: ((1u128 << 64) / u128::from(p)) as u64 }
    }

    /// `x mod p` for `x < 2^64`.
    #[inline]
    fn reduce(self, x: u64) -> u64 {
        let q = ((u128::from(x) * u128::from(self.inv)) >> 64) as u64;
        let mut r = x - q * self.p;
        while r >= self.p {
            r -= self.p;
        }
        r
    }

    #[inline]
    fn mul(self, a: u64, b: u64) -> u64 {
        self.reduce(a * b)
    }

    fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    fn inverse(self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }
}

/// Corank of the interpolation matrix: the dimension of degree-`d` forms
/// vanishing to order `m_i` at random points.
pub fn interpolation_h0(problem: &InterpolationProblem) -> Result<u64> {
    let InterpolationProblem { n, d, ref mults, prime, seed } = *problem;
    if prime >= 1 << 32 || !is_prime(prime) || (d >= 0 && prime <= d as u64) {
        return Err(Error::InvalidProblem(format!("unusable prime {prime} for degree {d}")));
    }
    if d < 0 {
        return Ok(0);
    }
    let md = Modulus::new(prime);
    let vars = n + 1;
    let columns = monomials(vars, d as u32);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut rows: Vec<Vec<u64>> = Vec::new();
    for &m in mults {
        let point: Vec<u64> = (0..vars).map(|_| rng.gen_range(1..prime)).collect();
        if m <= 0 {
            continue;
        }
        // order m-1 partials; beyond d+1 every form already vanishes
        let order = (m.min(d + 1) - 1) as u32;
        let powers: Vec<Vec<u64>> = point
            .iter()
            .map(|&x| {
                let mut pw = vec![1u64; d as usize + 1];
                for e in 1..=d as usize {
                    pw[e] = md.mul(pw[e - 1], x);
                }
                pw
            })
            .collect();
        for alpha in monomials(vars, order) {
            let row = columns
                .iter()
                .map(|beta| {
                    let mut v = 1u64;
                    for k in 0..vars {
                        if beta[k] < alpha[k] {
                            return 0;
                        }
                        for t in 0..alpha[k] {
                            v = md.mul(v, u64::from(beta[k] - t));
                        }
                        v = md.mul(v, powers[k][(beta[k] - alpha[k]) as usize]);
                    }
                    v
                })
                .collect();
            rows.push(row);
        }
    }
    let rank = rank_mod(&mut rows, columns.len(), md);
    Ok((columns.len() - rank) as u64)
}

fn rank_mod(rows: &mut [Vec<u64>], cols: usize, md: Modulus) -> usize {
    let p = md.p;
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows.len() {
            break;
        }
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, pivot);
        let inv = md.inverse(rows[rank][c]);
        for v in rows[rank][c..].iter_mut() {
            *v = md.mul(*v, inv);
        }
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        for row in tail.iter_mut() {
            let f = row[c];
            if f == 0 {
                continue;
            }
            let neg = p - f;
            for (x, &y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                *x = md.reduce(*x + neg * y);
            }
        }
        rank += 1;
    }
    rank
}

/// One oracle evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleRun {
    pub prime: u64,
    pub seed: u64,
    pub h0: u64,
}

/// Several runs on the same linear system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Consensus {
    /// Smallest corank seen; a special configuration can only raise it.
    pub h0: u64,
    pub runs: Vec<OracleRun>,
    pub agree: bool,
}

/// Runs the oracle for every `(prime, seed)` pair.
pub fn oracle_consensus(divisor: &DivisorClass, runs: &[(u64, u64)]) -> Result<Consensus> {
    if runs.is_empty() {
        return Err(Error::InvalidProblem("at least one (prime, seed) run is needed".into()));
    }
    let runs = runs
        .iter()
        .map(|&(prime, seed)| {
            let problem = InterpolationProblem::for_divisor(divisor, prime, seed)?;
            Ok(OracleRun { prime, seed, h0: interpolation_h0(&problem)? })
        })
        .collect::<Result<Vec<_>>>()?;
    let h0 = runs.iter().map(|r| r.h0).min().expect("nonempty");
    let agree = runs.iter().all(|r| r.h0 == h0);
    Ok(Consensus { h0, runs, agree })
}

/// Every prime with every seed.
pub fn run_grid(primes: &[u64], seeds: &[u64]) -> Vec<(u64, u64)> {
    primes.iter().flat_map(|&p| seeds.iter().map(move |&s| (p, s))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const P: u64 = DEFAULT_PRIMES[0];

    fn h0(n: usize, d: i64, mults: &[i64]) -> u64 {
        interpolation_h0(&InterpolationProblem::new(n, d, mults.to_vec(), P, 1).unwrap()).unwrap()
    }

    fn binom(a: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (a - i) / (i + 1))
    }

    #[test]
    fn small_systems() {
        assert_eq!(h0(3, 1, &[1]), 3);
        assert_eq!(h0(3, 2, &[1; 7]), 3);
        assert_eq!(h0(3, 2, &[2, 1, 1, 1, 1, 1]), 1);
        assert_eq!(h0(3, 0, &[]), 1);
        assert_eq!(h0(3, -1, &[]), 0);
        assert_eq!(h0(2, 4, &[5]), 0);
        // conics through 5 points, double line through 2 double points
        assert_eq!(h0(2, 2, &[1; 5]), 1);
        assert_eq!(h0(2, 2, &[2, 2]), 1);
        // quartics in P^2 with 5 double points: the doubled conic
        assert_eq!(h0(2, 4, &[2; 5]), 1);
    }

    #[test]
    fn conditions() {
        assert_eq!(conditions_count(3, 1), 1);
        assert_eq!(conditions_count(3, 2), 4);
        assert_eq!(conditions_count(4, 3), 15);
        assert_eq!(conditions_count(4, 0), 0);
        assert_eq!(conditions_count(4, -2), 0);
    }

    #[test]
    fn monomial_order() {
        let m = monomials(3, 2);
        assert_eq!(m.len(), 6);
        assert_eq!(m[0], vec![2, 0, 0]);
        assert_eq!(m[5], vec![0, 0, 2]);
    }

    #[test]
    fn invalid_problems() {
        assert!(InterpolationProblem::new(3, 2, vec![1], 4, 0).is_err());
        assert!(InterpolationProblem::new(3, 20, vec![1], 19, 0).is_err());
        assert!(InterpolationProblem::new(3, 2, vec![1], (1 << 32) + 15, 0).is_err());
        let p = InterpolationProblem::new(3, 2, vec![-1, 2], 101, 0).unwrap();
        assert_eq!(p.mults, vec![0, 2]);
    }

    #[test]
    fn deterministic_and_consensus() {
        let d = DivisorClass::new(3, 4, vec![3, 2, 2, 2, 2, 2, 2]).unwrap();
        let c = oracle_consensus(&d, &run_grid(&DEFAULT_PRIMES, &[1, 2])).unwrap();
        assert!(c.agree);
        assert_eq!(c.h0, 1);
        assert_eq!(c.runs.len(), 4);
        let again = oracle_consensus(&d, &run_grid(&DEFAULT_PRIMES, &[1, 2])).unwrap();
        assert_eq!(again, c);
    }

    #[test]
    fn barrett_matches_plain_remainder() {
        let md = Modulus::new(P);
        for x in [0u64, 1, P - 1, P, P + 1, u64::MAX, (P - 1) * (P - 1), 1 << 63] {
            assert_eq!(md.reduce(x), x % P);
        }
        assert_eq!(md.mul(md.inverse(12345), 12345), 1);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        // Few simple points always impose independent conditions.
        #[test]
        fn simple_points_are_independent(n in 2usize..5, d in 1i64..5, s in 0usize..6, seed in 0u64..1000) {
            let total = binom(n as u64 + d as u64, n as u64);
            let p = InterpolationProblem::new(n, d, vec![1; s], P, seed).unwrap();
            let expected = total.saturating_sub(s as u64);
            prop_assert_eq!(interpolation_h0(&p).unwrap(), expected);
        }

        #[test]
        fn single_fat_point(n in 2usize..5, d in 0i64..6, m in 0i64..8) {
            let total = binom(n as u64 + d as u64, n as u64);
            let p = InterpolationProblem::new(n, d, vec![m], P, 3).unwrap();
            let expected = total.saturating_sub(conditions_count(n, m.min(d + 1)));
            prop_assert_eq!(interpolation_h0(&p).unwrap(), expected);
        }
    }
}
