//! Exact membership in a finitely generated rational cone.
//!
//! Decides whether `target = Σ λ_j g_j` has a solution with all `λ_j ≥ 0`
//! using a phase-one revised simplex over `BigRational`. Pricing scales the
//! dual vector to integers, so the scan over many generators stays in `i128`
//! whenever it fits.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Degenerate pivots tolerated under Dantzig pricing before switching to
/// Bland's rule for the rest of the solve.
const DEGENERATE_LIMIT: usize = 64;

/// A cone spanned by integer generator columns.
#[derive(Debug, Clone)]
pub struct GeneratorCone {
    dim: usize,
    generators: Vec<Vec<i64>>,
}

/// Nonnegative weights witnessing membership; indices refer to generators.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub weights: Vec<(usize, BigRational)>,
}

impl Certificate {
    /// Recomputes `Σ λ_j g_j` exactly.
    pub fn combination(&self, cone: &GeneratorCone) -> Vec<BigRational> {
        let mut sum = vec![BigRational::zero(); cone.dim];
        for (j, w) in &self.weights {
            for (acc, &g) in sum.iter_mut().zip(&cone.generators[*j]) {
                *acc += w * BigRational::from_integer(BigInt::from(g));
            }
        }
        sum
    }
}

impl GeneratorCone {
    /// Panics if generator lengths differ from `dim`.
    pub fn new(dim: usize, generators: Vec<Vec<i64>>) -> Self {
        assert!(generators.iter().all(|g| g.len() == dim));
        GeneratorCone { dim, generators }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    pub fn contains(&self, target: &[i64]) -> bool {
        self.certificate(target).is_some()
    }

    /// Returns nonnegative weights reproducing `target`, or `None` when the
    /// target lies outside the cone.
    pub fn certificate(&self, target: &[i64]) -> Option<Certificate> {
        assert_eq!(target.len(), self.dim);
        Phase1::new(self, target).solve()
    }
}

/// Basis variables `0..N` are generators, `N..N+dim` artificials.
struct Phase1<'a> {
    cone: &'a GeneratorCone,
    /// Row sign flips so that the right-hand side is nonnegative.
    signs: Vec<i64>,
    basis: Vec<usize>,
    inverse: Vec<Vec<BigRational>>,
    values: Vec<BigRational>,
}

impl<'a> Phase1<'a> {
    fn new(cone: &'a GeneratorCone, target: &[i64]) -> Self {
        let dim = cone.dim;
        let signs: Vec<i64> = target.iter().map(|&b| if b < 0 { -1 } else { 1 }).collect();
        let values = target
            .iter()
            .zip(&signs)
            .map(|(&b, &sg)| BigRational::from_integer(BigInt::from(b * sg)))
            .collect();
        let inverse = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                    .collect()
            })
            .collect();
        let n = cone.generators.len();
        Phase1 {
            cone,
            signs,
            basis: (n..n + dim).collect(),
            inverse,
            values,
        }
    }

    fn is_artificial(&self, var: usize) -> bool {
        var >= self.cone.generators.len()
    }

    fn column(&self, var: usize) -> Vec<i64> {
        let n = self.cone.generators.len();
        if var < n {
            self.cone.generators[var]
                .iter()
                .zip(&self.signs)
                .map(|(g, s)| g * s)
                .collect()
        } else {
            let mut col = vec![0; self.cone.dim];
            col[var - n] = 1;
            col
        }
    }

    /// Dual prices `y = c_B B⁻¹` scaled by a positive integer.
    fn scaled_duals(&self) -> Vec<BigInt> {
        let dim = self.cone.dim;
        let mut y = vec![BigRational::zero(); dim];
        for (row, &var) in self.basis.iter().enumerate() {
            if self.is_artificial(var) {
                for (acc, entry) in y.iter_mut().zip(&self.inverse[row]) {
                    *acc += entry;
                }
            }
        }
        let lcm = y.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        y.iter().map(|q| q.numer() * (&lcm / q.denom())).collect()
    }

    /// Picks an entering generator with negative reduced cost.
    fn price(&self, bland: bool) -> Option<usize> {
        let duals = self.scaled_duals();
        let small: Option<Vec<i128>> = duals.iter().map(|v| v.to_i128()).collect();
        let in_basis = |j: usize| self.basis.contains(&j);
        let mut best: Option<(usize, BigInt)> = None;
        for (j, g) in self.cone.generators.iter().enumerate() {
            // reduced cost of a generator is -y·a_j
            let score: BigInt = match &small {
                Some(y) => {
                    let mut acc: i128 = 0;
                    for ((&yi, &gi), &si) in y.iter().zip(g).zip(&self.signs) {
                        acc += yi * i128::from(gi * si);
                    }
                    BigInt::from(acc)
                }
                None => duals
                    .iter()
                    .zip(g)
                    .zip(&self.signs)
                    .map(|((yi, &gi), &si)| yi * BigInt::from(gi * si))
                    .sum(),
            };
            if !score.is_positive() || in_basis(j) {
                continue;
            }
            if bland {
                return Some(j);
            }
            if best.as_ref().is_none_or(|(_, b)| score > *b) {
                best = Some((j, score));
            }
        }
        best.map(|(j, _)| j)
    }

    fn solve(mut self) -> Option<Certificate> {
        let dim = self.cone.dim;
        let mut degenerate = 0usize;
        loop {
            let bland = degenerate >= DEGENERATE_LIMIT;
            let Some(entering) = self.price(bland) else { break };
            let col = self.column(entering);
            let direction: Vec<BigRational> = self
                .inverse
                .iter()
                .map(|row| {
                    row.iter()
                        .zip(&col)
                        .filter(|(_, &c)| c != 0)
                        .map(|(r, &c)| r * BigRational::from_integer(BigInt::from(c)))
                        .sum()
                })
                .collect();
            let mut leave: Option<(usize, BigRational)> = None;
            for row in 0..dim {
                if !direction[row].is_positive() {
                    continue;
                }
                let ratio = &self.values[row] / &direction[row];
                let better = match &leave {
                    None => true,
                    Some((r, best)) => {
                        ratio < *best || (ratio == *best && self.basis[row] < self.basis[*r])
                    }
                };
                if better {
                    leave = Some((row, ratio));
                }
            }
            // Phase one is bounded below by zero, so a ray cannot appear.
            let (pivot_row, step) = leave.expect("phase-one objective is bounded");
            if step.is_zero() {
                degenerate += 1;
            } else if !bland {
                degenerate = 0;
            }
            self.pivot(pivot_row, entering, &direction, &step);
        }
        let infeasibility: BigRational = self
            .basis
            .iter()
            .zip(&self.values)
            .filter(|(&var, _)| self.is_artificial(var))
            .map(|(_, v)| v.clone())
            .sum();
        if !infeasibility.is_zero() {
            return None;
        }
        let weights = self
            .basis
            .iter()
            .zip(&self.values)
            .filter(|(&var, v)| !self.is_artificial(var) && !v.is_zero())
            .map(|(&var, v)| (var, v.clone()))
            .collect();
        Some(Certificate { weights })
    }

    fn pivot(&mut self, row: usize, entering: usize, direction: &[BigRational], step: &BigRational) {
        let dim = self.cone.dim;
        let pivot = direction[row].clone();
        for r in 0..dim {
            if r != row {
                self.values[r] = &self.values[r] - &direction[r] * step;
            }
        }
        self.values[row] = step.clone();
        let pivot_row: Vec<BigRational> = self.inverse[row].iter().map(|v| v / &pivot).collect();
        for r in 0..dim {
            if r == row || direction[r].is_zero() {
                continue;
            }
            let factor = direction[r].clone();
            for (entry, p) in self.inverse[r].iter_mut().zip(&pivot_row) {
                *entry -= &factor * p;
            }
        }
        self.inverse[row] = pivot_row;
        self.basis[row] = entering;
    }
}
