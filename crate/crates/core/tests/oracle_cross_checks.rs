//! Dimension counts checked against the interpolation oracle.

use weyl_cycles::baselocus::base_locus_report;
use weyl_cycles::dimension::{check_conjecture, euler_char, h0_p3, wdim};
use weyl_cycles::oracle::{interpolation_h0, oracle_consensus, run_grid, InterpolationProblem, DEFAULT_PRIMES};
use weyl_cycles::weyl::WeylSpace;
use weyl_cycles::DivisorClass;

fn div(n: usize, d: i64, m: &[i64]) -> DivisorClass {
    DivisorClass::new(n, d, m.to_vec()).unwrap()
}

fn oracle(d: &DivisorClass) -> i64 {
    let c = oracle_consensus(d, &run_grid(&DEFAULT_PRIMES, &[3, 5])).unwrap();
    assert!(c.agree, "oracle runs disagree on {d}");
    c.h0 as i64
}

#[test]
fn worked_values_on_x37() {
    for (d, expected) in [
        (div(3, 2, &[1; 7]), 3),
        (div(3, 2, &[2, 1, 1, 1, 1, 1, 0]), 1),
        (div(3, 4, &[3, 2, 2, 2, 2, 2, 2]), 1),
        (div(3, 3, &[2; 7]), 0),
    ] {
        assert_eq!(oracle(&d), expected, "{d}");
        assert_eq!(h0_p3(&d).unwrap().h0, expected, "{d}");
    }
}

#[test]
fn worked_values_on_x48() {
    for (d, expected) in [(div(4, 2, &[1; 8]), 7), (div(4, 0, &[0; 8]), 1)] {
        assert_eq!(oracle(&d), expected);
        assert_eq!(wdim(&d).unwrap().total, expected);
        assert!(check_conjecture(&d, &DEFAULT_PRIMES, 9).unwrap().agree);
    }
}

#[test]
fn small_oracle_values() {
    let p = DEFAULT_PRIMES[0];
    let h = |n, d, m: &[i64]| interpolation_h0(&InterpolationProblem::new(n, d, m.to_vec(), p, 1).unwrap()).unwrap();
    assert_eq!(h(3, 1, &[1]), 3);
    assert_eq!(h(3, 2, &[1; 7]), 3);
    assert_eq!(h(3, 2, &[2, 1, 1, 1, 1, 1]), 1);
    assert_eq!(h(2, 3, &[2]), 7);
}

#[test]
fn empty_base_locus_gives_chi() {
    let space = WeylSpace::shared(3, 7).unwrap();
    let mut checked = 0;
    for d in 0..=4 {
        for m0 in 0..=d.min(3) {
            for m1 in 0..=m0 {
                for rest in 0..=m1 {
                    let class = div(3, d, &[m0, m1, rest, rest, rest, 0, 0]);
                    if !space.in_effective_cone(&class).unwrap() {
                        continue;
                    }
                    if base_locus_report(&class).unwrap().is_empty() {
                        assert_eq!(oracle(&class), euler_char(&class).max(0), "{class}");
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 10);
}

#[test]
fn oracle_is_deterministic() {
    let d = div(4, 4, &[3, 2, 2, 2, 2, 2, 2, 1]);
    let runs = run_grid(&[DEFAULT_PRIMES[1]], &[42]);
    assert_eq!(oracle_consensus(&d, &runs).unwrap(), oracle_consensus(&d, &runs).unwrap());
}
