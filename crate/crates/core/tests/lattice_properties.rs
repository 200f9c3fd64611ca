use proptest::prelude::*;

use weyl_cycles::lattice::{
    cremona_curve, cremona_divisor, cremona_reduce, dm_pairing, index_sets, intersect_div_curve,
    is_cremona_reduced, CurveClass, DivisorClass, IndexSet,
};

fn ambient() -> impl Strategy<Value = (usize, usize)> {
    prop_oneof![Just((3usize, 7usize)), Just((4, 8)), Just((2, 5)), Just((3, 5))]
}

fn divisor(n: usize, s: usize) -> impl Strategy<Value = DivisorClass> {
    (-15i64..=15, prop::collection::vec(-15i64..=15, s))
        .prop_map(move |(d, m)| DivisorClass::new(n, d, m).unwrap())
}

fn curve(n: usize, s: usize) -> impl Strategy<Value = CurveClass> {
    (-15i64..=15, prop::collection::vec(-15i64..=15, s))
        .prop_map(move |(delta, mu)| CurveClass::new(n, delta, mu).unwrap())
}

fn set(n: usize, s: usize) -> impl Strategy<Value = IndexSet> {
    let sets = index_sets(s, n + 1);
    (0..sets.len()).prop_map(move |k| sets[k].clone())
}

fn case() -> impl Strategy<Value = (DivisorClass, DivisorClass, CurveClass, IndexSet)> {
    ambient().prop_flat_map(|(n, s)| (divisor(n, s), divisor(n, s), curve(n, s), set(n, s)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn pairing_is_cremona_invariant((a, b, _, i) in case()) {
        let (ca, cb) = (cremona_divisor(&a, &i).unwrap(), cremona_divisor(&b, &i).unwrap());
        prop_assert_eq!(dm_pairing(&ca, &cb).unwrap(), dm_pairing(&a, &b).unwrap());
    }

    #[test]
    fn cremona_is_an_involution((a, _, c, i) in case()) {
        prop_assert_eq!(cremona_divisor(&cremona_divisor(&a, &i).unwrap(), &i).unwrap(), a.clone());
        prop_assume!(a.n() >= 3);
        prop_assert_eq!(cremona_curve(&cremona_curve(&c, &i).unwrap(), &i).unwrap(), c);
    }

    #[test]
    fn divisor_curve_product_is_invariant((a, _, c, i) in case()) {
        prop_assume!(a.n() >= 3);
        let lhs = intersect_div_curve(&cremona_divisor(&a, &i).unwrap(), &cremona_curve(&c, &i).unwrap());
        prop_assert_eq!(lhs.unwrap(), intersect_div_curve(&a, &c).unwrap());
    }

    #[test]
    fn pairing_is_symmetric((a, b, _, _) in case()) {
        prop_assert_eq!(dm_pairing(&a, &b).unwrap(), dm_pairing(&b, &a).unwrap());
    }

    #[test]
    fn reduction_ends_reduced_or_flagged((a, _, _, _) in case()) {
        let r = cremona_reduce(&a);
        prop_assert!(r.non_effective || is_cremona_reduced(&r.class));
        let mut replay = a.clone();
        for step in &r.steps {
            replay = cremona_divisor(&replay, step).unwrap();
        }
        prop_assert_eq!(replay, r.class);
    }

    #[test]
    fn canonical_key_ignores_point_order((a, _, _, _) in case(), rot in 0usize..8) {
        let s = a.s();
        let perm: Vec<usize> = (0..s).map(|k| (k + rot) % s + 1).collect();
        prop_assert_eq!(a.permuted(&perm).canonical_key(), a.canonical_key());
    }

    #[test]
    fn text_and_json_round_trip((a, _, c, _) in case()) {
        prop_assert_eq!(a.to_string().parse::<DivisorClass>().unwrap(), a.clone());
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<DivisorClass>(&json).unwrap(), a);
        prop_assert_eq!(c.to_string().parse::<CurveClass>().unwrap(), c);
    }
}

#[test]
fn reduction_examples() {
    let d = DivisorClass::new(3, 2, vec![1; 7]).unwrap();
    let r = cremona_reduce(&d);
    assert!(r.steps.is_empty() && r.class == d && !r.non_effective);

    let weyl = DivisorClass::new(3, 3, vec![2, 2, 2, 2, 1, 1, 1]).unwrap();
    let r = cremona_reduce(&weyl);
    assert_eq!(r.steps.len(), 2);
    assert_eq!(r.class.d(), 0);
    assert_eq!(r.class.m().iter().filter(|&&m| m == -1).count(), 1);

    let r = cremona_reduce(&DivisorClass::new(3, 3, vec![2; 7]).unwrap());
    assert!(r.non_effective);
    assert_eq!(r.steps.len(), 1);
}
