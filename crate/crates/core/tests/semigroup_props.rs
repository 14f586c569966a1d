use proptest::prelude::*;
use tangent_toric::hoa_trung::sf_member;
use tangent_toric::membership::{decompose, semigroup_member};
use tangent_toric::model::{facet_list, AffineSemigroup};
use tangent_toric::{LatticeVector, Point};

/// Parameters with `k <= 3`, `a_i, b_i <= 3` and at most five coordinates.
fn params() -> impl Strategy<Value = (Vec<usize>, Vec<usize>)> {
    (1usize..=3)
        .prop_flat_map(|k| (prop::collection::vec(1usize..=3, k), prop::collection::vec(1usize..=3, k)))
        .prop_filter("small ambient dimension", |(_, b)| b.iter().sum::<usize>() <= 5)
}

fn model_and_point(range: i64) -> impl Strategy<Value = (AffineSemigroup, Point, Vec<usize>)> {
    params().prop_flat_map(move |(a, b)| {
        let n: usize = b.iter().sum();
        let s = AffineSemigroup::from_params(a, b).unwrap();
        let gens = s.generators().len();
        (
            Just(s),
            prop::collection::vec(-range..=range, n).prop_map(LatticeVector),
            prop::collection::vec(0..gens.max(1), 0..4),
        )
    })
}

fn sum_of(s: &AffineSemigroup, picks: &[usize]) -> Point {
    let mut acc = LatticeVector::zeros(s.n());
    for &i in picks {
        if let Some(g) = s.generators().get(i) {
            acc = &acc + g;
        }
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn semigroup_is_contained_in_every_face_extension((s, _x, picks) in model_and_point(0)) {
        let y = sum_of(&s, &picks);
        prop_assert!(semigroup_member(&s, &y).unwrap());
        for f in facet_list(&s) {
            prop_assert!(sf_member(&s, f.id, &y, 1000).unwrap().is_member(), "{} not in S_F for {}", y, f.id);
        }
    }

    #[test]
    fn face_extensions_are_upward_closed((s, x, picks) in model_and_point(4)) {
        prop_assume!(s.group_contains(&x.0));
        let shifted = &x + &sum_of(&s, &picks);
        for f in facet_list(&s) {
            if sf_member(&s, f.id, &x, 1000).unwrap().is_member() {
                prop_assert!(sf_member(&s, f.id, &shifted, 1000).unwrap().is_member(), "{} in S_F but {} not ({})", x, shifted, f.id);
            }
        }
    }

    #[test]
    fn face_witnesses_lie_on_the_face((s, x, _picks) in model_and_point(4)) {
        prop_assume!(s.group_contains(&x.0));
        for f in facet_list(&s) {
            let r = sf_member(&s, f.id, &x, 1000).unwrap();
            if let tangent_toric::hoa_trung::SFStatus::Member { witness, .. } = r.status {
                prop_assert!(s.contains(&witness.0));
                prop_assert_eq!(f.eval(&witness.0), 0);
                prop_assert!(s.contains(&(&x + &witness).0));
            }
        }
    }

    #[test]
    fn decompositions_sum_back((s, x, _picks) in model_and_point(5)) {
        let x = LatticeVector(x.0.iter().map(|v| v.abs()).collect::<Vec<_>>());
        let member = semigroup_member(&s, &x).unwrap();
        match decompose(&s, &x).unwrap() {
            Some(parts) => {
                prop_assert!(member);
                let total = parts.iter().fold(LatticeVector::zeros(s.n()), |acc, p| &acc + p);
                prop_assert_eq!(total, x);
                prop_assert!(parts.iter().all(|p| s.generators().contains(p)));
            }
            None => prop_assert!(!member),
        }
    }

    #[test]
    fn members_lie_in_cone_and_group((s, x, _picks) in model_and_point(5)) {
        if semigroup_member(&s, &x).unwrap() {
            prop_assert!(s.cone_contains(&x.0));
            prop_assert!(s.group_contains(&x.0));
        }
    }
}
