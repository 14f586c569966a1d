use num_bigint::BigInt;
use proptest::prelude::*;
use tangent_toric::lattice::rank;
use tangent_toric::simplicial::{coordinate_simplices, exponent_map, LabeledComplex};
use tangent_toric::toric_ideal::{enumerate_binomials, relation_lattice, verify_relation};

/// Complex files with up to four simplices on labels `1..=4`, repeats allowed.
fn complex_text() -> impl Strategy<Value = String> {
    prop::collection::vec(prop::collection::vec(1u8..=4, 2..=3), 1..=4).prop_map(|simplices| {
        simplices
            .iter()
            .map(|s| s.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join("\n")
    })
}

fn evaluate(exponents: &[Vec<i64>], t: &[i64], e: &[u32]) -> BigInt {
    let mut value = BigInt::from(1);
    for (col, &k) in e.iter().enumerate() {
        for _ in 0..k {
            for (row, &tv) in t.iter().enumerate() {
                for _ in 0..exponents[row][col] {
                    value *= tv;
                }
            }
        }
    }
    value
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kernel_rank_is_coordinates_minus_map_rank(text in complex_text()) {
        let c = LabeledComplex::parse(&text).unwrap();
        let m = exponent_map(&c, true);
        prop_assert_eq!(relation_lattice(&c).rank() + rank(&m), coordinate_simplices(&c).len());
    }

    #[test]
    fn enumerated_relations_vanish_on_the_parameterization(text in complex_text(), t in prop::collection::vec(-3i64..=3, 4)) {
        let c = LabeledComplex::parse(&text).unwrap();
        let m = exponent_map(&c, true);
        let exponents: Vec<Vec<i64>> = (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
        let kernel = relation_lattice(&c);
        for r in enumerate_binomials(&c, 3).unwrap() {
            prop_assert!(verify_relation(&c, &r).unwrap());
            prop_assert!(r.plus.iter().zip(&r.minus).all(|(&p, &q)| p == 0 || q == 0));
            let d: Vec<BigInt> = r.difference().into_iter().map(BigInt::from).collect();
            prop_assert!(kernel.contains(&d));
            let t = &t[..exponents.len()];
            prop_assert_eq!(evaluate(&exponents, t, &r.plus), evaluate(&exponents, t, &r.minus));
        }
    }

    #[test]
    fn relations_round_trip_through_text(text in complex_text()) {
        let c = LabeledComplex::parse(&text).unwrap();
        for r in enumerate_binomials(&c, 3).unwrap() {
            let back = tangent_toric::toric_ideal::BinomialRelation::parse(&c, &r.format(&c)).unwrap();
            prop_assert_eq!(back, r);
        }
    }
}
