use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use tangent_toric::lattice::{hermite_normal_form, integer_kernel, rank, smith_normal_form};
use tangent_toric::{IntegerMatrix, LatticeVector, Sublattice};

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4, 1usize..=5).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..=6, c), r))
}

fn big(rows: &[Vec<i64>]) -> IntegerMatrix<BigInt> {
    let cols = rows[0].len();
    IntegerMatrix::with_cols(cols, rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()).unwrap()
}

proptest! {
    #[test]
    fn hermite_form_is_a_unimodular_transform(rows in small_matrix()) {
        let m = big(&rows);
        let (h, u) = hermite_normal_form(&m);
        prop_assert_eq!(u.mul(&m).unwrap(), h.clone());
        // Unimodular: all Smith invariants of u are 1.
        prop_assert!(smith_normal_form(&u).iter().all(|d| d.is_one()));
        prop_assert_eq!(h.nonzero_rows(), rank(&m));
        // Pivots positive, entries above a pivot reduced.
        let mut last = None;
        for i in 0..h.nonzero_rows() {
            let p = (0..h.cols()).find(|&j| !h.get(i, j).is_zero()).unwrap();
            prop_assert!(last.is_none_or(|l| p > l));
            prop_assert!(h.get(i, p).is_positive());
            for above in 0..i {
                let e = h.get(above, p);
                prop_assert!(!e.is_negative() && e < h.get(i, p));
            }
            last = Some(p);
        }
    }

    #[test]
    fn smith_invariants_form_a_divisibility_chain(rows in small_matrix()) {
        let m = big(&rows);
        let d = smith_normal_form(&m);
        prop_assert_eq!(d.iter().filter(|x| !x.is_zero()).count(), rank(&m));
        for w in d.windows(2) {
            if !w[1].is_zero() {
                prop_assert!(!w[0].is_zero() && (&w[1] % &w[0]).is_zero());
            }
        }
    }

    #[test]
    fn kernel_is_annihilated_and_has_complementary_rank(rows in small_matrix()) {
        let m = big(&rows);
        let k = integer_kernel(&m);
        prop_assert_eq!(k.rank() + rank(&m), m.cols());
        for v in k.basis() {
            prop_assert!(m.mul_vec(&v.0).unwrap().iter().all(Zero::is_zero));
        }
        // The kernel is saturated.
        prop_assert_eq!(k.saturation(), k);
    }

    #[test]
    fn sublattice_form_is_canonical(rows in small_matrix(), seed in any::<u64>()) {
        let n = rows[0].len();
        let gens: Vec<LatticeVector<BigInt>> =
            rows.iter().map(|r| LatticeVector(r.iter().map(|&x| BigInt::from(x)).collect())).collect();
        let l = Sublattice::from_generators(n, &gens).unwrap();
        let mut shuffled = gens.clone();
        let len = shuffled.len();
        shuffled.rotate_left((seed as usize) % len);
        // Adding a combination of generators does not change the lattice.
        let extra = &shuffled[0] + &shuffled[len - 1];
        shuffled.push(extra);
        prop_assert_eq!(Sublattice::from_generators(n, &shuffled).unwrap(), l.clone());
        for g in &gens {
            prop_assert!(l.contains(&g.0));
            let c = l.coordinates(&g.0).unwrap();
            let back: Vec<BigInt> = (0..n).map(|j| l.basis().iter().zip(&c).map(|(b, x)| &b.0[j] * x).sum()).collect();
            prop_assert_eq!(&back, &g.0);
        }
    }

    #[test]
    fn machine_and_big_integers_agree(rows in small_matrix()) {
        let cols = rows[0].len();
        let small = IntegerMatrix::<i64>::with_cols(cols, rows.clone()).unwrap();
        let m = big(&rows);
        prop_assert_eq!(rank(&small), rank(&m));
        let k_small: Sublattice<BigInt> = integer_kernel(&small).cast().unwrap();
        prop_assert_eq!(k_small, integer_kernel(&m));
    }

    #[test]
    fn orthogonal_complement_is_orthogonal(rows in small_matrix()) {
        let n = rows[0].len();
        let gens: Vec<LatticeVector<BigInt>> =
            rows.iter().map(|r| LatticeVector(r.iter().map(|&x| BigInt::from(x)).collect())).collect();
        let l = Sublattice::from_generators(n, &gens).unwrap();
        let perp = l.orthogonal_complement();
        prop_assert_eq!(perp.rank() + l.rank(), n);
        for u in perp.basis() {
            for v in l.basis() {
                prop_assert!(u.dot(&v.0).is_zero());
            }
        }
    }
}
