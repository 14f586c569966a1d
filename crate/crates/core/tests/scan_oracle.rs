//! The window scans of the criterion work on classes of points; here they
//! are replayed point by point on small instances.

use std::collections::HashSet;

use tangent_toric::classify::sweep_grid;
use tangent_toric::hoa_trung::{gj_empty, s_prime_equals_s, sf_member, FacetTable};
use tangent_toric::membership::Window;
use tangent_toric::model::{facet_list, AffineSemigroup};
use tangent_toric::LatticeVector;

fn window_points(n: usize, radius: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v: Vec<i64>| (-radius..=radius).map(move |c| [v.clone(), vec![c]].concat())).collect();
    }
    out
}

#[test]
fn class_scans_match_point_scans() {
    let mut instances = 0;
    for p in sweep_grid(2, 3, 2).into_iter().filter(|p| p.n() <= 3 && !p.is_trivial()) {
        let s = AffineSemigroup::new(p.clone());
        let facets = facet_list(&s);
        let table = FacetTable::new(&s);
        let w = Window::default_for(&p);
        let bound = 1000;
        // Mask of facets F with x outside S_F, for every group point.
        let mut realized: HashSet<u64> = HashSet::new();
        let mut s_prime_witness = false;
        for x in window_points(p.n(), w.radius) {
            if !s.group_contains(&x) {
                continue;
            }
            let point = LatticeVector(x.clone());
            let mut mask = 0u64;
            for (i, f) in facets.iter().enumerate() {
                if !sf_member(&s, f.id, &point, bound).unwrap().is_member() {
                    mask |= 1 << i;
                }
            }
            assert_eq!(mask, table.point_mask(&s, &x), "{p}: mask of {point}");
            if mask == 0 && !s.contains(&x) {
                s_prime_witness = true;
            }
            realized.insert(mask);
        }
        let verdict = s_prime_equals_s(&s, w, bound).unwrap();
        assert_eq!(verdict.holds(), !s_prime_witness, "{p}: S' = S");
        let full = (1u64 << facets.len()) - 1;
        for j in 1..full {
            let ids = table.ids_of(j);
            let status = gj_empty(&s, &ids, w, bound).unwrap();
            assert_eq!(status.is_empty(), !realized.contains(&j), "{p}: G_J for J = {ids:?}");
        }
        instances += 1;
    }
    assert!(instances >= 10);
}
