//! Independent facet computation by the double-description method.
//!
//! Generators are rewritten in coordinates of a basis of the group, which
//! makes the cone full-dimensional; its facets are then the extreme rays of
//! the dual cone `{h : h·g >= 0 for every generator g}`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{integer_kernel, rank, IntegerMatrix, LatticeVector};
use crate::model::{facet_list, AffineSemigroup};

/// Default ambient-dimension cap for the oracle.
pub const DEFAULT_ORACLE_CAP: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("facet oracle unavailable: dimension {n} exceeds cap {cap}")]
pub struct OracleUnavailable {
    pub n: usize,
    pub cap: usize,
}

/// A facet found geometrically: its normal in group coordinates and the
/// generators lying on it (indices into the generator list).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleFacet {
    pub normal: Vec<BigInt>,
    pub tight: Vec<usize>,
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    LatticeVector(v).primitive().0
}

struct Ray {
    h: Vec<BigInt>,
    zeros: Vec<usize>,
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j, mut out) = (0, 0, Vec::new());
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Zero sets stay sorted: constraints are visited in index order, but the
/// initial basis may already hold larger indices.
fn insert_sorted(v: &mut Vec<usize>, c: usize) {
    if let Err(pos) = v.binary_search(&c) {
        v.insert(pos, c);
    }
}

/// Extreme rays of the pointed cone `{h ∈ Q^r : A h >= 0}` where `A` has rank `r`.
pub fn dual_extreme_rays(constraints: &[Vec<BigInt>], r: usize) -> Vec<Vec<BigInt>> {
    let sub_rank = |idx: &[usize]| -> usize {
        let rows: Vec<Vec<BigInt>> = idx.iter().map(|&i| constraints[i].clone()).collect();
        rank(&IntegerMatrix::with_cols(r, rows).expect("rows of length r"))
    };
    // Greedy choice of r independent constraints.
    let mut basis: Vec<usize> = Vec::new();
    for i in 0..constraints.len() {
        if basis.len() == r {
            break;
        }
        let mut trial = basis.clone();
        trial.push(i);
        if sub_rank(&trial) == trial.len() {
            basis = trial;
        }
    }
    assert_eq!(basis.len(), r, "constraint matrix must have full column rank");
    let mut rays: Vec<Ray> = Vec::new();
    for (t, &row) in basis.iter().enumerate() {
        let others: Vec<Vec<BigInt>> =
            basis.iter().enumerate().filter(|&(u, _)| u != t).map(|(_, &i)| constraints[i].clone()).collect();
        let kernel = integer_kernel(&IntegerMatrix::with_cols(r, others).expect("rows of length r"));
        let mut h = kernel.basis()[0].0.clone();
        if dot(&h, &constraints[row]).is_negative() {
            h = h.into_iter().map(|x| -x).collect();
        }
        let mut zeros: Vec<usize> = basis.iter().copied().filter(|&i| i != row).collect();
        zeros.sort_unstable();
        rays.push(Ray { h, zeros });
    }
    let mut processed: Vec<bool> = vec![false; constraints.len()];
    for &i in &basis {
        processed[i] = true;
    }
    for c in 0..constraints.len() {
        if processed[c] {
            continue;
        }
        processed[c] = true;
        let a = &constraints[c];
        let values: Vec<BigInt> = rays.iter().map(|ray| dot(a, &ray.h)).collect();
        if values.iter().all(|v| !v.is_negative()) {
            for (ray, v) in rays.iter_mut().zip(&values) {
                if v.is_zero() {
                    insert_sorted(&mut ray.zeros, c);
                }
            }
            continue;
        }
        let mut next: Vec<Ray> = Vec::new();
        for (p, vp) in rays.iter().zip(&values) {
            if !vp.is_positive() {
                continue;
            }
            for (q, vq) in rays.iter().zip(&values) {
                if !vq.is_negative() {
                    continue;
                }
                let common = intersect(&p.zeros, &q.zeros);
                if r >= 2 && (common.len() < r - 2 || sub_rank(&common) != r - 2) {
                    continue;
                }
                let h: Vec<BigInt> = p.h.iter().zip(&q.h).map(|(x, y)| vp * y - vq * x).collect();
                let mut zeros = common;
                insert_sorted(&mut zeros, c);
                next.push(Ray { h: primitive(h), zeros });
            }
        }
        for (mut ray, v) in rays.into_iter().zip(values) {
            if v.is_zero() {
                insert_sorted(&mut ray.zeros, c);
                next.push(ray);
            } else if v.is_positive() {
                next.push(ray);
            }
        }
        rays = next;
    }
    let mut out: Vec<Vec<BigInt>> = rays.into_iter().map(|r| r.h).collect();
    out.sort();
    out.dedup();
    out
}

/// Facets of the cone spanned by the generators, computed geometrically.
pub fn facet_oracle(s: &AffineSemigroup, cap: usize) -> Result<Vec<OracleFacet>, OracleUnavailable> {
    if s.n() > cap {
        return Err(OracleUnavailable { n: s.n(), cap });
    }
    let r = s.rank();
    if r == 0 {
        return Ok(Vec::new());
    }
    let coords: Vec<Vec<BigInt>> = s
        .generators()
        .iter()
        .map(|g| {
            let big: Vec<BigInt> = g.0.iter().map(|&x| BigInt::from(x)).collect();
            s.group().coordinates(&big).expect("generators lie in their group")
        })
        .collect();
    let mut constraints: Vec<Vec<BigInt>> = coords.iter().map(|c| primitive(c.clone())).collect();
    constraints.sort();
    constraints.dedup();
    let normals = dual_extreme_rays(&constraints, r);
    Ok(normals
        .into_iter()
        .map(|h| {
            let tight = coords.iter().enumerate().filter(|(_, c)| dot(c, &h).is_zero()).map(|(i, _)| i).collect();
            OracleFacet { normal: h, tight }
        })
        .collect())
}

/// Sets of generators lying on each facet of the structural table.
pub fn derived_tight_sets(s: &AffineSemigroup) -> Vec<Vec<usize>> {
    facet_list(s)
        .iter()
        .map(|f| s.generators().iter().enumerate().filter(|(_, g)| f.eval(&g.0) == 0).map(|(i, _)| i).collect())
        .collect()
}

/// Compare the structural facet table with the oracle, matching facets by
/// the generators they contain.
pub fn facets_agree(s: &AffineSemigroup, cap: usize) -> Result<bool, OracleUnavailable> {
    let mut oracle: Vec<Vec<usize>> = facet_oracle(s, cap)?.into_iter().map(|f| f.tight).collect();
    let mut derived = derived_tight_sets(s);
    oracle.sort();
    derived.sort();
    Ok(oracle == derived)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(a: &[usize], b: &[usize]) -> AffineSemigroup {
        AffineSemigroup::from_params(a.to_vec(), b.to_vec()).unwrap()
    }

    #[test]
    fn quadrant_has_two_facets() {
        let s = model(&[2, 2], &[1, 1]);
        let facets = facet_oracle(&s, 6).unwrap();
        assert_eq!(facets.len(), 2);
        assert!(facets_agree(&s, 6).unwrap());
    }

    #[test]
    fn veronese_conic_facets() {
        let s = model(&[2], &[2]);
        assert_eq!(facet_oracle(&s, 6).unwrap().len(), 2);
        assert!(facets_agree(&s, 6).unwrap());
    }

    #[test]
    fn ray_has_origin_facet() {
        let s = model(&[3], &[1]);
        let facets = facet_oracle(&s, 6).unwrap();
        assert_eq!(facets.len(), 1);
        assert!(facets[0].tight.is_empty());
        assert!(facets_agree(&s, 6).unwrap());
    }

    #[test]
    fn product_of_triangles_has_six_facets() {
        // The greedy basis skips dependent rows here, so later constraints
        // have smaller indices than some basis rows.
        let s = model(&[1, 1], &[3, 3]);
        assert_eq!(facet_oracle(&s, 6).unwrap().len(), 6);
        assert!(facets_agree(&s, 6).unwrap());
        assert!(facets_agree(&model(&[1, 2], &[2, 3]), 6).unwrap());
        assert!(facets_agree(&model(&[1, 1, 1], &[1, 1, 3]), 6).unwrap());
    }

    #[test]
    fn cap_is_reported() {
        let s = model(&[1, 1], &[4, 3]);
        assert_eq!(facet_oracle(&s, 6), Err(OracleUnavailable { n: 7, cap: 6 }));
    }

    #[test]
    fn square_cone_dual() {
        // Cone over a square: four facets.
        let gens: Vec<Vec<BigInt>> = [[1, 0, 0], [1, 1, 0], [1, 0, 1], [1, 1, 1]]
            .iter()
            .map(|g| g.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        assert_eq!(dual_extreme_rays(&gens, 3).len(), 4);
    }
}
