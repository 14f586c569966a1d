//! Decision procedures on the semigroup: membership, decompositions, holes,
//! normality and smoothness.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::blocks::{admissible, realize_block, BlockPart, Spread};
use crate::error::{Error, Result};
use crate::lattice::LatticeVector;
use crate::model::{extreme_rays, index_in_group, AffineSemigroup};
use crate::params::SVParams;
use crate::Point;

/// The box `|x_{i,j}| <= radius` (or `[0, radius]^n` for orthant scans).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Window {
    pub radius: i64,
}

impl Window {
    pub fn new(radius: i64) -> Self {
        Window { radius }
    }

    /// Default radius `2(a_k + 2)`.
    pub fn default_for(p: &SVParams) -> Self {
        Window { radius: 2 * (p.max_a() as i64 + 2) }
    }

    pub(crate) fn check(&self, s: &AffineSemigroup) -> Result<()> {
        let required = s.max_generator_coordinate().max(1);
        if self.radius < required {
            return Err(Error::WindowTooSmall { radius: self.radius, required });
        }
        Ok(())
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        x.iter().all(|v| v.abs() <= self.radius)
    }
}

/// Exact membership in the semigroup.
pub fn semigroup_member(s: &AffineSemigroup, v: &Point) -> Result<bool> {
    s.check_dim(&v.0)?;
    Ok(s.contains(&v.0))
}

/// A decomposition of `v` into generators, or `None` if `v` is not in the
/// semigroup. Re-summing the result gives `v` exactly.
///
/// The search runs on block sums (depth first, memoizing dead ends, larger
/// generators first) and the block-level parts are then dealt back onto the
/// coordinates of each block.
pub fn decompose(s: &AffineSemigroup, v: &Point) -> Result<Option<Vec<Point>>> {
    s.check_dim(&v.0)?;
    if v.0.iter().any(|&x| x < 0) {
        return Ok(None);
    }
    let w = s.params().block_sums(&v.0);
    let mut dead: HashSet<Vec<i64>> = HashSet::new();
    let mut parts = Vec::new();
    if !search(s.block_generators(), &w, &mut dead, &mut parts) {
        return Ok(None);
    }
    Ok(Some(lift(s.params(), &v.0, &parts)))
}

fn search(gens: &[Vec<i64>], w: &[i64], dead: &mut HashSet<Vec<i64>>, out: &mut Vec<Vec<i64>>) -> bool {
    if w.iter().all(|&x| x == 0) {
        return true;
    }
    if dead.contains(w) {
        return false;
    }
    for g in gens {
        if g.iter().zip(w).all(|(a, b)| a <= b) {
            let rest: Vec<i64> = w.iter().zip(g).map(|(a, b)| a - b).collect();
            out.push(g.clone());
            if search(gens, &rest, dead, out) {
                return true;
            }
            out.pop();
        }
    }
    dead.insert(w.to_vec());
    false
}

/// Deal the units of each block of `v` onto parts with the given block sums.
fn lift(p: &SVParams, v: &[i64], parts: &[Vec<i64>]) -> Vec<Point> {
    let n = p.n();
    let mut out = vec![vec![0i64; n]; parts.len()];
    for (i, offset) in p.offsets().into_iter().enumerate() {
        let mut units = (offset..offset + p.b()[i]).flat_map(|idx| std::iter::repeat_n(idx, v[idx] as usize));
        for (part, dst) in parts.iter().zip(out.iter_mut()) {
            for _ in 0..part[i] {
                dst[units.next().expect("block sums match")] += 1;
            }
        }
    }
    out.into_iter().map(LatticeVector).collect()
}

/// Holes of the semigroup inside an orthant window. Holes are stored by block
/// sums: a nonnegative point is a hole iff its block-sum vector is one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HoleSet {
    pub window: Window,
    block_sizes: Vec<usize>,
    /// Block-sum vectors of `(C ∩ Z^n) \ S` in the window.
    pub ambient: Vec<Vec<i64>>,
    /// Block-sum vectors of `(C ∩ G) \ S` in the window.
    pub group: Vec<Vec<i64>>,
}

impl HoleSet {
    fn matches(&self, classes: &[Vec<i64>], x: &[i64]) -> bool {
        if x.len() != self.block_sizes.iter().sum::<usize>() || x.iter().any(|&v| v < 0 || v > self.window.radius) {
            return false;
        }
        let mut w = Vec::with_capacity(self.block_sizes.len());
        let mut start = 0;
        for &b in &self.block_sizes {
            w.push(x[start..start + b].iter().sum::<i64>());
            start += b;
        }
        classes.binary_search(&w).is_ok()
    }

    pub fn contains_ambient(&self, x: &[i64]) -> bool {
        self.matches(&self.ambient, x)
    }

    pub fn contains_group(&self, x: &[i64]) -> bool {
        self.matches(&self.group, x)
    }

    fn expand(&self, classes: &[Vec<i64>]) -> Vec<Point> {
        let mut out = Vec::new();
        for w in classes {
            let mut acc: Vec<Vec<i64>> = vec![Vec::new()];
            for (&total, &b) in w.iter().zip(&self.block_sizes) {
                let block = bounded_compositions(total, b, self.window.radius);
                acc = acc
                    .iter()
                    .flat_map(|base| {
                        block.iter().map(move |c| {
                            let mut s = base.clone();
                            s.extend(c);
                            s
                        })
                    })
                    .collect();
            }
            out.extend(acc.into_iter().map(LatticeVector));
        }
        out.sort();
        out
    }

    /// Every ambient hole point in the window.
    pub fn ambient_points(&self) -> Vec<Point> {
        self.expand(&self.ambient)
    }

    /// Every group-relative hole point in the window.
    pub fn group_points(&self) -> Vec<Point> {
        self.expand(&self.group)
    }
}

/// Compositions of `total` into `parts` entries, each in `[0, cap]`.
fn bounded_compositions(total: i64, parts: usize, cap: i64) -> Vec<Vec<i64>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=total.min(cap) {
        for mut rest in bounded_compositions(total - first, parts - 1, cap) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Block-sum vectors of the orthant window, by total then lexicographically.
pub(crate) fn orthant_block_sums(s: &AffineSemigroup, w: Window) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for &b in s.params().b() {
        let cap = w.radius * b as i64;
        out = out
            .into_iter()
            .flat_map(|base: Vec<i64>| {
                (0..=cap).map(move |v| {
                    let mut s = base.clone();
                    s.push(v);
                    s
                })
            })
            .collect();
    }
    out.sort_by(|x, y| x.iter().sum::<i64>().cmp(&y.iter().sum::<i64>()).then_with(|| x.cmp(y)));
    out
}

/// Realize nonnegative block sums as a concrete point of the window.
pub(crate) fn orthant_point(s: &AffineSemigroup, w: &[i64], radius: i64) -> Point {
    let mut x = Vec::with_capacity(s.n());
    for (&total, &b) in w.iter().zip(s.params().b()) {
        let part = BlockPart { neg_count: 0, neg_sum: 0, pos_sum: total };
        x.extend(realize_block(&part, b, radius, None, Spread::Concentrated));
    }
    LatticeVector(x)
}

/// All holes (ambient and group-relative) inside `[0, M]^n`.
pub fn find_holes(s: &AffineSemigroup, w: Window) -> Result<HoleSet> {
    w.check(s)?;
    let mut ambient = Vec::new();
    let mut group = Vec::new();
    for bs in orthant_block_sums(s, w) {
        if !s.block_cone_contains(&bs) || admissible(&bs, s.degrees()) {
            continue;
        }
        if s.block_group_contains(&bs) {
            group.push(bs.clone());
        }
        ambient.push(bs);
    }
    ambient.sort();
    group.sort();
    Ok(HoleSet { window: w, block_sizes: s.params().b().to_vec(), ambient, group })
}

/// Outcome of the normality test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum NormalityVerdict {
    /// No group-relative hole in the window; `certified_by` names the
    /// structural case (`N1` Segre, `N2` Veronese) when the parameters match one.
    NormalWithinWindow {
        window: Window,
        #[serde(rename = "certified-by", default, skip_serializing_if = "Option::is_none")]
        certified_by: Option<String>,
    },
    NotNormal { window: Window, witness: Point },
}

impl NormalityVerdict {
    pub fn is_normal(&self) -> bool {
        matches!(self, NormalityVerdict::NormalWithinWindow { .. })
    }
}

/// Structural normality case matched by the parameters, if any.
pub fn normality_case(p: &SVParams) -> Option<&'static str> {
    if p.a().iter().all(|&a| a == 1) {
        Some("N1")
    } else if p.k() == 1 && p.a()[0] == 2 {
        Some("N2")
    } else {
        None
    }
}

/// Search the orthant window for a point of `C ∩ G` outside the semigroup.
pub fn is_normal(s: &AffineSemigroup, w: Window) -> Result<NormalityVerdict> {
    w.check(s)?;
    for bs in orthant_block_sums(s, w) {
        if s.block_cone_contains(&bs) && s.block_group_contains(&bs) && !admissible(&bs, s.degrees()) {
            let witness = orthant_point(s, &bs, w.radius);
            debug_assert!(s.cone_contains(&witness.0) && s.group_contains(&witness.0) && !s.contains(&witness.0));
            return Ok(NormalityVerdict::NotNormal { window: w, witness });
        }
    }
    Ok(NormalityVerdict::NormalWithinWindow { window: w, certified_by: normality_case(s.params()).map(String::from) })
}

/// Outcome of the smoothness test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum SmoothnessVerdict {
    Smooth { reason: String },
    NotSmooth { reason: String },
    Undetermined { reason: String },
}

impl SmoothnessVerdict {
    pub fn reason(&self) -> &str {
        match self {
            SmoothnessVerdict::Smooth { reason }
            | SmoothnessVerdict::NotSmooth { reason }
            | SmoothnessVerdict::Undetermined { reason } => reason,
        }
    }
}

/// Smooth iff normal, with as many extreme rays as the rank, and the
/// primitive ray generators forming a basis of the group.
pub fn is_smooth(s: &AffineSemigroup, w: Window) -> Result<SmoothnessVerdict> {
    if s.is_trivial() {
        return Ok(SmoothnessVerdict::Smooth { reason: "the semigroup is zero; the model is a point".into() });
    }
    if let NormalityVerdict::NotNormal { witness, .. } = is_normal(s, w)? {
        return Ok(SmoothnessVerdict::NotSmooth { reason: format!("not normal: hole at {witness}") });
    }
    let rays = extreme_rays(s);
    if rays.len() != s.rank() {
        return Ok(SmoothnessVerdict::NotSmooth {
            reason: format!("{} extreme rays for a group of rank {}", rays.len(), s.rank()),
        });
    }
    match index_in_group(s, &rays) {
        Some(idx) if idx == 1.into() => Ok(SmoothnessVerdict::Smooth {
            reason: format!("normal within window {}; the {} ray generators form a basis of the group", w.radius, rays.len()),
        }),
        Some(idx) => Ok(SmoothnessVerdict::NotSmooth { reason: format!("ray generators span a sublattice of index {idx}") }),
        None => Ok(SmoothnessVerdict::NotSmooth { reason: "ray generators do not span the group rationally".into() }),
    }
}
