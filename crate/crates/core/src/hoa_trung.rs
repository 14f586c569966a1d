//! The Hoa–Trung criterion for the Cohen–Macaulay and Gorenstein properties
//! of an affine semigroup ring.
//!
//! For a facet `F` let `S_F = {x ∈ G : x + y ∈ S for some y ∈ S ∩ F}`. The
//! ring is Cohen–Macaulay iff `S' = ∩_F S_F` equals `S` and, for every proper
//! nonempty set `J` of facets, either
//! `G_J = ∩_{F∉J} S_F \ ∪_{F∈J} S_F` is empty or the complex
//! `π_J = {I ⊆ J : some nonzero element of S lies on every F ∈ I}` is
//! acyclic. It is Gorenstein iff in addition `G_𝓕 = x₀ − S` for some `x₀`.
//!
//! Membership in `S_F` is decided exactly (see [`BlockFace::accepts`]); the
//! only bounded ingredient is the window over which `G` is scanned.
//!
//! Scans run over block profiles. Whether `x ∈ S_F` depends on the block
//! sums of `x` and of its negative part, and, for a coordinate facet, on the
//! sign of that coordinate. Placing the negative coordinates of each block
//! first gives one canonical point per profile, and the set of facets it
//! misses is a canonical representative of its orbit under permutations
//! inside blocks (which preserve the semigroup and permute facets).

use std::collections::HashMap;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::blocks::{admissible, block_parts, for_each_class, realize_block, BlockFace, BlockPart, Spread};
use crate::error::{Error, Result};
use crate::lattice::LatticeVector;
use crate::membership::Window;
use crate::model::{facet_list, AffineSemigroup, Facet, FacetId};
use crate::simplicial::{reduced_homology_ranks, AbstractComplex};
use crate::Point;

/// Largest number of vertices of a (reduced) `π_J` whose homology is
/// computed by elimination.
pub const DEFAULT_SUBSET_CAP: usize = 14;

/// A facet with the generators lying on it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceSemigroupView {
    pub facet: FacetId,
    pub face_generators: Vec<Point>,
    /// Block sums of the face generators, added up.
    pub step: Vec<i64>,
}

impl FaceSemigroupView {
    pub fn new(s: &AffineSemigroup, facet: FacetId) -> Result<Self> {
        let f = find_facet(s, facet)?;
        let face_generators = crate::model::face_generators(s, &f);
        let step = face_step(s, &face_generators).step;
        Ok(FaceSemigroupView { facet, face_generators, step })
    }
}

fn find_facet(s: &AffineSemigroup, id: FacetId) -> Result<Facet> {
    facet_list(s).into_iter().find(|f| f.id == id).ok_or_else(|| Error::UnknownFacet(id.to_string()))
}

fn face_step(s: &AffineSemigroup, gens: &[Point]) -> BlockFace {
    let mut sums: Vec<Vec<i64>> = gens.iter().map(|g| s.params().block_sums(&g.0)).collect();
    sums.sort();
    sums.dedup();
    BlockFace::from_generators(s.params().k(), sums.iter())
}

/// Generators of the semigroup lying on the facet.
pub fn face_generators(s: &AffineSemigroup, facet: FacetId) -> Result<Vec<Point>> {
    Ok(FaceSemigroupView::new(s, facet)?.face_generators)
}

#[derive(Clone, Debug)]
enum FacetKind {
    Coordinate { block: usize, pos: usize, flat: usize },
    /// Normal restricted to blocks (constant on each block).
    Balance { block_normal: Vec<i64> },
}

/// Facets with the data needed to test `S_F` membership of many points.
#[derive(Clone, Debug)]
pub struct FacetTable {
    facets: Vec<Facet>,
    kinds: Vec<FacetKind>,
    step_of: Vec<usize>,
    steps: Vec<BlockFace>,
    /// Per generator, the mask of facets containing it.
    incidence: Vec<u64>,
}

impl FacetTable {
    pub fn new(s: &AffineSemigroup) -> Self {
        let facets = facet_list(s);
        assert!(facets.len() <= 64, "facet masks hold at most 64 facets");
        let offsets = s.params().offsets();
        let mut steps: Vec<BlockFace> = Vec::new();
        let mut step_of = Vec::with_capacity(facets.len());
        let mut kinds = Vec::with_capacity(facets.len());
        for f in &facets {
            let step = face_step(s, &crate::model::face_generators(s, f));
            let idx = steps.iter().position(|t| *t == step).unwrap_or_else(|| {
                steps.push(step);
                steps.len() - 1
            });
            step_of.push(idx);
            kinds.push(match f.id {
                FacetId::Coordinate { block, index } => FacetKind::Coordinate {
                    block: block - 1,
                    pos: index - 1,
                    flat: s.params().flat_index(block - 1, index - 1),
                },
                FacetId::Balance { .. } => {
                    FacetKind::Balance { block_normal: offsets.iter().map(|&o| f.normal[o]).collect() }
                }
            });
        }
        let incidence = s
            .generators()
            .iter()
            .map(|g| facets.iter().enumerate().filter(|(_, f)| f.eval(&g.0) == 0).fold(0u64, |m, (i, _)| m | 1 << i))
            .collect();
        FacetTable { facets, kinds, step_of, steps, incidence }
    }

    pub fn len(&self) -> usize {
        self.facets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn full_mask(&self) -> u64 {
        if self.facets.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.facets.len()) - 1
        }
    }

    pub fn mask_of(&self, ids: &[FacetId]) -> Result<u64> {
        ids.iter().try_fold(0u64, |m, id| {
            let i = self.facets.iter().position(|f| f.id == *id).ok_or_else(|| Error::UnknownFacet(id.to_string()))?;
            Ok(m | 1 << i)
        })
    }

    pub fn ids_of(&self, mask: u64) -> Vec<FacetId> {
        self.facets.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, f)| f.id).collect()
    }

    /// Facets `F` with `x ∉ S_F`, for a point with block sums `w`, negative
    /// block sums `neg`, and whose negative coordinates are given by `negative`.
    fn missed_facets(&self, s: &AffineSemigroup, w: &[i64], neg: &[i64], negative: impl Fn(usize, usize, usize) -> bool) -> u64 {
        let mut cache = [0u8; 64];
        let mut accepts = |idx: usize| {
            if cache[idx] == 0 {
                cache[idx] = if self.steps[idx].accepts(w, neg, s.degrees()) { 1 } else { 2 };
            }
            cache[idx] == 1
        };
        let mut mask = 0u64;
        for (i, kind) in self.kinds.iter().enumerate() {
            let below = match kind {
                FacetKind::Coordinate { block, pos, flat } => negative(*block, *pos, *flat),
                FacetKind::Balance { block_normal } => block_normal.iter().zip(w).map(|(a, b)| a * b).sum::<i64>() < 0,
            };
            if below || !accepts(self.step_of[i]) {
                mask |= 1 << i;
            }
        }
        mask
    }

    /// Facets missed by the canonical point of a profile (negative
    /// coordinates first in every block).
    fn class_mask(&self, s: &AffineSemigroup, w: &[i64], neg: &[i64], parts: &[BlockPart]) -> u64 {
        self.missed_facets(s, w, neg, |block, pos, _| pos < parts[block].neg_count)
    }

    /// Facets `F` with `x ∉ S_F` (for `x` in the group).
    pub fn point_mask(&self, s: &AffineSemigroup, x: &[i64]) -> u64 {
        let w = s.params().block_sums(x);
        let neg = s.params().block_sums(&x.iter().map(|&v| (-v).max(0)).collect::<Vec<_>>());
        self.missed_facets(s, &w, &neg, |_, _, flat| x[flat] < 0)
    }

    /// Maximal faces of `π_J`, as facet masks.
    pub fn pi_maximal(&self, j: u64) -> Vec<u64> {
        maximal_sets(self.incidence.iter().map(|&m| m & j).filter(|&m| m != 0).collect())
    }
}

fn maximal_sets(mut sets: Vec<u64>) -> Vec<u64> {
    sets.sort_by_key(|m| std::cmp::Reverse(m.count_ones()));
    sets.dedup();
    let mut out: Vec<u64> = Vec::new();
    for m in sets {
        if !out.iter().any(|&o| o & m == m) {
            out.push(m);
        }
    }
    out.sort_unstable();
    out
}

/// Remove dominated vertices (a vertex all of whose maximal faces contain
/// some other common vertex) until none is left. Each removal is a strong
/// collapse, so the homotopy type is preserved.
fn strong_core(mut maximal: Vec<u64>) -> Vec<u64> {
    loop {
        let vertices = maximal.iter().fold(0u64, |a, &m| a | m);
        let dominated = (0..64).filter(|v| vertices >> v & 1 == 1).find(|&v| {
            let common = maximal.iter().filter(|&&m| m >> v & 1 == 1).fold(u64::MAX, |a, &m| a & m);
            common & !(1u64 << v) != 0
        });
        match dominated {
            Some(v) => maximal = maximal_sets(maximal.iter().map(|&m| m & !(1u64 << v)).collect()),
            None => return maximal,
        }
    }
}

/// Reduced rational homology of the complex with the given maximal faces,
/// `None` when the reduced complex exceeds the vertex cap.
fn homology_of_maximal(maximal: &[u64], cap: usize) -> Option<Vec<usize>> {
    if maximal.is_empty() {
        return Some(vec![1]);
    }
    // Betti numbers from degree −1 up to the dimension of the original complex.
    let len = maximal.iter().map(|m| m.count_ones() as usize).max().unwrap_or(0) + 1;
    let core = strong_core(maximal.to_vec());
    if core.len() == 1 {
        return Some(vec![0; len]);
    }
    let vertices: Vec<usize> = (0..64).filter(|v| core.iter().any(|m| m >> v & 1 == 1)).collect();
    if vertices.len() > cap {
        return None;
    }
    let local: Vec<Vec<usize>> = core
        .iter()
        .map(|m| vertices.iter().enumerate().filter(|(_, &v)| m >> v & 1 == 1).map(|(i, _)| i).collect())
        .collect();
    let names = vertices.iter().map(|v| v.to_string()).collect();
    let complex = AbstractComplex::from_maximal(names, &local).expect("maximal faces over the listed vertices");
    let mut ranks = reduced_homology_ranks(&complex);
    ranks.resize(len, 0);
    Some(ranks)
}

/// The complex `π_J` over the facets of `J` (in facet-list order).
pub fn build_pi_j(s: &AffineSemigroup, j: &[FacetId]) -> Result<AbstractComplex> {
    if j.is_empty() {
        return Err(Error::InvalidParams("J must be a nonempty set of facets".into()));
    }
    let table = FacetTable::new(s);
    let mask = table.mask_of(j)?;
    let order: Vec<usize> = (0..table.len()).filter(|i| mask >> i & 1 == 1).collect();
    let names = order.iter().map(|&i| table.facets[i].id.to_string()).collect();
    let maximal: Vec<Vec<usize>> = table
        .pi_maximal(mask)
        .iter()
        .map(|m| order.iter().enumerate().filter(|(_, &i)| m >> i & 1 == 1).map(|(l, _)| l).collect())
        .collect();
    AbstractComplex::from_maximal(names, &maximal)
}

/// Outcome of a test `x ∈ S_F`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum SFStatus {
    /// `y ∈ S ∩ F` with `x + y ∈ S`; `y` has block sums `multiplier` times
    /// the face step.
    Member { witness: Point, multiplier: u64 },
    /// No `y` exists (exact).
    Nonmember,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SFMembershipResult {
    pub facet: FacetId,
    #[serde(flatten)]
    pub status: SFStatus,
    /// The configured search bound; the decision itself does not depend on it.
    pub bound: u64,
}

impl SFMembershipResult {
    pub fn is_member(&self) -> bool {
        matches!(self.status, SFStatus::Member { .. })
    }
}

/// Decide `x ∈ S_F` and produce a witness `y` when it holds.
pub fn sf_member(s: &AffineSemigroup, facet: FacetId, x: &Point, bound: u64) -> Result<SFMembershipResult> {
    s.check_dim(&x.0)?;
    if !s.group_contains(&x.0) {
        return Err(Error::NotInGroup(x.to_string()));
    }
    let f = find_facet(s, facet)?;
    let nonmember = Ok(SFMembershipResult { facet, status: SFStatus::Nonmember, bound });
    if f.eval(&x.0) < 0 {
        return nonmember;
    }
    let p = s.params();
    let step = face_step(s, &crate::model::face_generators(s, &f));
    let w = p.block_sums(&x.0);
    let negative: Vec<i64> = x.0.iter().map(|&v| (-v).max(0)).collect();
    let neg = p.block_sums(&negative);
    let Some(m) = step.min_multiplier_exact(&w, &neg, s.degrees()) else {
        return nonmember;
    };
    // Cover the negative coordinates, then put the remaining units of each
    // block on a coordinate the face allows.
    let mut y = negative;
    for (i, offset) in p.offsets().into_iter().enumerate() {
        let extra = m as i64 * step.step[i] - neg[i];
        if extra > 0 {
            let forbidden = match facet {
                FacetId::Coordinate { block, index } if block == i + 1 => Some(offset + index - 1),
                _ => None,
            };
            let slot = (offset..offset + p.b()[i]).find(|&t| Some(t) != forbidden).expect("face allows a coordinate");
            y[slot] += extra;
        }
    }
    let y = LatticeVector(y);
    let sum = x + &y;
    assert!(
        s.contains(&y.0) && f.eval(&y.0) == 0 && s.contains(&sum.0),
        "face witness {y} for {x} on {facet} failed verification"
    );
    Ok(SFMembershipResult { facet, status: SFStatus::Member { witness: y, multiplier: m }, bound })
}

/// Outcome of the test `S' = S`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum SPrimeVerdict {
    HoldsWithinWindow { window: Window },
    /// A point of `S' \ S` (exact).
    Fails { witness: Point },
}

impl SPrimeVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, SPrimeVerdict::HoldsWithinWindow { .. })
    }
}

/// Per-class data passed to scan visitors.
struct ClassView<'a> {
    parts: &'a [BlockPart],
    w: &'a [i64],
    neg: &'a [i64],
}

/// Visit every profile class of the box window whose points lie in the group.
fn scan_group_classes<F>(s: &AffineSemigroup, radius: i64, mut visit: F) -> ControlFlow<()>
where
    F: FnMut(&ClassView<'_>) -> ControlFlow<()>,
{
    let parts: Vec<Vec<BlockPart>> = s.params().b().iter().map(|&b| block_parts(b, radius, false)).collect();
    let k = s.params().k();
    let mut w = vec![0i64; k];
    let mut neg = vec![0i64; k];
    for_each_class(&parts, |class| {
        for (i, p) in class.iter().enumerate() {
            w[i] = p.block_sum();
            neg[i] = p.neg_sum;
        }
        if !s.block_group_contains(&w) {
            return ControlFlow::Continue(());
        }
        visit(&ClassView { parts: class, w: &w, neg: &neg })
    })
}

fn realize(s: &AffineSemigroup, parts: &[BlockPart], radius: i64, negatives: Option<&[Vec<usize>]>, spread: Spread) -> Point {
    let mut x = Vec::with_capacity(s.n());
    for (i, (part, &b)) in parts.iter().zip(s.params().b()).enumerate() {
        x.extend(realize_block(part, b, radius, negatives.map(|n| n[i].as_slice()), spread));
    }
    LatticeVector(x)
}

/// Scan `G` in the window for a point of `S' \ S`.
pub fn s_prime_equals_s(s: &AffineSemigroup, w: Window, bound: u64) -> Result<SPrimeVerdict> {
    let _ = bound;
    w.check(s)?;
    if s.is_trivial() {
        return Ok(SPrimeVerdict::HoldsWithinWindow { window: w });
    }
    let table = FacetTable::new(s);
    let mut witness = None;
    let _ = scan_group_classes(s, w.radius, |c| {
        let member = c.neg.iter().all(|&d| d == 0) && admissible(c.w, s.degrees());
        if !member && table.class_mask(s, c.w, c.neg, c.parts) == 0 {
            witness = Some(realize(s, c.parts, w.radius, None, Spread::Concentrated));
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    });
    Ok(match witness {
        Some(x) => {
            debug_assert_eq!(table.point_mask(s, &x.0), 0);
            SPrimeVerdict::Fails { witness: x }
        }
        None => SPrimeVerdict::HoldsWithinWindow { window: w },
    })
}

/// Emptiness of `G_J` within the window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum GJStatus {
    /// A point of `G_J` (exact).
    Nonempty { witness: Point },
    EmptyWithinWindow { window: Window },
}

impl GJStatus {
    pub fn is_empty(&self) -> bool {
        matches!(self, GJStatus::EmptyWithinWindow { .. })
    }
}

/// Evidence for one set `J`: the status of `G_J` and the complex `π_J`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GJResult {
    pub j: Vec<FacetId>,
    #[serde(rename = "g_j")]
    pub status: GJStatus,
    /// Maximal faces of `π_J`.
    pub pi_j_maximal_faces: Vec<Vec<FacetId>>,
    /// Reduced rational Betti numbers of `π_J` from degree −1 (computed on
    /// its strong-collapse core), when within the vertex cap.
    pub homology: Option<Vec<usize>>,
    pub acyclic: Option<bool>,
}

impl GJResult {
    fn new(table: &FacetTable, j: u64, status: GJStatus) -> Self {
        let maximal = table.pi_maximal(j);
        let homology = homology_of_maximal(&maximal, DEFAULT_SUBSET_CAP);
        let acyclic = homology.as_ref().map(|h| h.iter().all(|&r| r == 0));
        GJResult {
            j: table.ids_of(j),
            status,
            pi_j_maximal_faces: maximal.iter().map(|&m| table.ids_of(m)).collect(),
            homology,
            acyclic,
        }
    }
}

/// Whether `π_J` is acyclic (`None` above the vertex cap).
pub fn pi_j_acyclic(s: &AffineSemigroup, j: &[FacetId]) -> Result<Option<bool>> {
    let table = FacetTable::new(s);
    let mask = table.mask_of(j)?;
    Ok(homology_of_maximal(&table.pi_maximal(mask), DEFAULT_SUBSET_CAP).map(|h| h.iter().all(|&r| r == 0)))
}

/// Negative positions per block realizing the missed-facet set `target`
/// for a class, if any choice does.
fn negatives_for(table: &FacetTable, s: &AffineSemigroup, c: &ClassView<'_>, target: u64) -> Option<Vec<Vec<usize>>> {
    let p = s.params();
    let mut forced_in: Vec<Vec<usize>> = vec![Vec::new(); p.k()];
    let mut forced_out: Vec<Vec<usize>> = vec![Vec::new(); p.k()];
    for (i, kind) in table.kinds.iter().enumerate() {
        let wanted = target >> i & 1 == 1;
        let accepts = table.steps[table.step_of[i]].accepts(c.w, c.neg, s.degrees());
        match kind {
            FacetKind::Coordinate { block, pos, .. } => {
                if !accepts {
                    if !wanted {
                        return None;
                    }
                } else if wanted {
                    forced_in[*block].push(*pos);
                } else {
                    forced_out[*block].push(*pos);
                }
            }
            FacetKind::Balance { block_normal } => {
                let below = block_normal.iter().zip(c.w).map(|(a, b)| a * b).sum::<i64>() < 0;
                if (below || !accepts) != wanted {
                    return None;
                }
            }
        }
    }
    let mut out = Vec::with_capacity(p.k());
    for i in 0..p.k() {
        let count = c.parts[i].neg_count;
        let mut chosen = forced_in[i].clone();
        if chosen.len() > count {
            return None;
        }
        for pos in 0..p.b()[i] {
            if chosen.len() == count {
                break;
            }
            if !chosen.contains(&pos) && !forced_out[i].contains(&pos) {
                chosen.push(pos);
            }
        }
        if chosen.len() != count {
            return None;
        }
        chosen.sort_unstable();
        out.push(chosen);
    }
    Some(out)
}

/// Search the window for a point of `G_J`.
pub fn gj_empty(s: &AffineSemigroup, j: &[FacetId], w: Window, bound: u64) -> Result<GJStatus> {
    let _ = bound;
    w.check(s)?;
    let table = FacetTable::new(s);
    let target = table.mask_of(j)?;
    if target == 0 || target == table.full_mask() {
        return Err(Error::InvalidParams("J must be a proper nonempty set of facets".into()));
    }
    let mut witness = None;
    let _ = scan_group_classes(s, w.radius, |c| {
        if let Some(negatives) = negatives_for(&table, s, c, target) {
            let x = realize(s, c.parts, w.radius, Some(&negatives), Spread::Concentrated);
            if table.point_mask(s, &x.0) == target {
                witness = Some(x);
                return ControlFlow::Break(());
            }
            debug_assert!(false, "class realization disagrees with its signature");
        }
        ControlFlow::Continue(())
    });
    Ok(match witness {
        Some(witness) => GJStatus::Nonempty { witness },
        None => GJStatus::EmptyWithinWindow { window: w },
    })
}

/// Cohen–Macaulay status.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CmStatus {
    CohenMacaulay,
    NotCohenMacaulay,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CmVerdict {
    pub status: CmStatus,
    pub reason: String,
    pub s_prime: SPrimeVerdict,
    /// One record per orbit of sets `J` with `G_J` nonempty in the window
    /// (canonical representative: negative coordinates first in each block).
    pub records: Vec<GJResult>,
    pub window: Window,
    pub bound: u64,
}

/// Whether `G_𝓕 = x₀ − S`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Refutation {
    NotCohenMacaulay,
    /// The coordinatewise supremum of `G_𝓕` is not in the group.
    NotInGroup { candidate: Point },
    /// The supremum is in the group but not in `G_𝓕`.
    NotAttained { candidate: Point },
    /// `z` with `z ∈ G_𝓕` but `x₀ − z ∉ S` (`in_canonical = true`) or
    /// `z ∉ G_𝓕` but `x₀ − z ∈ S`.
    Counterexample { point: Point, in_canonical: bool },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum GorensteinStatus {
    Consistent,
    Refuted { refutation: Refutation },
    Undetermined { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GorensteinWitness {
    pub x0: Option<Point>,
    pub checked_window: Window,
    #[serde(flatten)]
    pub status: GorensteinStatus,
}

impl GorensteinWitness {
    pub fn is_consistent(&self) -> bool {
        matches!(self.status, GorensteinStatus::Consistent)
    }
}

/// Both verdicts of the criterion from one scan of the window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HoaTrungAnalysis {
    pub cohen_macaulay: CmVerdict,
    pub gorenstein: GorensteinWitness,
}

/// Run the criterion: `S' = S`, every realized `G_J` against `π_J`, and the
/// Gorenstein candidate.
pub fn analyze(s: &AffineSemigroup, w: Window, bound: u64) -> Result<HoaTrungAnalysis> {
    w.check(s)?;
    let safe = Window::new(w.radius - s.max_generator_coordinate());
    if s.is_trivial() {
        return Ok(HoaTrungAnalysis {
            cohen_macaulay: CmVerdict {
                status: CmStatus::CohenMacaulay,
                reason: "the semigroup is zero".into(),
                s_prime: SPrimeVerdict::HoldsWithinWindow { window: w },
                records: Vec::new(),
                window: w,
                bound,
            },
            gorenstein: GorensteinWitness {
                x0: Some(LatticeVector::zeros(s.n())),
                checked_window: safe,
                status: GorensteinStatus::Consistent,
            },
        });
    }
    let table = FacetTable::new(s);
    let full = table.full_mask();
    let k = s.params().k();
    let b = s.params().b().to_vec();

    let mut s_prime_witness = None;
    let mut records: Vec<GJResult> = Vec::new();
    let mut seen: HashMap<u64, bool> = HashMap::new();
    let mut undetermined: Option<String> = None;
    let mut failure: Option<String> = None;
    let mut sup: Option<Vec<i64>> = None;
    let _ = scan_group_classes(s, w.radius, |c| {
        let mask = table.class_mask(s, c.w, c.neg, c.parts);
        if mask == 0 {
            let member = c.neg.iter().all(|&d| d == 0) && admissible(c.w, s.degrees());
            if !member {
                s_prime_witness = Some(realize(s, c.parts, w.radius, None, Spread::Concentrated));
                return ControlFlow::Break(());
            }
        } else if mask == full {
            let hi: Vec<i64> = (0..k).map(|i| c.parts[i].max_coordinate_range(b[i], w.radius).1).collect();
            sup = Some(match sup.take() {
                None => hi,
                Some(cur) => cur.iter().zip(&hi).map(|(a, b)| *a.max(b)).collect(),
            });
        } else if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(mask) {
            let witness = realize(s, c.parts, w.radius, None, Spread::Concentrated);
            debug_assert_eq!(table.point_mask(s, &witness.0), mask);
            let record = GJResult::new(&table, mask, GJStatus::Nonempty { witness });
            e.insert(record.acyclic == Some(true));
            let verdict = record.acyclic;
            let name = format!("{:?}", record.j.iter().map(ToString::to_string).collect::<Vec<_>>());
            records.push(record);
            match verdict {
                Some(true) => {}
                Some(false) => {
                    failure = Some(format!("G_J is nonempty and pi_J is not acyclic for J = {name}"));
                    return ControlFlow::Break(());
                }
                None => {
                    undetermined.get_or_insert(format!(
                        "pi_J for J = {name} exceeds the homology cap of {DEFAULT_SUBSET_CAP} vertices"
                    ));
                }
            }
        }
        ControlFlow::Continue(())
    });

    let s_prime = match s_prime_witness {
        Some(witness) => SPrimeVerdict::Fails { witness },
        None => SPrimeVerdict::HoldsWithinWindow { window: w },
    };
    let (status, reason) = if let SPrimeVerdict::Fails { witness } = &s_prime {
        (CmStatus::NotCohenMacaulay, format!("S' differs from S: {witness} lies in every S_F but not in S"))
    } else if let Some(reason) = failure {
        (CmStatus::NotCohenMacaulay, reason)
    } else if let Some(reason) = undetermined {
        (CmStatus::Undetermined, reason)
    } else {
        (
            CmStatus::CohenMacaulay,
            format!(
                "S' = S and all {} realized sets J have acyclic pi_J (window {})",
                records.len(),
                w.radius
            ),
        )
    };
    let cohen_macaulay = CmVerdict { status, reason, s_prime, records, window: w, bound };

    let gorenstein = match cohen_macaulay.status {
        CmStatus::NotCohenMacaulay => GorensteinWitness {
            x0: None,
            checked_window: safe,
            status: GorensteinStatus::Refuted { refutation: Refutation::NotCohenMacaulay },
        },
        CmStatus::Undetermined => GorensteinWitness {
            x0: None,
            checked_window: safe,
            status: GorensteinStatus::Undetermined { reason: "Cohen-Macaulay property undetermined".into() },
        },
        CmStatus::CohenMacaulay => gorenstein_candidate(s, &table, sup, w, safe),
    };
    Ok(HoaTrungAnalysis { cohen_macaulay, gorenstein })
}

fn gorenstein_candidate(
    s: &AffineSemigroup,
    table: &FacetTable,
    sup: Option<Vec<i64>>,
    w: Window,
    safe: Window,
) -> GorensteinWitness {
    let undetermined = |reason: String| GorensteinWitness {
        x0: None,
        checked_window: safe,
        status: GorensteinStatus::Undetermined { reason },
    };
    let Some(sup) = sup else {
        return undetermined(format!("no point of G_F in window {}", w.radius));
    };
    if sup.iter().any(|&c| c >= w.radius) {
        return undetermined(format!("G_F reaches the boundary of window {}", w.radius));
    }
    let p = s.params();
    let x0 = LatticeVector(sup.iter().zip(p.b()).flat_map(|(&c, &b)| std::iter::repeat_n(c, b)).collect::<Vec<i64>>());
    let refuted = |x0: Point, refutation: Refutation| GorensteinWitness {
        x0: Some(x0),
        checked_window: safe,
        status: GorensteinStatus::Refuted { refutation },
    };
    if !s.group_contains(&x0.0) {
        return refuted(x0.clone(), Refutation::NotInGroup { candidate: x0 });
    }
    let full = table.full_mask();
    if table.point_mask(s, &x0.0) != full {
        return refuted(x0.clone(), Refutation::NotAttained { candidate: x0 });
    }
    // Over the safe window: z ∈ G_F  ⇔  x0 − z ∈ S. For a profile class the
    // block sums of x0 − z are fixed, and x0 − z >= 0 iff the largest
    // coordinate of each block is at most the candidate's value there.
    let shifted: Vec<i64> = sup.iter().zip(p.b()).map(|(&c, &b)| c * b as i64).collect();
    let mut counterexample = None;
    let _ = scan_group_classes(s, safe.radius, |c| {
        let in_gf = table.class_mask(s, c.w, c.neg, c.parts) == full;
        let rest: Vec<i64> = shifted.iter().zip(c.w).map(|(a, b)| a - b).collect();
        let sums_ok = admissible(&rest, s.degrees());
        let ranges: Vec<(i64, i64)> =
            c.parts.iter().zip(p.b()).map(|(part, &b)| part.max_coordinate_range(b, safe.radius)).collect();
        let candidate = if in_gf && !(sums_ok && ranges.iter().zip(&sup).all(|(r, &cap)| r.1 <= cap)) {
            Some(realize(s, c.parts, safe.radius, None, Spread::Concentrated))
        } else if !in_gf && sums_ok && ranges.iter().zip(&sup).all(|(r, &cap)| r.0 <= cap) {
            Some(realize(s, c.parts, safe.radius, None, Spread::Even))
        } else {
            None
        };
        if let Some(z) = candidate {
            let z_in = table.point_mask(s, &z.0) == full;
            let diff = &x0 - &z;
            if z_in != s.contains(&diff.0) {
                counterexample = Some((z, z_in));
                return ControlFlow::Break(());
            }
            debug_assert!(false, "class-level consistency test disagrees with its realization");
        }
        ControlFlow::Continue(())
    });
    match counterexample {
        Some((point, in_canonical)) => refuted(x0, Refutation::Counterexample { point, in_canonical }),
        None => GorensteinWitness { x0: Some(x0), checked_window: safe, status: GorensteinStatus::Consistent },
    }
}

/// The Cohen–Macaulay verdict with its evidence.
pub fn cm_verdict(s: &AffineSemigroup, w: Window, bound: u64) -> Result<CmVerdict> {
    Ok(analyze(s, w, bound)?.cohen_macaulay)
}

/// The Gorenstein verdict (refuted when not Cohen–Macaulay).
pub fn gorenstein_witness(s: &AffineSemigroup, w: Window, bound: u64) -> Result<GorensteinWitness> {
    Ok(analyze(s, w, bound)?.gorenstein)
}
