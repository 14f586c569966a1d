//! The semigroup of the local toric model: generators, generated group,
//! cone inequalities, facets and extreme rays.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::blocks::{admissible, block_generators};
use crate::error::{Error, Result};
use crate::lattice::{rank, IntegerMatrix, LatticeVector, Sublattice};
use crate::params::SVParams;
use crate::scalar::Scalar;

/// A facet of the cone, named by the inequality that cuts it out.
/// Indices are 1-based and refer to the normalized block order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FacetId {
    /// `x_{i,j} = 0`.
    Coordinate { block: usize, index: usize },
    /// `Σ_j x_{i,j} = Σ_{l≠i} Σ_j x_{l,j}` (only when `a_i = 1`).
    Balance { block: usize },
}

impl fmt::Display for FacetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FacetId::Coordinate { block, index } => write!(f, "F_{{{block},{index}}}"),
            FacetId::Balance { block } => write!(f, "F_{block}"),
        }
    }
}

impl FacetId {
    /// Parse `F_{1,2}`, `F_1`, `F11` or `F1` style names.
    pub fn parse(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('F').trim_start_matches('_').trim_start_matches('{').trim_end_matches('}');
        let bad = || Error::UnknownFacet(s.to_string());
        let nums: Vec<usize> = if body.contains(',') {
            body.split(',').map(|p| p.trim().parse().map_err(|_| bad())).collect::<Result<_>>()?
        } else if body.len() == 2 && body.chars().all(|c| c.is_ascii_digit()) {
            body.chars().map(|c| c.to_digit(10).unwrap() as usize).collect()
        } else {
            vec![body.parse().map_err(|_| bad())?]
        };
        match nums.as_slice() {
            [i, j] => Ok(FacetId::Coordinate { block: *i, index: *j }),
            [i] => Ok(FacetId::Balance { block: *i }),
            _ => Err(bad()),
        }
    }
}

/// A facet together with its inner normal `ℓ` (the cone is `ℓ >= 0`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Facet {
    pub id: FacetId,
    pub normal: Vec<i64>,
}

impl Facet {
    pub fn eval(&self, x: &[i64]) -> i64 {
        self.normal.iter().zip(x).map(|(a, b)| a * b).sum()
    }
}

/// Inequality description of the cone spanned by the semigroup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeHRep {
    /// One row `e_{i,j}` per coordinate.
    pub nonnegativity: Vec<Vec<i64>>,
    /// `(i, row)` for every block with `a_i = 1` (0-based `i`); the row is
    /// `Σ_{l≠i} x_l − x_i` summed over coordinates.
    pub balance: Vec<(usize, Vec<i64>)>,
    /// Saturated lattice spanned by the cone.
    pub span: Sublattice<BigInt>,
}

impl ConeHRep {
    pub fn rows(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.nonnegativity.iter().chain(self.balance.iter().map(|(_, r)| r))
    }

    /// Whether `x` satisfies every inequality (membership in the span is not checked).
    pub fn satisfies(&self, x: &[i64]) -> bool {
        self.rows().all(|r| r.iter().zip(x).map(|(a, b)| a * b).sum::<i64>() >= 0)
    }
}

/// The semigroup together with its group, cone and block-level data.
#[derive(Clone, Debug)]
pub struct AffineSemigroup {
    params: SVParams,
    generators: Vec<LatticeVector<i64>>,
    group: Sublattice<BigInt>,
    cone: ConeHRep,
    degrees: Vec<i64>,
    block_generators: Vec<Vec<i64>>,
    /// Block-sum image of the group; decides group membership when
    /// `block_determined` holds.
    block_group: Sublattice<i64>,
    /// The group contains every difference `e_{i,j} − e_{i,1}`, so membership
    /// depends on block sums only (true for every nontrivial case).
    block_determined: bool,
    group_small: Option<Sublattice<i64>>,
}

/// Rank of the group for the given (normalized) degrees and dimensions.
pub fn closed_form_rank(a: &[usize], b: &[usize]) -> usize {
    let n: usize = b.iter().sum();
    match a {
        [] => 0,
        [1] => 0,
        [1, 1] => n - 1,
        _ => n,
    }
}

fn compositions(total_cap: usize, parts: usize) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..parts {
        out = out
            .into_iter()
            .flat_map(|base: Vec<i64>| {
                let used: i64 = base.iter().sum();
                (0..=(total_cap as i64 - used)).map(move |v| {
                    let mut s = base.clone();
                    s.push(v);
                    s
                })
            })
            .collect();
    }
    out
}

/// All generators: `x >= 0` with block sums at most `a_i` and total at least
/// two, sorted by total degree, then lexicographically descending.
pub fn enumerate_generators(p: &SVParams) -> Vec<LatticeVector<i64>> {
    let mut out: Vec<Vec<i64>> = vec![Vec::new()];
    for (&a, &b) in p.a().iter().zip(p.b()) {
        let block = compositions(a, b);
        out = out
            .into_iter()
            .flat_map(|base| {
                block.iter().map(move |c| {
                    let mut s = base.clone();
                    s.extend(c);
                    s
                })
            })
            .collect();
    }
    out.retain(|x| x.iter().sum::<i64>() >= 2);
    out.sort_by(|x, y| x.iter().sum::<i64>().cmp(&y.iter().sum::<i64>()).then_with(|| y.cmp(x)));
    out.into_iter().map(LatticeVector).collect()
}

fn balance_row(p: &SVParams, block: usize) -> Vec<i64> {
    p.block_of_coordinate().iter().map(|&i| if i == block { -1 } else { 1 }).collect()
}

impl AffineSemigroup {
    pub fn new(params: SVParams) -> Self {
        let n = params.n();
        let generators = enumerate_generators(&params);
        let group = compute_group_from(&params, &generators);
        let span = group.saturation();
        let cone = ConeHRep {
            nonnegativity: (0..n).map(|i| LatticeVector::<i64>::unit(n, i).0).collect(),
            balance: (0..params.k())
                .filter(|&i| params.a()[i] == 1 && params.k() >= 2)
                .map(|i| (i, balance_row(&params, i)))
                .collect(),
            span,
        };
        let degrees: Vec<i64> = params.a().iter().map(|&a| a as i64).collect();
        let block_generators = block_generators(&degrees);
        let block_gens_big: Vec<LatticeVector<BigInt>> =
            block_generators.iter().map(|g| LatticeVector(g.iter().map(|&x| BigInt::from(x)).collect())).collect();
        let block_group = Sublattice::from_generators(params.k(), &block_gens_big)
            .expect("block generators have dimension k")
            .cast()
            .expect("block lattice basis is small");
        let block_determined = (0..params.k()).all(|i| {
            (1..params.b()[i]).all(|j| {
                let mut v = vec![BigInt::from(0); n];
                v[params.flat_index(i, j)] = BigInt::from(1);
                v[params.flat_index(i, 0)] = BigInt::from(-1);
                group.contains(&v)
            })
        });
        let group_small = group.cast();
        AffineSemigroup { params, generators, group, cone, degrees, block_generators, block_group, block_determined, group_small }
    }

    pub fn from_params(a: Vec<usize>, b: Vec<usize>) -> Result<Self> {
        Ok(Self::new(SVParams::new(a, b)?))
    }

    pub fn params(&self) -> &SVParams {
        &self.params
    }

    pub fn n(&self) -> usize {
        self.params.n()
    }

    pub fn generators(&self) -> &[LatticeVector<i64>] {
        &self.generators
    }

    pub fn group(&self) -> &Sublattice<BigInt> {
        &self.group
    }

    pub fn cone(&self) -> &ConeHRep {
        &self.cone
    }

    pub fn rank(&self) -> usize {
        self.group.rank()
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn block_generators(&self) -> &[Vec<i64>] {
        &self.block_generators
    }

    pub fn is_trivial(&self) -> bool {
        self.params.is_trivial()
    }

    pub fn is_block_determined(&self) -> bool {
        self.block_determined
    }

    /// Largest coordinate of any generator (`a_k`, or 0 for the zero semigroup).
    pub fn max_generator_coordinate(&self) -> i64 {
        self.generators.iter().flat_map(|g| g.0.iter().copied()).max().unwrap_or(0)
    }

    pub(crate) fn check_dim(&self, x: &[i64]) -> Result<()> {
        if x.len() != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), found: x.len() });
        }
        Ok(())
    }

    /// Exact semigroup membership.
    pub fn contains(&self, x: &[i64]) -> bool {
        x.len() == self.n() && x.iter().all(|&v| v >= 0) && admissible(&self.params.block_sums(x), &self.degrees)
    }

    /// Group membership of a block-sum vector (valid when block-determined).
    pub fn block_group_contains(&self, w: &[i64]) -> bool {
        self.block_group.contains(w)
    }

    /// Exact membership in the group generated by the semigroup.
    pub fn group_contains(&self, x: &[i64]) -> bool {
        if x.len() != self.n() {
            return false;
        }
        if self.block_determined {
            return self.block_group.contains(&self.params.block_sums(x));
        }
        match &self.group_small {
            Some(g) => g.contains(x),
            None => self.group.contains(&x.iter().map(|&v| BigInt::from(v)).collect::<Vec<_>>()),
        }
    }

    /// Whether `x` lies in the cone (inequalities plus span).
    pub fn cone_contains(&self, x: &[i64]) -> bool {
        x.len() == self.n()
            && self.cone.satisfies(x)
            && self.cone.span.contains(&x.iter().map(|&v| BigInt::from(v)).collect::<Vec<_>>())
    }

    /// Cone membership of a nonnegative point, from its block sums. The span
    /// is all of `Q^n` except in the trivial case, and for `a = (1,1)` the two
    /// balance inequalities already force equal block sums.
    pub fn block_cone_contains(&self, w: &[i64]) -> bool {
        if self.is_trivial() {
            return w.iter().all(|&x| x == 0);
        }
        let total: i64 = w.iter().sum();
        self.cone.balance.iter().all(|&(i, _)| total - 2 * w[i] >= 0)
    }
}

fn compute_group_from(p: &SVParams, gens: &[LatticeVector<i64>]) -> Sublattice<BigInt> {
    let big: Vec<LatticeVector<BigInt>> = gens.iter().map(|g| g.cast().expect("i64 fits BigInt")).collect();
    Sublattice::from_generators(p.n(), &big).expect("generators have dimension n")
}

/// The group generated by the semigroup, in Hermite form.
pub fn compute_group(s: &AffineSemigroup) -> Sublattice<BigInt> {
    compute_group_from(s.params(), s.generators())
}

/// Facets of the cone from the structural table.
///
/// Candidates are every `x_{i,j} = 0` and every balance hyperplane with
/// `a_i = 1`. A coordinate hyperplane cuts out the cone of the instance with
/// that coordinate deleted (the whole block when `b_i = 1`), so it is a facet
/// exactly when that smaller instance has rank one less; balance hyperplanes
/// are facets except for `a = (1,1)`, where the whole cone lies on them.
/// Facets are taken inside the span of the cone, and coincident faces are
/// listed once (for `a = (1,1), b = (1,1)` the two coordinate hyperplanes
/// cut out the same face, the origin of a ray).
pub fn facet_list(s: &AffineSemigroup) -> Vec<Facet> {
    let p = s.params();
    if p.is_trivial() {
        return Vec::new();
    }
    let r = closed_form_rank(p.a(), p.b());
    let n = p.n();
    let mut out = Vec::new();
    for i in 0..p.k() {
        for j in 0..p.b()[i] {
            let (fa, fb): (Vec<usize>, Vec<usize>) = if p.b()[i] >= 2 {
                let mut b = p.b().to_vec();
                b[i] -= 1;
                (p.a().to_vec(), b)
            } else {
                (0..p.k()).filter(|&l| l != i).map(|l| (p.a()[l], p.b()[l])).unzip()
            };
            if closed_form_rank(&fa, &fb) + 1 == r {
                out.push(Facet {
                    id: FacetId::Coordinate { block: i + 1, index: j + 1 },
                    normal: LatticeVector::<i64>::unit(n, p.flat_index(i, j)).0,
                });
            }
        }
    }
    if p.a() == [1, 1] && p.b() == [1, 1] {
        out.truncate(1);
    }
    if p.a() != [1, 1] {
        for (i, row) in &s.cone().balance {
            out.push(Facet { id: FacetId::Balance { block: i + 1 }, normal: row.clone() });
        }
    }
    out
}

/// Generators lying on the facet (`ℓ_F(g) = 0`).
pub fn face_generators(s: &AffineSemigroup, f: &Facet) -> Vec<LatticeVector<i64>> {
    s.generators().iter().filter(|g| f.eval(&g.0) == 0).cloned().collect()
}

/// Primitive generators of the extreme rays of the cone, each scaled to be
/// primitive in the group.
///
/// A generator direction spans an extreme ray iff the inequalities tight on
/// it, together with the equations of the span, have rank `n − 1`.
pub fn extreme_rays(s: &AffineSemigroup) -> Vec<LatticeVector<i64>> {
    let n = s.n();
    if s.rank() == 0 {
        return Vec::new();
    }
    let equations: Vec<Vec<i64>> = s
        .cone()
        .span
        .orthogonal_complement()
        .basis()
        .iter()
        .map(|v| v.cast::<i64>().expect("span equations are small").0)
        .collect();
    let rows: Vec<&Vec<i64>> = s.cone().rows().collect();
    let mut dirs: Vec<LatticeVector<i64>> = s.generators().iter().map(LatticeVector::primitive).collect();
    dirs.sort();
    dirs.dedup();
    let mut rays = Vec::new();
    for d in dirs {
        let mut m: Vec<Vec<i64>> = equations.clone();
        m.extend(rows.iter().filter(|r| d.dot(r) == 0).map(|r| (*r).clone()));
        let tight = IntegerMatrix::with_cols(n, m).expect("rows of length n");
        if rank(&tight) == n - 1 {
            rays.push(primitive_in_group(s, &d));
        }
    }
    rays.sort();
    rays
}

fn primitive_in_group(s: &AffineSemigroup, d: &LatticeVector<i64>) -> LatticeVector<i64> {
    (1i64..)
        .map(|c| d.scale(&c))
        .find(|v| s.group_contains(&v.0))
        .expect("some multiple of a cone direction lies in the group")
}

/// Index of the lattice spanned by `vectors` inside the group, when the two
/// have equal rank (`None` otherwise).
pub fn index_in_group(s: &AffineSemigroup, vectors: &[LatticeVector<i64>]) -> Option<BigInt> {
    let big: Vec<LatticeVector<BigInt>> = vectors.iter().map(|v| v.cast().expect("fits")).collect();
    let sub = Sublattice::from_generators(s.n(), &big).ok()?;
    if sub.rank() != s.rank() {
        return None;
    }
    let det = |l: &Sublattice<BigInt>| -> BigInt {
        crate::lattice::smith_normal_form(&l.basis_matrix()).into_iter().fold(BigInt::from(1), |acc, d| acc * d)
    };
    Some(det(&sub) / det(s.group()))
}

/// Serializable summary of the model for report embedding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelSummary {
    pub generator_count: usize,
    pub group_basis: Vec<LatticeVector<BigInt>>,
    pub facets: Vec<FacetId>,
}

impl ModelSummary {
    pub fn of(s: &AffineSemigroup) -> Self {
        ModelSummary {
            generator_count: s.generators().len(),
            group_basis: s.group().basis().to_vec(),
            facets: facet_list(s).into_iter().map(|f| f.id).collect(),
        }
    }
}

/// Lift a scalar-generic helper for callers needing big integer points.
pub fn to_big(x: &[i64]) -> Vec<BigInt> {
    x.iter().map(|&v| BigInt::of(v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(a: &[usize], b: &[usize]) -> AffineSemigroup {
        AffineSemigroup::from_params(a.to_vec(), b.to_vec()).unwrap()
    }

    fn pts(v: &[&[i64]]) -> Vec<LatticeVector<i64>> {
        v.iter().map(|x| LatticeVector(x.to_vec())).collect()
    }

    fn ids(s: &AffineSemigroup) -> Vec<String> {
        facet_list(s).iter().map(|f| f.id.to_string()).collect()
    }

    #[test]
    fn generator_examples() {
        let s = model(&[2, 2], &[1, 1]);
        let mut g = s.generators().to_vec();
        g.sort();
        let mut expected = pts(&[&[1, 1], &[2, 0], &[0, 2], &[2, 1], &[1, 2], &[2, 2]]);
        expected.sort();
        assert_eq!(g, expected);
        assert_eq!(model(&[1, 1], &[1, 1]).generators(), pts(&[&[1, 1]]).as_slice());
        assert!(model(&[1], &[3]).generators().is_empty());
    }

    #[test]
    fn group_examples() {
        let segre = model(&[1, 1], &[2, 2]);
        assert_eq!(segre.rank(), 3);
        assert!(segre.group_contains(&[1, 0, 0, 1]));
        assert!(!segre.group_contains(&[1, 0, 0, 0]));
        let veronese = model(&[2], &[3]);
        assert_eq!(veronese.rank(), 3);
        assert!(!veronese.group_contains(&[1, 0, 0]));
        assert!(veronese.group_contains(&[1, 1, 0]));
        assert_eq!(model(&[1, 1, 1], &[1, 1, 1]).group(), &Sublattice::full(3));
    }

    #[test]
    fn facet_examples() {
        assert_eq!(ids(&model(&[1, 2], &[1, 1])), vec!["F_{1,1}", "F_1"]);
        assert_eq!(ids(&model(&[1, 2], &[1, 2])), vec!["F_{1,1}", "F_{2,1}", "F_{2,2}", "F_1"]);
        assert_eq!(ids(&model(&[2, 2], &[1, 1])), vec!["F_{1,1}", "F_{2,1}"]);
        assert_eq!(ids(&model(&[3], &[1])), vec!["F_{1,1}"]);
        assert_eq!(ids(&model(&[1, 1], &[1, 3])), vec!["F_{2,1}", "F_{2,2}", "F_{2,3}"]);
        assert_eq!(ids(&model(&[1, 1], &[1, 1])), vec!["F_{1,1}"]);
        assert!(ids(&model(&[1], &[2])).is_empty());
    }

    #[test]
    fn facet_ids_parse() {
        for f in [FacetId::Coordinate { block: 2, index: 1 }, FacetId::Balance { block: 1 }] {
            assert_eq!(FacetId::parse(&f.to_string()).unwrap(), f);
        }
        assert_eq!(FacetId::parse("F11").unwrap(), FacetId::Coordinate { block: 1, index: 1 });
        assert!(FacetId::parse("G_x").is_err());
    }

    #[test]
    fn face_generator_examples() {
        let s = model(&[1, 1], &[1, 1]);
        let bal = Facet { id: FacetId::Balance { block: 1 }, normal: balance_row(s.params(), 0) };
        assert_eq!(face_generators(&s, &bal), pts(&[&[1, 1]]));
        let s = model(&[2, 2], &[1, 1]);
        let f = &facet_list(&s)[1];
        assert_eq!(face_generators(&s, f), pts(&[&[2, 0]]));
    }

    #[test]
    fn ray_examples() {
        assert_eq!(extreme_rays(&model(&[2], &[2])), pts(&[&[0, 2], &[2, 0]]));
        assert_eq!(extreme_rays(&model(&[1, 1], &[1, 2])), pts(&[&[1, 0, 1], &[1, 1, 0]]));
        assert_eq!(extreme_rays(&model(&[2, 2], &[1, 1])), pts(&[&[0, 1], &[1, 0]]));
        assert!(extreme_rays(&model(&[1], &[1])).is_empty());
    }

    #[test]
    fn generators_satisfy_cone() {
        for (a, b) in [(vec![1, 1, 2], vec![2, 1, 2]), (vec![1, 3], vec![2, 2]), (vec![2], vec![3])] {
            let s = model(&a, &b);
            for g in s.generators() {
                assert!(s.cone().satisfies(&g.0));
                assert!(s.cone_contains(&g.0));
                assert!(s.contains(&g.0));
            }
        }
    }

    #[test]
    fn block_determined_except_trivial() {
        assert!(model(&[1, 2], &[1, 3]).is_block_determined());
        assert!(model(&[1, 1], &[2, 2]).is_block_determined());
        assert!(!model(&[1], &[2]).is_block_determined());
    }
}
