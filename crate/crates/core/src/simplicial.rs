//! Simplicial complexes with repeated vertex labels, the Segre–Veronese
//! complex, the monomial exponent map, and reduced homology over `Q`.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{rank, IntegerMatrix};
use crate::params::SVParams;

/// How the simplices of a [`LabeledComplex`] are described.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SimplexRule {
    /// Downward closure of the listed vertex sets.
    Generated(Vec<Vec<usize>>),
    /// A vertex set is a simplex iff it uses at most `capacity[g]` vertices of
    /// each group `g` (`group_of_vertex` gives the group of every vertex).
    GroupCapacity { group_of_vertex: Vec<usize>, capacity: Vec<usize> },
}

/// A simplicial complex whose vertices carry labels, repetitions allowed.
/// The empty simplex always belongs to the complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledComplex {
    /// Distinct label names in canonical order.
    label_names: Vec<String>,
    /// Label index of every vertex.
    vertex_labels: Vec<usize>,
    rule: SimplexRule,
}

/// A simplex up to the identification of equally labelled simplices: a
/// sorted list of label indices, repeated according to multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultisetSimplex(pub Vec<usize>);

impl MultisetSimplex {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Multiplicity of each label index present.
    pub fn multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for &l in &self.0 {
            *out.entry(l).or_insert(0) += 1;
        }
        out
    }
}

fn numeric_aware(a: &str, b: &str) -> std::cmp::Ordering {
    match (a.parse::<i64>(), b.parse::<i64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y),
        (Ok(_), Err(_)) => std::cmp::Ordering::Less,
        (Err(_), Ok(_)) => std::cmp::Ordering::Greater,
        _ => a.cmp(b),
    }
}

impl LabeledComplex {
    /// Complex generated by simplices given as lists of labels. Each label
    /// gets as many vertices as its largest multiplicity in any simplex.
    pub fn from_labeled_simplices<S: AsRef<str>>(simplices: &[Vec<S>]) -> Result<Self> {
        let mut need: BTreeMap<String, usize> = BTreeMap::new();
        for s in simplices {
            let mut count: HashMap<&str, usize> = HashMap::new();
            for l in s {
                let l = l.as_ref();
                if l.is_empty() {
                    return Err(Error::Format("empty label".into()));
                }
                *count.entry(l).or_insert(0) += 1;
            }
            for (l, c) in count {
                let e = need.entry(l.to_string()).or_insert(0);
                *e = (*e).max(c);
            }
        }
        let mut label_names: Vec<String> = need.keys().cloned().collect();
        label_names.sort_by(|a, b| numeric_aware(a, b));
        let index: HashMap<&str, usize> = label_names.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        // Vertices of label l are consecutive, starting at first_vertex[l].
        let mut vertex_labels = Vec::new();
        let mut first_vertex = Vec::new();
        for l in &label_names {
            first_vertex.push(vertex_labels.len());
            vertex_labels.extend(std::iter::repeat_n(index[l.as_str()], need[l]));
        }
        let generated = simplices
            .iter()
            .map(|s| {
                let mut used: HashMap<usize, usize> = HashMap::new();
                let mut verts: Vec<usize> = s
                    .iter()
                    .map(|l| {
                        let li = index[l.as_ref()];
                        let c = used.entry(li).or_insert(0);
                        *c += 1;
                        first_vertex[li] + *c - 1
                    })
                    .collect();
                verts.sort_unstable();
                verts
            })
            .collect();
        Ok(LabeledComplex { label_names, vertex_labels, rule: SimplexRule::Generated(generated) })
    }

    /// Parse the line-oriented complex format: one simplex per line as
    /// comma-separated labels; blank lines and lines starting with `#` are
    /// ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut simplices = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let labels: Vec<&str> = line.split(',').map(str::trim).collect();
            if let Some(pos) = labels.iter().position(|l| l.is_empty()) {
                return Err(Error::Parse { line: idx + 1, message: format!("empty label at position {}", pos + 1) });
            }
            if let Some(bad) = labels.iter().find(|l| l.chars().any(|c| c.is_whitespace() || "{}^".contains(c))) {
                return Err(Error::Parse { line: idx + 1, message: format!("invalid label '{bad}'") });
            }
            simplices.push(labels);
        }
        if simplices.is_empty() {
            return Err(Error::Parse { line: 0, message: "no simplices found".into() });
        }
        Self::from_labeled_simplices(&simplices)
    }

    pub fn label_names(&self) -> &[String] {
        &self.label_names
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_labels.len()
    }

    pub fn vertex_labels(&self) -> &[usize] {
        &self.vertex_labels
    }

    pub fn rule(&self) -> &SimplexRule {
        &self.rule
    }

    /// Whether a set of vertices is a simplex.
    pub fn contains(&self, vertices: &[usize]) -> bool {
        let set: BTreeSet<usize> = vertices.iter().copied().collect();
        if set.len() != vertices.len() || set.iter().any(|&v| v >= self.vertex_count()) {
            return false;
        }
        match &self.rule {
            SimplexRule::Generated(gens) => gens.iter().any(|g| set.iter().all(|v| g.contains(v))),
            SimplexRule::GroupCapacity { group_of_vertex, capacity } => {
                let mut used = vec![0usize; capacity.len()];
                for &v in &set {
                    used[group_of_vertex[v]] += 1;
                }
                used.iter().zip(capacity).all(|(u, c)| u <= c)
            }
        }
    }

    /// Label multiset of a vertex set.
    pub fn multiset_of(&self, vertices: &[usize]) -> MultisetSimplex {
        let mut labels: Vec<usize> = vertices.iter().map(|&v| self.vertex_labels[v]).collect();
        labels.sort_unstable();
        MultisetSimplex(labels)
    }

    /// Coordinate name of a simplex, e.g. `x_{234}` or `x_{11,21}`.
    pub fn coordinate_name(&self, s: &MultisetSimplex) -> String {
        let single = self.label_names.iter().all(|l| l.chars().count() == 1);
        let parts: Vec<&str> = s.0.iter().map(|&l| self.label_names[l].as_str()).collect();
        format!("x_{{{}}}", parts.join(if single { "" } else { "," }))
    }

    /// Inverse of [`LabeledComplex::coordinate_name`] on the text inside the braces.
    pub fn parse_coordinate(&self, inner: &str) -> Result<MultisetSimplex> {
        let single = self.label_names.iter().all(|l| l.chars().count() == 1);
        let parts: Vec<String> = if single && !inner.contains(',') {
            inner.chars().map(|c| c.to_string()).collect()
        } else {
            inner.split(',').map(|p| p.trim().to_string()).collect()
        };
        let mut labels = Vec::with_capacity(parts.len());
        for p in &parts {
            let idx = self
                .label_names
                .iter()
                .position(|l| l == p)
                .ok_or_else(|| Error::Format(format!("unknown label '{p}' in coordinate x_{{{inner}}}")))?;
            labels.push(idx);
        }
        labels.sort_unstable();
        Ok(MultisetSimplex(labels))
    }
}

/// The complex whose vertex set is `V_1 ⊔ ... ⊔ V_k`, with `a_i` vertices for
/// each label `t_{i,j}`, and whose simplices meet each `V_i` in at most `a_i`
/// vertices. Blocks follow the normalized order of `p`.
pub fn build_sv_complex(p: &SVParams) -> LabeledComplex {
    let short = p.k() < 10 && p.b().iter().all(|&b| b < 10);
    let mut label_names = Vec::new();
    let mut vertex_labels = Vec::new();
    let mut group_of_vertex = Vec::new();
    for (i, (&a, &b)) in p.a().iter().zip(p.b()).enumerate() {
        for j in 1..=b {
            let name = match (p.k(), short) {
                (1, _) => j.to_string(),
                (_, true) => format!("{}{}", i + 1, j),
                (_, false) => format!("{}.{}", i + 1, j),
            };
            let li = label_names.len();
            label_names.push(name);
            vertex_labels.extend(std::iter::repeat_n(li, a));
            group_of_vertex.extend(std::iter::repeat_n(i, a));
        }
    }
    LabeledComplex {
        label_names,
        vertex_labels,
        rule: SimplexRule::GroupCapacity { group_of_vertex, capacity: p.a().to_vec() },
    }
}

fn sub_multisets(counts: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &(label, c) in counts {
        let mut next = Vec::with_capacity(out.len() * (c + 1));
        for base in &out {
            for m in 0..=c {
                let mut s = base.clone();
                s.extend(std::iter::repeat_n(label, m));
                next.push(s);
            }
        }
        out = next;
    }
    out
}

/// Multisets of size at most `cap` over the label indices `labels`.
fn bounded_multisets(labels: &[usize], cap: usize) -> Vec<Vec<usize>> {
    fn rec(labels: &[usize], cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(cur.clone());
        if cap == 0 {
            return;
        }
        for (pos, &l) in labels.iter().enumerate() {
            cur.push(l);
            rec(&labels[pos..], cap - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(labels, cap, &mut Vec::new(), &mut out);
    out
}

/// All simplices up to label identification, ordered by size and then
/// lexicographically on the sorted label lists.
pub fn distinct_simplices(c: &LabeledComplex) -> Vec<MultisetSimplex> {
    let mut set: BTreeSet<MultisetSimplex> = BTreeSet::new();
    match &c.rule {
        SimplexRule::Generated(gens) => {
            for g in gens {
                let ms = c.multiset_of(g);
                let counts: Vec<(usize, usize)> = ms.multiplicities().into_iter().collect();
                for s in sub_multisets(&counts) {
                    set.insert(MultisetSimplex(s));
                }
            }
            if gens.is_empty() {
                set.insert(MultisetSimplex(Vec::new()));
            }
        }
        SimplexRule::GroupCapacity { group_of_vertex, capacity } => {
            // Within one group every label has `capacity` copies, so the
            // multisets of a group are exactly those of size <= capacity.
            let mut per_group: Vec<Vec<Vec<usize>>> = Vec::new();
            for (g, &cap) in capacity.iter().enumerate() {
                let labels: BTreeSet<usize> =
                    (0..c.vertex_count()).filter(|&v| group_of_vertex[v] == g).map(|v| c.vertex_labels[v]).collect();
                let labels: Vec<usize> = labels.into_iter().collect();
                per_group.push(bounded_multisets(&labels, cap));
            }
            let mut acc: Vec<Vec<usize>> = vec![Vec::new()];
            for options in &per_group {
                acc = acc
                    .iter()
                    .flat_map(|base| {
                        options.iter().map(move |o| {
                            let mut s = base.clone();
                            s.extend(o);
                            s
                        })
                    })
                    .collect();
            }
            for mut s in acc {
                s.sort_unstable();
                set.insert(MultisetSimplex(s));
            }
        }
    }
    let mut out: Vec<MultisetSimplex> = set.into_iter().collect();
    out.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    out
}

/// Distinct simplices of cardinality at least two (the coordinates of the
/// projected monomial map).
pub fn coordinate_simplices(c: &LabeledComplex) -> Vec<MultisetSimplex> {
    distinct_simplices(c).into_iter().filter(|s| s.len() >= 2).collect()
}

/// Exponent matrix of the monomial map: one row per label, one column per
/// distinct simplex (only those of cardinality >= 2 when `at_least_edges`).
pub fn exponent_map(c: &LabeledComplex, at_least_edges: bool) -> IntegerMatrix<i64> {
    let columns: Vec<MultisetSimplex> =
        distinct_simplices(c).into_iter().filter(|s| !at_least_edges || s.len() >= 2).collect();
    exponent_matrix(c.label_names.len(), &columns)
}

pub(crate) fn exponent_matrix(labels: usize, columns: &[MultisetSimplex]) -> IntegerMatrix<i64> {
    let mut m = IntegerMatrix::zeros(labels, columns.len());
    let mut rows = vec![vec![0i64; columns.len()]; labels];
    for (j, s) in columns.iter().enumerate() {
        for &l in &s.0 {
            rows[l][j] += 1;
        }
    }
    if labels > 0 {
        m = IntegerMatrix::with_cols(columns.len(), rows).expect("rectangular by construction");
    }
    m
}

// ---------------------------------------------------------------------------
// Abstract complexes and homology
// ---------------------------------------------------------------------------

/// A downward-closed family of subsets of a small vertex set (at most 64
/// vertices), stored as bit masks. Always contains the empty face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbstractComplex {
    vertices: Vec<String>,
    faces: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct ComplexRepr {
    vertices: Vec<String>,
    faces: Vec<Vec<usize>>,
}

impl Serialize for AbstractComplex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ComplexRepr { vertices: self.vertices.clone(), faces: self.faces() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for AbstractComplex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = ComplexRepr::deserialize(d)?;
        AbstractComplex::from_faces(repr.vertices, &repr.faces).map_err(serde::de::Error::custom)
    }
}

fn mask_of(face: &[usize]) -> u64 {
    face.iter().fold(0u64, |m, &v| m | (1u64 << v))
}

fn face_order(a: &u64, b: &u64) -> std::cmp::Ordering {
    a.count_ones().cmp(&b.count_ones()).then_with(|| a.reverse_bits().cmp(&b.reverse_bits()).reverse())
}

impl AbstractComplex {
    /// Build from an explicit downward-closed face list (the empty face may be omitted).
    pub fn from_faces(vertices: Vec<String>, faces: &[Vec<usize>]) -> Result<Self> {
        Self::check_size(vertices.len())?;
        if let Some(bad) = faces.iter().flatten().find(|&&v| v >= vertices.len()) {
            return Err(Error::Format(format!("face uses unknown vertex {bad}")));
        }
        let set: HashSet<u64> = faces.iter().map(|f| mask_of(f)).chain([0]).collect();
        for &f in &set {
            for v in 0..vertices.len() {
                if f & (1 << v) != 0 && !set.contains(&(f & !(1 << v))) {
                    return Err(Error::Format("face family is not closed under taking subsets".into()));
                }
            }
        }
        Ok(Self::from_mask_set(vertices, set))
    }

    /// Downward closure of the given faces.
    pub fn from_maximal(vertices: Vec<String>, maximal: &[Vec<usize>]) -> Result<Self> {
        Self::check_size(vertices.len())?;
        if let Some(bad) = maximal.iter().flatten().find(|&&v| v >= vertices.len()) {
            return Err(Error::Format(format!("face uses unknown vertex {bad}")));
        }
        let masks: Vec<u64> = maximal.iter().map(|f| mask_of(f)).collect();
        Ok(Self::from_mask_set(vertices, closure(&masks)))
    }

    pub(crate) fn from_mask_set(vertices: Vec<String>, set: HashSet<u64>) -> Self {
        let mut faces: Vec<u64> = set.into_iter().collect();
        faces.sort_by(face_order);
        AbstractComplex { vertices, faces }
    }

    fn check_size(n: usize) -> Result<()> {
        if n > 64 {
            return Err(Error::Format(format!("abstract complexes support at most 64 vertices, got {n}")));
        }
        Ok(())
    }

    /// The full simplex on `n` vertices named `v1..vn`.
    pub fn simplex(n: usize) -> Self {
        let names = (1..=n).map(|i| format!("v{i}")).collect();
        Self::from_maximal(names, &[(0..n).collect()]).expect("small simplex")
    }

    /// Boundary of the simplex on `n` vertices (a sphere of dimension `n-2`).
    pub fn simplex_boundary(n: usize) -> Self {
        let names = (1..=n).map(|i| format!("v{i}")).collect();
        let maximal: Vec<Vec<usize>> = (0..n).map(|skip| (0..n).filter(|&v| v != skip).collect()).collect();
        Self::from_maximal(names, &maximal).expect("small simplex")
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    /// Faces as sorted vertex-index lists, by size then lexicographically.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        self.faces.iter().map(|&m| (0..64).filter(|v| m & (1 << v) != 0).collect()).collect()
    }

    pub fn face_masks(&self) -> &[u64] {
        &self.faces
    }

    pub fn contains(&self, face: &[usize]) -> bool {
        let m = mask_of(face);
        self.faces.binary_search_by(|f| face_order(f, &m)).is_ok()
    }

    /// Dimension of the largest face (`-1` for the complex `{∅}`).
    pub fn dim(&self) -> isize {
        self.faces.iter().map(|f| f.count_ones() as isize).max().unwrap_or(0) - 1
    }

    /// A vertex joined to every face, if any: such complexes are cones and
    /// therefore contractible.
    pub fn cone_vertex(&self) -> Option<usize> {
        let set: HashSet<u64> = self.faces.iter().copied().collect();
        let used = self.faces.iter().fold(0u64, |a, f| a | f);
        (0..self.vertices.len())
            .filter(|v| used & (1 << v) != 0)
            .find(|&v| self.faces.iter().all(|f| set.contains(&(f | (1 << v)))))
    }

    /// Reduced Euler characteristic `Σ_{q >= -1} (-1)^q f_q`.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.faces.iter().map(|f| if f.count_ones() % 2 == 1 { 1 } else { -1 }).sum()
    }
}

fn closure(masks: &[u64]) -> HashSet<u64> {
    let mut set = HashSet::new();
    for &m in masks {
        // Enumerate all submasks of m.
        let mut s = m;
        loop {
            set.insert(s);
            if s == 0 {
                break;
            }
            s = (s - 1) & m;
        }
    }
    set.insert(0);
    set
}

/// Ranks of reduced homology over `Q`, for `q = -1, 0, ..., dim`.
pub fn reduced_homology_ranks(c: &AbstractComplex) -> Vec<usize> {
    let len = (c.dim() + 2) as usize;
    if c.dim() >= 0 && c.cone_vertex().is_some() {
        return vec![0; len];
    }
    homology_by_elimination(c)
}

/// Direct boundary-matrix computation, without the cone shortcut.
pub fn homology_by_elimination(c: &AbstractComplex) -> Vec<usize> {
    let top = (c.dim() + 1) as usize; // largest face size
    let mut by_size: Vec<Vec<u64>> = vec![Vec::new(); top + 1];
    for &f in &c.faces {
        by_size[f.count_ones() as usize].push(f);
    }
    // boundary_rank[s] = rank of the boundary map from faces of size s to size s-1.
    let mut boundary_rank = vec![0usize; top + 2];
    for s in 1..=top {
        let rows_index: HashMap<u64, usize> = by_size[s - 1].iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let mut rows = vec![vec![0i64; by_size[s].len()]; by_size[s - 1].len()];
        for (col, &f) in by_size[s].iter().enumerate() {
            let mut sign = 1;
            for v in 0..64 {
                if f & (1 << v) != 0 {
                    rows[rows_index[&(f & !(1 << v))]][col] = sign;
                    sign = -sign;
                }
            }
        }
        let m = IntegerMatrix::with_cols(by_size[s].len(), rows).expect("rectangular");
        boundary_rank[s] = rank(&m);
    }
    (0..=top).map(|s| by_size[s].len() - boundary_rank[s] - boundary_rank[s + 1]).collect()
}

/// True iff reduced homology vanishes in every degree `q >= 0`.
pub fn is_acyclic(c: &AbstractComplex) -> bool {
    reduced_homology_ranks(c).iter().skip(1).all(|&r| r == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(a: &[usize], b: &[usize]) -> SVParams {
        SVParams::new(a.to_vec(), b.to_vec()).unwrap()
    }

    fn left_complex() -> LabeledComplex {
        LabeledComplex::parse("1,2\n1,4\n2,3,4\n").unwrap()
    }

    fn right_complex() -> LabeledComplex {
        LabeledComplex::parse("# t4 identified with t3\n1,2\n1,3\n2,3,3\n").unwrap()
    }

    #[test]
    fn veronese_point_simplices() {
        let c = build_sv_complex(&sv(&[2], &[1]));
        assert_eq!(c.vertex_count(), 2);
        let names: Vec<usize> = distinct_simplices(&c).iter().map(MultisetSimplex::len).collect();
        assert_eq!(names, vec![0, 1, 2]);
        assert_eq!(exponent_map(&c, true), IntegerMatrix::from_rows(vec![vec![2]]));
    }

    #[test]
    fn segre_point_simplices() {
        let c = build_sv_complex(&sv(&[1, 1], &[1, 1]));
        assert_eq!(distinct_simplices(&c).len(), 4);
        let single = build_sv_complex(&sv(&[1], &[1]));
        assert_eq!(distinct_simplices(&single).len(), 2);
    }

    #[test]
    fn sv_vertex_simplex_rule() {
        let c = build_sv_complex(&sv(&[1, 2], &[1, 2]));
        // vertices: block 1 has one vertex, block 2 has 2 copies of each of 2 labels.
        assert_eq!(c.vertex_count(), 5);
        assert!(c.contains(&[0, 1, 2]));
        assert!(!c.contains(&[1, 2, 3]));
        assert!(c.contains(&[]));
    }

    #[test]
    fn example_complexes_counts() {
        assert_eq!(distinct_simplices(&left_complex()).len(), 11);
        assert_eq!(distinct_simplices(&right_complex()).len(), 9);
        let single = LabeledComplex::parse("1\n").unwrap();
        assert_eq!(distinct_simplices(&single).len(), 2);
    }

    #[test]
    fn right_complex_exponent_columns() {
        let m = exponent_map(&right_complex(), true);
        let cols: Vec<Vec<i64>> = (0..m.cols()).map(|j| (0..m.rows()).map(|i| *m.get(i, j)).collect()).collect();
        assert_eq!(cols, vec![vec![1, 1, 0], vec![1, 0, 1], vec![0, 1, 1], vec![0, 0, 2], vec![0, 1, 2]]);
    }

    #[test]
    fn single_edge_exponent() {
        let c = LabeledComplex::parse("1,2").unwrap();
        assert_eq!(exponent_map(&c, true), IntegerMatrix::from_rows(vec![vec![1], vec![1]]));
    }

    #[test]
    fn parse_reports_line_numbers() {
        let err = LabeledComplex::parse("1,2\n\n# c\n3,,4\n").unwrap_err();
        assert_eq!(err, Error::Parse { line: 4, message: "empty label at position 2".into() });
        assert!(matches!(LabeledComplex::parse("# nothing\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn coordinate_names_round_trip() {
        let c = left_complex();
        let cols = coordinate_simplices(&c);
        for s in &cols {
            let name = c.coordinate_name(s);
            let inner = &name[3..name.len() - 1];
            assert_eq!(&c.parse_coordinate(inner).unwrap(), s);
        }
        let sv2 = build_sv_complex(&sv(&[1, 1], &[1, 1]));
        let s = &coordinate_simplices(&sv2)[0];
        assert_eq!(sv2.coordinate_name(s), "x_{11,21}");
    }

    #[test]
    fn homology_examples() {
        let two_points = AbstractComplex::from_faces(vec!["A".into(), "B".into()], &[vec![0], vec![1]]).unwrap();
        assert_eq!(reduced_homology_ranks(&two_points), vec![0, 1]);
        assert!(!is_acyclic(&two_points));

        let full = AbstractComplex::simplex(4);
        assert_eq!(reduced_homology_ranks(&full), vec![0; 5]);
        assert_eq!(homology_by_elimination(&full), vec![0; 5]);

        let triangle = AbstractComplex::simplex_boundary(3);
        assert_eq!(reduced_homology_ranks(&triangle), vec![0, 0, 1]);
        assert!(!is_acyclic(&triangle));
    }

    #[test]
    fn simplex_minus_a_facet_is_acyclic() {
        let maximal: Vec<Vec<usize>> = (1..4).map(|skip| (0..4).filter(|&v| v != skip).collect()).collect();
        let names = (0..4).map(|i| i.to_string()).collect();
        let c = AbstractComplex::from_maximal(names, &maximal).unwrap();
        assert!(is_acyclic(&c));
        assert_eq!(homology_by_elimination(&c), vec![0, 0, 0, 0]);
    }

    #[test]
    fn closure_is_checked() {
        let bad = AbstractComplex::from_faces(vec!["A".into(), "B".into()], &[vec![0, 1]]);
        assert!(bad.is_err());
    }

    #[test]
    fn empty_complex_has_minus_one_homology() {
        let c = AbstractComplex::from_faces(vec![], &[]).unwrap();
        assert_eq!(reduced_homology_ranks(&c), vec![1]);
        assert!(is_acyclic(&c));
    }

    #[test]
    fn sv_simplex_counts_match_formula() {
        fn binom(n: usize, k: usize) -> usize {
            (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
        }
        for a1 in 1..=3 {
            for b1 in 1..=3 {
                for a2 in 1..=3 {
                    for b2 in 1..=3 {
                        let p = sv(&[a1, a2], &[b1, b2]);
                        let expected: usize = p
                            .a()
                            .iter()
                            .zip(p.b())
                            .map(|(&a, &b)| (0..=a).map(|s| binom(b + s - 1, s)).sum::<usize>())
                            .product();
                        assert_eq!(distinct_simplices(&build_sv_complex(&p)).len(), expected, "{p}");
                    }
                }
            }
        }
    }
}
