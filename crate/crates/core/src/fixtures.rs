//! The seven worked classification examples and the two small labelled
//! complexes, replayed check by check.
//!
//! Every intermediate artefact is recomputed (facet lists, `S' = S`,
//! Gorenstein candidates, all `π_J` / `G_J` records of the
//! `a = (1,2), b = (1,2)` case) and compared against the known value, so a
//! regression surfaces as a named failing check rather than a wrong verdict.

use std::collections::BTreeSet;
use std::fmt::Display;

use serde::{Deserialize, Serialize};

use crate::classify::{classify, ClassificationReport, Options, Status};
use crate::error::Result;
use crate::hoa_trung::{build_pi_j, gj_empty, sf_member, GorensteinStatus, Refutation};
use crate::lattice::LatticeVector;
use crate::membership::{find_holes, Window};
use crate::model::{facet_list, AffineSemigroup, FacetId};
use crate::params::SVParams;
use crate::simplicial::{is_acyclic, reduced_homology_ranks, AbstractComplex, LabeledComplex};
use crate::toric_ideal::{enumerate_binomials, verify_relation, BinomialRelation};
use crate::Point;

/// Labelled complex with maximal simplices `{1,2}, {1,4}, {2,3,4}`.
pub const LEFT_COMPLEX: &str = "1,2\n1,4\n2,3,4\n";
/// The same complex with label 4 identified with label 3.
pub const RIGHT_COMPLEX: &str = "# t4 identified with t3\n1,2\n1,3\n2,3,3\n";

/// Relations of the left complex.
pub const LEFT_RELATIONS: [&str; 3] =
    ["x_{14}x_{23} - x_{12}x_{34}", "x_{234}^2 - x_{23}x_{24}x_{34}", "x_{14}x_{234}^2 - x_{12}x_{24}x_{34}^2"];
/// Relations of the right complex that balance under its parameterization.
pub const RIGHT_RELATIONS: [&str; 2] = ["x_{13}x_{23} - x_{12}x_{33}", "x_{233}^2 - x_{23}^2x_{33}"];
/// Relations commonly quoted for the right complex that do not balance.
pub const RIGHT_UNBALANCED: [&str; 3] =
    ["x_{233} - x_{23}^2", "x_{13}x_{233} - x_{12}x_{23}x_{33}", "x_{13}^2x_{233} - x_{12}^2x_{33}^2"];

/// Degree bound used when enumerating relations of the two complexes.
pub const RELATION_DEGREE: u32 = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

impl Check {
    fn compare(name: impl Into<String>, expected: impl Display, actual: impl Display) -> Self {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        Check { name: name.into(), passed: expected == actual, expected, actual }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseReport {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<SVParams>,
    pub checks: Vec<Check>,
}

impl CaseReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExampleReport {
    pub cases: Vec<CaseReport>,
}

impl ExampleReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(CaseReport::passed)
    }

    pub fn check_count(&self) -> usize {
        self.cases.iter().map(|c| c.checks.len()).sum()
    }

    pub fn case(&self, name: &str) -> Option<&CaseReport> {
        self.cases.iter().find(|c| c.name == name)
    }
}

/// What is known about one of the seven classification examples.
struct Known {
    a: &'static [usize],
    b: &'static [usize],
    facets: &'static [&'static str],
    normal: bool,
    cohen_macaulay: bool,
    gorenstein: bool,
    s_prime_holds: bool,
    /// Gorenstein outcome, see [`GorensteinExpectation`].
    canonical: GorensteinExpectation,
}

enum GorensteinExpectation {
    Consistent(&'static [i64]),
    NotInGroup(&'static [i64]),
    Refuted,
    NotCohenMacaulay,
}

const KNOWN: [Known; 7] = [
    Known {
        a: &[2, 2],
        b: &[1, 1],
        facets: &["F_{1,1}", "F_{2,1}"],
        normal: false,
        cohen_macaulay: true,
        gorenstein: false,
        s_prime_holds: true,
        canonical: GorensteinExpectation::Refuted,
    },
    Known {
        a: &[2, 2],
        b: &[1, 2],
        facets: &["F_{1,1}", "F_{2,1}", "F_{2,2}"],
        normal: false,
        cohen_macaulay: false,
        gorenstein: false,
        s_prime_holds: false,
        canonical: GorensteinExpectation::NotCohenMacaulay,
    },
    Known {
        a: &[1, 2],
        b: &[1, 1],
        facets: &["F_{1,1}", "F_1"],
        normal: false,
        cohen_macaulay: true,
        gorenstein: true,
        s_prime_holds: true,
        canonical: GorensteinExpectation::Consistent(&[0, -1]),
    },
    Known {
        a: &[1, 2],
        b: &[1, 2],
        facets: &["F_{1,1}", "F_{2,1}", "F_{2,2}", "F_1"],
        normal: false,
        cohen_macaulay: true,
        gorenstein: false,
        s_prime_holds: true,
        canonical: GorensteinExpectation::Refuted,
    },
    Known {
        a: &[3],
        b: &[1],
        facets: &["F_{1,1}"],
        normal: false,
        cohen_macaulay: true,
        gorenstein: true,
        s_prime_holds: true,
        canonical: GorensteinExpectation::Consistent(&[1]),
    },
    Known {
        a: &[2],
        b: &[2],
        facets: &["F_{1,1}", "F_{1,2}"],
        normal: true,
        cohen_macaulay: true,
        gorenstein: true,
        s_prime_holds: true,
        canonical: GorensteinExpectation::Consistent(&[-1, -1]),
    },
    Known {
        a: &[2],
        b: &[3],
        facets: &["F_{1,1}", "F_{1,2}", "F_{1,3}"],
        normal: true,
        cohen_macaulay: true,
        gorenstein: false,
        s_prime_holds: true,
        canonical: GorensteinExpectation::NotInGroup(&[-1, -1, -1]),
    },
];

/// One set `J` of the `a = (1,2), b = (1,2)` case: the faces of `π_J`
/// (empty face omitted), whether it is acyclic, and a point of `G_J` when
/// that set is nonempty.
struct KnownJ {
    j: &'static [&'static str],
    faces: &'static [&'static [&'static str]],
    acyclic: bool,
    witness: Option<&'static [i64]>,
}

const KNOWN_J: [KnownJ; 10] = [
    KnownJ {
        j: &["F11", "F21"],
        faces: &[&["F11"], &["F21"], &["F11", "F21"]],
        acyclic: true,
        witness: Some(&[-1, -1, 5]),
    },
    KnownJ {
        j: &["F11", "F22"],
        faces: &[&["F11"], &["F22"], &["F11", "F22"]],
        acyclic: true,
        witness: Some(&[-1, 5, -1]),
    },
    KnownJ { j: &["F11", "F1"], faces: &[&["F11"], &["F1"]], acyclic: false, witness: None },
    KnownJ { j: &["F21", "F22"], faces: &[&["F21"], &["F22"]], acyclic: false, witness: None },
    KnownJ { j: &["F21", "F1"], faces: &[&["F21"], &["F1"], &["F21", "F1"]], acyclic: true, witness: Some(&[1, -1, 1]) },
    KnownJ { j: &["F22", "F1"], faces: &[&["F22"], &["F1"], &["F22", "F1"]], acyclic: true, witness: Some(&[1, 1, -1]) },
    KnownJ {
        j: &["F11", "F21", "F22"],
        faces: &[&["F11"], &["F21"], &["F22"], &["F11", "F21"], &["F11", "F22"]],
        acyclic: true,
        witness: Some(&[-2, -1, -1]),
    },
    KnownJ {
        j: &["F11", "F21", "F1"],
        faces: &[&["F11"], &["F21"], &["F1"], &["F11", "F21"], &["F21", "F1"]],
        acyclic: true,
        witness: Some(&[-1, -4, 1]),
    },
    KnownJ {
        j: &["F11", "F22", "F1"],
        faces: &[&["F11"], &["F22"], &["F1"], &["F11", "F22"], &["F22", "F1"]],
        acyclic: true,
        witness: Some(&[-1, 1, -4]),
    },
    KnownJ {
        j: &["F21", "F22", "F1"],
        faces: &[&["F21"], &["F22"], &["F1"], &["F21", "F1"], &["F22", "F1"]],
        acyclic: true,
        witness: Some(&[1, -1, -1]),
    },
];

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn status_str(s: Status) -> &'static str {
    s.as_str()
}

fn point(v: &[i64]) -> Point {
    LatticeVector(v.to_vec())
}

fn facet_names(ids: &[FacetId]) -> String {
    ids.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

/// Faces of a complex by vertex name, as a canonical string.
fn face_set_of(c: &AbstractComplex) -> String {
    let names = c.vertices();
    let faces: BTreeSet<BTreeSet<String>> = c
        .faces()
        .into_iter()
        .filter(|f| !f.is_empty())
        .map(|f| f.into_iter().map(|v| names[v].clone()).collect())
        .collect();
    render_faces(&faces)
}

fn render_faces(faces: &BTreeSet<BTreeSet<String>>) -> String {
    let parts: Vec<String> =
        faces.iter().map(|f| format!("{{{}}}", f.iter().cloned().collect::<Vec<_>>().join(","))).collect();
    parts.join(" ")
}

fn expected_faces(faces: &[&[&str]]) -> Result<String> {
    let mut set = BTreeSet::new();
    for f in faces {
        let mut face = BTreeSet::new();
        for name in *f {
            face.insert(FacetId::parse(name)?.to_string());
        }
        set.insert(face);
    }
    Ok(render_faces(&set))
}

fn ids(names: &[&str]) -> Result<Vec<FacetId>> {
    names.iter().map(|n| FacetId::parse(n)).collect()
}

/// Whether `x` lies in `G_J`: in `S_F` exactly for the facets outside `J`.
fn in_g_j(s: &AffineSemigroup, j: &[FacetId], x: &Point, bound: u64) -> Result<bool> {
    for f in facet_list(s) {
        let member = sf_member(s, f.id, x, bound)?.is_member();
        if member == j.contains(&f.id) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn classification_case(index: usize, known: &Known) -> Result<CaseReport> {
    let p = SVParams::new(known.a.to_vec(), known.b.to_vec())?;
    let s = AffineSemigroup::new(p.clone());
    let report: ClassificationReport = classify(&p, Options::default())?;
    let bound = report.bound;
    let mut checks = Vec::new();

    let facets: Vec<FacetId> = facet_list(&s).into_iter().map(|f| f.id).collect();
    let mut want: Vec<FacetId> = ids(known.facets)?;
    want.sort();
    let mut got = facets.clone();
    got.sort();
    checks.push(Check::compare("facets", facet_names(&want), facet_names(&got)));

    checks.push(Check::compare("normal", yes_no(known.normal), status_str(report.normal.status)));
    checks.push(Check::compare("cohen-macaulay", yes_no(known.cohen_macaulay), status_str(report.cohen_macaulay.status)));
    checks.push(Check::compare("gorenstein", yes_no(known.gorenstein), status_str(report.gorenstein.status)));

    let analysis = &report.details.hoa_trung;
    checks.push(Check::compare("S' = S", known.s_prime_holds, analysis.cohen_macaulay.s_prime.holds()));

    // `π_J` of a single facet is a point.
    for f in &facets {
        let pi = build_pi_j(&s, &[*f])?;
        checks.push(Check::compare(format!("pi_J acyclic for J = {{{f}}}"), true, is_acyclic(&pi)));
    }

    let g = &analysis.gorenstein;
    let x0 = g.x0.as_ref().map_or_else(|| "none".to_string(), ToString::to_string);
    match &known.canonical {
        GorensteinExpectation::Consistent(v) => {
            checks.push(Check::compare("canonical witness x0", point(v), x0));
            checks.push(Check::compare("G_F = x0 - S", true, g.is_consistent()));
        }
        GorensteinExpectation::NotInGroup(v) => {
            let found = match &g.status {
                GorensteinStatus::Refuted { refutation: Refutation::NotInGroup { candidate } } => candidate.to_string(),
                other => format!("{other:?}"),
            };
            checks.push(Check::compare("only candidate for x0 lies outside the group", point(v), found));
            checks.push(Check::compare("candidate in group", false, s.group_contains(v)));
        }
        GorensteinExpectation::Refuted => {
            let refuted = matches!(g.status, GorensteinStatus::Refuted { .. });
            checks.push(Check::compare("no x0 with G_F = x0 - S", true, refuted));
        }
        GorensteinExpectation::NotCohenMacaulay => {
            let skipped = matches!(g.status, GorensteinStatus::Refuted { refutation: Refutation::NotCohenMacaulay });
            checks.push(Check::compare("Gorenstein test skipped (not Cohen-Macaulay)", true, skipped));
        }
    }

    match index {
        // a = (2,2), b = (1,2): the first unit vector is in S' but not in S.
        2 => {
            let e11 = point(&[1, 0, 0]);
            checks.push(Check::compare("e_{1,1} in S", false, s.contains(&e11.0)));
            let all = facets.iter().map(|&f| sf_member(&s, f, &e11, bound).map(|r| r.is_member())).collect::<Result<Vec<_>>>()?;
            checks.push(Check::compare("e_{1,1} in every S_F", true, all.iter().all(|&m| m)));
        }
        4 => checks.extend(j_records(&s, Window::new(report.window), bound)?),
        // a = 3, b = 1: the semigroup is N \ {1}.
        5 => {
            let holes = find_holes(&s, Window::new(6))?;
            let points: Vec<String> = holes.group_points().iter().map(ToString::to_string).collect();
            checks.push(Check::compare("holes", "(1)", points.join(" ")));
        }
        // a = 2, b = 3: every pair of facets spans an edge of π_J.
        7 => {
            for (l, f) in facets.iter().enumerate() {
                for g in &facets[l + 1..] {
                    let pi = build_pi_j(&s, &[*f, *g])?;
                    checks.push(Check::compare(format!("pi_J is an edge for J = {{{f},{g}}}"), 1, pi.dim()));
                }
            }
        }
        _ => {}
    }

    Ok(CaseReport { name: format!("example ({index})"), params: Some(p), checks })
}

/// All ten sets `J` of size two or three for `a = (1,2), b = (1,2)`.
fn j_records(s: &AffineSemigroup, w: Window, bound: u64) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for known in &KNOWN_J {
        let j = ids(known.j)?;
        let label = format!("J = {{{}}}", j.iter().map(ToString::to_string).collect::<Vec<_>>().join(","));
        let pi = build_pi_j(s, &j)?;
        checks.push(Check::compare(format!("{label}: pi_J"), expected_faces(known.faces)?, face_set_of(&pi)));
        let h = reduced_homology_ranks(&pi);
        checks.push(Check::compare(format!("{label}: acyclic"), known.acyclic, is_acyclic(&pi)));
        if !known.acyclic {
            checks.push(Check::compare(format!("{label}: rank of reduced H_0"), 1, h.get(1).copied().unwrap_or(0)));
        }
        let status = gj_empty(s, &j, w, bound)?;
        checks.push(Check::compare(format!("{label}: G_J empty"), known.witness.is_none(), status.is_empty()));
        if let Some(v) = known.witness {
            checks.push(Check::compare(format!("{label}: {} in G_J", point(v)), true, in_g_j(s, &j, &point(v), bound)?));
        }
    }
    Ok(checks)
}

fn relation_checks(
    c: &LabeledComplex,
    enumerated: &[BinomialRelation],
    text: &str,
    balanced: bool,
) -> Result<Vec<Check>> {
    let r = BinomialRelation::parse(c, text)?;
    let mut checks = vec![Check::compare(format!("{text}: balances"), balanced, verify_relation(c, &r)?)];
    if balanced {
        let normalized = BinomialRelation::new(c, r.plus, r.minus);
        checks.push(Check::compare(
            format!("{text}: enumerated up to degree {RELATION_DEGREE}"),
            true,
            enumerated.contains(&normalized),
        ));
    }
    Ok(checks)
}

fn relation_case(name: &str, complex: &str, balanced: &[&str], unbalanced: &[&str]) -> Result<CaseReport> {
    let c = LabeledComplex::parse(complex)?;
    let enumerated = enumerate_binomials(&c, RELATION_DEGREE)?;
    let mut checks = Vec::new();
    checks.push(Check::compare("every enumerated relation balances", true, {
        let mut ok = true;
        for r in &enumerated {
            ok &= verify_relation(&c, r)?;
        }
        ok
    }));
    for text in balanced {
        checks.extend(relation_checks(&c, &enumerated, text, true)?);
    }
    for text in unbalanced {
        checks.extend(relation_checks(&c, &enumerated, text, false)?);
    }
    Ok(CaseReport { name: name.to_string(), params: None, checks })
}

/// Replay every worked example.
pub fn run_worked_examples() -> Result<ExampleReport> {
    let mut cases = Vec::new();
    for (i, known) in KNOWN.iter().enumerate() {
        cases.push(classification_case(i + 1, known)?);
    }
    cases.push(relation_case("relations (left complex)", LEFT_COMPLEX, &LEFT_RELATIONS, &[])?);
    cases.push(relation_case("relations (right complex)", RIGHT_COMPLEX, &RIGHT_RELATIONS, &RIGHT_UNBALANCED)?);
    Ok(ExampleReport { cases })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_examples_pass() {
        let report = run_worked_examples().unwrap();
        let failures: Vec<String> = report
            .cases
            .iter()
            .flat_map(|case| case.failures().map(move |c| format!("{}: {} expected {} got {}", case.name, c.name, c.expected, c.actual)))
            .collect();
        assert!(failures.is_empty(), "{failures:#?}");
        let four = report.case("example (4)").unwrap();
        assert_eq!(four.checks.iter().filter(|c| c.name.ends_with(": pi_J")).count(), 10);
    }

    #[test]
    fn face_rendering_is_order_independent() {
        let a = expected_faces(&[&["F21"], &["F11"], &["F11", "F21"]]).unwrap();
        let b = expected_faces(&[&["F11", "F21"], &["F11"], &["F21"]]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, "{F_{1,1}} {F_{1,1},F_{2,1}} {F_{2,1}}");
    }
}
