//! Full classification of one parameter triple and sweeps over grids,
//! compared against the published classification.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::hoa_trung::{analyze, CmStatus, GorensteinStatus, HoaTrungAnalysis, Refutation};
use crate::membership::{is_normal, is_smooth, NormalityVerdict, SmoothnessVerdict, Window};
use crate::model::AffineSemigroup;
use crate::params::SVParams;

/// Default window radius `2(a_k + 2)`.
pub fn default_window(p: &SVParams) -> Window {
    Window::default_for(p)
}

/// Default bound `6·a_k·M`.
pub fn default_bound(p: &SVParams, w: Window) -> u64 {
    6 * p.max_a() as u64 * w.radius.max(0) as u64
}

/// Overrides for the window and bound.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Options {
    pub window: Option<i64>,
    pub bound: Option<u64>,
}

impl Options {
    pub fn resolve(&self, p: &SVParams) -> (Window, u64) {
        let w = self.window.map(Window::new).unwrap_or_else(|| default_window(p));
        (w, self.bound.unwrap_or_else(|| default_bound(p, w)))
    }
}

/// The clauses of the classification theorem, as predicates on normalized
/// parameters (degrees sorted increasingly, ties broken by dimension).
pub mod expected {
    use crate::params::SVParams;

    fn all_ones(a: &[usize]) -> bool {
        a.iter().all(|&x| x == 1)
    }

    pub fn s1(p: &SVParams) -> bool {
        p.k() == 2 && p.a() == [1, 1] && p.b()[0] == 1
    }

    pub fn s2(p: &SVParams) -> bool {
        p.k() == 1 && (p.a()[0] == 1 || (p.a()[0] == 2 && p.b()[0] == 1))
    }

    pub fn cm1(p: &SVParams) -> bool {
        p.k() >= 3 && all_ones(p.a())
    }

    pub fn cm2(p: &SVParams) -> bool {
        p.k() == 2 && p.a() == [2, 2] && p.b() == [1, 1]
    }

    pub fn cm3(p: &SVParams) -> bool {
        p.k() == 2 && p.a() == [1, 2] && p.b()[0] == 1
    }

    pub fn cm4(p: &SVParams) -> bool {
        p.k() == 2 && p.a() == [1, 1] && p.b().iter().all(|&b| b > 1)
    }

    pub fn cm5(p: &SVParams) -> bool {
        p.k() == 1 && p.a()[0] >= 3 && p.b()[0] == 1
    }

    pub fn cm6(p: &SVParams) -> bool {
        p.k() == 1 && p.a()[0] == 2 && p.b()[0] > 1
    }

    pub fn g1(p: &SVParams) -> bool {
        p.k() == 3 && p.a() == [1, 1, 1] && p.b() == [1, 1, 1]
    }

    pub fn g2(p: &SVParams) -> bool {
        p.k() == 2 && p.a() == [1, 2] && p.b() == [1, 1]
    }

    pub fn g3(p: &SVParams) -> bool {
        p.k() == 2 && p.a() == [1, 1] && p.b()[0] == p.b()[1] && p.b()[0] > 1
    }

    pub fn g4(p: &SVParams) -> bool {
        cm5(p)
    }

    pub fn g5(p: &SVParams) -> bool {
        p.k() == 1 && p.a()[0] == 2 && p.b()[0].is_multiple_of(2)
    }

    pub fn n1(p: &SVParams) -> bool {
        all_ones(p.a())
    }

    pub fn n2(p: &SVParams) -> bool {
        p.k() == 1 && p.a()[0] == 2
    }

    type Clause = (&'static str, fn(&SVParams) -> bool);

    pub const SMOOTH: [Clause; 2] = [("S1", s1), ("S2", s2)];
    pub const COHEN_MACAULAY: [Clause; 6] =
        [("CM1", cm1), ("CM2", cm2), ("CM3", cm3), ("CM4", cm4), ("CM5", cm5), ("CM6", cm6)];
    pub const GORENSTEIN: [Clause; 5] = [("G1", g1), ("G2", g2), ("G3", g3), ("G4", g4), ("G5", g5)];
    pub const NORMAL: [Clause; 2] = [("N1", n1), ("N2", n2)];

    pub fn matching(p: &SVParams, clauses: &[Clause]) -> Vec<&'static str> {
        clauses.iter().filter(|(_, f)| f(p)).map(|(name, _)| *name).collect()
    }
}

/// Verdicts predicted by the classification theorem.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedVerdicts {
    pub smooth: bool,
    pub normal: bool,
    pub cohen_macaulay: bool,
    pub gorenstein: bool,
    /// Every matching clause, e.g. `["CM4", "G3", "N1"]`.
    pub clauses: Vec<String>,
}

impl ExpectedVerdicts {
    pub fn of(p: &SVParams) -> Self {
        use expected::*;
        let s = matching(p, &SMOOTH);
        let (cm, g) = if s.is_empty() { (matching(p, &COHEN_MACAULAY), matching(p, &GORENSTEIN)) } else { (vec![], vec![]) };
        let n = matching(p, &NORMAL);
        let smooth = !s.is_empty();
        ExpectedVerdicts {
            smooth,
            normal: !n.is_empty(),
            cohen_macaulay: smooth || !cm.is_empty(),
            gorenstein: smooth || !g.is_empty(),
            clauses: s.iter().chain(&cm).chain(&g).chain(&n).map(|c| c.to_string()).collect(),
        }
    }

    /// The most specific clause: smooth, else Gorenstein, else
    /// Cohen–Macaulay, else `none`.
    pub fn primary_clause(&self) -> String {
        ["S", "G", "CM"]
            .iter()
            .find_map(|prefix| self.clauses.iter().find(|c| c.strip_prefix(prefix).is_some_and(|rest| rest.starts_with(|d: char| d.is_ascii_digit()))))
            .cloned()
            .unwrap_or_else(|| "none".into())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Yes,
    No,
    Undetermined,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Yes => "yes",
            Status::No => "no",
            Status::Undetermined => "undetermined",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub evidence: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dims {
    pub n: usize,
    pub rank: usize,
    /// `n + rank`.
    pub tangential: usize,
}

/// Full evidence behind the four verdicts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Details {
    pub normality: NormalityVerdict,
    pub smoothness: SmoothnessVerdict,
    pub hoa_trung: HoaTrungAnalysis,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Agree,
    Disagree,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub params: SVParams,
    pub dims: Dims,
    pub smooth: Verdict,
    pub normal: Verdict,
    pub cohen_macaulay: Verdict,
    pub gorenstein: Verdict,
    pub expected: ExpectedVerdicts,
    pub clause: String,
    pub outcome: Outcome,
    pub agreement: bool,
    pub window: i64,
    pub bound: u64,
    pub details: Details,
}

impl ClassificationReport {
    pub fn verdicts(&self) -> [(&'static str, &Verdict, bool); 4] {
        [
            ("smooth", &self.smooth, self.expected.smooth),
            ("normal", &self.normal, self.expected.normal),
            ("cohen_macaulay", &self.cohen_macaulay, self.expected.cohen_macaulay),
            ("gorenstein", &self.gorenstein, self.expected.gorenstein),
        ]
    }
}

fn outcome(verdicts: &[(&Verdict, bool)]) -> Outcome {
    if verdicts.iter().any(|(v, e)| v.status != Status::Undetermined && (v.status == Status::Yes) != *e) {
        Outcome::Disagree
    } else if verdicts.iter().any(|(v, _)| v.status == Status::Undetermined) {
        Outcome::Undetermined
    } else {
        Outcome::Agree
    }
}

/// Run the whole pipeline on one triple.
pub fn classify(p: &SVParams, opts: Options) -> Result<ClassificationReport> {
    let (w, bound) = opts.resolve(p);
    let s = AffineSemigroup::new(p.clone());
    let normality = is_normal(&s, w)?;
    let smoothness = is_smooth(&s, w)?;
    let hoa_trung = analyze(&s, w, bound)?;

    let normal = match &normality {
        NormalityVerdict::NormalWithinWindow { certified_by, .. } => Verdict {
            status: Status::Yes,
            evidence: match certified_by {
                Some(c) => format!("no hole in window {} ({c})", w.radius),
                None => format!("no hole in window {}", w.radius),
            },
        },
        NormalityVerdict::NotNormal { witness, .. } => {
            Verdict { status: Status::No, evidence: format!("{witness} lies in the cone and the group but not in S") }
        }
    };
    let smooth = match &smoothness {
        SmoothnessVerdict::Smooth { reason } => Verdict { status: Status::Yes, evidence: reason.clone() },
        SmoothnessVerdict::NotSmooth { reason } => Verdict { status: Status::No, evidence: reason.clone() },
        SmoothnessVerdict::Undetermined { reason } => Verdict { status: Status::Undetermined, evidence: reason.clone() },
    };
    let cm = &hoa_trung.cohen_macaulay;
    let cohen_macaulay = Verdict {
        status: match cm.status {
            CmStatus::CohenMacaulay => Status::Yes,
            CmStatus::NotCohenMacaulay => Status::No,
            CmStatus::Undetermined => Status::Undetermined,
        },
        evidence: cm.reason.clone(),
    };
    let g = &hoa_trung.gorenstein;
    let gorenstein = match &g.status {
        GorensteinStatus::Consistent => Verdict {
            status: Status::Yes,
            evidence: format!(
                "G_F = {} - S on window {}",
                g.x0.as_ref().expect("consistent witness has a candidate"),
                g.checked_window.radius
            ),
        },
        GorensteinStatus::Refuted { refutation } => Verdict {
            status: Status::No,
            evidence: match refutation {
                Refutation::NotCohenMacaulay => "not Cohen-Macaulay".into(),
                Refutation::NotInGroup { candidate } => format!("the only candidate {candidate} is not in the group"),
                Refutation::NotAttained { candidate } => format!("the supremum {candidate} of G_F is not in G_F"),
                Refutation::Counterexample { point, in_canonical: true } => {
                    format!("{point} lies in G_F but x0 - {point} is not in S")
                }
                Refutation::Counterexample { point, in_canonical: false } => {
                    format!("x0 - {point} lies in S but {point} is not in G_F")
                }
            },
        },
        GorensteinStatus::Undetermined { reason } => Verdict { status: Status::Undetermined, evidence: reason.clone() },
    };
    let expected = ExpectedVerdicts::of(p);
    let outcome = outcome(&[
        (&smooth, expected.smooth),
        (&normal, expected.normal),
        (&cohen_macaulay, expected.cohen_macaulay),
        (&gorenstein, expected.gorenstein),
    ]);
    Ok(ClassificationReport {
        params: p.clone(),
        dims: Dims { n: s.n(), rank: s.rank(), tangential: s.n() + s.rank() },
        smooth,
        normal,
        cohen_macaulay,
        gorenstein,
        clause: expected.primary_clause(),
        expected,
        outcome,
        agreement: outcome == Outcome::Agree,
        window: w.radius,
        bound,
        details: Details { normality, smoothness, hoa_trung },
    })
}

/// All normalized triples with `k <= max_k`, `a_i <= max_a`, `b_i <= max_b`,
/// ordered by `k` and then lexicographically.
pub fn sweep_grid(max_k: usize, max_a: usize, max_b: usize) -> Vec<SVParams> {
    let pairs: Vec<(usize, usize)> = (1..=max_a).flat_map(|a| (1..=max_b).map(move |b| (a, b))).collect();
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    fn rec(pairs: &[(usize, usize)], k: usize, start: usize, chosen: &mut Vec<usize>, out: &mut Vec<SVParams>) {
        if chosen.len() == k {
            let (a, b) = chosen.iter().map(|&i| pairs[i]).unzip();
            out.push(SVParams::new(a, b).expect("grid parameters are positive"));
            return;
        }
        for i in start..pairs.len() {
            chosen.push(i);
            rec(pairs, k, i, chosen, out);
            chosen.pop();
        }
    }
    for k in 1..=max_k {
        rec(&pairs, k, 0, &mut chosen, &mut out);
    }
    out
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub total: usize,
    pub agree: usize,
    pub disagree: usize,
    pub undetermined: usize,
}

impl SweepSummary {
    pub fn of(reports: &[ClassificationReport]) -> Self {
        let count = |o: Outcome| reports.iter().filter(|r| r.outcome == o).count();
        SweepSummary {
            total: reports.len(),
            agree: count(Outcome::Agree),
            disagree: count(Outcome::Disagree),
            undetermined: count(Outcome::Undetermined),
        }
    }
}

/// Classify every triple concurrently; the result keeps the input order.
pub fn classify_all(params: &[SVParams], opts: Options) -> Result<Vec<ClassificationReport>> {
    params.par_iter().map(|p| classify(p, opts)).collect()
}

/// Sweep the grid and summarize.
pub fn sweep(max_k: usize, max_a: usize, max_b: usize, opts: Options) -> Result<(Vec<ClassificationReport>, SweepSummary)> {
    let reports = classify_all(&sweep_grid(max_k, max_a, max_b), opts)?;
    let summary = SweepSummary::of(&reports);
    Ok((reports, summary))
}
