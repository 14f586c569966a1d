use std::fmt::Write as _;

use serde::Serialize;
use tangent_toric::classify::{ClassificationReport, SweepSummary};
use tangent_toric::fixtures::ExampleReport;
use tangent_toric::simplicial::LabeledComplex;
use tangent_toric::toric_ideal::BinomialRelation;
use tangent_toric::SVParams;

fn tuple(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

/// File-name fragment for a triple, e.g. `2-1_2-1_3`.
pub fn slug(p: &SVParams) -> String {
    let join = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join("_");
    format!("{}-{}-{}", p.k(), join(p.a()), join(p.b()))
}

pub fn report_text(r: &ClassificationReport) -> String {
    let p = &r.params;
    let mut s = String::new();
    let _ = writeln!(s, "parameters   k={} a={} b={}", p.k(), tuple(p.a()), tuple(p.b()));
    if p.original_a() != p.a() || p.original_b() != p.b() {
        let _ = writeln!(s, "  (given as a={} b={})", tuple(p.original_a()), tuple(p.original_b()));
    }
    let _ = writeln!(s, "dimensions   n={} rank={} tangential={}", r.dims.n, r.dims.rank, r.dims.tangential);
    for (name, v, expected) in r.verdicts() {
        let want = if expected { "yes" } else { "no" };
        let _ = writeln!(s, "{name:<15}{:<13}(expected {want})  {}", v.status.as_str(), v.evidence);
    }
    let _ = writeln!(s, "clause       {}", r.clause);
    let _ = writeln!(s, "outcome      {}", outcome_str(r));
    let _ = writeln!(s, "window       {}  bound {}", r.window, r.bound);
    s
}

fn outcome_str(r: &ClassificationReport) -> &'static str {
    match r.outcome {
        tangent_toric::classify::Outcome::Agree => "agree",
        tangent_toric::classify::Outcome::Disagree => "disagree",
        tangent_toric::classify::Outcome::Undetermined => "undetermined",
    }
}

pub fn summary_line(sum: &SweepSummary) -> String {
    format!("{} instances: {} agree, {} disagree, {} undetermined", sum.total, sum.agree, sum.disagree, sum.undetermined)
}

pub fn sweep_text(reports: &[ClassificationReport], sum: &SweepSummary) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<3} {:<12} {:<12} {:<13} {:<13} {:<13} {:<13} {:<6} outcome",
        "k", "a", "b", "smooth", "normal", "cm", "gorenstein", "clause"
    );
    for r in reports {
        let p = &r.params;
        let _ = writeln!(
            s,
            "{:<3} {:<12} {:<12} {:<13} {:<13} {:<13} {:<13} {:<6} {}",
            p.k(),
            tuple(p.a()),
            tuple(p.b()),
            r.smooth.status.as_str(),
            r.normal.status.as_str(),
            r.cohen_macaulay.status.as_str(),
            r.gorenstein.status.as_str(),
            r.clause,
            outcome_str(r)
        );
    }
    let _ = writeln!(s, "{}", summary_line(sum));
    s
}

#[derive(Serialize)]
struct CsvRow {
    k: usize,
    a: String,
    b: String,
    n: usize,
    rank: usize,
    smooth: &'static str,
    normal: &'static str,
    cm: &'static str,
    gorenstein: &'static str,
    clause: String,
    agreement: bool,
}

pub fn reports_csv(reports: &[ClassificationReport]) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in reports {
        let p = &r.params;
        w.serialize(CsvRow {
            k: p.k(),
            a: tuple(p.a()),
            b: tuple(p.b()),
            n: r.dims.n,
            rank: r.dims.rank,
            smooth: r.smooth.status.as_str(),
            normal: r.normal.status.as_str(),
            cm: r.cohen_macaulay.status.as_str(),
            gorenstein: r.gorenstein.status.as_str(),
            clause: r.clause.clone(),
            agreement: r.agreement,
        })?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn examples_text(report: &ExampleReport) -> String {
    let mut s = String::new();
    for case in &report.cases {
        let head = match &case.params {
            Some(p) => format!("{} k={} a={} b={}", case.name, p.k(), tuple(p.a()), tuple(p.b())),
            None => case.name.clone(),
        };
        let _ = writeln!(s, "{} {head}", if case.passed() { "[PASS]" } else { "[FAIL]" });
        for c in &case.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            if c.passed {
                let _ = writeln!(s, "    {mark} {}: {}", c.name, c.actual);
            } else {
                let _ = writeln!(s, "    {mark} {}: expected {}, got {}", c.name, c.expected, c.actual);
            }
        }
    }
    let failed = report.cases.iter().filter(|c| !c.passed()).count();
    let _ = writeln!(s, "{} cases, {} checks, {} failing cases", report.cases.len(), report.check_count(), failed);
    s
}

pub fn relations_text(c: &LabeledComplex, relations: &[BinomialRelation]) -> String {
    if relations.is_empty() {
        return "no relations\n".to_string();
    }
    relations.iter().map(|r| format!("{}\n", r.format(c))).collect()
}
