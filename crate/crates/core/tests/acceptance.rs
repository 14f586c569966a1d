//! Acceptance suite: one `[PASS]` / `[FAIL]` line per criterion.
//!
//! Runs without the libtest harness so the lines always reach stdout; the
//! process exits nonzero if any criterion fails.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tangent_toric::classify::{classify, sweep_grid, classify_all, ClassificationReport, Options, Outcome, SweepSummary};
use tangent_toric::dd::facets_agree;
use tangent_toric::fixtures::{self, run_worked_examples};
use tangent_toric::hoa_trung::{s_prime_equals_s, sf_member};
use tangent_toric::membership::{find_holes, semigroup_member, Window};
use tangent_toric::model::{facet_list, AffineSemigroup};
use tangent_toric::simplicial::{reduced_homology_ranks, AbstractComplex, LabeledComplex};
use tangent_toric::toric_ideal::{enumerate_binomials, verify_relation, BinomialRelation};
use tangent_toric::{LatticeVector, Point, SVParams, Sublattice};

type Outcomes = Vec<String>;

struct Criterion {
    id: usize,
    title: &'static str,
    run: fn() -> Result<String, Outcomes>,
}

fn fail_if(problems: Outcomes, summary: String) -> Result<String, Outcomes> {
    if problems.is_empty() {
        Ok(summary)
    } else {
        Err(problems)
    }
}

fn unit(n: usize, i: usize) -> Point {
    LatticeVector::unit(n, i)
}

/// The full criterion-2 grid: `k, a_i, b_i <= 3` plus the four-factor Segre case.
fn grid() -> Vec<SVParams> {
    let mut g = sweep_grid(3, 3, 3);
    g.push(SVParams::new(vec![1; 4], vec![1; 4]).unwrap());
    g
}

fn examples() -> Result<String, Outcomes> {
    let start = Instant::now();
    let report = run_worked_examples().map_err(|e| vec![e.to_string()])?;
    let mut problems: Outcomes = report
        .cases
        .iter()
        .flat_map(|c| c.failures().map(move |f| format!("{}: {} expected {} got {}", c.name, f.name, f.expected, f.actual)))
        .collect();
    let four = report.case("example (4)").map_or(0, |c| c.checks.iter().filter(|k| k.name.ends_with(": pi_J")).count());
    if four != 10 {
        problems.push(format!("expected 10 J records for example (4), found {four}"));
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(10) {
        problems.push(format!("took {elapsed:.2?} (limit 10 s)"));
    }
    fail_if(problems, format!("{} cases, {} checks in {elapsed:.2?}", report.cases.len(), report.check_count()))
}

fn classification_sweep() -> Result<String, Outcomes> {
    let start = Instant::now();
    let reports = classify_all(&grid(), Options::default()).map_err(|e| vec![e.to_string()])?;
    let summary = SweepSummary::of(&reports);
    let elapsed = start.elapsed();
    let mut problems: Outcomes = reports
        .iter()
        .filter(|r| r.outcome != Outcome::Agree)
        .map(|r| format!("{}: {:?} ({})", r.params, r.outcome, describe(r)))
        .collect();
    if elapsed > Duration::from_secs(300) {
        problems.push(format!("took {elapsed:.2?} (limit 5 min)"));
    }
    fail_if(
        problems,
        format!(
            "{} instances: {} agree, {} disagree, {} undetermined in {elapsed:.2?}",
            summary.total, summary.agree, summary.disagree, summary.undetermined
        ),
    )
}

fn describe(r: &ClassificationReport) -> String {
    r.verdicts().iter().map(|(n, v, e)| format!("{n}={} want {}", v.status.as_str(), e)).collect::<Vec<_>>().join(", ")
}

/// The group generated by the semigroup, written down directly.
fn closed_form_group(p: &SVParams) -> Sublattice<BigInt> {
    let n = p.n();
    let e = |i: usize| LatticeVector::<BigInt>::unit(n, i);
    let gens: Vec<LatticeVector<BigInt>> = match (p.a(), p.b()) {
        ([1], _) => vec![],
        ([2], _) => std::iter::once(e(0).scale(&BigInt::from(2))).chain((1..n).map(|j| &e(j) - &e(0))).collect(),
        ([1, 1], [b1, _]) => {
            let b1 = *b1;
            let mut g = vec![&e(0) + &e(b1)];
            g.extend((1..b1).map(|j| &e(j) - &e(0)));
            g.extend((b1 + 1..n).map(|j| &e(j) - &e(b1)));
            g
        }
        _ => (0..n).map(e).collect(),
    };
    Sublattice::from_generators(n, &gens).unwrap()
}

fn lemma_suites() -> Result<String, Outcomes> {
    let mut problems = Outcomes::new();
    let (mut facet_cases, mut hole_points, mut axis_cases) = (0, 0, 0);
    for p in grid() {
        let s = AffineSemigroup::new(p.clone());
        let n = p.n();
        // (a) closed forms of the group.
        if s.group() != &closed_form_group(&p) {
            problems.push(format!("{p}: group differs from its closed form"));
        }
        // (b) facets against the double-description oracle.
        if n <= 6 {
            facet_cases += 1;
            match facets_agree(&s, 6) {
                Ok(true) => {}
                Ok(false) => problems.push(format!("{p}: facet list differs from the oracle")),
                Err(e) => problems.push(format!("{p}: {e:?}")),
            }
        }
        // (c) listed holes appear in find_holes.
        let w = Window::default_for(&p);
        let holes = match find_holes(&s, w) {
            Ok(h) => h,
            Err(e) => {
                problems.push(format!("{p}: {e}"));
                continue;
            }
        };
        let offsets = p.offsets();
        for (i, (&a, &b)) in p.a().iter().zip(p.b()).enumerate() {
            let mut listed: Vec<Point> = Vec::new();
            if a > 2 || (a == 2 && p.k() > 1) {
                listed.extend((0..b).map(|j| unit(n, offsets[i] + j)));
            }
            if a == 2 && p.k() > 1 {
                // Odd multiples spread over the block, inside the window.
                for c in odd_block_points(b, w.radius) {
                    let mut x = vec![0i64; n];
                    x[offsets[i]..offsets[i] + b].copy_from_slice(&c);
                    listed.push(LatticeVector(x));
                }
            }
            for x in listed {
                hole_points += 1;
                if !holes.contains_ambient(&x.0) {
                    problems.push(format!("{p}: {x} missing from the ambient holes"));
                }
            }
        }
        // (d) axis witness for S' != S when the largest degree is at least three.
        let a_k = *p.a().last().unwrap();
        if a_k >= 3 && !(p.k() == 1 && p.b() == [1]) {
            axis_cases += 1;
            let opts = Options::default().resolve(&p);
            match s_prime_equals_s(&s, opts.0, opts.1) {
                Ok(v) if !v.holds() => {}
                Ok(_) => problems.push(format!("{p}: S' = S reported")),
                Err(e) => problems.push(format!("{p}: {e}")),
            }
            let axis = unit(n, offsets[p.k() - 1]);
            let in_all = facet_list(&s).iter().all(|f| sf_member(&s, f.id, &axis, opts.1).map(|r| r.is_member()).unwrap_or(false));
            if s.contains(&axis.0) || !in_all {
                problems.push(format!("{p}: {axis} is not in S' \\ S"));
            }
        }
    }
    fail_if(
        problems,
        format!("group closed forms, {facet_cases} facet oracles, {hole_points} hole witnesses, {axis_cases} axis witnesses"),
    )
}

/// Points of `N^b` with odd coordinate sum and entries at most `radius`.
fn odd_block_points(b: usize, radius: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..b {
        out = out.into_iter().flat_map(|v: Vec<i64>| (0..=radius).map(move |c| [v.clone(), vec![c]].concat())).collect();
    }
    out.retain(|v| v.iter().sum::<i64>() % 2 == 1);
    out
}

/// Every point of `[0, side]^n` that is a sum of generators; partial sums of
/// nonnegative generators stay in the box, so closing the box is enough.
fn brute_force_members(s: &AffineSemigroup, side: i64) -> HashSet<Vec<i64>> {
    let mut seen: HashSet<Vec<i64>> = HashSet::from([vec![0; s.n()]]);
    let mut frontier = vec![vec![0; s.n()]];
    while let Some(x) = frontier.pop() {
        for g in s.generators() {
            let y: Vec<i64> = x.iter().zip(&g.0).map(|(a, b)| a + b).collect();
            if y.iter().all(|&c| c <= side) && seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen
}

fn box_points(n: usize, side: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v: Vec<i64>| (0..=side).map(move |c| [v.clone(), vec![c]].concat())).collect();
    }
    out
}

fn random_complex(rng: &mut ChaCha8Rng) -> AbstractComplex {
    let n = rng.gen_range(1..=7);
    let count = rng.gen_range(1..=6);
    let maximal: Vec<Vec<usize>> = (0..count)
        .map(|_| {
            let mut f: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
            if f.is_empty() {
                f.push(rng.gen_range(0..n));
            }
            f
        })
        .collect();
    AbstractComplex::from_maximal((0..n).map(|i| format!("v{i}")).collect(), &maximal).unwrap()
}

fn oracles() -> Result<String, Outcomes> {
    let mut problems = Outcomes::new();
    let (mut instances, mut points) = (0, 0);
    for p in grid().into_iter().filter(|p| p.n() <= 4) {
        let s = AffineSemigroup::new(p.clone());
        let members = brute_force_members(&s, 6);
        instances += 1;
        for x in box_points(p.n(), 6) {
            points += 1;
            let fast = semigroup_member(&s, &LatticeVector(x.clone())).unwrap();
            if fast != members.contains(&x) {
                problems.push(format!("{p}: membership of {x:?} is {fast}, enumeration says {}", !fast));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for i in 0..200 {
        let c = random_complex(&mut rng);
        let euler: i64 = reduced_homology_ranks(&c)
            .iter()
            .enumerate()
            .map(|(q, &r)| if q % 2 == 1 { r as i64 } else { -(r as i64) })
            .sum();
        if euler != c.reduced_euler_characteristic() {
            problems.push(format!("random complex {i}: Betti numbers give {euler}, faces give {}", c.reduced_euler_characteristic()));
        }
    }
    for n in 1..=6 {
        if reduced_homology_ranks(&AbstractComplex::simplex(n)).iter().any(|&r| r != 0) {
            problems.push(format!("simplex on {n} vertices is not acyclic"));
        }
        if n >= 2 {
            let ranks = reduced_homology_ranks(&AbstractComplex::simplex_boundary(n));
            let mut want = vec![0; n];
            want[n - 1] = 1;
            if ranks != want {
                problems.push(format!("sphere of dimension {}: ranks {ranks:?}", n - 2));
            }
        }
    }
    fail_if(problems, format!("{points} points over {instances} instances, 200 random complexes, simplices and spheres"))
}

fn toric_fixtures() -> Result<String, Outcomes> {
    let mut problems = Outcomes::new();
    let mut run = |complex: &str, listed: &[&str], balanced: bool| -> tangent_toric::Result<()> {
        let c = LabeledComplex::parse(complex)?;
        let found = enumerate_binomials(&c, 6)?;
        for text in listed {
            let r = BinomialRelation::parse(&c, text)?;
            if verify_relation(&c, &r)? != balanced {
                problems.push(format!("{text}: verify_relation should be {balanced}"));
            }
            if balanced && !found.contains(&BinomialRelation::new(&c, r.plus.clone(), r.minus.clone())) {
                problems.push(format!("{text}: not enumerated at degree 6"));
            }
        }
        Ok(())
    };
    let outcome = run(fixtures::LEFT_COMPLEX, &fixtures::LEFT_RELATIONS, true)
        .and_then(|_| run(fixtures::RIGHT_COMPLEX, &fixtures::RIGHT_RELATIONS, true))
        .and_then(|_| run(fixtures::RIGHT_COMPLEX, &fixtures::RIGHT_UNBALANCED, false));
    if let Err(e) = outcome {
        problems.push(e.to_string());
    }
    fail_if(
        problems,
        format!(
            "{} left relations found and verified; {} right-complex substitutes verified, {} unbalanced relations rejected",
            fixtures::LEFT_RELATIONS.len(),
            fixtures::RIGHT_RELATIONS.len(),
            fixtures::RIGHT_UNBALANCED.len()
        ),
    )
}

fn spot_checks() -> Result<String, Outcomes> {
    // (family, a, b, clause the theorem assigns). Odd b leaves the G5 family
    // for the Cohen-Macaulay clause CM6, which is checked as its boundary.
    let cases: [(&str, Vec<usize>, Vec<usize>, &str); 8] = [
        ("CM3", vec![1, 2], vec![1, 5], "CM3"),
        ("CM3", vec![1, 2], vec![1, 8], "CM3"),
        ("CM4", vec![1, 1], vec![2, 5], "CM4"),
        ("CM4", vec![1, 1], vec![2, 8], "CM4"),
        ("G3", vec![1, 1], vec![5, 5], "G3"),
        ("G3", vec![1, 1], vec![8, 8], "G3"),
        ("G5", vec![2], vec![5], "CM6"),
        ("G5", vec![2], vec![8], "G5"),
    ];
    let mut problems = Outcomes::new();
    let mut times = Vec::new();
    for (family, a, b, clause) in cases {
        let p = SVParams::new(a, b).unwrap();
        let start = Instant::now();
        match classify(&p, Options::default()) {
            Ok(r) => {
                let elapsed = start.elapsed();
                times.push(format!("{family} b={:?} {elapsed:.2?}", p.b()));
                if r.outcome != Outcome::Agree || r.clause != clause {
                    problems.push(format!("{p}: {:?}, clause {} ({})", r.outcome, r.clause, describe(&r)));
                }
                if elapsed > Duration::from_secs(60) {
                    problems.push(format!("{p}: took {elapsed:.2?} (limit 60 s)"));
                }
            }
            Err(e) => problems.push(format!("{p}: {e}")),
        }
    }
    fail_if(problems, times.join(", "))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, title: "worked examples", run: examples },
        Criterion { id: 2, title: "classification sweep", run: classification_sweep },
        Criterion { id: 3, title: "lemma-level suites", run: lemma_suites },
        Criterion { id: 4, title: "oracle equivalences", run: oracles },
        Criterion { id: 5, title: "toric-ideal fixtures", run: toric_fixtures },
        Criterion { id: 6, title: "spot checks for unbounded families", run: spot_checks },
    ];
    let mut failed = 0;
    for c in &criteria {
        match (c.run)() {
            Ok(summary) => println!("[PASS] criterion {}: {} -- {summary}", c.id, c.title),
            Err(problems) => {
                failed += 1;
                println!("[FAIL] criterion {}: {} -- {} problem(s)", c.id, c.title, problems.len());
                for p in problems.iter().take(20) {
                    println!("       {p}");
                }
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
