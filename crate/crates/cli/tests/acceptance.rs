//! One pass/fail line per acceptance criterion. Run with `--nocapture` to
//! see the lines.

use std::time::{Duration, Instant};

use abscon::report::{CheckEntry, Report};
use abscon::scenarios::run_scenario;
use abscon::suite::{run_invariants, run_property_suite};
use abscon_core::report::{ConclusionStatus, HypothesisStatus, Verdict};

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn entry<'a>(r: &'a Report, name: &str) -> &'a CheckEntry {
    r.checks.iter().find(|e| e.name == name).unwrap_or_else(|| panic!("no entry `{name}` in {}", r.scenario))
}

fn observation<'a>(e: &'a CheckEntry, key: &str) -> &'a str {
    e.report.as_ref().and_then(|r| r.observations.get(key)).map_or("", String::as_str)
}

/// Total violations and the smallest instance count across suite entries.
fn suite_counts(r: &Report) -> (usize, usize) {
    let n = |e: &CheckEntry, k: &str| observation(e, k).parse::<usize>().unwrap();
    let violations = r.checks.iter().map(|e| n(e, "violations")).sum();
    let instances = r.checks.iter().map(|e| n(e, "instances")).min().unwrap_or(0);
    (violations, instances)
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed())
}

fn scenario(name: &str) -> Report {
    run_scenario(name).unwrap()
}

fn fig1() -> Outcome {
    let (r, t) = timed(|| scenario("fig1-separation"));
    let sep = entry(&r, "separation");
    let regions = observation(sep, "second-over-first") == "-abs(x) + 2: (-1/2, 1/2); 0: (-inf, -3) U (3, +inf)"
        && observation(sep, "first-over-second") == "-abs(x - 1) + 2: (1/2, 3); -abs(x + 1) + 2: (-3, -1/2)";
    let convex = observation(sep, "first-hull-closed") == "true" && observation(sep, "second-hull-closed") == "true";
    let disjoint = observation(sep, "disjoint") == "true";
    let none = observation(sep, "witness") == "none" && observation(sep, "reverse-witness") == "none";
    let ok = r.status == Verdict::Pass && regions && convex && disjoint && none && t < Duration::from_secs(1);
    outcome(ok, format!("regions exact {regions}, H-convex {convex}, disjoint {disjoint}, no separator {none}, {t:?}"))
}

fn fig2() -> Outcome {
    let r = scenario("fig2-maxrule");
    let rule = entry(&r, "max-rule").report.clone().unwrap();
    let witness = rule.witnesses.iter().any(|w| w.functions == ["max(0, x) - 1"] && w.points == ["-1"]);
    let ok = r.status == Verdict::Pass && rule.conclusion == ConclusionStatus::StrictInclusion && witness;
    outcome(ok, format!("strict inclusion with u = max(0, x) - 1 at y = -1: {witness}"))
}

fn moreau() -> Outcome {
    let (r, t) = timed(|| run_invariants(0, 100, &|n| n.ends_with("/moreau")));
    let (violations, instances) = suite_counts(&r);
    let s = scenario("moreau");
    let ok = violations == 0 && instances >= 100 && s.status == Verdict::Pass && t < Duration::from_secs(10);
    outcome(ok, format!("{instances} instances per backend, {violations} violations, {t:?}"))
}

fn hull_laws() -> Outcome {
    let (r, t) = timed(|| run_invariants(1, 100, &|n| n.starts_with("hull/") || n == "line/hull" || n == "line/separation"));
    let (violations, instances) = suite_counts(&r);
    let names: Vec<&str> = r.checks.iter().map(|e| e.name.as_str()).collect();
    let covered = ["hull/co-set", "hull/point-set-hull", "hull/sublevel"].iter().all(|n| names.contains(n));
    outcome(violations == 0 && covered, format!("{} laws on {instances} instances, {violations} violations, {t:?}", names.len()))
}

fn epi_conjugate() -> Outcome {
    let r = run_invariants(2, 100, &|n| n.ends_with("/epi-conjugate"));
    let (violations, instances) = suite_counts(&r);
    let s = scenario("epi-conjugate");
    outcome(violations == 0 && s.status == Verdict::Pass, format!("{instances} instances per backend, {violations} violations"))
}

fn sum_rule() -> Outcome {
    let s = scenario("sum-rule");
    let holds = entry(&s, "hypothesis holds").report.clone().unwrap();
    let fails = entry(&s, "hypothesis fails").report.clone().unwrap();
    let fixtures = (holds.hypothesis, holds.conclusion, holds.verdict) == (HypothesisStatus::Holds, ConclusionStatus::Equal, Verdict::Pass)
        && fails.hypothesis == HypothesisStatus::Fails
        && fails.conclusion != ConclusionStatus::Violated;
    let r = run_invariants(3, 100, &|n| n.starts_with("calculus/sum-rule"));
    let (violations, _) = suite_counts(&r);
    let applied: usize = r.checks.iter().map(|e| observation(e, "passed").parse::<usize>().unwrap()).sum();
    outcome(
        fixtures && violations == 0 && s.status == Verdict::Pass,
        format!("fixtures {fixtures}, random {violations} violations, equality under the hypothesis in {applied} cases"),
    )
}

fn composition() -> Outcome {
    let s = scenario("composition");
    let surjective = entry(&s, "surjective").report.clone().unwrap();
    let r = run_invariants(4, 100, &|n| n == "calculus/composition");
    let (violations, instances) = suite_counts(&r);
    let ok = s.status == Verdict::Pass && surjective.conclusion == ConclusionStatus::Equal && violations == 0;
    outcome(ok, format!("surjective equality {:?}, {instances} random maps, {violations} violations", surjective.conclusion))
}

fn restriction_and_shift() -> Outcome {
    let (a, b) = (scenario("restriction"), scenario("shift-rules"));
    let r = run_invariants(5, 100, &|n| n.ends_with("/restriction") || n.ends_with("/shift-rules"));
    let (violations, instances) = suite_counts(&r);
    let ok = a.status == Verdict::Pass && b.status == Verdict::Pass && violations == 0;
    outcome(ok, format!("scenarios pass, {instances} random instances per rule, {violations} violations"))
}

fn monotone() -> Outcome {
    let (parts, t) = timed(|| {
        let r = run_invariants(6, 100, &|n| n.starts_with("monotone/"));
        (r, scenario("monotone-algebra"), scenario("maximality"), scenario("bronsted-rockafellar"))
    });
    let (r, algebra, maximality, br) = parts;
    let (violations, _) = suite_counts(&r);
    let max_entry = entry(&maximality, "maximality").report.clone().unwrap();
    let maximal = max_entry.hypothesis == HypothesisStatus::Holds && max_entry.conclusion == ConclusionStatus::Equal;
    let slack = entry(&br, "slack 1");
    let found = slack.status == Verdict::Pass && observation(slack, "w") == "x" && observation(slack, "slack") == "1";
    let zero = entry(&br, "zero slack");
    let returns_input = observation(zero, "z") == "1" && observation(zero, "w") == "x" && observation(zero, "p") == "0";
    let ok = violations == 0
        && algebra.status == Verdict::Pass
        && maximal
        && found
        && returns_input
        && t < Duration::from_secs(30);
    outcome(ok, format!("random {violations} violations, maximal {maximal}, BR witness {found}, zero slack (y,v,0) {returns_input}, {t:?}"))
}

fn determinism() -> Outcome {
    let (a, t) = timed(|| serde_json::to_string_pretty(&run_property_suite(0, 100)).unwrap());
    let b = serde_json::to_string_pretty(&run_property_suite(0, 100)).unwrap();
    let report: Report = serde_json::from_str(&a).unwrap();
    let ok = a == b && report.status == Verdict::Pass && t < Duration::from_secs(60);
    outcome(ok, format!("byte-identical {}, status {:?}, {} bytes, {t:?}", a == b, report.status, a.len()))
}

#[test]
fn acceptance() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("fig1 separation counterexample", fig1),
        ("fig2 max rule strictness", fig2),
        ("moreau on random instances", moreau),
        ("hull laws", hull_laws),
        ("epi-conjugate identity", epi_conjugate),
        ("sum rule", sum_rule),
        ("composition rule", composition),
        ("restriction and shift rules", restriction_and_shift),
        ("monotone operators", monotone),
        ("suite determinism and budget", determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        println!("criterion {:>2} {}: {} ({})", i + 1, if o.ok { "PASS" } else { "FAIL" }, name, o.detail);
        if !o.ok {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
