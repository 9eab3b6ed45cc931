//! The randomized property suite.
//!
//! Instance `i` draws from a ChaCha8 stream selected by `i`, so each
//! instance depends only on the seed and its index. Instances run in
//! parallel; results are aggregated in index order.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use abscon_core::calculus::{
    abstract_hull, composition_subdiff_verify, conjugate, conjugate_sum_check, epi_conjugate_check, is_l_convex,
    max_rule_verify, moreau_verify, normal_subdiff_check, normal_sum_check, pinned_subdiff_hull_closed,
    restriction_check, shift_rule_check, sum_rule_verify, support_sum_identity,
};
use abscon_core::domain::{Domain, Point, PointSet};
use abscon_core::expr::FunctionExpr;
use abscon_core::family::{FunctionFamily, MemberSet, PointMap};
use abscon_core::function::{ElementaryFunction, TargetFunction, TargetValues};
use abscon_core::hull::{
    co_function, co_set, envelope, is_hull_closed, point_set_hull, separate_point_from_set, separate_sets, support_set,
};
use abscon_core::monotone::{
    combine_operators, inverse_operator, is_maximal_within, is_monotone, maximality_check, subdifferential_operator,
    zero_subgradient_check, CandidateSet,
};
use abscon_core::numeric::{int, ratio, ExtReal, Rational};
use num_traits::Signed;
use abscon_core::report::{ConclusionStatus, RuleReport, Verdict, Witness};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::report::{overall, CheckEntry, Report};

/// Limits on generated data.
const MAX_POINTS: usize = 51;
const MAX_MEMBERS: usize = 40;
/// Witnesses kept per invariant.
const KEPT_WITNESSES: usize = 3;

#[derive(Debug, Clone)]
enum Outcome {
    Pass,
    NotApplicable,
    Fail(String),
}

type Outcomes = Vec<(&'static str, Outcome)>;

/// Which invariants to run.
pub type Filter = dyn Fn(&str) -> bool + Sync;

/// Collects outcomes of the selected invariants; the rest are not run.
struct Sink<'a> {
    keep: &'a Filter,
    items: Outcomes,
}

impl<'a> Sink<'a> {
    fn new(keep: &'a Filter) -> Sink<'a> {
        Sink { keep, items: Vec::new() }
    }

    fn push(&mut self, name: &'static str, run: impl FnOnce() -> Outcome) {
        if (self.keep)(name) {
            self.items.push((name, run()));
        }
    }
}

fn from_report(r: abscon_core::Result<RuleReport>) -> Outcome {
    match r {
        Ok(r) => match r.verdict {
            Verdict::Pass => Outcome::Pass,
            Verdict::NotApplicable => Outcome::NotApplicable,
            Verdict::Fail => Outcome::Fail(describe(&r)),
        },
        Err(e) => Outcome::Fail(format!("error: {e}")),
    }
}

fn describe(r: &RuleReport) -> String {
    let mut parts = vec![format!("{} {:?}/{:?}", r.rule, r.hypothesis, r.conclusion)];
    for w in &r.witnesses {
        parts.push(format!("{} [{}] at [{}]", w.what, w.functions.join(", "), w.points.join(", ")));
    }
    parts.join("; ")
}

fn check(holds: bool, witness: impl FnOnce() -> String) -> Outcome {
    if holds {
        Outcome::Pass
    } else {
        Outcome::Fail(witness())
    }
}

/// Runs `f`, turning a core error into a failure.
fn guarded(f: impl FnOnce() -> abscon_core::Result<Outcome>) -> Outcome {
    f().unwrap_or_else(|e| Outcome::Fail(format!("error: {e}")))
}

struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    fn rational(&mut self, max_num: i64, max_den: i64) -> Rational {
        let n = self.rng.gen_range(-max_num..=max_num);
        let d = self.rng.gen_range(1..=max_den);
        ratio(n, d)
    }

    fn coeff(&mut self) -> Rational {
        self.rational(6, 3)
    }

    /// `a·k(x - c) + b` for a kink shape `k`, or an affine function.
    fn member_expr(&mut self) -> FunctionExpr {
        use FunctionExpr::*;
        let x = || Box::new(Var(0));
        let c = self.rational(4, 2);
        let moved = Box::new(Sub(x(), Box::new(Const(c))));
        let shape = match self.rng.gen_range(0..5) {
            0 => Var(0),
            1 => Abs(moved),
            2 => Max(Box::new(Const(int(0))), moved),
            3 => Min(Box::new(Const(int(0))), moved),
            _ => Const(int(0)),
        };
        let mut a = self.coeff();
        while a == int(0) {
            a = self.coeff();
        }
        let b = self.coeff();
        Add(Box::new(Scale(a, Box::new(shape))), Box::new(Const(b)))
    }

    fn family(&mut self, domain: &Arc<Domain>, extra: &[&str], random: usize) -> Arc<FunctionFamily> {
        let mut members: Vec<ElementaryFunction> =
            extra.iter().map(|t| ElementaryFunction::parse(t, domain).expect("fixed member")).collect();
        while members.len() < extra.len() + random {
            let e = self.member_expr();
            members.push(ElementaryFunction::lower(&e, domain).expect("generated member"));
        }
        members.truncate(MAX_MEMBERS);
        Arc::new(FunctionFamily::new(domain.clone(), members))
    }

    fn subset(&mut self, n: usize, nonempty: bool) -> BTreeSet<usize> {
        let mut s: BTreeSet<usize> = (0..n).filter(|_| self.rng.gen_bool(0.4)).collect();
        if nonempty && s.is_empty() && n > 0 {
            s.insert(self.rng.gen_range(0..n));
        }
        s
    }

    fn members(&mut self, fam: &Arc<FunctionFamily>, nonempty: bool) -> MemberSet {
        let s = self.subset(fam.len(), nonempty);
        MemberSet::new(fam.clone(), s).expect("indices in range")
    }

    /// A table with some `+∞` entries and at least one finite one.
    fn table(&mut self, domain: &Arc<Domain>, n: usize) -> TargetFunction {
        let mut values: Vec<ExtReal> = (0..n)
            .map(|_| if self.rng.gen_bool(0.85) { ExtReal::Finite(self.rational(8, 2)) } else { ExtReal::PosInf })
            .collect();
        if values.iter().all(|v| !v.is_finite()) {
            values[0] = ExtReal::Finite(int(0));
        }
        TargetFunction::new(domain.clone(), TargetValues::Table(values)).expect("table fits the grid")
    }

    fn finite_point(&mut self, f: &TargetFunction) -> Point {
        let PointSet::Grid(dom) = f.effective_domain() else { unreachable!("grid function") };
        let dom: Vec<usize> = dom.into_iter().collect();
        Point::Grid(*dom.choose(&mut self.rng).expect("nonempty domain"))
    }
}

fn grid_instance(g: &mut Gen, index: usize, out: &mut Sink) {
    let big = index % 10 == 9;
    let n = if big { MAX_POINTS } else { g.rng.gen_range(3..=15) };
    let den = *[1i64, 2, 3].choose(&mut g.rng).unwrap();
    let points: Vec<Rational> = (0..n).map(|k| ratio(k as i64 - (n / 2) as i64, den)).collect();
    let domain = Arc::new(Domain::grid(points).expect("distinct points"));
    let pm: &[&str] = if g.rng.gen_bool(0.5) { &["0", "x", "-x"] } else { &["0"] };
    let random = if big { MAX_MEMBERS - pm.len() } else { g.rng.gen_range(2..=6) };
    let l = g.family(&domain, pm, random);
    let extra = g.rng.gen_range(1..=4);
    let l2 = g.family(&domain, &["0"], extra);
    let f = g.table(&domain, n);
    let conv = envelope(&g.members(&l, true));
    let conv2 = envelope(&g.members(&l2, true));
    let x = g.finite_point(&f);
    let xc = g.finite_point(&conv);
    let yc = g.finite_point(&conv);

    // Hulls.
    out.push("hull/support-set", || guarded(|| {
        let s = support_set(&l, &f)?;
        let co = co_function(&l, &f)?;
        let below = s.members().all(|m| f.dominates(m.form())) && f.dominates_target(&co)?;
        let idem = co_function(&l, &co)?.pointwise_eq(&co);
        Ok(check(below && idem, || format!("support set {s} of {}", f.render())))
    }));
    let s = g.members(&l, false);
    let t = s.union(&g.members(&l, false));
    let other = g.members(&l, false);
    out.push("hull/co-set", || {
        let cs = co_set(&s);
        let laws = s.is_subset(&cs) && co_set(&cs) == cs && cs.is_subset(&co_set(&t));
        let meet = is_hull_closed(&co_set(&s).intersection(&co_set(&other)));
        check(laws && meet, || format!("set {s}, superset {t}, other {other}"))
    });
    let c = PointSet::Grid(g.subset(n, false));
    let c_more = match &c {
        PointSet::Grid(a) => PointSet::Grid(a.union(&g.subset(n, false)).copied().collect()),
        PointSet::Line(_) => unreachable!(),
    };
    out.push("hull/point-set-hull", || guarded(|| {
        let h = point_set_hull(&l, &c)?;
        let laws = c.is_subset(&h) && point_set_hull(&l, &h)? == h && h.is_subset(&point_set_hull(&l, &c_more)?);
        Ok(check(laws, || format!("points {}", c.format(&domain))))
    }));
    let level = g.rational(8, 2);
    out.push("hull/sublevel", || guarded(|| {
        let s = abstract_hull(&f, &l)?.sublevel(&level);
        Ok(check(point_set_hull(&l, &s)? == s, || format!("level {level} of {}", f.render())))
    }));
    let (a, b) = (co_set(&g.members(&l, false)), co_set(&g.members(&l, false)));
    out.push("hull/separation", || guarded(|| {
        let sep = separate_sets(&a, &b)?;
        let top = envelope(&a);
        let valid = match &sep.witness {
            Some(p) => b.members().all(|m| top.eval(p) < ExtReal::Finite(m.eval(p))),
            None => sep.common.is_empty(),
        };
        let mut points_ok = true;
        for i in 0..l.len() {
            if a.contains(i) {
                continue;
            }
            let p = separate_point_from_set(&a, i)?;
            points_ok &= top.eval(&p) < ExtReal::Finite(l.member(i).eval(&p));
        }
        Ok(check(valid && points_ok, || format!("sets {a} and {b}")))
    }));
    let set = g.members(&l, true);
    out.push("hull/support-duality", || guarded(|| {
        let table = conjugate(&envelope(&set), &l)?;
        let ok = set.indices().iter().all(|&i| table.values[i] <= ExtReal::Finite(int(0)));
        Ok(check(ok, || format!("envelope of {set}")))
    }));

    // Calculus.
    out.push("calculus/moreau", || from_report(moreau_verify(&f, &l, &x).and_then(|r| {
        let r2 = moreau_verify(&conv, &l, &yc)?;
        Ok(if r.passed() { r2 } else { r })
    })));
    let samples: Vec<(usize, Rational)> = (0..3).map(|_| (g.rng.gen_range(0..l.len()), g.rational(8, 2))).collect();
    out.push("calculus/epi-conjugate", || from_report(epi_conjugate_check(&f, &l, &samples)));
    let offset = g.rational(8, 3).abs();
    out.push("calculus/normal-subdifferential", || from_report(normal_subdiff_check(&f, &l, &x, &[int(0), int(1), offset])));
    let l1 = Arc::new(l.subfamily(&g.subset(l.len(), false)));
    out.push("calculus/restriction", || from_report(restriction_check(&f, &l1, &l, &x)));
    let u = l.member(g.rng.gen_range(0..l.len())).clone();
    let y = Point::Grid(g.rng.gen_range(0..n));
    out.push("calculus/shift-rules", || from_report(shift_rule_check(&f, &l, &u, &y, &x)));
    out.push("calculus/sum-rule", || from_report(sum_rule_verify(&f, &l, &conv2, &l2, &x)));
    out.push("calculus/conjugate-sum", || from_report(conjugate_sum_check(&f, &l, &conv2, &l2)));
    out.push("calculus/support-sum", || from_report(support_sum_identity(&conv, &l, &conv2, &l2)));
    out.push("calculus/sum-rule-convex", || from_report(sum_rule_verify(&conv, &l, &conv2, &l2, &xc)));
    out.push("calculus/sum-convexity", || guarded(|| {
        let sum_family = Arc::new(FunctionFamily::sum(&l, &l2)?);
        let total = conv.plus(&conv2)?;
        Ok(check(is_l_convex(&total, &sum_family)?, || format!("{} + {}", conv.render(), conv2.render())))
    }));
    let mut fork = Gen { rng: ChaCha8Rng::from_rng(&mut g.rng).expect("seeded") };
    out.push("calculus/composition", || guarded(|| composition(&mut fork, &domain, &f, &l)));
    let (cs, ds) = (g.subset(n, false), g.subset(n, false));
    let xi = x.grid_index().unwrap();
    let (cs, ds): (BTreeSet<usize>, BTreeSet<usize>) =
        (cs.into_iter().chain([xi]).collect(), ds.into_iter().chain([xi]).collect());
    out.push("calculus/normal-sum", || from_report(normal_sum_check(&PointSet::Grid(cs), &l, &PointSet::Grid(ds), &l2, &x)));
    let active = Arc::new(l.subfamily(g.members(&l, true).indices()));
    out.push("calculus/max-rule", || from_report(max_rule_verify(&active, &l, &x)));
    out.push("calculus/pinned-hull-closed", || guarded(|| {
        Ok(check(pinned_subdiff_hull_closed(&conv, &l, &xc)?, || format!("{} at {}", conv.render(), domain.format_point(&xc))))
    }));

    // Monotone operators.
    out.push("monotone/subdifferential", || guarded(|| {
        let t = subdifferential_operator(&f, &l)?;
        let forward = is_monotone(&t);
        let inverse = is_monotone(&inverse_operator(&t));
        Ok(if !forward.passed() { Outcome::Fail(describe(&forward)) } else { from_report(Ok(inverse)) })
    }));
    out.push("monotone/inverse-maximality", || guarded(|| {
        let t = subdifferential_operator(&conv, &l)?;
        let m = is_maximal_within(&t, &CandidateSet::Full)?;
        let mi = is_maximal_within(&inverse_operator(&t), &CandidateSet::Full)?;
        Ok(check(m.conclusion == mi.conclusion, || format!("{} and its inverse differ", describe(&m))))
    }));
    let (w1, w2) = (g.rational(4, 2).abs(), g.rational(4, 2).abs());
    out.push("monotone/combination", || guarded(|| {
        let t = combine_operators(&w1, &subdifferential_operator(&f, &l)?, &w2, &subdifferential_operator(&conv, &l)?)?;
        Ok(from_report(Ok(is_monotone(&t))))
    }));
    small_grid_instance(g, out);
}

/// A map from a small grid into the domain; surjective onto the domain
/// about a third of the time.
fn composition(g: &mut Gen, domain: &Arc<Domain>, f: &TargetFunction, l: &Arc<FunctionFamily>) -> abscon_core::Result<Outcome> {
    let n = domain.len().expect("grid");
    let mut images: Vec<usize> = if g.rng.gen_bool(1.0 / 3.0) {
        let mut all: Vec<usize> = (0..n).collect();
        all.extend((0..g.rng.gen_range(0..3)).map(|_| g.rng.gen_range(0..n)));
        all
    } else {
        (0..g.rng.gen_range(2..=6)).map(|_| g.rng.gen_range(0..n)).collect()
    };
    images.shuffle(&mut g.rng);
    let source = Arc::new(Domain::grid((0..images.len()).map(|k| int(k as i64)).collect())?);
    let usable: Vec<usize> = (0..images.len()).filter(|&k| f.eval(&Point::Grid(images[k])).is_finite()).collect();
    let Some(&y) = usable.choose(&mut g.rng) else {
        return Ok(Outcome::NotApplicable);
    };
    let map = PointMap::new(source, domain.clone(), images)?;
    let r = composition_subdiff_verify(f, l, &map, &Point::Grid(y))?;
    let covers = r.observations.get("image-covers-domain").map(String::as_str) == Some("true");
    if covers && r.conclusion != ConclusionStatus::Equal {
        return Ok(Outcome::Fail(format!("surjective map gives {}", describe(&r))));
    }
    Ok(from_report(Ok(r)))
}

/// Maximality and the zero-subgradient property on a grid of two to four
/// points around 0, with the linear sample holding every cone.
fn small_grid_instance(g: &mut Gen, out: &mut Sink) {
    let mut pts: BTreeSet<i64> = [0].into_iter().collect();
    let size = g.rng.gen_range(2..=4);
    while pts.len() < size {
        pts.insert(g.rng.gen_range(-2..=2));
    }
    let domain = Arc::new(Domain::grid(pts.iter().map(|&p| int(p)).collect()).expect("distinct"));
    let extra = g.rng.gen_range(0..=2);
    let l = g.family(&domain, &["0", "x", "-x"], extra);
    let mut lin_exprs: Vec<String> = vec!["0".into(), "x".into(), "-x".into()];
    lin_exprs.extend(pts.iter().map(|p| format!("abs(x - ({p}))")));
    let lin = Arc::new(FunctionFamily::parse(domain.clone(), &lin_exprs).expect("cones parse"));
    let f = envelope(&g.members(&l, true));
    out.push("monotone/maximality", || from_report(maximality_check(&f, &l, &lin, &int(1))));
    out.push("monotone/zero-subgradient", || from_report(zero_subgradient_check(&f, &l, &lin, &int(1))));
}

fn line_instance(g: &mut Gen, out: &mut Sink) {
    use FunctionExpr::*;
    let domain = Arc::new(Domain::RealLine);
    let extra = g.rng.gen_range(1..=5);
    let l = g.family(&domain, &["0", "x", "-x"], extra);
    let pieces = g.rng.gen_range(1..=4);
    let mut e = g.member_expr();
    for _ in 1..pieces {
        e = Max(Box::new(e), Box::new(g.member_expr()));
    }
    let f = TargetFunction::from_form(domain.clone(), ElementaryFunction::lower(&e, &domain).expect("generated").form());
    let xs: Vec<Point> = (0..3).map(|_| Point::Real(g.rational(8, 4))).collect();
    out.push("line/moreau", || from_report((|| {
        for x in &xs {
            let r = moreau_verify(&f, &l, x)?;
            if !r.passed() {
                return Ok(r);
            }
        }
        moreau_verify(&f, &l, &xs[0])
    })()));
    let samples: Vec<(usize, Rational)> = (0..3).map(|_| (g.rng.gen_range(0..l.len()), g.rational(8, 2))).collect();
    out.push("line/epi-conjugate", || from_report(epi_conjugate_check(&f, &l, &samples)));
    out.push("line/hull", || guarded(|| {
        let co = co_function(&l, &f)?;
        let ok = f.dominates_target(&co)? && co_function(&l, &co)?.pointwise_eq(&co);
        Ok(check(ok, || format!("hull of {}", f.render())))
    }));
    let (a, b) = (co_set(&g.members(&l, false)), co_set(&g.members(&l, false)));
    out.push("line/separation", || guarded(|| {
        let sep = separate_sets(&a, &b)?;
        let top = envelope(&a);
        let ok = match &sep.witness {
            Some(p) => b.members().all(|m| top.eval(p) < ExtReal::Finite(m.eval(p))),
            None => sep.common.is_empty(),
        };
        Ok(check(ok, || format!("sets {a} and {b}")))
    }));
    let u = l.member(g.rng.gen_range(0..l.len())).clone();
    let y = Point::Real(g.rational(4, 2));
    out.push("line/shift-rules", || from_report(shift_rule_check(&f, &l, &u, &y, &xs[1])));
    let active = Arc::new(l.subfamily(g.members(&l, true).indices()));
    out.push("line/max-rule", || from_report(max_rule_verify(&active, &l, &xs[2])));
    let l1 = Arc::new(l.subfamily(&g.subset(l.len(), false)));
    out.push("line/restriction", || from_report(restriction_check(&f, &l1, &l, &xs[0])));
}

fn instance(seed: u64, index: usize, keep: &Filter) -> Outcomes {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let mut g = Gen { rng };
    let mut out = Sink::new(keep);
    grid_instance(&mut g, index, &mut out);
    line_instance(&mut g, &mut out);
    out.items
}

#[derive(Default)]
struct Tally {
    instances: usize,
    passed: usize,
    not_applicable: usize,
    violations: usize,
    witnesses: Vec<Witness>,
}

/// Runs `count` random instances through every invariant. Each invariant
/// becomes one entry of the report, failing with its first violations as
/// witnesses.
pub fn run_property_suite(seed: u64, count: usize) -> Report {
    run_invariants(seed, count, &|_| true)
}

/// Invariant names, grouped by prefix: `hull/`, `calculus/`, `monotone/`
/// on grids and `line/` on the real line.
pub fn run_invariants(seed: u64, count: usize, keep: &Filter) -> Report {
    let results: Vec<Outcomes> = (0..count).into_par_iter().map(|i| instance(seed, i, keep)).collect();
    let mut tallies: BTreeMap<&'static str, Tally> = BTreeMap::new();
    for (i, outcomes) in results.into_iter().enumerate() {
        for (name, outcome) in outcomes {
            let t = tallies.entry(name).or_default();
            t.instances += 1;
            match outcome {
                Outcome::Pass => t.passed += 1,
                Outcome::NotApplicable => t.not_applicable += 1,
                Outcome::Fail(w) => {
                    t.violations += 1;
                    if t.witnesses.len() < KEPT_WITNESSES {
                        t.witnesses.push(Witness::new(w).point(format!("instance {i}")));
                    }
                }
            }
        }
    }
    let checks: Vec<CheckEntry> = tallies
        .into_iter()
        .map(|(name, t)| {
            let status = if t.violations > 0 { ConclusionStatus::Violated } else { ConclusionStatus::Equal };
            let mut r = RuleReport::unconditional(name, status)
                .observe("instances", t.instances)
                .observe("passed", t.passed)
                .observe("not-applicable", t.not_applicable)
                .observe("violations", t.violations);
            r.witnesses = t.witnesses;
            CheckEntry {
                name: name.to_string(),
                check: "property".into(),
                status: r.verdict,
                report: Some(r),
                error: None,
                expected: None,
                mismatches: Vec::new(),
            }
        })
        .collect();
    Report { scenario: format!("suite seed={seed} count={count}"), status: overall(&checks), checks, elapsed_ms: None }
}
