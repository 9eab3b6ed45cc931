//! Finite abstract monotone operators, their algebra and maximality, and
//! the checks built on norms and linear functions of one variable.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::calculus::{conjugate, conjugate_sum, is_l_convex, subdifferential};
use crate::domain::{Domain, Point, PointSet};
use crate::error::{Error, Result};
use crate::expr::FunctionExpr;
use crate::family::FunctionFamily;
use crate::function::{ElementaryFunction, Form, TargetFunction, TargetValues};
use crate::numeric::rational::canonical_cmp;
use crate::numeric::{ExtReal, Interval, IntervalSet, PlFunction, Rational};
use crate::report::{ConclusionStatus, HypothesisStatus, RuleReport, Witness};

/// A relation `T ⊆ X × L` between the points of a finite domain and the
/// members of a finite family, stored with the evaluation table
/// `values[x][l] = l(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorGraph {
    point_labels: Vec<String>,
    member_labels: Vec<String>,
    values: Vec<Vec<Rational>>,
    pairs: BTreeSet<(usize, usize)>,
}

impl OperatorGraph {
    /// An operator from the points of `family`'s finite domain to its members.
    pub fn new(family: &FunctionFamily, pairs: BTreeSet<(usize, usize)>) -> Result<OperatorGraph> {
        let domain = family.domain();
        let n = domain.len().ok_or_else(|| Error::Unsupported("operators need a finite domain".into()))?;
        if let Some(&(x, l)) = pairs.iter().find(|&&(x, l)| x >= n || l >= family.len()) {
            return Err(Error::BadIndex(if x >= n { x } else { l }));
        }
        let values = (0..n)
            .map(|x| family.members().iter().map(|m| m.eval(&Point::Grid(x))).collect())
            .collect();
        Ok(OperatorGraph {
            point_labels: (0..n).map(|x| domain.format_point(&Point::Grid(x))).collect(),
            member_labels: family.labels(),
            values,
            pairs,
        })
    }

    pub fn pairs(&self) -> &BTreeSet<(usize, usize)> {
        &self.pairs
    }

    pub fn point_count(&self) -> usize {
        self.point_labels.len()
    }

    pub fn member_count(&self) -> usize {
        self.member_labels.len()
    }

    pub fn point_label(&self, x: usize) -> &str {
        &self.point_labels[x]
    }

    pub fn member_label(&self, l: usize) -> &str {
        &self.member_labels[l]
    }

    /// `l(x)`.
    pub fn value(&self, x: usize, l: usize) -> &Rational {
        &self.values[x][l]
    }

    /// `T(x)`.
    pub fn image(&self, x: usize) -> BTreeSet<usize> {
        self.pairs.range((x, 0)..(x + 1, 0)).map(|&(_, l)| l).collect()
    }

    pub fn contains(&self, x: usize, l: usize) -> bool {
        self.pairs.contains(&(x, l))
    }

    /// `u(x) - u(y) + v(y) - v(x)` for graph elements `(x, u)` and `(y, v)`.
    fn gap(&self, (x, u): (usize, usize), (y, v): (usize, usize)) -> Rational {
        &self.values[x][u] - &self.values[y][u] + &self.values[y][v] - &self.values[x][v]
    }

    fn format_pair(&self, (x, l): (usize, usize)) -> (String, String) {
        (self.point_labels[x].clone(), self.member_labels[l].clone())
    }
}

/// The pairs against which maximality is decided.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CandidateSet {
    /// Every point paired with every member.
    Full,
    Pairs(BTreeSet<(usize, usize)>),
}

impl CandidateSet {
    fn pairs(&self, t: &OperatorGraph) -> BTreeSet<(usize, usize)> {
        match self {
            CandidateSet::Full => {
                (0..t.point_count()).flat_map(|x| (0..t.member_count()).map(move |l| (x, l))).collect()
            }
            CandidateSet::Pairs(p) => p.clone(),
        }
    }

    fn describe(&self) -> String {
        match self {
            CandidateSet::Full => "full grid".into(),
            CandidateSet::Pairs(p) => format!("{} declared pairs", p.len()),
        }
    }

    /// The candidate set of the inverse operator.
    pub fn transposed(&self) -> CandidateSet {
        match self {
            CandidateSet::Full => CandidateSet::Full,
            CandidateSet::Pairs(p) => CandidateSet::Pairs(p.iter().map(|&(x, l)| (l, x)).collect()),
        }
    }
}

/// Checks `u(x) - u(y) + v(y) - v(x) ≥ 0` over all pairs of graph elements.
pub fn is_monotone(t: &OperatorGraph) -> RuleReport {
    let pairs: Vec<(usize, usize)> = t.pairs.iter().copied().collect();
    for (i, &a) in pairs.iter().enumerate() {
        for &b in &pairs[i + 1..] {
            let gap = t.gap(a, b);
            if gap.is_negative() {
                let ((x, u), (y, v)) = (t.format_pair(a), t.format_pair(b));
                return RuleReport::unconditional("monotone", ConclusionStatus::Violated)
                    .with_witness(Witness::new(format!("gap {gap}")).point(x).function(u).point(y).function(v));
            }
        }
    }
    RuleReport::unconditional("monotone", ConclusionStatus::Equal).observe("pairs", pairs.len())
}

/// Looks for a pair of `S` outside `T` that is monotonically related to
/// every element of `T`.
pub fn is_maximal_within(t: &OperatorGraph, s: &CandidateSet) -> Result<RuleReport> {
    let candidates = s.pairs(t);
    if let Some(&p) = t.pairs.iter().find(|p| !candidates.contains(p)) {
        let (x, l) = t.format_pair(p);
        return Err(Error::NotInCandidateSet(format!("({x}, {l})")));
    }
    let mut report = RuleReport::unconditional("maximal", ConclusionStatus::Equal)
        .observe("candidates", s.describe());
    for &c in candidates.difference(&t.pairs) {
        if t.pairs.iter().all(|&g| !t.gap(g, c).is_negative()) {
            let (y, v) = t.format_pair(c);
            report = RuleReport::unconditional("maximal", ConclusionStatus::Violated)
                .observe("candidates", s.describe())
                .with_witness(Witness::new("addable pair").point(y).function(v));
            break;
        }
    }
    Ok(report)
}

/// `T⁻¹(u) = {x : u ∈ T(x)}`, read with points acting on members by
/// evaluation.
pub fn inverse_operator(t: &OperatorGraph) -> OperatorGraph {
    let values = (0..t.member_count())
        .map(|l| (0..t.point_count()).map(|x| t.values[x][l].clone()).collect())
        .collect();
    OperatorGraph {
        point_labels: t.member_labels.clone(),
        member_labels: t.point_labels.clone(),
        values,
        pairs: t.pairs.iter().map(|&(x, l)| (l, x)).collect(),
    }
}

/// `λ₁T₁ + λ₂T₂`, valued in `λ₁L₁ + λ₂L₂` with pointwise-equal members merged.
pub fn combine_operators(
    l1: &Rational,
    t1: &OperatorGraph,
    l2: &Rational,
    t2: &OperatorGraph,
) -> Result<OperatorGraph> {
    if l1.is_negative() || l2.is_negative() {
        return Err(Error::NegativeCoefficient(format!("{l1}, {l2}")));
    }
    if t1.point_labels != t2.point_labels {
        return Err(Error::DomainMismatch("operators on different domains".into()));
    }
    let n = t1.point_count();
    let mut columns: Vec<Vec<Rational>> = Vec::new();
    let mut seen: HashMap<Vec<Rational>, usize> = HashMap::new();
    let mut labels = Vec::new();
    let mut index = vec![vec![0; t2.member_count()]; t1.member_count()];
    for (i, row) in index.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            let column: Vec<Rational> =
                (0..n).map(|x| l1 * &t1.values[x][i] + l2 * &t2.values[x][j]).collect();
            *slot = match seen.get(&column) {
                Some(&k) => k,
                None => {
                    seen.insert(column.clone(), columns.len());
                    columns.push(column);
                    labels.push(format!("{l1}*({}) + {l2}*({})", t1.member_labels[i], t2.member_labels[j]));
                    columns.len() - 1
                }
            };
        }
    }
    let mut pairs = BTreeSet::new();
    for x in 0..n {
        for i in t1.image(x) {
            for j in t2.image(x) {
                pairs.insert((x, index[i][j]));
            }
        }
    }
    Ok(OperatorGraph {
        point_labels: t1.point_labels.clone(),
        member_labels: labels,
        values: (0..n).map(|x| columns.iter().map(|c| c[x].clone()).collect()).collect(),
        pairs,
    })
}

/// The graph of `∂_L f` over the effective domain of `f`.
pub fn subdifferential_operator(f: &TargetFunction, l: &Arc<FunctionFamily>) -> Result<OperatorGraph> {
    let PointSet::Grid(dom) = f.effective_domain() else {
        return Err(Error::Unsupported("operators need a finite domain".into()));
    };
    let mut pairs = BTreeSet::new();
    for x in dom {
        for m in subdifferential(f, l, &Point::Grid(x))?.members.indices() {
            pairs.insert((x, *m));
        }
    }
    OperatorGraph::new(l, pairs)
}

fn require_line_dimension(domain: &Domain) -> Result<()> {
    if domain.dimension() == 1 {
        Ok(())
    } else {
        Err(Error::Unsupported("norm-based checks need a one-dimensional domain".into()))
    }
}

/// The cone `a|· - x|`.
pub fn cone(domain: &Domain, x: &Point, a: &Rational) -> Result<ElementaryFunction> {
    require_line_dimension(domain)?;
    domain.check(x)?;
    let centre = domain.coords(x).remove(0);
    let expr = FunctionExpr::Scale(
        a.clone(),
        Box::new(FunctionExpr::Abs(Box::new(FunctionExpr::Sub(
            Box::new(FunctionExpr::Var(0)),
            Box::new(FunctionExpr::Const(centre)),
        )))),
    );
    ElementaryFunction::lower(&expr, domain)
}

/// `f + a|· - x|` is bounded below on the domain of `f`, and the conjugate
/// of `f + a|· - x|` on `L + Lin` is the infimal convolution of the two
/// conjugates, which is the support-sum convexity of the assumption.
pub fn assumption_check(
    f: &TargetFunction,
    l: &Arc<FunctionFamily>,
    lin: &Arc<FunctionFamily>,
    x: &Point,
    a: &Rational,
) -> Result<RuleReport> {
    let domain = l.domain();
    if !a.is_positive() {
        return Err(Error::InadequateSample(format!("cone scale {a} must be positive")));
    }
    let g = cone(domain, x, a)?;
    if lin.index_of(&Form::zero_on(domain)).is_none() {
        return Err(Error::InadequateSample("the linear sample lacks the zero function".into()));
    }
    if lin.index_of(g.form()).is_none() {
        return Err(Error::InadequateSample(format!("the linear sample lacks the cone {}", g.label())));
    }
    let bounded = f.plus_form(g.form()).infimum() != ExtReal::NegInf;
    let cone_target = TargetFunction::from_form(domain.clone(), g.form());
    let sum = conjugate_sum(f, l, &cone_target, lin)?;
    let holds = bounded && sum.hypothesis;
    let mut report = RuleReport::conditional("assumption", holds, ConclusionStatus::Equal)
        .observe("bounded-below", bounded)
        .observe("support-sum-convex", sum.hypothesis)
        .observe("at", domain.format_point(x))
        .observe("a", a)
        .observe("linear-sample", lin.len());
    if let Some(k) = sum.hypothesis_witness {
        report = report.with_witness(Witness::new("conjugate of the sum is not the convolution").function(sum.sum_family.member(k).label()));
    }
    Ok(report)
}

/// Maximality within the full grid of `∂_{L∪Lin} f` and of `∂_L f`, for
/// an `L`-convex `f` satisfying the assumption at every point.
pub fn maximality_check(
    f: &TargetFunction,
    l: &Arc<FunctionFamily>,
    lin: &Arc<FunctionFamily>,
    a: &Rational,
) -> Result<RuleReport> {
    let domain = l.domain();
    let n = domain.len().ok_or_else(|| Error::Unsupported("operators need a finite domain".into()))?;
    let convex = is_l_convex(f, l)?;
    let mut failing_point = None;
    for i in 0..n {
        let x = Point::Grid(i);
        if assumption_check(f, l, lin, &x, a)?.hypothesis != HypothesisStatus::Holds {
            failing_point = Some(x);
            break;
        }
    }
    let union = Arc::new(l.union(lin)?);
    let extended = is_maximal_within(&subdifferential_operator(f, &union)?, &CandidateSet::Full)?;
    let plain = is_maximal_within(&subdifferential_operator(f, l)?, &CandidateSet::Full)?;
    let maximal = extended.conclusion == ConclusionStatus::Equal && plain.conclusion == ConclusionStatus::Equal;
    let status = if maximal { ConclusionStatus::Equal } else { ConclusionStatus::Violated };
    let mut report = RuleReport::conditional("maximality", convex && failing_point.is_none(), status)
        .observe("candidates", "full grid")
        .observe("abstract-convex", convex)
        .observe("maximal-extended", extended.conclusion == ConclusionStatus::Equal)
        .observe("maximal-plain", plain.conclusion == ConclusionStatus::Equal)
        .observe("a", a);
    if let Some(x) = failing_point {
        report = report.observe("assumption-fails-at", domain.format_point(&x));
    }
    for w in extended.witnesses.into_iter().chain(plain.witnesses) {
        report = report.with_witness(w);
    }
    Ok(report)
}

/// The slope `p` with `d = p·x`, when `d` is linear.
pub fn linear_slope(d: &Form, domain: &Domain) -> Option<Rational> {
    match d {
        Form::Line(p) => (p.is_affine() && p.eval(&Rational::zero()).is_zero()).then(|| p.left_slope().clone()),
        Form::Table(t) => {
            let xs: Vec<Rational> = domain.finite_points()?.points().iter().map(|c| c[0].clone()).collect();
            let slope = match xs.iter().position(|x| !x.is_zero()) {
                Some(i) => &t[i] / &xs[i],
                None => Rational::zero(),
            };
            xs.iter().zip(t).all(|(x, v)| &slope * x == *v).then_some(slope)
        }
    }
}

/// A point `z` near `y` with a subgradient `w ∈ ∂_{L+Lin} f(z)` that
/// differs from `v` by the linear function `p·x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrWitness {
    pub z: Point,
    /// Index into the sum family `L + Lin`.
    pub w: usize,
    pub w_label: String,
    pub p: Rational,
    pub w_in_l: bool,
}

#[derive(Debug, Clone)]
pub struct BrSearch {
    pub slack: Rational,
    pub sum_family: Arc<FunctionFamily>,
    pub witness: Option<BrWitness>,
    pub report: RuleReport,
}

/// The point of a closed interval set nearest to `y`, the smaller one on a tie.
fn nearest(set: &IntervalSet, y: &Rational) -> Option<Rational> {
    set.parts()
        .iter()
        .map(|part| {
            let mut z = y.clone();
            if let ExtReal::Finite(lo) = part.lo() {
                if z < *lo {
                    z = lo.clone();
                }
            }
            if let ExtReal::Finite(hi) = part.hi() {
                if z > *hi {
                    z = hi.clone();
                }
            }
            z
        })
        .min_by(|a, b| (a - y).abs().cmp(&(b - y).abs()).then(a.cmp(b)))
}

/// Exhaustive search for the conclusion of the Brønsted–Rockafellar
/// property: given `f(y) + f*(v) ≤ v(y) + λμ`, a point `z` with
/// `|z - y| ≤ λ` and `w ∈ ∂_{L+Lin} f(z)` with `w - v = p·x`, `|p| ≤ μ`.
/// Candidates are ordered by distance to `y`, then canonically, then by
/// member index.
#[allow(clippy::too_many_arguments)]
pub fn bronsted_rockafellar_search(
    f: &TargetFunction,
    l: &Arc<FunctionFamily>,
    lin: &Arc<FunctionFamily>,
    y: &Point,
    v: usize,
    lambda: &Rational,
    mu: &Rational,
    a: &Rational,
) -> Result<BrSearch> {
    let domain = l.domain().clone();
    require_line_dimension(&domain)?;
    if v >= l.len() {
        return Err(Error::BadIndex(v));
    }
    if !lambda.is_positive() || !mu.is_positive() {
        return Err(Error::InadequateSample("radii must be positive".into()));
    }
    let fy = f.finite_at(y)?;
    let vm = l.member(v);
    let fv = conjugate(f, l)?.values[v].clone();
    let slack = match fv.add_finite(&(&fy - vm.eval(y))) {
        ExtReal::Finite(s) => s,
        other => return Err(Error::SlackViolated(format!("slack {other}"))),
    };
    if slack > lambda * mu {
        return Err(Error::SlackViolated(format!("slack {slack} exceeds {}", lambda * mu)));
    }
    let assumption = assumption_check(f, l, lin, y, a)?;
    if assumption.hypothesis != HypothesisStatus::Holds {
        return Err(Error::AssumptionFails(format!("at {}", domain.format_point(y))));
    }
    let sum = Arc::new(FunctionFamily::sum(l, lin)?);
    let in_l = |w: usize| l.index_of(sum.member(w).form()).is_some();

    let witness = if slack.is_zero() {
        let w = sum.index_of(vm.form()).expect("the linear sample contains zero");
        Some(BrWitness { z: y.clone(), w, w_label: sum.member(w).label().to_string(), p: Rational::zero(), w_in_l: true })
    } else {
        let slopes: Vec<Option<Rational>> = sum
            .members()
            .iter()
            .map(|w| linear_slope(&w.form().sub(vm.form()), &domain).filter(|p| p.abs() <= *mu))
            .collect();
        let mut best: Option<(Rational, Point, usize, Rational)> = None;
        match f.values() {
            TargetValues::Table(_) => {
                let order = domain.finite_points().expect("finite domain").canonical_order();
                let radius = lambda * lambda;
                let mut near: Vec<Point> = order
                    .iter()
                    .map(|&i| Point::Grid(i))
                    .filter(|z| domain.distance_squared(z, y) <= radius && f.eval(z).is_finite())
                    .collect();
                near.sort_by(|a, b| domain.distance_squared(a, y).cmp(&domain.distance_squared(b, y)).then(domain.point_cmp(a, b)));
                'outer: for z in near {
                    let sub = subdifferential(f, &sum, &z)?.members;
                    for &w in sub.indices() {
                        if let Some(p) = &slopes[w] {
                            best = Some((domain.distance_squared(&z, y), z, w, p.clone()));
                            break 'outer;
                        }
                    }
                }
            }
            TargetValues::Line(pl) => {
                let yv = y.real().expect("line point").clone();
                let window = IntervalSet::from_parts(vec![Interval::closed(&yv - lambda, &yv + lambda).expect("ordered window")]);
                for (w, p) in slopes.iter().enumerate() {
                    let Some(p) = p else { continue };
                    let Form::Line(wf) = sum.member(w).form() else { unreachable!("line family") };
                    let contact = pl.sub(wf).argmin_set().intersection(&window);
                    let Some(z) = nearest(&contact, &yv) else { continue };
                    let d = (&z - &yv).abs();
                    let better = match &best {
                        None => true,
                        Some((bd, Point::Real(bz), _, _)) => {
                            d < *bd || (d == *bd && canonical_cmp(&z, bz) == Ordering::Less)
                        }
                        Some(_) => unreachable!("line point"),
                    };
                    if better {
                        best = Some((d, Point::Real(z), w, p.clone()));
                    }
                }
            }
            TargetValues::NegInfinity => unreachable!("f(y) is finite"),
        }
        best.map(|(_, z, w, p)| BrWitness { z, w, w_label: sum.member(w).label().to_string(), p, w_in_l: in_l(w) })
    };

    let status = if witness.is_some() { ConclusionStatus::Equal } else { ConclusionStatus::Violated };
    let mut report = RuleReport::conditional("bronsted-rockafellar", true, status)
        .observe("slack", &slack)
        .observe("lambda", lambda)
        .observe("mu", mu);
    match &witness {
        Some(wt) => {
            report = report
                .observe("z", domain.format_point(&wt.z))
                .observe("w", &wt.w_label)
                .observe("p", &wt.p)
                .observe("w-in-L", wt.w_in_l);
        }
        None => {
            report = report.with_witness(
                Witness::new("no nearby subgradient").point(domain.format_point(y)).function(vm.label()),
            );
        }
    }
    Ok(BrSearch { slack, sum_family: sum, witness, report })
}

/// If every subgradient satisfies `u(x) ≥ 0` on the domain of `f`, `f` is
/// `L`-convex and the assumption holds at 0, then `0 ∈ ∂_L f(0)`.
pub fn zero_subgradient_check(
    f: &TargetFunction,
    l: &Arc<FunctionFamily>,
    lin: &Arc<FunctionFamily>,
    a: &Rational,
) -> Result<RuleReport> {
    let domain = l.domain();
    let origin = domain.origin().ok_or_else(|| Error::NotRepresentable("0 is not a domain point".into()))?;
    let zero = l
        .index_of(&Form::zero_on(domain))
        .ok_or_else(|| Error::InadequateSample("L lacks the zero function".into()))?;

    let mut violation: Option<(Point, usize)> = None;
    match f.values() {
        TargetValues::Table(_) => {
            let order = domain.finite_points().expect("finite domain").canonical_order();
            'scan: for &i in order {
                let x = Point::Grid(i);
                if !f.eval(&x).is_finite() {
                    continue;
                }
                for &u in subdifferential(f, l, &x)?.members.indices() {
                    if l.member(u).eval(&x).is_negative() {
                        violation = Some((x, u));
                        break 'scan;
                    }
                }
            }
        }
        TargetValues::Line(pl) => {
            for (u, m) in l.members().iter().enumerate() {
                let Form::Line(uf) = m.form() else { unreachable!("line family") };
                let negative = PlFunction::zero().strict_above_region(uf);
                let contact = pl.sub(uf).argmin_set().intersection(&negative);
                if let Some(x) = contact.representative() {
                    violation = Some((Point::Real(x), u));
                    break;
                }
            }
        }
        TargetValues::NegInfinity => return Err(Error::OutsideEffectiveDomain("-inf".into())),
    }

    let inequality = violation.is_none();
    let convex = is_l_convex(f, l)?;
    let assumption = assumption_check(f, l, lin, &origin, a)?.hypothesis == HypothesisStatus::Holds;
    let hypothesis = inequality && convex && assumption;
    let conclusion = match f.finite_at(&origin) {
        Ok(_) => subdifferential(f, l, &origin)?.members.contains(zero),
        Err(_) => false,
    };
    let status = if conclusion { ConclusionStatus::Equal } else { ConclusionStatus::Violated };
    let mut report = RuleReport::conditional("zero-subgradient", hypothesis, status)
        .observe("variational-inequality", inequality)
        .observe("abstract-convex", convex)
        .observe("assumption", assumption)
        .observe("zero-subgradient", conclusion);
    if let Some((x, u)) = violation {
        report = report.with_witness(
            Witness::new("negative subgradient value").point(domain.format_point(&x)).function(l.member(u).label()),
        );
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::int;
    use crate::report::Verdict;

    fn grid() -> Arc<Domain> {
        Arc::new(Domain::grid((-2..=2).map(int).collect()).unwrap())
    }

    fn fam(d: &Arc<Domain>, exprs: &[&str]) -> Arc<FunctionFamily> {
        Arc::new(FunctionFamily::parse(d.clone(), exprs).unwrap())
    }

    fn abs_operator() -> OperatorGraph {
        let d = grid();
        let f = TargetFunction::parse("abs(x)", d.clone()).unwrap();
        subdifferential_operator(&f, &fam(&d, &["-x", "0", "x"])).unwrap()
    }

    #[test]
    fn subdifferential_of_abs_is_monotone_and_maximal() {
        let t = abs_operator();
        assert!(t.image(1).contains(&0) && t.image(3).contains(&2));
        assert_eq!(t.image(2).len(), 3);
        assert!(is_monotone(&t).passed());
        let r = is_maximal_within(&t, &CandidateSet::Full).unwrap();
        assert_eq!(r.conclusion, ConclusionStatus::Equal);
        assert_eq!(r.observations["candidates"], "full grid");
    }

    #[test]
    fn monotonicity_violation_has_a_witness() {
        let d = grid();
        let l = fam(&d, &["-x", "0", "x"]);
        assert!(is_monotone(&OperatorGraph::new(&l, BTreeSet::new()).unwrap()).passed());
        let t = OperatorGraph::new(&l, [(2, 2), (3, 0)].into_iter().collect()).unwrap();
        let r = is_monotone(&t);
        assert!(!r.passed());
        assert_eq!(r.witnesses[0].what, "gap -2");
        assert_eq!(r.witnesses[0].points, vec!["0", "1"]);
    }

    #[test]
    fn maximality_relative_to_candidates() {
        let d = grid();
        let l = fam(&d, &["-x", "0", "x"]);
        let single = OperatorGraph::new(&l, [(2, 1)].into_iter().collect()).unwrap();
        let own = CandidateSet::Pairs(single.pairs().clone());
        assert!(is_maximal_within(&single, &own).unwrap().passed());
        let r = is_maximal_within(&single, &CandidateSet::Full).unwrap();
        assert_eq!(r.conclusion, ConclusionStatus::Violated);
        assert_eq!(r.witnesses.len(), 1);
        let t = abs_operator();
        assert!(is_maximal_within(&t, &own).is_err());
    }

    #[test]
    fn inverse_and_combination() {
        let t = abs_operator();
        let inv = inverse_operator(&t);
        assert_eq!(inverse_operator(&inv), t);
        assert!(is_monotone(&inv).passed());
        assert!(is_maximal_within(&inv, &CandidateSet::Full.transposed()).unwrap().passed());
        let both = combine_operators(&int(1), &t, &int(1), &t).unwrap();
        assert!(is_monotone(&both).passed());
        let none = combine_operators(&int(0), &t, &int(0), &t).unwrap();
        assert_eq!(none.member_count(), 1);
        assert_eq!(none.pairs().len(), 5);
        assert!(combine_operators(&int(-1), &t, &int(0), &t).is_err());
    }

    #[test]
    fn maximality_under_the_assumption() {
        let d = grid();
        let f = TargetFunction::parse("abs(x)", d.clone()).unwrap();
        let l = fam(&d, &["-x", "0", "x"]);
        let lin = fam(&d, &["0", "x", "-x", "abs(x+2)", "abs(x+1)", "abs(x)", "abs(x-1)", "abs(x-2)"]);
        let r = maximality_check(&f, &l, &lin, &int(1)).unwrap();
        assert_eq!((r.hypothesis, r.verdict), (HypothesisStatus::Fails, Verdict::NotApplicable));
        assert_eq!(r.observations["assumption-fails-at"], "-2");
        assert_eq!(r.observations["maximal-plain"], "true");

        let d = Arc::new(Domain::grid(vec![int(0), int(1)]).unwrap());
        let f = TargetFunction::parse("x", d.clone()).unwrap();
        let l = fam(&d, &["-x", "0", "x"]);
        let lin = fam(&d, &["0", "x", "-x", "abs(x)", "abs(x-1)"]);
        let r = maximality_check(&f, &l, &lin, &int(1)).unwrap();
        assert_eq!((r.hypothesis, r.conclusion), (HypothesisStatus::Holds, ConclusionStatus::Equal), "{r:?}");
    }

    #[test]
    fn assumption_tails() {
        let d = Arc::new(Domain::RealLine);
        let f = TargetFunction::parse("x", d.clone()).unwrap();
        let l = fam(&d, &["x"]);
        let x = Point::Real(int(0));
        let half = Rational::new(1.into(), 2.into());
        let lin = fam(&d, &["0", "1/2*abs(x)"]);
        let r = assumption_check(&f, &l, &lin, &x, &half).unwrap();
        assert_eq!(r.observations["bounded-below"], "false");
        let lin = fam(&d, &["0", "2*abs(x)"]);
        let r = assumption_check(&f, &l, &lin, &x, &int(2)).unwrap();
        assert_eq!(r.observations["bounded-below"], "true");
        assert!(matches!(assumption_check(&f, &l, &fam(&d, &["0"]), &x, &int(2)), Err(Error::InadequateSample(_))));
    }

    #[test]
    fn linear_slopes() {
        let d = grid();
        let two_x = ElementaryFunction::parse("2*x", &d).unwrap();
        assert_eq!(linear_slope(two_x.form(), &d), Some(int(2)));
        let shifted = ElementaryFunction::parse("x + 1", &d).unwrap();
        assert_eq!(linear_slope(shifted.form(), &d), None);
        let line = ElementaryFunction::parse("-1/2*x", &Domain::RealLine).unwrap();
        assert_eq!(linear_slope(line.form(), &Domain::RealLine), Some(Rational::new((-1).into(), 2.into())));
    }

    #[test]
    fn zero_subgradient_examples() {
        let d = grid();
        let lin = fam(&d, &["0", "abs(x)"]);
        let f = TargetFunction::parse("abs(x)", d.clone()).unwrap();
        let r = zero_subgradient_check(&f, &fam(&d, &["-x", "0", "x"]), &lin, &int(1)).unwrap();
        assert_eq!((r.hypothesis, r.conclusion), (HypothesisStatus::Holds, ConclusionStatus::Equal));
        let g = TargetFunction::parse("x", d.clone()).unwrap();
        let r = zero_subgradient_check(&g, &fam(&d, &["0", "x"]), &lin, &int(1)).unwrap();
        assert_eq!(r.hypothesis, HypothesisStatus::Fails);
        assert_eq!(r.witnesses[0].points, vec!["-1"]);
        assert!(zero_subgradient_check(&g, &fam(&d, &["x"]), &lin, &int(1)).is_err());
    }

    #[test]
    fn zero_slack_returns_the_input() {
        let d = grid();
        let l = fam(&d, &["-x", "0", "x"]);
        let lin = fam(&d, &["0", "abs(x)"]);
        let f = TargetFunction::parse("abs(x)", d.clone()).unwrap();
        let s = bronsted_rockafellar_search(&f, &l, &lin, &Point::Grid(2), 1, &int(1), &int(1), &int(1)).unwrap();
        assert!(s.slack.is_zero());
        let w = s.witness.unwrap();
        assert_eq!((w.z, w.w_label.as_str(), w.p), (Point::Grid(2), "0", int(0)));
    }

    #[test]
    fn slack_precondition() {
        let d = grid();
        let l = fam(&d, &["-x", "0", "x"]);
        let lin = fam(&d, &["0", "abs(x - 2)"]);
        let f = TargetFunction::parse("abs(x)", d.clone()).unwrap();
        let half = Rational::new(1.into(), 2.into());
        let r = bronsted_rockafellar_search(&f, &l, &lin, &Point::Grid(4), 1, &half, &half, &int(1));
        assert!(matches!(r, Err(Error::SlackViolated(_))));
    }
}
