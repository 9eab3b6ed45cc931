//! The checks an instance file can request, and how each one runs.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use abscon_core::calculus::{
    composition_subdiff_verify, conjugate_sum_check, epi_conjugate_check, is_l_convex, max_rule_verify,
    moreau_verify, normal_subdiff_check, normal_sum_check, pinned_subdiff_hull_closed, restriction_check,
    shift_rule_check, subdifferential, sum_rule_verify, support_sum_identity,
};
use abscon_core::domain::{Domain, Point, PointSet};
use abscon_core::family::{FunctionFamily, MemberSet, PointMap};
use abscon_core::function::{ElementaryFunction, TargetFunction};
use abscon_core::hull::{co_set, is_abstract_convex, point_set_hull, separate_sets};
use abscon_core::monotone::{
    assumption_check, bronsted_rockafellar_search, combine_operators, inverse_operator, is_maximal_within,
    is_monotone, maximality_check, subdifferential_operator, zero_subgradient_check, CandidateSet, OperatorGraph,
};
use abscon_core::numeric::{int, Rational};
use abscon_core::report::{ConclusionStatus, HypothesisStatus, RuleReport, Verdict, Witness};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};
use crate::instance::{locate, member_index, Instance, Num, PointSpec, Resolved};

/// One requested check, with an optional name and expected outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(flatten)]
    pub kind: CheckKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<Expect>,
}

/// Points default to the `x` parameter (`y` for the Brønsted–Rockafellar
/// search), and `a`, `lambda`, `mu` to the parameters of the same name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "kebab-case")]
pub enum CheckKind {
    Separation { first: String, second: String },
    AbstractConvex { function: String, family: String },
    HullClosed { set: String },
    PointSetHull { family: String, set: String },
    Subdifferential { function: String, family: String, #[serde(default)] at: Option<PointSpec> },
    Moreau { function: String, family: String, #[serde(default)] at: Vec<PointSpec> },
    EpiConjugate { function: String, family: String, #[serde(default)] samples: Vec<(String, Num)> },
    NormalSubdifferential {
        function: String,
        family: String,
        #[serde(default)]
        at: Option<PointSpec>,
        #[serde(default)]
        offsets: Vec<Num>,
    },
    MaxRule { active: String, family: String, #[serde(default)] at: Option<PointSpec> },
    Restriction { function: String, small: String, large: String, #[serde(default)] at: Option<PointSpec> },
    ShiftRules {
        function: String,
        family: String,
        shift: String,
        base: PointSpec,
        #[serde(default)]
        at: Option<PointSpec>,
    },
    SumRule { f1: String, l1: String, f2: String, l2: String, #[serde(default)] at: Option<PointSpec> },
    ConjugateSum { f1: String, l1: String, f2: String, l2: String },
    SupportSum { f1: String, h1: String, f2: String, h2: String },
    Composition { function: String, family: String, map: String, at: PointSpec },
    NormalSum { first: String, l1: String, second: String, l2: String, #[serde(default)] at: Option<PointSpec> },
    PinnedHullClosed { function: String, family: String, #[serde(default)] at: Option<PointSpec> },
    /// The subdifferential operator and its inverse are monotone.
    Monotone { function: String, family: String },
    OperatorMonotone { family: String, pairs: Vec<(PointSpec, String)> },
    /// Maximality of an operator, given by a function's subdifferential or
    /// by pairs, within the full grid or the declared candidates; the
    /// inverse is checked within the transposed candidates.
    MaximalWithin {
        family: String,
        #[serde(default)]
        function: Option<String>,
        #[serde(default)]
        pairs: Option<Vec<(PointSpec, String)>>,
        #[serde(default)]
        candidates: Option<Vec<(PointSpec, String)>>,
    },
    Combination { f1: String, l1: String, f2: String, l2: String, lambda1: Num, lambda2: Num },
    Assumption { function: String, family: String, lin: String, #[serde(default)] at: Option<PointSpec>, #[serde(default)] a: Option<Num> },
    Maximality { function: String, family: String, lin: String, #[serde(default)] a: Option<Num> },
    BronstedRockafellar {
        function: String,
        family: String,
        lin: String,
        member: String,
        #[serde(default)]
        at: Option<PointSpec>,
        #[serde(default)]
        lambda: Option<Num>,
        #[serde(default)]
        mu: Option<Num>,
        #[serde(default)]
        a: Option<Num>,
    },
    ZeroSubgradient { function: String, family: String, lin: String, #[serde(default)] a: Option<Num> },
}

/// What a check is expected to produce. Unset fields are not compared.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expect {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hypothesis: Option<HypothesisStatus>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conclusion: Option<ConclusionStatus>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub observations: BTreeMap<String, String>,
    /// Each must appear among the reported witnesses.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Witness>,
    /// The check must fail with an error containing this text.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Expect {
    /// Differences between the expectation and a report.
    pub fn mismatches(&self, r: &RuleReport) -> Vec<String> {
        let mut out = Vec::new();
        if let Some(e) = &self.error {
            out.push(format!("expected an error containing `{e}`"));
        }
        if self.verdict.is_some_and(|v| v != r.verdict) {
            out.push(format!("verdict {:?}, expected {:?}", r.verdict, self.verdict.unwrap()));
        }
        if self.hypothesis.is_some_and(|h| h != r.hypothesis) {
            out.push(format!("hypothesis {:?}, expected {:?}", r.hypothesis, self.hypothesis.unwrap()));
        }
        if self.conclusion.is_some_and(|c| c != r.conclusion) {
            out.push(format!("conclusion {:?}, expected {:?}", r.conclusion, self.conclusion.unwrap()));
        }
        for (k, v) in &self.observations {
            match r.observations.get(k) {
                Some(got) if got == v => {}
                got => out.push(format!("observation `{k}` is {got:?}, expected `{v}`")),
            }
        }
        for w in &self.witnesses {
            if !r.witnesses.contains(w) {
                out.push(format!("missing witness {w:?}"));
            }
        }
        out
    }
}

impl CheckKind {
    pub fn tag(&self) -> &'static str {
        match self {
            CheckKind::Separation { .. } => "separation",
            CheckKind::AbstractConvex { .. } => "abstract-convex",
            CheckKind::HullClosed { .. } => "hull-closed",
            CheckKind::PointSetHull { .. } => "point-set-hull",
            CheckKind::Subdifferential { .. } => "subdifferential",
            CheckKind::Moreau { .. } => "moreau",
            CheckKind::EpiConjugate { .. } => "epi-conjugate",
            CheckKind::NormalSubdifferential { .. } => "normal-subdifferential",
            CheckKind::MaxRule { .. } => "max-rule",
            CheckKind::Restriction { .. } => "restriction",
            CheckKind::ShiftRules { .. } => "shift-rules",
            CheckKind::SumRule { .. } => "sum-rule",
            CheckKind::ConjugateSum { .. } => "conjugate-sum",
            CheckKind::SupportSum { .. } => "support-sum",
            CheckKind::Composition { .. } => "composition",
            CheckKind::NormalSum { .. } => "normal-sum",
            CheckKind::PinnedHullClosed { .. } => "pinned-hull-closed",
            CheckKind::Monotone { .. } => "monotone",
            CheckKind::OperatorMonotone { .. } => "operator-monotone",
            CheckKind::MaximalWithin { .. } => "maximal-within",
            CheckKind::Combination { .. } => "combination",
            CheckKind::Assumption { .. } => "assumption",
            CheckKind::Maximality { .. } => "maximality",
            CheckKind::BronstedRockafellar { .. } => "bronsted-rockafellar",
            CheckKind::ZeroSubgradient { .. } => "zero-subgradient",
        }
    }

    /// Named references, by kind.
    fn references(&self) -> Vec<(&'static str, &str)> {
        use CheckKind::*;
        let (fam, fun, mset, pset, map) = ("family", "function", "member set", "point set", "map");
        match self {
            Separation { first, second } => vec![(mset, first), (mset, second)],
            AbstractConvex { function, family }
            | Subdifferential { function, family, .. }
            | Moreau { function, family, .. }
            | EpiConjugate { function, family, .. }
            | NormalSubdifferential { function, family, .. }
            | ShiftRules { function, family, .. }
            | PinnedHullClosed { function, family, .. }
            | Monotone { function, family } => vec![(fun, function), (fam, family)],
            HullClosed { set } => vec![(mset, set)],
            PointSetHull { family, set } => vec![(fam, family), (pset, set)],
            MaxRule { active, family, .. } => vec![(fam, active), (fam, family)],
            Restriction { function, small, large, .. } => vec![(fun, function), (fam, small), (fam, large)],
            SumRule { f1, l1, f2, l2, .. } | ConjugateSum { f1, l1, f2, l2 } | Combination { f1, l1, f2, l2, .. } => {
                vec![(fun, f1), (fam, l1), (fun, f2), (fam, l2)]
            }
            SupportSum { f1, h1, f2, h2 } => vec![(fun, f1), (fam, h1), (fun, f2), (fam, h2)],
            Composition { function, family, map: m, .. } => vec![(fun, function), (fam, family), (map, m)],
            NormalSum { first, l1, second, l2, .. } => vec![(pset, first), (fam, l1), (pset, second), (fam, l2)],
            OperatorMonotone { family, .. } => vec![(fam, family)],
            MaximalWithin { family, function, .. } => {
                let mut v = vec![(fam, family.as_str())];
                v.extend(function.as_deref().map(|f| (fun, f)));
                v
            }
            Assumption { function, family, lin, .. }
            | Maximality { function, family, lin, .. }
            | BronstedRockafellar { function, family, lin, .. }
            | ZeroSubgradient { function, family, lin, .. } => vec![(fun, function), (fam, family), (fam, lin)],
        }
    }
}

impl CheckSpec {
    pub fn label(&self) -> String {
        self.name.clone().unwrap_or_else(|| self.kind.tag().to_string())
    }

    /// Every named reference resolves.
    pub(crate) fn validate(&self, r: &Resolved) -> Result<()> {
        for (kind, name) in self.kind.references() {
            let found = match kind {
                "family" => r.families.contains_key(name),
                "function" => r.functions.contains_key(name),
                "member set" => r.member_sets.contains_key(name),
                "point set" => r.point_sets.contains_key(name),
                _ => r.maps.contains_key(name),
            };
            if !found {
                return Err(CliError::Unresolved { kind, name: name.to_string() });
            }
        }
        Ok(())
    }
}

/// Lookups into a resolved instance.
struct Ctx<'a> {
    inst: &'a Instance,
}

impl Ctx<'_> {
    fn family(&self, name: &str) -> Result<Arc<FunctionFamily>> {
        self.inst.families.get(name).cloned().ok_or_else(|| CliError::Unresolved { kind: "family", name: name.into() })
    }

    fn function(&self, name: &str) -> Result<&TargetFunction> {
        self.inst.functions.get(name).ok_or_else(|| CliError::Unresolved { kind: "function", name: name.into() })
    }

    fn member_set(&self, name: &str) -> Result<&MemberSet> {
        self.inst.member_sets.get(name).ok_or_else(|| CliError::Unresolved { kind: "member set", name: name.into() })
    }

    fn point_set(&self, name: &str) -> Result<&PointSet> {
        self.inst.point_sets.get(name).ok_or_else(|| CliError::Unresolved { kind: "point set", name: name.into() })
    }

    fn map(&self, name: &str) -> Result<&PointMap> {
        self.inst.maps.get(name).ok_or_else(|| CliError::Unresolved { kind: "map", name: name.into() })
    }

    fn domain(&self) -> &Arc<Domain> {
        &self.inst.domain
    }

    fn point(&self, p: &PointSpec) -> Result<Point> {
        locate(self.domain(), p)
    }

    /// The given point, else the named parameter.
    fn point_or(&self, p: &Option<PointSpec>, param: &'static str) -> Result<Point> {
        let fallback = match param {
            "y" => &self.inst.parameters.y,
            _ => &self.inst.parameters.x,
        };
        match p.as_ref().or(fallback.as_ref()) {
            Some(p) => self.point(p),
            None => Err(CliError::Unresolved { kind: "parameter", name: param.into() }),
        }
    }

    fn num_or(&self, v: &Option<Num>, param: &'static str) -> Result<Rational> {
        let p = &self.inst.parameters;
        let fallback = match param {
            "lambda" => &p.lambda,
            "mu" => &p.mu,
            _ => &p.a,
        };
        v.as_ref()
            .or(fallback.as_ref())
            .map(|n| n.0.clone())
            .ok_or_else(|| CliError::Unresolved { kind: "parameter", name: param.into() })
    }

    fn pairs(&self, family: &FunctionFamily, pairs: &[(PointSpec, String)]) -> Result<BTreeSet<(usize, usize)>> {
        pairs
            .iter()
            .map(|(p, m)| {
                let x = self.point(p)?.grid_index().ok_or_else(|| CliError::Invalid("operators need a finite domain".into()))?;
                Ok((x, member_index(family, m)?))
            })
            .collect()
    }
}

/// Joins reports of one statement at several points.
fn merge(rule: &str, parts: Vec<(String, RuleReport)>) -> RuleReport {
    let conclusion = parts.iter().map(|(_, r)| r.conclusion).max_by_key(|c| match c {
        ConclusionStatus::Equal => 0,
        ConclusionStatus::StrictInclusion => 1,
        ConclusionStatus::Violated => 2,
    });
    let verdict = parts.iter().map(|(_, r)| r.verdict).max().unwrap_or(Verdict::Pass);
    let hypothesis = if parts.iter().all(|(_, r)| r.hypothesis == HypothesisStatus::NotChecked) {
        HypothesisStatus::NotChecked
    } else if parts.iter().all(|(_, r)| r.hypothesis == HypothesisStatus::Holds) {
        HypothesisStatus::Holds
    } else {
        HypothesisStatus::Fails
    };
    let mut out = RuleReport::unconditional(rule, conclusion.unwrap_or(ConclusionStatus::Equal));
    out.verdict = verdict;
    out.hypothesis = hypothesis;
    for (at, r) in parts {
        for (k, v) in r.observations {
            out.observations.insert(format!("{at}: {k}"), v);
        }
        out.witnesses.extend(r.witnesses.into_iter().map(|mut w| {
            w.what = format!("{at}: {}", w.what);
            w
        }));
    }
    out
}

fn core<T>(context: &str, r: abscon_core::Result<T>) -> Result<T> {
    r.map_err(CliError::core(context))
}

fn bool_report(rule: &str, holds: bool) -> RuleReport {
    RuleReport::unconditional(rule, if holds { ConclusionStatus::Equal } else { ConclusionStatus::Violated })
}

fn regions(sep: &abscon_core::hull::SetSeparation, family: &FunctionFamily) -> String {
    let domain = family.domain();
    sep.regions
        .iter()
        .map(|(i, r)| format!("{}: {}", family.member(*i).label(), r.format(domain)))
        .collect::<Vec<_>>()
        .join("; ")
}

/// Runs one check.
pub fn run_check(inst: &Instance, spec: &CheckSpec) -> Result<RuleReport> {
    let c = Ctx { inst };
    let tag = spec.kind.tag();
    let r = match &spec.kind {
        CheckKind::Separation { first, second } => {
            let (a, b) = (c.member_set(first)?, c.member_set(second)?);
            let forward = core(tag, separate_sets(a, b))?;
            let backward = core(tag, separate_sets(b, a))?;
            let domain = c.domain();
            let shown = |w: &Option<Point>| w.as_ref().map_or("none".to_string(), |p| domain.format_point(p));
            RuleReport::unconditional(tag, ConclusionStatus::Equal)
                .observe("first-hull-closed", forward.a_hull_closed)
                .observe("second-hull-closed", forward.b_hull_closed)
                .observe("disjoint", forward.disjoint)
                .observe("second-over-first", regions(&forward, a.family()))
                .observe("first-over-second", regions(&backward, a.family()))
                .observe("witness", shown(&forward.witness))
                .observe("reverse-witness", shown(&backward.witness))
        }
        CheckKind::AbstractConvex { function, family } => {
            let (f, l) = (c.function(function)?, c.family(family)?);
            let explicit = core(tag, is_abstract_convex(&l, f))?;
            let shifted = core(tag, is_l_convex(f, &l))?;
            RuleReport::unconditional(tag, ConclusionStatus::Equal)
                .observe("explicit-family", explicit)
                .observe("vertical-shifts", shifted)
        }
        CheckKind::HullClosed { set } => {
            let s = c.member_set(set)?;
            let hull = co_set(s);
            RuleReport::unconditional(tag, ConclusionStatus::Equal)
                .observe("hull-closed", hull == *s)
                .observe("hull", &hull)
        }
        CheckKind::PointSetHull { family, set } => {
            let (l, y) = (c.family(family)?, c.point_set(set)?);
            let hull = core(tag, point_set_hull(&l, y))?;
            let r = bool_report(tag, y.is_subset(&hull) && core(tag, point_set_hull(&l, &hull))? == hull);
            r.observe("hull", hull.format(c.domain())).observe("closed", hull == *y)
        }
        CheckKind::Subdifferential { function, family, at } => {
            let (f, l) = (c.function(function)?, c.family(family)?);
            let x = c.point_or(at, "x")?;
            let s = core(tag, subdifferential(f, &l, &x))?;
            RuleReport::unconditional(tag, ConclusionStatus::Equal)
                .observe("at", c.domain().format_point(&x))
                .observe("members", &s.members)
        }
        CheckKind::Moreau { function, family, at } => {
            let (f, l) = (c.function(function)?, c.family(family)?);
            let points: Vec<Point> = if !at.is_empty() {
                at.iter().map(|p| c.point(p)).collect::<Result<_>>()?
            } else if let PointSet::Grid(dom) = f.effective_domain() {
                dom.into_iter().map(Point::Grid).collect()
            } else {
                vec![c.point_or(&None, "x")?]
            };
            let parts = points
                .iter()
                .map(|x| Ok((c.domain().format_point(x), core(tag, moreau_verify(f, &l, x))?)))
                .collect::<Result<Vec<_>>>()?;
            merge(tag, parts)
        }
        CheckKind::EpiConjugate { function, family, samples } => {
            let (f, l) = (c.function(function)?, c.family(family)?);
            let mut all = Vec::new();
            for (m, v) in samples {
                all.push((member_index(&l, m)?, v.0.clone()));
            }
            for v in &inst.parameters.c_samples {
                all.extend((0..l.len()).map(|i| (i, v.0.clone())));
            }
            core(tag, epi_conjugate_check(f, &l, &all))?
        }
        CheckKind::NormalSubdifferential { function, family, at, offsets } => {
            let (f, l) = (c.function(function)?, c.family(family)?);
            let x = c.point_or(at, "x")?;
            let offsets: Vec<Rational> =
                if offsets.is_empty() { vec![int(1)] } else { offsets.iter().map(|n| n.0.clone()).collect() };
            core(tag, normal_subdiff_check(f, &l, &x, &offsets))?
        }
        CheckKind::MaxRule { active, family, at } => {
            let x = c.point_or(at, "x")?;
            core(tag, max_rule_verify(&c.family(active)?, &c.family(family)?, &x))?
        }
        CheckKind::Restriction { function, small, large, at } => {
            let x = c.point_or(at, "x")?;
            core(tag, restriction_check(c.function(function)?, &c.family(small)?, &c.family(large)?, &x))?
        }
        CheckKind::ShiftRules { function, family, shift, base, at } => {
            let x = c.point_or(at, "x")?;
            let y = c.point(base)?;
            let u = core(tag, ElementaryFunction::parse(shift, c.domain()))?;
            core(tag, shift_rule_check(c.function(function)?, &c.family(family)?, &u, &y, &x))?
        }
        CheckKind::SumRule { f1, l1, f2, l2, at } => {
            let x = c.point_or(at, "x")?;
            core(tag, sum_rule_verify(c.function(f1)?, &c.family(l1)?, c.function(f2)?, &c.family(l2)?, &x))?
        }
        CheckKind::ConjugateSum { f1, l1, f2, l2 } => {
            core(tag, conjugate_sum_check(c.function(f1)?, &c.family(l1)?, c.function(f2)?, &c.family(l2)?))?
        }
        CheckKind::SupportSum { f1, h1, f2, h2 } => {
            core(tag, support_sum_identity(c.function(f1)?, &c.family(h1)?, c.function(f2)?, &c.family(h2)?))?
        }
        CheckKind::Composition { function, family, map, at } => {
            let u = c.map(map)?;
            let x = locate(u.source(), at)?;
            core(tag, composition_subdiff_verify(c.function(function)?, &c.family(family)?, u, &x))?
        }
        CheckKind::NormalSum { first, l1, second, l2, at } => {
            let x = c.point_or(at, "x")?;
            core(tag, normal_sum_check(c.point_set(first)?, &c.family(l1)?, c.point_set(second)?, &c.family(l2)?, &x))?
        }
        CheckKind::PinnedHullClosed { function, family, at } => {
            let x = c.point_or(at, "x")?;
            let (f, l) = (c.function(function)?, c.family(family)?);
            let convex = core(tag, is_l_convex(f, &l))?;
            let closed = core(tag, pinned_subdiff_hull_closed(f, &l, &x))?;
            let status = if closed { ConclusionStatus::Equal } else { ConclusionStatus::Violated };
            RuleReport::conditional(tag, convex, status).observe("hull-closed", closed)
        }
        CheckKind::Monotone { function, family } => {
            let t = core(tag, subdifferential_operator(c.function(function)?, &c.family(family)?))?;
            let forward = is_monotone(&t).observe("pairs", t.pairs().len());
            let inverse = is_monotone(&inverse_operator(&t));
            merge(tag, vec![("operator".into(), forward), ("inverse".into(), inverse)])
        }
        CheckKind::OperatorMonotone { family, pairs } => {
            let l = c.family(family)?;
            let t = core(tag, OperatorGraph::new(&l, c.pairs(&l, pairs)?))?;
            is_monotone(&t)
        }
        CheckKind::MaximalWithin { family, function, pairs, candidates } => {
            let l = c.family(family)?;
            let t = match (function, pairs) {
                (Some(f), None) => core(tag, subdifferential_operator(c.function(f)?, &l))?,
                (None, Some(p)) => core(tag, OperatorGraph::new(&l, c.pairs(&l, p)?))?,
                _ => return Err(CliError::Invalid("maximal-within needs exactly one of `function` and `pairs`".into())),
            };
            let s = match candidates {
                None => CandidateSet::Full,
                Some(p) => CandidateSet::Pairs(c.pairs(&l, p)?),
            };
            let forward = core(tag, is_maximal_within(&t, &s))?;
            let inverse = core(tag, is_maximal_within(&inverse_operator(&t), &s.transposed()))?;
            merge(tag, vec![("operator".into(), forward), ("inverse".into(), inverse)])
        }
        CheckKind::Combination { f1, l1, f2, l2, lambda1, lambda2 } => {
            let t1 = core(tag, subdifferential_operator(c.function(f1)?, &c.family(l1)?))?;
            let t2 = core(tag, subdifferential_operator(c.function(f2)?, &c.family(l2)?))?;
            let t = core(tag, combine_operators(&lambda1.0, &t1, &lambda2.0, &t2))?;
            is_monotone(&t).observe("pairs", t.pairs().len())
        }
        CheckKind::Assumption { function, family, lin, at, a } => {
            let x = c.point_or(at, "x")?;
            let a = c.num_or(a, "a")?;
            core(tag, assumption_check(c.function(function)?, &c.family(family)?, &c.family(lin)?, &x, &a))?
        }
        CheckKind::Maximality { function, family, lin, a } => {
            let a = c.num_or(a, "a")?;
            core(tag, maximality_check(c.function(function)?, &c.family(family)?, &c.family(lin)?, &a))?
        }
        CheckKind::BronstedRockafellar { function, family, lin, member, at, lambda, mu, a } => {
            let l = c.family(family)?;
            let y = c.point_or(at, "y")?;
            let v = member_index(&l, member)?;
            let (lambda, mu, a) = (c.num_or(lambda, "lambda")?, c.num_or(mu, "mu")?, c.num_or(a, "a")?);
            core(tag, bronsted_rockafellar_search(c.function(function)?, &l, &c.family(lin)?, &y, v, &lambda, &mu, &a))?.report
        }
        CheckKind::ZeroSubgradient { function, family, lin, a } => {
            let a = c.num_or(a, "a")?;
            core(tag, zero_subgradient_check(c.function(function)?, &c.family(family)?, &c.family(lin)?, &a))?
        }
    };
    Ok(r)
}
