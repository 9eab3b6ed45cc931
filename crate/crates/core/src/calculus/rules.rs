//! Restriction, shift, max and composition rules for subdifferentials.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::domain::{Point, PointSet};
use crate::error::{Error, Result};
use crate::family::{FunctionFamily, MemberSet, PointMap};
use crate::function::{ElementaryFunction, Form, TargetFunction, TargetValues};
use crate::hull::{co_set, envelope};
use crate::numeric::int;
use crate::report::{inclusion_status, ConclusionStatus, RuleReport, Witness};

use super::subdiff::subdifferential;

fn forms(set: &MemberSet) -> BTreeSet<Form> {
    set.members().map(|m| m.form().clone()).collect()
}

/// `∂_{L₂} f(x) ∩ L₁ = ∂_{L₁} f(x)` for `L₁ ⊆ L₂`.
pub fn restriction_check(
    f: &TargetFunction,
    l1: &Arc<FunctionFamily>,
    l2: &Arc<FunctionFamily>,
    x: &Point,
) -> Result<RuleReport> {
    let embed = l1
        .embedding(l2)
        .filter(|_| l1.domain() == l2.domain())
        .ok_or_else(|| Error::NotSubfamily("the smaller family is not contained in the larger".into()))?;
    let big = subdifferential(f, l2, x)?.members;
    let small = subdifferential(f, l1, x)?.members;
    let restricted: BTreeSet<usize> = (0..l1.len()).filter(|&i| big.contains(embed[i])).collect();
    let mut report = RuleReport::unconditional("restriction", ConclusionStatus::Equal);
    if restricted != *small.indices() {
        for i in restricted.symmetric_difference(small.indices()) {
            report = report.with_witness(Witness::new("membership differs").function(l1.member(*i).label()));
        }
        report = report.fail();
    }
    Ok(report.observe("subgradients", small.len()))
}

/// The vertical shift, pinning and horizontal shift identities:
/// `∂_{L-u}(f-u)(x) = ∂_L f(x) - u`, `∂_{L_y} f(x) = {l - l(y)}` and
/// `∂_{L^y} f^y(x - y) = {l(· + y) : l ∈ ∂_L f(x)}`.
pub fn shift_rule_check(
    f: &TargetFunction,
    l: &Arc<FunctionFamily>,
    u: &ElementaryFunction,
    y: &Point,
    x: &Point,
) -> Result<RuleReport> {
    let domain = l.domain();
    domain.check(y)?;
    let base = subdifferential(f, l, x)?.members;

    let shifted = Arc::new(l.shift_by(u));
    let f_u = f.plus_form(&u.form().scale(&int(-1)));
    let vertical_lhs = forms(&subdifferential(&f_u, &shifted, x)?.members);
    let vertical_rhs: BTreeSet<Form> = base.members().map(|m| m.form().sub(u.form())).collect();

    let pinned = Arc::new(l.pin(y)?);
    let pinning_lhs = forms(&subdifferential(f, &pinned, x)?.members);
    let pinning_rhs: BTreeSet<Form> =
        base.members().map(|m| m.form().add_constant(&-m.eval(y))).collect();

    let shift = domain.coords(y);
    let translated = Arc::new(l.translate(&shift)?);
    let f_y = f.translate(&shift)?;
    let x_moved = match x {
        Point::Real(v) => Point::Real(v - &shift[0]),
        Point::Grid(i) => Point::Grid(*i),
    };
    let horizontal_lhs = forms(&subdifferential(&f_y, &translated, &x_moved)?.members);
    let horizontal_rhs: BTreeSet<Form> = base.members().map(|m| m.form().translate(&shift)).collect();

    let mut report = RuleReport::unconditional("shift-rules", ConclusionStatus::Equal);
    for (name, lhs, rhs) in [
        ("vertical", vertical_lhs, vertical_rhs),
        ("pinning", pinning_lhs, pinning_rhs),
        ("horizontal", horizontal_lhs, horizontal_rhs),
    ] {
        let equal = lhs == rhs;
        report.set_observation(name, if equal { "equal" } else { "violated" });
        if !equal {
            let mut w = Witness::new(format!("{name} identity fails"));
            for g in lhs.symmetric_difference(&rhs) {
                w = w.function(g.render());
            }
            report = report.fail().with_witness(w);
        }
    }
    Ok(report.observe("subgradients", base.len()))
}

/// For `f = max G` and the active set `A(x)`, checks
/// `∂_{L_x} f(x) ⊇ co_{L_x} {g - g(x) : g ∈ A(x)}`. When the inclusion is
/// proper, each extra subgradient `u` is reported with a point where it
/// exceeds every pinned active function.
pub fn max_rule_verify(g: &Arc<FunctionFamily>, l: &Arc<FunctionFamily>, x: &Point) -> Result<RuleReport> {
    if g.is_empty() {
        return Err(Error::EmptyEnvelope);
    }
    if !g.is_subfamily_of(l) {
        return Err(Error::NotSubfamily("the generating family is not contained in L".into()));
    }
    let domain = l.domain();
    let f = envelope(&MemberSet::all(g));
    let fx = f.finite_at(x)?;
    let active: Vec<&ElementaryFunction> = g.members().iter().filter(|m| m.eval(x) == fx).collect();
    let pinned = Arc::new(l.pin(x)?);
    let pinned_active: BTreeSet<usize> = active
        .iter()
        .map(|m| pinned.index_of(&m.form().add_constant(&-&fx)).expect("pinned active member"))
        .collect();
    let hull = co_set(&MemberSet::new(pinned.clone(), pinned_active)?);
    let sub = subdifferential(&f, &pinned, x)?.members;
    let status = inclusion_status(hull.indices(), sub.indices());
    let mut report = RuleReport::unconditional("max-rule", status)
        .observe("active", active.iter().map(|m| m.label().to_string()).collect::<Vec<_>>().join(", "))
        .observe("hull", hull.to_string())
        .observe("subdifferential", sub.to_string());
    let top = envelope(&hull);
    for u in sub.difference(&hull).members() {
        let mut w = Witness::new("subgradient outside the pinned hull").function(u.label());
        if let Some(y) = top.strict_below(u.form()).representative(domain) {
            w = w.point(domain.format_point(&y));
        }
        report = report.with_witness(w);
    }
    for u in hull.difference(&sub).members() {
        report = report.with_witness(Witness::new("hull member is not a subgradient").function(u.label()));
    }
    Ok(report)
}

/// `(∂_L f(u(x))) ∘ u ⊆ ∂_{L∘u}(f∘u)(x)`, with equality checked when the
/// image of `u` covers the effective domain of `f`.
pub fn composition_subdiff_verify(
    f: &TargetFunction,
    l: &Arc<FunctionFamily>,
    u: &PointMap,
    x: &Point,
) -> Result<RuleReport> {
    f.check_domain(u.target())?;
    let TargetValues::Table(values) = f.values() else {
        return Err(Error::Unsupported("composition needs a table-valued function".into()));
    };
    let source = u.source();
    source.check(x)?;
    let n = source.len().expect("finite source");
    let pulled = (0..n).map(|i| values[u.apply(&Point::Grid(i)).grid_index().unwrap()].clone()).collect();
    let f_u = TargetFunction::new(source.clone(), TargetValues::Table(pulled))?;
    let (composed, index) = l.compose(u)?;
    let composed = Arc::new(composed);
    let outer = subdifferential(f, l, &u.apply(x))?.members;
    let lhs: BTreeSet<usize> = outer.indices().iter().map(|&i| index[i]).collect();
    let rhs = subdifferential(&f_u, &composed, x)?.members;
    let covers = image_covers_domain(u, f);
    let status = inclusion_status(&lhs, rhs.indices());
    let mut report = RuleReport::conditional("composition", covers, status);
    if status == ConclusionStatus::Violated || (covers && status != ConclusionStatus::Equal) {
        report = report.reject();
    }
    for k in rhs.indices().difference(&lhs) {
        report = report.with_witness(Witness::new("composed subgradient not from an outer one").function(composed.member(*k).label()));
    }
    for k in lhs.difference(rhs.indices()) {
        report = report.with_witness(Witness::new("outer subgradient lost under composition").function(composed.member(*k).label()));
    }
    Ok(report.observe("image-covers-domain", covers))
}

fn image_covers_domain(u: &PointMap, f: &TargetFunction) -> bool {
    match f.effective_domain() {
        PointSet::Grid(dom) => dom.is_subset(&u.image()),
        PointSet::Line(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::Domain;
    use crate::report::Verdict;

    fn fam(d: &Arc<Domain>, exprs: &[&str]) -> Arc<FunctionFamily> {
        Arc::new(FunctionFamily::parse(d.clone(), exprs).unwrap())
    }

    fn grid() -> Arc<Domain> {
        Arc::new(Domain::grid((-2..=2).map(int).collect()).unwrap())
    }

    #[test]
    fn restriction() {
        let d = grid();
        let f = TargetFunction::parse("abs(x)", d.clone()).unwrap();
        let l2 = fam(&d, &["-x", "0", "x", "max(0, x)"]);
        let l1 = fam(&d, &["x", "max(0, x)"]);
        assert!(restriction_check(&f, &l1, &l2, &Point::Grid(3)).unwrap().passed());
        let empty = Arc::new(FunctionFamily::empty(d.clone()));
        assert!(restriction_check(&f, &empty, &l2, &Point::Grid(3)).unwrap().passed());
        let other = fam(&d, &["2*x"]);
        assert!(matches!(restriction_check(&f, &other, &l2, &Point::Grid(3)), Err(Error::NotSubfamily(_))));
    }

    #[test]
    fn shift_rules_on_both_backends() {
        let d = Arc::new(Domain::RealLine);
        let l = fam(&d, &["x", "-x", "max(0, x)", "min(0, x)", "0"]);
        let f = TargetFunction::parse("abs(x)", d.clone()).unwrap();
        let u = ElementaryFunction::parse("max(0, x)", &d).unwrap();
        let r = shift_rule_check(&f, &l, &u, &Point::Real(int(0)), &Point::Real(int(1))).unwrap();
        assert!(r.passed(), "{r:?}");
        let r = shift_rule_check(&f, &l, &u, &Point::Real(int(3)), &Point::Real(int(-1))).unwrap();
        assert!(r.passed(), "{r:?}");
        let g = grid();
        let lg = fam(&g, &["x", "-x", "abs(x)", "0"]);
        let fg = TargetFunction::parse("abs(x - 1)", g.clone()).unwrap();
        let ug = ElementaryFunction::parse("x", &g).unwrap();
        let r = shift_rule_check(&fg, &lg, &ug, &Point::Grid(4), &Point::Grid(1)).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn pinned_fig2_subdifferential() {
        let d = Arc::new(Domain::RealLine);
        let l = fam(&d, &["x", "-x", "max(0, x)", "min(0, x)", "0"]);
        let f = TargetFunction::parse("abs(x)", d.clone()).unwrap();
        let pinned = Arc::new(l.pin(&Point::Real(int(0))).unwrap());
        let s = subdifferential(&f, &pinned, &Point::Real(int(1))).unwrap();
        assert_eq!(s.members.labels(), vec!["x", "max(0, x)"]);
    }

    #[test]
    fn max_rule_strict_on_fig2() {
        let d = Arc::new(Domain::RealLine);
        let l = fam(&d, &["x", "-x", "max(0, x)", "min(0, x)", "0"]);
        let g = fam(&d, &["x", "-x"]);
        let r = max_rule_verify(&g, &l, &Point::Real(int(1))).unwrap();
        assert_eq!(r.conclusion, ConclusionStatus::StrictInclusion);
        assert_eq!(r.verdict, Verdict::Pass);
        let w = &r.witnesses[0];
        assert_eq!(w.functions, vec!["max(0, x) - 1"]);
        assert_eq!(w.points, vec!["-1"]);
    }

    #[test]
    fn max_rule_classical_and_singleton() {
        let d = grid();
        let l = fam(&d, &["-x", "0", "x"]);
        let g = fam(&d, &["x", "-x"]);
        let r = max_rule_verify(&g, &l, &Point::Grid(2)).unwrap();
        assert_eq!(r.conclusion, ConclusionStatus::Equal);
        let single = fam(&d, &["x"]);
        assert!(max_rule_verify(&single, &l, &Point::Grid(0)).unwrap().passed());
    }

    #[test]
    fn composition() {
        let x = Arc::new(Domain::grid((-1..=1).map(int).collect()).unwrap());
        let l = fam(&x, &["-x", "0", "x"]);
        let f = TargetFunction::parse("abs(x)", x.clone()).unwrap();
        let id = PointMap::identity(x.clone()).unwrap();
        let r = composition_subdiff_verify(&f, &l, &id, &Point::Grid(1)).unwrap();
        assert_eq!((r.conclusion, r.verdict), (ConclusionStatus::Equal, Verdict::Pass));
        // Oracle: u maps both source points to 0; every composed member is
        // the constant 0 and f∘u is constant, so both sides are {0}.
        let y = Arc::new(Domain::grid(vec![int(5), int(6)]).unwrap());
        let constant = PointMap::new(y, x.clone(), vec![1, 1]).unwrap();
        let r = composition_subdiff_verify(&f, &l, &constant, &Point::Grid(0)).unwrap();
        assert_eq!(r.observations["image-covers-domain"], "false");
        assert!(r.passed());
        // Oracle: u(y) = -1 for y ∈ {-1, 0}, u(1) = 1, so f∘u = [1, 1, 1].
        // At y = -1, ∂f(-1) = {-x} composes to [1, 1, -1]; the composed
        // subdifferential is {[1, 1, -1], 0}.
        let hop = PointMap::new(x.clone(), x.clone(), vec![0, 0, 2]).unwrap();
        let r = composition_subdiff_verify(&f, &l, &hop, &Point::Grid(0)).unwrap();
        assert_eq!(r.conclusion, ConclusionStatus::StrictInclusion);
        assert_eq!(r.witnesses.len(), 1);
    }
}
