//! Abstract subdifferentials and normal sets.

use std::sync::Arc;

use crate::domain::{Point, PointSet};
use crate::error::{Error, Result};
use crate::family::{FunctionFamily, MemberSet};
use crate::function::{Form, TargetFunction, TargetValues};
use crate::hull::is_hull_closed;
use crate::numeric::{ExtReal, Rational};
use crate::report::{ConclusionStatus, RuleReport, Witness};

/// `∂_L f(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubdifferentialSet {
    pub members: MemberSet,
    pub at: Point,
}

/// Members `l` with `f(y) ≥ f(x) + l(y) - l(x)` for every `y`. Errors when
/// `f(x)` is not finite.
pub fn subdifferential(f: &TargetFunction, l: &Arc<FunctionFamily>, x: &Point) -> Result<SubdifferentialSet> {
    f.check_domain(l.domain())?;
    let fx = f.finite_at(x)?;
    let members = MemberSet::from_filter(l, |m| f.dominates(&m.form().add_constant(&(&fx - m.eval(x)))));
    Ok(SubdifferentialSet { members, at: x.clone() })
}

/// `N_L(x, C)`: members maximized over `C` at `x`; empty when `x ∉ C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalSet {
    pub members: MemberSet,
    pub at: Point,
    pub set: PointSet,
}

pub fn normal_set(l: &Arc<FunctionFamily>, x: &Point, c: &PointSet) -> Result<NormalSet> {
    let domain = l.domain();
    domain.check(x)?;
    let members = if !c.contains(x) {
        MemberSet::none(l)
    } else {
        match c {
            PointSet::Grid(ys) => MemberSet::from_filter(l, |m| {
                let lx = m.eval(x);
                ys.iter().all(|&y| m.eval(&Point::Grid(y)) <= lx)
            }),
            PointSet::Line(ys) => MemberSet::from_filter(l, |m| {
                let Form::Line(p) = m.form() else { unreachable!("line family") };
                p.supremum_on(ys) <= ExtReal::Finite(m.eval(x))
            }),
        }
    };
    Ok(NormalSet { members, at: x.clone(), set: c.clone() })
}

/// Compares `∂_L f(x)` with the members `l` for which `(l, -1)` is normal
/// to the epigraph of `f` at `(x, f(x))`. The epigraph is sampled at
/// heights `f(y) + δ` for `δ = 0` and each offset.
pub fn normal_subdiff_check(
    f: &TargetFunction,
    l: &Arc<FunctionFamily>,
    x: &Point,
    offsets: &[Rational],
) -> Result<RuleReport> {
    let fx = f.finite_at(x)?;
    if let Some(bad) = offsets.iter().find(|d| **d < Rational::default()) {
        return Err(Error::InadequateSample(format!("negative epigraph offset {bad}")));
    }
    let sub = subdifferential(f, l, x)?;
    let domain = l.domain();
    let mut deltas = vec![Rational::default()];
    deltas.extend(offsets.iter().cloned());
    let mut report = RuleReport::unconditional("normal-subdifferential", ConclusionStatus::Equal);
    let mut normal_count = 0;
    for (i, m) in l.members().iter().enumerate() {
        let bound = m.eval(x) - &fx;
        // The first sampled epigraph point (y, f(y) + δ) breaking l(y) - λ ≤ l(x) - f(x).
        let violation = match f.values() {
            TargetValues::Table(t) => deltas.iter().find_map(|d| {
                t.iter().enumerate().find_map(|(y, v)| {
                    let fy = v.finite()?;
                    (m.eval(&Point::Grid(y)) - fy - d > bound).then_some(Point::Grid(y))
                })
            }),
            _ => {
                let above = f.strict_below(&m.form().add_constant(&-&bound));
                above.representative(domain)
            }
        };
        let normal = violation.is_none();
        if normal {
            normal_count += 1;
        }
        match (normal, sub.members.contains(i), violation) {
            (true, true, _) => {}
            (false, false, Some(y)) => {
                report = report.with_witness(
                    Witness::new("epigraph constraint violated").function(m.label()).point(domain.format_point(&y)),
                );
            }
            _ => {
                report = report
                    .fail()
                    .with_witness(Witness::new("normal and subgradient membership disagree").function(m.label()));
            }
        }
    }
    Ok(report.observe("normals", normal_count).observe("subgradients", sub.members.len()))
}

/// The pinned subdifferential `∂_{L_x} f(x)` is hull-closed in `L_x`.
pub fn pinned_subdiff_hull_closed(f: &TargetFunction, l: &FunctionFamily, x: &Point) -> Result<bool> {
    let pinned = Arc::new(l.pin(x)?);
    Ok(is_hull_closed(&subdifferential(f, &pinned, x)?.members))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::Domain;
    use crate::numeric::int;

    fn fam(d: &Arc<Domain>, exprs: &[&str]) -> Arc<FunctionFamily> {
        Arc::new(FunctionFamily::parse(d.clone(), exprs).unwrap())
    }

    #[test]
    fn subgradients_of_abs() {
        let d = Arc::new(Domain::RealLine);
        let l = fam(&d, &["x", "-x", "max(0, x)", "min(0, x)", "0"]);
        let f = TargetFunction::parse("abs(x)", d.clone()).unwrap();
        let s = subdifferential(&f, &l, &Point::Real(int(1))).unwrap();
        assert_eq!(s.members.labels(), vec!["x", "max(0, x)"]);
        let s = subdifferential(&f, &l, &Point::Real(int(0))).unwrap();
        assert_eq!(s.members.len(), 5);
    }

    #[test]
    fn outside_the_domain() {
        let g = Arc::new(Domain::grid(vec![int(0), int(1)]).unwrap());
        let f = TargetFunction::indicator(g.clone(), &[0].into_iter().collect()).unwrap();
        let l = fam(&g, &["x"]);
        assert!(matches!(subdifferential(&f, &l, &Point::Grid(1)), Err(Error::OutsideEffectiveDomain(_))));
        assert_eq!(subdifferential(&f, &l, &Point::Grid(0)).unwrap().members.len(), 1);
    }

    #[test]
    fn normal_sets() {
        let g = Arc::new(Domain::grid((-2..=2).map(int).collect()).unwrap());
        let l = fam(&g, &["-x", "0", "x"]);
        let c = PointSet::Grid([1, 2, 3].into_iter().collect());
        // Oracle: at x = 1 only 0 and x attain their maximum over [-1, 1].
        assert_eq!(normal_set(&l, &Point::Grid(3), &c).unwrap().members.labels(), vec!["0", "x"]);
        assert!(normal_set(&l, &Point::Grid(4), &c).unwrap().members.is_empty());
        let single = PointSet::Grid([0].into_iter().collect());
        assert_eq!(normal_set(&l, &Point::Grid(0), &single).unwrap().members.len(), 3);
        let d = Arc::new(Domain::RealLine);
        let ll = fam(&d, &["-x", "0", "x"]);
        let unit = PointSet::Line("[-1, 1]".parse().unwrap());
        assert_eq!(normal_set(&ll, &Point::Real(int(1)), &unit).unwrap().members.labels(), vec!["0", "x"]);
    }

    #[test]
    fn epigraph_normals_match_subgradients() {
        let g = Arc::new(Domain::grid((-2..=2).map(int).collect()).unwrap());
        let l = fam(&g, &["-x", "0", "x", "2*x"]);
        let f = TargetFunction::parse("abs(x)", g.clone()).unwrap();
        let r = normal_subdiff_check(&f, &l, &Point::Grid(3), &[int(1), int(5)]).unwrap();
        assert!(r.passed());
        assert_eq!(r.observations["normals"], "1");
        // Every non-subgradient comes with a violating epigraph point.
        assert_eq!(r.witnesses.len(), 3);
        let d = Arc::new(Domain::RealLine);
        let ll = fam(&d, &["-x", "0", "x", "2*x"]);
        let f = TargetFunction::parse("abs(x)", d.clone()).unwrap();
        assert!(normal_subdiff_check(&f, &ll, &Point::Real(int(0)), &[int(1)]).unwrap().passed());
    }

    #[test]
    fn pinned_subdifferentials_are_hull_closed() {
        let d = Arc::new(Domain::RealLine);
        let l = FunctionFamily::parse(d.clone(), &["x", "-x", "max(0, x)", "min(0, x)", "0"]).unwrap();
        let f = TargetFunction::parse("abs(x)", d).unwrap();
        for x in [-1, 0, 1] {
            assert!(pinned_subdiff_hull_closed(&f, &l, &Point::Real(int(x))).unwrap());
        }
    }
}
