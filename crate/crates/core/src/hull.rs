//! Support sets, abstract convex hulls and separation.

use std::sync::Arc;

use crate::domain::{Point, PointSet};
use crate::error::{Error, Result};
use crate::family::{FunctionFamily, MemberSet};
use crate::function::{Form, TargetFunction};
use crate::numeric::{ExtReal, PlFunction};

/// `supp_H(f) = {h ∈ H : h ≤ f}`.
pub type SupportSet = MemberSet;

pub fn support_set(h: &Arc<FunctionFamily>, f: &TargetFunction) -> Result<SupportSet> {
    f.check_domain(h.domain())?;
    Ok(MemberSet::from_filter(h, |m| f.dominates(m.form())))
}

/// Pointwise supremum of the members of a set; the constant `-∞` when the
/// set is empty.
pub fn envelope(set: &MemberSet) -> TargetFunction {
    let domain = set.family().domain().clone();
    let mut forms = set.members().map(|m| m.form());
    match forms.next() {
        None => TargetFunction::neg_infinity(domain),
        Some(first) => {
            let top = forms.fold(first.clone(), |acc, f| acc.pointwise_max(f));
            TargetFunction::from_form(domain, &top)
        }
    }
}

/// `co_H f`: the envelope of the support set.
pub fn co_function(h: &Arc<FunctionFamily>, f: &TargetFunction) -> Result<TargetFunction> {
    Ok(envelope(&support_set(h, f)?))
}

/// `f = co_H f`.
pub fn is_abstract_convex(h: &Arc<FunctionFamily>, f: &TargetFunction) -> Result<bool> {
    Ok(co_function(h, f)?.pointwise_eq(f))
}

/// `co_H C = supp_H(sup C)`, taken in the family `C` indexes into.
pub fn co_set(c: &MemberSet) -> SupportSet {
    let top = envelope(c);
    MemberSet::from_filter(c.family(), |m| top.dominates(m.form()))
}

pub fn is_hull_closed(c: &MemberSet) -> bool {
    co_set(c) == *c
}

/// `{y : l(y) ≤ sup_{x∈Y} l(x) for every l ∈ L}`.
pub fn point_set_hull(l: &FunctionFamily, y: &PointSet) -> Result<PointSet> {
    let domain = l.domain();
    let mut hull = PointSet::everything(domain);
    for m in l.members() {
        let allowed = match (m.form(), y) {
            (Form::Table(t), PointSet::Grid(ys)) => {
                let Some(sigma) = ys.iter().map(|&i| &t[i]).max() else {
                    return Ok(PointSet::empty_in(domain));
                };
                PointSet::Grid((0..t.len()).filter(|&i| &t[i] <= sigma).collect())
            }
            (Form::Line(f), PointSet::Line(ys)) => match f.supremum_on(ys) {
                ExtReal::NegInf => return Ok(PointSet::empty_in(domain)),
                ExtReal::PosInf => continue,
                ExtReal::Finite(sigma) => PointSet::Line(
                    f.strict_above_region(&PlFunction::constant(sigma)).complement(),
                ),
            },
            _ => return Err(Error::DomainMismatch("point set and family backends differ".into())),
        };
        hull = hull.intersection(&allowed);
    }
    Ok(hull)
}

/// A point where `l` strictly exceeds every member of the hull-closed set
/// `U`, chosen canonically.
pub fn separate_point_from_set(u: &SupportSet, l: usize) -> Result<Point> {
    let family = u.family();
    if l >= family.len() {
        return Err(Error::BadIndex(l));
    }
    if !is_hull_closed(u) {
        return Err(Error::NotHullClosed);
    }
    let region = envelope(u).strict_below(family.member(l).form());
    region.representative(family.domain()).ok_or(Error::NotSeparable)
}

/// Outcome of looking for one point at which all of `B` lies strictly above
/// all of `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetSeparation {
    pub a_hull_closed: bool,
    pub b_hull_closed: bool,
    pub disjoint: bool,
    /// For each member of `B`, where it lies strictly above the envelope
    /// of `A`.
    pub regions: Vec<(usize, PointSet)>,
    pub common: PointSet,
    pub witness: Option<Point>,
}

pub fn separate_sets(a: &SupportSet, b: &SupportSet) -> Result<SetSeparation> {
    if !Arc::ptr_eq(a.family(), b.family()) && a.family() != b.family() {
        return Err(Error::DomainMismatch("sets index different families".into()));
    }
    let domain = a.family().domain();
    let top = envelope(a);
    let regions: Vec<(usize, PointSet)> = b
        .indices()
        .iter()
        .map(|&i| (i, top.strict_below(b.family().member(i).form())))
        .collect();
    let common = regions
        .iter()
        .fold(PointSet::everything(domain), |acc, (_, r)| acc.intersection(r));
    Ok(SetSeparation {
        a_hull_closed: is_hull_closed(a),
        b_hull_closed: is_hull_closed(b),
        disjoint: a.intersection(b).is_empty(),
        witness: common.representative(domain),
        regions,
        common,
    })
}
