//! Conjugates of sums, and the sum rules for subdifferentials and normal
//! sets.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_traits::One;

use crate::domain::{Point, PointSet};
use crate::error::{Error, Result};
use crate::family::{Decomposition, FunctionFamily, MemberSet};
use crate::function::TargetFunction;
use crate::hull::{co_set, is_abstract_convex, point_set_hull, support_set};
use crate::numeric::{ExtReal, Rational};
use crate::report::{inclusion_status, ConclusionStatus, RuleReport, Witness};

use super::conjugate::{abstract_hull, conjugate, inf_convolution, is_l_convex, ConjugateTable};
use super::subdiff::{normal_set, subdifferential};

/// Both sides of the conjugate-of-a-sum identity on `L₁ + L₂`.
#[derive(Debug, Clone)]
pub struct ConjugateSum {
    pub sum_family: Arc<FunctionFamily>,
    pub left: ConjugateTable,
    pub right: ConjugateTable,
    /// `(f₁ + f₂)*`.
    pub direct: ConjugateTable,
    /// `f₁* ⊕ f₂*`.
    pub convolution: ConjugateTable,
    /// `co_{L₁+L₂}(f₁* ⊕ f₂*)`, the conjugate of `co f₁ + co f₂`.
    pub biconjugate: Vec<ExtReal>,
    /// `(f₁ + f₂)* = f₁* ⊕ f₂*` on every member of the sum.
    pub hypothesis: bool,
    pub hypothesis_witness: Option<usize>,
    pub report: RuleReport,
}

/// Members of a sum family reachable as `l₁ + l₂` with `l₁ ∈ a`, `l₂ ∈ b`.
fn minkowski(dec: &Decomposition, len: usize, a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> BTreeSet<usize> {
    (0..len).filter(|&k| dec.splits(k).iter().any(|(i, j)| a.contains(i) && b.contains(j))).collect()
}

pub fn conjugate_sum(
    f1: &TargetFunction,
    l1: &Arc<FunctionFamily>,
    f2: &TargetFunction,
    l2: &Arc<FunctionFamily>,
) -> Result<ConjugateSum> {
    let sum = Arc::new(FunctionFamily::sum(l1, l2)?);
    let dec = sum.decomposition().expect("sum families carry a decomposition");
    let left = conjugate(f1, l1)?;
    let right = conjugate(f2, l2)?;
    let direct = conjugate(&f1.plus(f2)?, &sum)?;
    let convolution = inf_convolution(&left, &right, &sum)?;
    let minorant = abstract_hull(f1, l1)?.plus(&abstract_hull(f2, l2)?)?;
    let biconjugate: Vec<ExtReal> = sum.members().iter().map(|m| minorant.sup_of_difference(m.form()).0).collect();

    let hypothesis_witness = (0..sum.len()).find(|&k| direct.values[k] != convolution.values[k]);
    let hypothesis = hypothesis_witness.is_none();
    let convex = is_l_convex(f1, l1)? && is_l_convex(f2, l2)?;
    let status = if hypothesis { ConclusionStatus::Equal } else { ConclusionStatus::StrictInclusion };
    let mut report = RuleReport::conditional("conjugate-sum", hypothesis, status)
        .observe("members", sum.len())
        .observe("abstract-convex", convex);

    if let Some(k) = hypothesis_witness {
        report = report.with_witness(
            Witness::new(format!(
                "conjugate of the sum {} but infimal convolution {}",
                direct.values[k], convolution.values[k]
            ))
            .function(sum.member(k).label()),
        );
    }
    for k in 0..sum.len() {
        let (d, b, c) = (&direct.values[k], &biconjugate[k], &convolution.values[k]);
        if !(d <= b && b <= c) {
            report = report.reject().with_witness(
                Witness::new(format!("ordering fails: {d}, {b}, {c}")).function(sum.member(k).label()),
            );
        }
    }
    let identity = direct.values == biconjugate;
    report.set_observation("biconjugate-identity", if identity { "equal" } else { "differs" });
    if convex && !identity {
        report = report.reject().with_witness(Witness::new("conjugate of a sum of abstract convex functions differs from the hull of the convolution"));
    }

    // The epigraph of the convolution is the sum of the two epigraphs,
    // each epigraph decided through support-set membership.
    let mut samples = 0;
    for k in 0..sum.len() {
        let Some(v) = convolution.values[k].finite() else { continue };
        for c in [v - Rational::one(), v.clone(), v + Rational::one()] {
            samples += 1;
            let in_epi = ExtReal::Finite(c.clone()) >= convolution.values[k];
            let in_sum = dec.splits(k).iter().any(|&(i, j)| {
                let Some(c1) = left.values[i].finite() else { return false };
                let c2 = &c - c1;
                f1.dominates(&l1.member(i).form().add_constant(&-c1))
                    && f2.dominates(&l2.member(j).form().add_constant(&-&c2))
            });
            if in_epi != in_sum {
                report = report.reject().with_witness(
                    Witness::new(format!("epigraph sum disagrees at c = {c}")).function(sum.member(k).label()),
                );
            }
        }
    }
    let report = report.observe("epigraph-samples", samples);
    Ok(ConjugateSum {
        sum_family: sum,
        left,
        right,
        direct,
        convolution,
        biconjugate,
        hypothesis,
        hypothesis_witness,
        report,
    })
}

pub fn conjugate_sum_check(
    f1: &TargetFunction,
    l1: &Arc<FunctionFamily>,
    f2: &TargetFunction,
    l2: &Arc<FunctionFamily>,
) -> Result<RuleReport> {
    Ok(conjugate_sum(f1, l1, f2, l2)?.report)
}

/// Finishes a report comparing a computed sum `rhs` with a set `lhs` that
/// always contains it and equals it under the hypothesis.
fn sum_report(
    rule: &str,
    hypothesis: bool,
    lhs: &MemberSet,
    rhs: &BTreeSet<usize>,
) -> RuleReport {
    let status = inclusion_status(rhs, lhs.indices());
    let mut report = RuleReport::conditional(rule, hypothesis, status);
    if status == ConclusionStatus::Violated || (hypothesis && status != ConclusionStatus::Equal) {
        report = report.reject();
    }
    let family = lhs.family();
    for k in lhs.indices().difference(rhs) {
        report = report.with_witness(Witness::new("not a sum of parts").function(family.member(*k).label()));
    }
    for k in rhs.difference(lhs.indices()) {
        report = report.with_witness(Witness::new("sum of parts missing on the left").function(family.member(*k).label()));
    }
    let rhs_set = lhs.with_indices(rhs.clone());
    report.observe("left", lhs).observe("right", rhs_set)
}

/// `∂_{L₁+L₂}(f₁+f₂)(x) ⊇ ∂_{L₁}f₁(x) + ∂_{L₂}f₂(x)`, with equality when
/// `(f₁ + f₂)* = f₁* ⊕ f₂*`.
pub fn sum_rule_verify(
    f1: &TargetFunction,
    l1: &Arc<FunctionFamily>,
    f2: &TargetFunction,
    l2: &Arc<FunctionFamily>,
    x: &Point,
) -> Result<RuleReport> {
    f1.finite_at(x)?;
    f2.finite_at(x)?;
    let cs = conjugate_sum(f1, l1, f2, l2)?;
    let sum = &cs.sum_family;
    let lhs = subdifferential(&f1.plus(f2)?, sum, x)?.members;
    let s1 = subdifferential(f1, l1, x)?.members;
    let s2 = subdifferential(f2, l2, x)?.members;
    let dec = sum.decomposition().expect("sum families carry a decomposition");
    let rhs = minkowski(dec, sum.len(), s1.indices(), s2.indices());
    let mut report = sum_report("sum-rule", cs.hypothesis, &lhs, &rhs);
    if let Some(k) = cs.hypothesis_witness {
        report = report.observe("hypothesis-witness", sum.member(k).label());
    }
    if !cs.report.passed() {
        report = report.reject();
    }
    Ok(report)
}

/// `N_{L₁+L₂}(x, C ∩ D) ⊇ N_{L₁}(x, C) + N_{L₂}(x, D)`, with equality when
/// the indicators of `C` and `D` satisfy the conjugate-sum identity.
pub fn normal_sum_check(
    c: &PointSet,
    l1: &Arc<FunctionFamily>,
    d: &PointSet,
    l2: &Arc<FunctionFamily>,
    x: &Point,
) -> Result<RuleReport> {
    let domain = l1.domain();
    let (PointSet::Grid(cs), PointSet::Grid(ds)) = (c, d) else {
        return Err(Error::Unsupported("normal sums need a finite domain".into()));
    };
    let (ic, id) = (
        TargetFunction::indicator(domain.clone(), cs)?,
        TargetFunction::indicator(domain.clone(), ds)?,
    );
    let conj = conjugate_sum(&ic, l1, &id, l2)?;
    let sum = &conj.sum_family;
    let lhs = normal_set(sum, x, &c.intersection(d))?.members;
    let n1 = normal_set(l1, x, c)?.members;
    let n2 = normal_set(l2, x, d)?.members;
    let dec = sum.decomposition().expect("sum families carry a decomposition");
    let rhs = minkowski(dec, sum.len(), n1.indices(), n2.indices());
    let inside = c.contains(x) && d.contains(x);
    let mut report = sum_report("normal-sum", conj.hypothesis, &lhs, &rhs)
        .observe("in-intersection", inside)
        .observe("first-set-convex", point_set_hull(l1, c)? == *c)
        .observe("second-set-convex", point_set_hull(l2, d)? == *d);
    if !inside && !(lhs.is_empty() && rhs.is_empty()) {
        report = report.reject().with_witness(Witness::new("nonempty normal set off the intersection"));
    }
    Ok(report)
}

/// `supp_{H₁+H₂}(f₁+f₂) ⊇ co_{H₁+H₂}(supp_{H₁} f₁ + supp_{H₂} f₂)` for
/// explicit families, with equality, and abstract convexity of the sum,
/// when each `fᵢ` is `Hᵢ`-convex.
pub fn support_sum_identity(
    f1: &TargetFunction,
    h1: &Arc<FunctionFamily>,
    f2: &TargetFunction,
    h2: &Arc<FunctionFamily>,
) -> Result<RuleReport> {
    let sum = Arc::new(FunctionFamily::sum(h1, h2)?);
    let dec = sum.decomposition().expect("sum families carry a decomposition");
    let total = f1.plus(f2)?;
    let s1 = support_set(h1, f1)?;
    let s2 = support_set(h2, f2)?;
    let parts = MemberSet::new(sum.clone(), minkowski(dec, sum.len(), s1.indices(), s2.indices()))?;
    let hull = co_set(&parts);
    let whole = support_set(&sum, &total)?;
    let convex = is_abstract_convex(h1, f1)? && is_abstract_convex(h2, f2)?;
    let mut report = sum_report("support-sum", convex, &whole, hull.indices());
    let sum_convex = is_abstract_convex(&sum, &total)?;
    report.set_observation("sum-convex", sum_convex);
    if convex && !sum_convex {
        report = report.reject().with_witness(Witness::new("sum of abstract convex functions is not abstract convex"));
    }
    Ok(report)
}
