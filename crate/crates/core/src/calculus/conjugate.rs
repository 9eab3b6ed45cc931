//! Abstract conjugates, support functions and infimal convolution of
//! conjugate tables.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::domain::{Point, PointSet};
use crate::error::{Error, Result};
use crate::family::FunctionFamily;
use crate::function::{Form, TargetFunction};
use crate::numeric::{ExtReal, Rational};
use crate::report::{ConclusionStatus, RuleReport, Witness};

use super::subdiff::subdifferential;

/// Where a conjugate value is attained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Attainment {
    At(Point),
    /// Indices into the left and right families of a sum.
    Split(usize, usize),
}

/// `f*(l)` for every member `l` of a family.
#[derive(Debug, Clone)]
pub struct ConjugateTable {
    pub family: Arc<FunctionFamily>,
    pub values: Vec<ExtReal>,
    pub witnesses: Vec<Option<Attainment>>,
}

impl ConjugateTable {
    pub fn value(&self, i: usize) -> &ExtReal {
        &self.values[i]
    }
}

pub(crate) fn same_family(a: &Arc<FunctionFamily>, b: &Arc<FunctionFamily>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// `f*(l) = sup_{x ∈ dom f} (l(x) - f(x))` for each member.
pub fn conjugate(f: &TargetFunction, l: &Arc<FunctionFamily>) -> Result<ConjugateTable> {
    f.check_domain(l.domain())?;
    let (values, witnesses) = l
        .members()
        .iter()
        .map(|m| {
            let (v, at) = f.sup_of_difference(m.form());
            (v, at.map(Attainment::At))
        })
        .unzip();
    Ok(ConjugateTable { family: l.clone(), values, witnesses })
}

/// `σ_C(l) = sup_{x ∈ C} l(x)`.
pub fn support_function(c: &PointSet, l: &Arc<FunctionFamily>) -> Result<ConjugateTable> {
    let domain = l.domain();
    let mut values = Vec::with_capacity(l.len());
    let mut witnesses = Vec::with_capacity(l.len());
    for m in l.members() {
        match (m.form(), c) {
            (Form::Table(t), PointSet::Grid(ys)) => {
                let order = domain.finite_points().expect("finite domain").canonical_order();
                let mut at: Option<usize> = None;
                for &i in order {
                    if ys.contains(&i) && at.is_none_or(|b| t[i] > t[b]) {
                        at = Some(i);
                    }
                }
                values.push(at.map_or(ExtReal::NegInf, |i| ExtReal::Finite(t[i].clone())));
                witnesses.push(at.map(|i| Attainment::At(Point::Grid(i))));
            }
            (Form::Line(p), PointSet::Line(ys)) => {
                values.push(p.supremum_on(ys));
                witnesses.push(None);
            }
            _ => return Err(Error::DomainMismatch("point set and family backends differ".into())),
        }
    }
    if let PointSet::Grid(ys) = c {
        let indicator = TargetFunction::indicator(domain.clone(), ys)?;
        assert_eq!(conjugate(&indicator, l)?.values, values, "support function differs from the conjugate of the indicator");
    }
    Ok(ConjugateTable { family: l.clone(), values, witnesses })
}

/// `(f₁* ⊕ f₂*)(l) = min { f₁*(l₁) + f₂*(l₂) : l₁ + l₂ = l }` over the
/// decompositions recorded by the sum family.
pub fn inf_convolution(t1: &ConjugateTable, t2: &ConjugateTable, sum: &Arc<FunctionFamily>) -> Result<ConjugateTable> {
    let dec = sum.decomposition().ok_or(Error::MissingDecomposition)?;
    if !same_family(dec.left(), &t1.family) || !same_family(dec.right(), &t2.family) {
        return Err(Error::NotSubfamily("the sum was not built from these families".into()));
    }
    let (a, b) = dec.coefficients();
    if !a.is_one() || !b.is_one() {
        return Err(Error::Unsupported("infimal convolution of a scaled sum".into()));
    }
    let mut values = Vec::with_capacity(sum.len());
    let mut witnesses = Vec::with_capacity(sum.len());
    for k in 0..sum.len() {
        let mut best: Option<(ExtReal, (usize, usize))> = None;
        for &(i, j) in dec.splits(k) {
            let v = t1.values[i].upper_add(&t2.values[j]);
            if best.as_ref().is_none_or(|(b, _)| v < *b) {
                best = Some((v, (i, j)));
            }
        }
        match best {
            Some((v, (i, j))) => {
                values.push(v);
                witnesses.push(Some(Attainment::Split(i, j)));
            }
            None => {
                values.push(ExtReal::PosInf);
                witnesses.push(None);
            }
        }
    }
    Ok(ConjugateTable { family: sum.clone(), values, witnesses })
}

/// `co_{H_L} f = sup_{l ∈ L} (l - f*(l))`, the largest minorant of `f`
/// built from vertical shifts of members.
pub fn abstract_hull(f: &TargetFunction, l: &Arc<FunctionFamily>) -> Result<TargetFunction> {
    let table = conjugate(f, l)?;
    let domain = f.domain().clone();
    if table.values.contains(&ExtReal::NegInf) {
        return Ok(f.clone());
    }
    let top = l
        .members()
        .iter()
        .zip(&table.values)
        .filter_map(|(m, v)| v.finite().map(|c| m.form().add_constant(&-c)))
        .reduce(|acc, g| acc.pointwise_max(&g));
    Ok(match top {
        Some(g) => TargetFunction::from_form(domain, &g),
        None => TargetFunction::neg_infinity(domain),
    })
}

/// True iff `f` is a supremum of vertical shifts of members of `L`.
pub fn is_l_convex(f: &TargetFunction, l: &Arc<FunctionFamily>) -> Result<bool> {
    Ok(abstract_hull(f, l)?.pointwise_eq(f))
}

/// `f*(u) + f(x) = u(x)` exactly when `u ∈ ∂_L f(x)`, together with the
/// inequality `f*(u) + f(x) - u(x) ≥ 0`, for every member `u`.
pub fn moreau_verify(f: &TargetFunction, l: &Arc<FunctionFamily>, x: &Point) -> Result<RuleReport> {
    let fx = f.finite_at(x)?;
    let table = conjugate(f, l)?;
    let sub = subdifferential(f, l, x)?;
    let domain = l.domain();
    let mut report = RuleReport::unconditional("moreau", ConclusionStatus::Equal);
    for (i, u) in l.members().iter().enumerate() {
        let gap = table.values[i].add_finite(&(&fx - u.eval(x)));
        let zero = ExtReal::Finite(Rational::zero());
        if gap < zero {
            report = report.fail().with_witness(
                Witness::new("negative Moreau gap").function(u.label()).point(domain.format_point(x)),
            );
        }
        if (gap == zero) != sub.members.contains(i) {
            report = report.fail().with_witness(
                Witness::new(format!("gap {gap} disagrees with subgradient membership"))
                    .function(u.label())
                    .point(domain.format_point(x)),
            );
        }
    }
    Ok(report.observe("subgradients", sub.members.len()).observe("members", l.len()))
}

/// `(l, c)` lies in the epigraph of `f*` exactly when `l - c ≤ f`. The
/// samples are augmented with `c = f*(l)` and `f*(l) ± 1` for every
/// member with a finite conjugate.
pub fn epi_conjugate_check(
    f: &TargetFunction,
    l: &Arc<FunctionFamily>,
    samples: &[(usize, Rational)],
) -> Result<RuleReport> {
    let table = conjugate(f, l)?;
    let mut all: Vec<(usize, Rational)> = Vec::new();
    for &(i, ref c) in samples {
        if i >= l.len() {
            return Err(Error::BadIndex(i));
        }
        all.push((i, c.clone()));
    }
    for (i, v) in table.values.iter().enumerate() {
        if let Some(c) = v.finite() {
            all.push((i, c.clone()));
            all.push((i, c - Rational::one()));
            all.push((i, c + Rational::one()));
        }
    }
    let mut report = RuleReport::unconditional("epi-conjugate", ConclusionStatus::Equal);
    for (i, c) in &all {
        let member = l.member(*i);
        let in_epi = ExtReal::Finite(c.clone()) >= table.values[*i];
        let in_support = f.dominates(&member.form().add_constant(&-c));
        if in_epi != in_support {
            report = report.fail().with_witness(
                Witness::new(format!("c = {c}: epigraph {in_epi}, support {in_support}")).function(member.label()),
            );
        }
    }
    Ok(report.observe("samples", all.len()))
}
