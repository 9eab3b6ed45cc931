//! Finite families of elementary functions and the transforms between them.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::domain::{Domain, Point};
use crate::error::{Error, Result};
use crate::expr::FunctionExpr;
use crate::function::{ElementaryFunction, Form};
use crate::numeric::Rational;

/// An ordered, duplicate-free family of elementary functions on one domain.
///
/// Two members are duplicates when they agree at every point. The first
/// member seen is kept, together with its source expression.
#[derive(Debug, Clone)]
pub struct FunctionFamily {
    domain: Arc<Domain>,
    members: Vec<ElementaryFunction>,
    lookup: HashMap<Form, usize>,
    decomposition: Option<Decomposition>,
}

/// For a family `λ₁L₁ + λ₂L₂`: every pair `(i, j)` producing each member.
#[derive(Debug, Clone)]
pub struct Decomposition {
    left: Arc<FunctionFamily>,
    right: Arc<FunctionFamily>,
    coefficients: (Rational, Rational),
    splits: Vec<Vec<(usize, usize)>>,
}

impl Decomposition {
    pub fn left(&self) -> &Arc<FunctionFamily> {
        &self.left
    }

    pub fn right(&self) -> &Arc<FunctionFamily> {
        &self.right
    }

    pub fn coefficients(&self) -> &(Rational, Rational) {
        &self.coefficients
    }

    /// All `(left index, right index)` pairs whose sum is member `k`.
    pub fn splits(&self, k: usize) -> &[(usize, usize)] {
        &self.splits[k]
    }
}

impl PartialEq for FunctionFamily {
    fn eq(&self, other: &Self) -> bool {
        *self.domain == *other.domain && self.members == other.members
    }
}

impl Eq for FunctionFamily {}

impl FunctionFamily {
    pub fn new(domain: Arc<Domain>, members: impl IntoIterator<Item = ElementaryFunction>) -> FunctionFamily {
        let mut fam = FunctionFamily::empty(domain);
        for m in members {
            fam.push(m);
        }
        fam
    }

    pub fn empty(domain: Arc<Domain>) -> FunctionFamily {
        FunctionFamily { domain, members: Vec::new(), lookup: HashMap::new(), decomposition: None }
    }

    /// Lowers each expression onto the domain.
    pub fn parse<S: AsRef<str>>(domain: Arc<Domain>, exprs: &[S]) -> Result<FunctionFamily> {
        let members = exprs
            .iter()
            .map(|s| ElementaryFunction::parse(s.as_ref(), &domain))
            .collect::<Result<Vec<_>>>()?;
        Ok(FunctionFamily::new(domain, members))
    }

    /// Adds a member unless an equal one is present; returns its index.
    fn push(&mut self, m: ElementaryFunction) -> usize {
        if let Some(&i) = self.lookup.get(m.form()) {
            return i;
        }
        let i = self.members.len();
        self.lookup.insert(m.form().clone(), i);
        self.members.push(m);
        i
    }

    pub fn domain(&self) -> &Arc<Domain> {
        &self.domain
    }

    pub fn members(&self) -> &[ElementaryFunction] {
        &self.members
    }

    pub fn member(&self, i: usize) -> &ElementaryFunction {
        &self.members[i]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn index_of(&self, form: &Form) -> Option<usize> {
        self.lookup.get(form).copied()
    }

    pub fn decomposition(&self) -> Option<&Decomposition> {
        self.decomposition.as_ref()
    }

    pub fn check_same_domain(&self, other: &Domain) -> Result<()> {
        if *self.domain == *other {
            Ok(())
        } else {
            Err(Error::DomainMismatch(format!("{} vs {}", self.domain, other)))
        }
    }

    /// Index of each member of `self` inside `other`, if `self ⊆ other`.
    pub fn embedding(&self, other: &FunctionFamily) -> Option<Vec<usize>> {
        self.members.iter().map(|m| other.index_of(m.form())).collect()
    }

    pub fn is_subfamily_of(&self, other: &FunctionFamily) -> bool {
        *self.domain == *other.domain && self.embedding(other).is_some()
    }

    /// The members with the given indices, in index order.
    pub fn subfamily(&self, indices: &BTreeSet<usize>) -> FunctionFamily {
        FunctionFamily::new(self.domain.clone(), indices.iter().map(|&i| self.members[i].clone()))
    }

    /// Members of `self` followed by the new members of `other`.
    pub fn union(&self, other: &FunctionFamily) -> Result<FunctionFamily> {
        self.check_same_domain(&other.domain)?;
        Ok(FunctionFamily::new(
            self.domain.clone(),
            self.members.iter().chain(&other.members).cloned(),
        ))
    }

    /// The pinned family `L_x = {l - l(x) : l ∈ L}`.
    pub fn pin(&self, x: &Point) -> Result<FunctionFamily> {
        self.domain.check(x)?;
        Ok(FunctionFamily::new(
            self.domain.clone(),
            self.members.iter().map(|l| l.vertical(&l.eval(x))),
        ))
    }

    /// `{l - u : l ∈ L}`.
    pub fn shift_by(&self, u: &ElementaryFunction) -> FunctionFamily {
        FunctionFamily::new(
            self.domain.clone(),
            self.members.iter().map(|l| {
                let source = match (l.source(), u.source()) {
                    (Some(a), Some(b)) => {
                        Some(FunctionExpr::Sub(Box::new(a.clone()), Box::new(b.clone())))
                    }
                    _ => None,
                };
                ElementaryFunction::from_parts(source, l.form().sub(u.form()))
            }),
        )
    }

    /// `L^y = {x ↦ l(x + y)}` on the translated domain `X - y`.
    pub fn translate(&self, y: &[Rational]) -> Result<FunctionFamily> {
        let domain = Arc::new(self.domain.translated(y)?);
        let members = self.members.iter().map(|l| {
            let source = l.source().map(|e| shift_expr(e, y));
            ElementaryFunction::from_parts(source, l.form().translate(y))
        });
        Ok(FunctionFamily::new(domain, members))
    }

    /// `L₁ + L₂` with its decomposition index.
    pub fn sum(left: &Arc<FunctionFamily>, right: &Arc<FunctionFamily>) -> Result<FunctionFamily> {
        FunctionFamily::scaled_sum(&Rational::one(), left, &Rational::one(), right)
    }

    /// `λ₁L₁ + λ₂L₂ = {λ₁l₁ + λ₂l₂}` with its decomposition index.
    pub fn scaled_sum(
        l1: &Rational,
        left: &Arc<FunctionFamily>,
        l2: &Rational,
        right: &Arc<FunctionFamily>,
    ) -> Result<FunctionFamily> {
        left.check_same_domain(&right.domain)?;
        let mut fam = FunctionFamily::empty(left.domain.clone());
        let mut splits: Vec<Vec<(usize, usize)>> = Vec::new();
        for (i, a) in left.members.iter().enumerate() {
            for (j, b) in right.members.iter().enumerate() {
                let form = Form::combine(&[(l1.clone(), a.form()), (l2.clone(), b.form())], &Rational::zero());
                let source = match (a.source(), b.source()) {
                    (Some(x), Some(y)) => Some(sum_expr(scaled_expr(l1, x), scaled_expr(l2, y))),
                    _ => None,
                };
                let member = ElementaryFunction::from_parts(source, form);
                let label_len = member.label().len();
                let k = fam.push(member.clone());
                if k == splits.len() {
                    splits.push(Vec::new());
                } else if label_len < fam.members[k].label().len() {
                    // Keep the shortest label among the decompositions.
                    fam.members[k] = member;
                }
                splits[k].push((i, j));
            }
        }
        fam.decomposition = Some(Decomposition {
            left: left.clone(),
            right: right.clone(),
            coefficients: (l1.clone(), l2.clone()),
            splits,
        });
        Ok(fam)
    }

    /// `L ∘ u` on the source domain of `u`, plus the index of each `l ∘ u`.
    pub fn compose(&self, u: &PointMap) -> Result<(FunctionFamily, Vec<usize>)> {
        self.check_same_domain(&u.target)?;
        let mut fam = FunctionFamily::empty(u.source.clone());
        let mut index = Vec::with_capacity(self.members.len());
        for l in &self.members {
            let form = u.pull_back(l.form());
            let label = format!("({}) o u", l.label());
            index.push(fam.push(ElementaryFunction::from_form(form, label)));
        }
        Ok((fam, index))
    }

    pub fn labels(&self) -> Vec<String> {
        self.members.iter().map(|m| m.label().to_string()).collect()
    }
}

impl fmt::Display for FunctionFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.labels().join(", "))
    }
}

fn scaled_expr(c: &Rational, e: &FunctionExpr) -> FunctionExpr {
    if c.is_one() {
        e.clone()
    } else if c.is_zero() {
        FunctionExpr::Const(Rational::zero())
    } else {
        FunctionExpr::Scale(c.clone(), Box::new(e.clone()))
    }
}

fn sum_expr(a: FunctionExpr, b: FunctionExpr) -> FunctionExpr {
    match (&a, &b) {
        (FunctionExpr::Const(z), _) if z.is_zero() => b,
        (_, FunctionExpr::Const(z)) if z.is_zero() => a,
        _ => FunctionExpr::Add(Box::new(a), Box::new(b)),
    }
}

/// Substitutes `xᵢ + yᵢ` for every coordinate `xᵢ`.
fn shift_expr(e: &FunctionExpr, y: &[Rational]) -> FunctionExpr {
    use FunctionExpr::*;
    let b = |e: &FunctionExpr| Box::new(shift_expr(e, y));
    match e {
        Const(c) => Const(c.clone()),
        Var(i) if y[*i].is_zero() => Var(*i),
        Var(i) => Add(Box::new(Var(*i)), Box::new(Const(y[*i].clone()))),
        Neg(a) => Neg(b(a)),
        Add(l, r) => Add(b(l), b(r)),
        Sub(l, r) => Sub(b(l), b(r)),
        Scale(c, a) => Scale(c.clone(), b(a)),
        Abs(a) => Abs(b(a)),
        Max(l, r) => Max(b(l), b(r)),
        Min(l, r) => Min(b(l), b(r)),
    }
}

/// A map `u : Y → X` between finite domains, given by its value table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointMap {
    source: Arc<Domain>,
    target: Arc<Domain>,
    images: Vec<usize>,
}

impl PointMap {
    pub fn new(source: Arc<Domain>, target: Arc<Domain>, images: Vec<usize>) -> Result<PointMap> {
        let (Some(n), Some(m)) = (source.len(), target.len()) else {
            return Err(Error::Unsupported("point maps need finite domains".into()));
        };
        if images.len() != n {
            return Err(Error::DomainMismatch(format!("{} images for {n} points", images.len())));
        }
        if let Some(bad) = images.iter().position(|&j| j >= m) {
            return Err(Error::MapOutsideTarget(source.format_point(&Point::Grid(bad))));
        }
        Ok(PointMap { source, target, images })
    }

    /// Builds the map from target coordinates given per source point.
    pub fn from_coords(source: Arc<Domain>, target: Arc<Domain>, coords: &[Vec<Rational>]) -> Result<PointMap> {
        let images = coords
            .iter()
            .enumerate()
            .map(|(i, c)| match target.locate(c) {
                Some(Point::Grid(j)) => Ok(j),
                _ => Err(Error::MapOutsideTarget(source.format_point(&Point::Grid(i)))),
            })
            .collect::<Result<Vec<_>>>()?;
        PointMap::new(source, target, images)
    }

    pub fn identity(domain: Arc<Domain>) -> Result<PointMap> {
        let n = domain.len().ok_or_else(|| Error::Unsupported("point maps need finite domains".into()))?;
        PointMap::new(domain.clone(), domain, (0..n).collect())
    }

    pub fn source(&self) -> &Arc<Domain> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Domain> {
        &self.target
    }

    pub fn apply(&self, y: &Point) -> Point {
        Point::Grid(self.images[y.grid_index().expect("grid point")])
    }

    pub fn image(&self) -> BTreeSet<usize> {
        self.images.iter().copied().collect()
    }

    /// `l ∘ u`.
    pub fn pull_back(&self, form: &Form) -> Form {
        match form {
            Form::Table(t) => Form::Table(self.images.iter().map(|&j| t[j].clone()).collect()),
            Form::Line(_) => panic!("point maps act on tables"),
        }
    }
}

/// A subset of a family, by member index.
#[derive(Debug, Clone)]
pub struct MemberSet {
    family: Arc<FunctionFamily>,
    indices: BTreeSet<usize>,
}

impl PartialEq for MemberSet {
    fn eq(&self, other: &Self) -> bool {
        self.indices == other.indices
            && (Arc::ptr_eq(&self.family, &other.family) || self.family == other.family)
    }
}

impl Eq for MemberSet {}

impl MemberSet {
    pub fn new(family: Arc<FunctionFamily>, indices: BTreeSet<usize>) -> Result<MemberSet> {
        if let Some(&bad) = indices.iter().find(|&&i| i >= family.len()) {
            return Err(Error::BadIndex(bad));
        }
        Ok(MemberSet { family, indices })
    }

    pub fn from_filter(family: &Arc<FunctionFamily>, keep: impl Fn(&ElementaryFunction) -> bool) -> MemberSet {
        let indices = family.members.iter().enumerate().filter(|(_, m)| keep(m)).map(|(i, _)| i).collect();
        MemberSet { family: family.clone(), indices }
    }

    pub fn all(family: &Arc<FunctionFamily>) -> MemberSet {
        MemberSet { family: family.clone(), indices: (0..family.len()).collect() }
    }

    pub fn none(family: &Arc<FunctionFamily>) -> MemberSet {
        MemberSet { family: family.clone(), indices: BTreeSet::new() }
    }

    pub fn family(&self) -> &Arc<FunctionFamily> {
        &self.family
    }

    pub fn indices(&self) -> &BTreeSet<usize> {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.contains(&i)
    }

    pub fn members(&self) -> impl Iterator<Item = &ElementaryFunction> {
        self.indices.iter().map(|&i| self.family.member(i))
    }

    pub fn forms(&self) -> Vec<&Form> {
        self.members().map(|m| m.form()).collect()
    }

    pub fn labels(&self) -> Vec<String> {
        self.members().map(|m| m.label().to_string()).collect()
    }

    pub fn with_indices(&self, indices: BTreeSet<usize>) -> MemberSet {
        MemberSet { family: self.family.clone(), indices }
    }

    pub fn intersection(&self, other: &MemberSet) -> MemberSet {
        self.with_indices(&self.indices & &other.indices)
    }

    pub fn union(&self, other: &MemberSet) -> MemberSet {
        self.with_indices(&self.indices | &other.indices)
    }

    pub fn difference(&self, other: &MemberSet) -> MemberSet {
        self.with_indices(&self.indices - &other.indices)
    }

    pub fn is_subset(&self, other: &MemberSet) -> bool {
        self.indices.is_subset(&other.indices)
    }
}

impl fmt::Display for MemberSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.labels().join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::int;

    fn line() -> Arc<Domain> {
        Arc::new(Domain::RealLine)
    }

    fn fam(d: &Arc<Domain>, exprs: &[&str]) -> Arc<FunctionFamily> {
        Arc::new(FunctionFamily::parse(d.clone(), exprs).unwrap())
    }

    #[test]
    fn dedup_keeps_first_source() {
        let f = fam(&line(), &["abs(x)", "max(x, -x)", "x"]);
        assert_eq!(f.labels(), vec!["abs(x)", "x"]);
    }

    #[test]
    fn pinning() {
        let d = line();
        let p = fam(&d, &["x"]).pin(&Point::Real(int(1))).unwrap();
        assert_eq!(p, *fam(&d, &["x - 1"]));
        let p = fam(&d, &["max(0, x)"]).pin(&Point::Real(int(1))).unwrap();
        assert_eq!(p, *fam(&d, &["max(0,x) - 1"]));
        let l = fam(&d, &["x - 2"]);
        assert_eq!(l.pin(&Point::Real(int(2))).unwrap(), *l);
    }

    #[test]
    fn sums_record_every_split() {
        let d = line();
        let s = FunctionFamily::sum(&fam(&d, &["x"]), &fam(&d, &["-x"])).unwrap();
        assert_eq!(s, *fam(&d, &["0"]));
        let s = FunctionFamily::sum(&fam(&d, &["x", "0"]), &fam(&d, &["0"])).unwrap();
        assert_eq!(s, *fam(&d, &["x", "0"]));
        let pm = fam(&d, &["x", "-x"]);
        let s = FunctionFamily::sum(&pm, &pm).unwrap();
        assert_eq!(s, *fam(&d, &["2*x", "0", "-2*x"]));
        assert_eq!(s.decomposition().unwrap().splits(1), &[(0, 1), (1, 0)]);
        let g = Arc::new(Domain::grid(vec![int(0)]).unwrap());
        assert!(FunctionFamily::sum(&pm, &fam(&g, &["x"])).is_err());
    }

    #[test]
    fn composition() {
        let x = Arc::new(Domain::grid(vec![int(-1), int(0), int(1)]).unwrap());
        let l = fam(&x, &["x", "abs(x)"]);
        let id = PointMap::identity(x.clone()).unwrap();
        assert_eq!(l.compose(&id).unwrap().0, *l);
        let y = Arc::new(Domain::grid(vec![int(5), int(6)]).unwrap());
        let zero = PointMap::new(y.clone(), x.clone(), vec![1, 1]).unwrap();
        assert_eq!(l.compose(&zero).unwrap().0.members().len(), 1);
        // Oracle: tabulate l(-y) on {-1, 0, 1} by hand.
        let flip = PointMap::from_coords(x.clone(), x.clone(), &[vec![int(1)], vec![int(0)], vec![int(-1)]]).unwrap();
        let (c, idx) = l.compose(&flip).unwrap();
        assert_eq!(idx, vec![0, 1]);
        assert_eq!(c.member(0).form(), &Form::Table(vec![int(1), int(0), int(-1)]));
        assert_eq!(c.member(1).form(), &Form::Table(vec![int(1), int(0), int(1)]));
        assert!(PointMap::new(y, x, vec![0, 3]).is_err());
    }

    #[test]
    fn translation_substitutes() {
        let d = line();
        let t = fam(&d, &["abs(x - 1)"]).translate(&[int(1)]).unwrap();
        assert_eq!(t, *fam(&d, &["abs(x)"]));
    }
}
