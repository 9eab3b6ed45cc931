//! Elementary functions and target functions on both backends.
//!
//! An elementary function is finite everywhere: an exact PL function on the
//! line or a table of rationals on a finite domain. A target function may
//! also take the value `+∞` (tables only) or be the constant `-∞`.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::domain::{Domain, Point, PointSet};
use crate::error::{Error, Result};
use crate::expr::FunctionExpr;
use crate::numeric::{int, ExtReal, IntervalSet, PlFunction, Rational};

/// The backend representation of a finite-valued function. Equality is
/// pointwise equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Form {
    Line(PlFunction),
    Table(Vec<Rational>),
}

impl Form {
    pub fn eval(&self, p: &Point) -> Rational {
        match (self, p) {
            (Form::Line(f), Point::Real(x)) => f.eval(x),
            (Form::Table(t), Point::Grid(i)) => t[*i].clone(),
            _ => panic!("point and function from different backends"),
        }
    }

    pub fn zero_on(domain: &Domain) -> Form {
        Form::constant_on(domain, Rational::zero())
    }

    pub fn constant_on(domain: &Domain, c: Rational) -> Form {
        match domain {
            Domain::RealLine => Form::Line(PlFunction::constant(c)),
            Domain::Finite(f) => Form::Table(vec![c; f.len()]),
        }
    }

    /// `Σ cᵢ·fᵢ + offset`; all forms must share a backend.
    pub fn combine(terms: &[(Rational, &Form)], offset: &Rational) -> Form {
        match terms.first() {
            Some((_, Form::Line(_))) => {
                let pls: Vec<(Rational, &PlFunction)> = terms
                    .iter()
                    .map(|(c, f)| match f {
                        Form::Line(p) => (c.clone(), p),
                        Form::Table(_) => panic!("mixed backends"),
                    })
                    .collect();
                Form::Line(PlFunction::combine(&pls, offset))
            }
            Some((_, Form::Table(t0))) => {
                let mut out = vec![offset.clone(); t0.len()];
                for (c, f) in terms {
                    let Form::Table(t) = f else { panic!("mixed backends") };
                    for (o, v) in out.iter_mut().zip(t) {
                        *o += c * v;
                    }
                }
                Form::Table(out)
            }
            None => panic!("empty combination has no backend"),
        }
    }

    pub fn add(&self, other: &Form) -> Form {
        Form::combine(&[(int(1), self), (int(1), other)], &Rational::zero())
    }

    pub fn sub(&self, other: &Form) -> Form {
        Form::combine(&[(int(1), self), (int(-1), other)], &Rational::zero())
    }

    pub fn scale(&self, c: &Rational) -> Form {
        Form::combine(&[(c.clone(), self)], &Rational::zero())
    }

    pub fn add_constant(&self, c: &Rational) -> Form {
        Form::combine(&[(int(1), self)], c)
    }

    pub fn pointwise_max(&self, other: &Form) -> Form {
        match (self, other) {
            (Form::Line(a), Form::Line(b)) => Form::Line(a.pointwise_max(b)),
            (Form::Table(a), Form::Table(b)) => {
                Form::Table(a.iter().zip(b).map(|(x, y)| x.max(y).clone()).collect())
            }
            _ => panic!("mixed backends"),
        }
    }

    /// `sup_x self(x)` over the domain, with a canonical maximizer.
    pub fn supremum(&self, domain: &Domain) -> (ExtReal, Option<Point>) {
        match self {
            Form::Line(f) => {
                let (v, at) = f.supremum();
                (v, at.map(Point::Real))
            }
            Form::Table(t) => {
                let order = domain.finite_points().expect("table on a finite domain").canonical_order();
                let best = order.iter().map(|&i| &t[i]).max().expect("nonempty domain");
                let at = order.iter().copied().find(|&i| &t[i] == best).map(Point::Grid);
                (ExtReal::Finite(best.clone()), at)
            }
        }
    }

    /// True iff `self ≥ other` everywhere.
    pub fn dominates(&self, other: &Form) -> bool {
        match (self, other) {
            (Form::Line(a), Form::Line(b)) => a.dominates(b),
            (Form::Table(a), Form::Table(b)) => a.iter().zip(b).all(|(x, y)| x >= y),
            _ => panic!("mixed backends"),
        }
    }

    /// `{x : self(x) > other(x)}`.
    pub fn strict_above(&self, other: &Form) -> PointSet {
        match (self, other) {
            (Form::Line(a), Form::Line(b)) => PointSet::Line(a.strict_above_region(b)),
            (Form::Table(a), Form::Table(b)) => PointSet::Grid(
                a.iter().zip(b).enumerate().filter(|(_, (x, y))| x > y).map(|(i, _)| i).collect(),
            ),
            _ => panic!("mixed backends"),
        }
    }

    /// `x ↦ self(x + y)` on the domain `X - y`. Tables are unchanged since
    /// point `i` of the translated domain is point `i` of the original
    /// moved by `-y`.
    pub fn translate(&self, y: &[Rational]) -> Form {
        match self {
            Form::Line(f) => Form::Line(f.translate(&y[0])),
            Form::Table(t) => Form::Table(t.clone()),
        }
    }

    pub fn render(&self) -> String {
        match self {
            Form::Line(f) => f.to_string(),
            Form::Table(t) => {
                let vals: Vec<String> = t.iter().map(|v| v.to_string()).collect();
                format!("[{}]", vals.join(", "))
            }
        }
    }
}

/// A member of a function family.
#[derive(Debug, Clone)]
pub struct ElementaryFunction {
    source: Option<FunctionExpr>,
    label: String,
    form: Form,
}

impl PartialEq for ElementaryFunction {
    fn eq(&self, other: &Self) -> bool {
        self.form == other.form
    }
}

impl Eq for ElementaryFunction {}

impl ElementaryFunction {
    /// Lowers an expression onto a domain.
    pub fn lower(expr: &FunctionExpr, domain: &Domain) -> Result<ElementaryFunction> {
        let form = lower_form(expr, domain)?;
        Ok(ElementaryFunction { label: expr.to_string(), source: Some(expr.clone()), form })
    }

    pub fn parse(text: &str, domain: &Domain) -> Result<ElementaryFunction> {
        ElementaryFunction::lower(&text.parse()?, domain)
    }

    pub fn from_form(form: Form, label: impl Into<String>) -> ElementaryFunction {
        ElementaryFunction { source: None, label: label.into(), form }
    }

    pub fn from_parts(source: Option<FunctionExpr>, form: Form) -> ElementaryFunction {
        let label = match &source {
            Some(e) => e.to_string(),
            None => form.render(),
        };
        ElementaryFunction { source, label, form }
    }

    pub fn source(&self) -> Option<&FunctionExpr> {
        self.source.as_ref()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn form(&self) -> &Form {
        &self.form
    }

    pub fn eval(&self, p: &Point) -> Rational {
        self.form.eval(p)
    }

    /// The vertical shift `l - c`.
    pub fn vertical(&self, c: &Rational) -> ElementaryFunction {
        if c.is_zero() {
            return self.clone();
        }
        let source = self.source.as_ref().map(|e| {
            if c.is_negative() {
                FunctionExpr::Add(Box::new(e.clone()), Box::new(FunctionExpr::Const(-c)))
            } else {
                FunctionExpr::Sub(Box::new(e.clone()), Box::new(FunctionExpr::Const(c.clone())))
            }
        });
        ElementaryFunction::from_parts(source, self.form.add_constant(&-c))
    }
}

impl fmt::Display for ElementaryFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// The vertical shift `l - c` of an elementary function.
pub fn vertical_element(l: &ElementaryFunction, c: &Rational) -> ElementaryFunction {
    l.vertical(c)
}

fn lower_form(expr: &FunctionExpr, domain: &Domain) -> Result<Form> {
    let arity = expr.arity();
    if arity > domain.dimension() {
        return Err(Error::DimensionMismatch { index: arity, dim: domain.dimension() });
    }
    match domain {
        Domain::RealLine => Ok(Form::Line(expr.to_pl()?)),
        Domain::Finite(f) => Ok(Form::Table(
            f.points().iter().map(|p| expr.eval(p)).collect::<Result<_>>()?,
        )),
    }
}

/// Values of a target function.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TargetValues {
    Line(PlFunction),
    /// Never holds `-∞`.
    Table(Vec<ExtReal>),
    /// The constant `-∞` function.
    NegInfinity,
}

/// A function `f : X → ℝ ∪ {+∞}`, or the constant `-∞`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TargetFunction {
    domain: Arc<Domain>,
    values: TargetValues,
}

impl TargetFunction {
    pub fn new(domain: Arc<Domain>, values: TargetValues) -> Result<TargetFunction> {
        match (&*domain, &values) {
            (Domain::RealLine, TargetValues::Line(_)) | (_, TargetValues::NegInfinity) => {}
            (Domain::Finite(f), TargetValues::Table(t)) if t.len() == f.len() => {
                if t.contains(&ExtReal::NegInf) {
                    return Err(Error::Unsupported("-inf table entries".into()));
                }
            }
            _ => return Err(Error::DomainMismatch("values do not fit the domain".into())),
        }
        Ok(TargetFunction { domain, values })
    }

    pub fn from_form(domain: Arc<Domain>, form: &Form) -> TargetFunction {
        let values = match form {
            Form::Line(f) => TargetValues::Line(f.clone()),
            Form::Table(t) => TargetValues::Table(t.iter().cloned().map(ExtReal::Finite).collect()),
        };
        TargetFunction { domain, values }
    }

    pub fn parse(text: &str, domain: Arc<Domain>) -> Result<TargetFunction> {
        let e = ElementaryFunction::parse(text, &domain)?;
        Ok(TargetFunction::from_form(domain, e.form()))
    }

    pub fn neg_infinity(domain: Arc<Domain>) -> TargetFunction {
        TargetFunction { domain, values: TargetValues::NegInfinity }
    }

    /// The indicator of a point set: 0 on the set, `+∞` elsewhere.
    pub fn indicator(domain: Arc<Domain>, set: &BTreeSet<usize>) -> Result<TargetFunction> {
        let n = domain
            .len()
            .ok_or_else(|| Error::Unsupported("indicators need a finite domain".into()))?;
        let values = (0..n)
            .map(|i| if set.contains(&i) { ExtReal::Finite(Rational::zero()) } else { ExtReal::PosInf })
            .collect();
        Ok(TargetFunction { domain, values: TargetValues::Table(values) })
    }

    pub fn domain(&self) -> &Arc<Domain> {
        &self.domain
    }

    pub fn is_neg_infinity(&self) -> bool {
        matches!(self.values, TargetValues::NegInfinity)
    }

    pub fn values(&self) -> &TargetValues {
        &self.values
    }

    pub fn eval(&self, p: &Point) -> ExtReal {
        match (&self.values, p) {
            (TargetValues::Line(f), Point::Real(x)) => ExtReal::Finite(f.eval(x)),
            (TargetValues::Table(t), Point::Grid(i)) => t[*i].clone(),
            (TargetValues::NegInfinity, _) => ExtReal::NegInf,
            _ => panic!("point and function from different backends"),
        }
    }

    /// `f(x)` when finite; errors when `x` is outside the domain or `f(x)`
    /// is infinite.
    pub fn finite_at(&self, p: &Point) -> Result<Rational> {
        self.domain.check(p)?;
        match self.eval(p) {
            ExtReal::Finite(v) => Ok(v),
            _ => Err(Error::OutsideEffectiveDomain(self.domain.format_point(p))),
        }
    }

    /// Grid points where `f` is finite.
    pub fn effective_domain(&self) -> PointSet {
        match &self.values {
            TargetValues::Table(t) => {
                PointSet::Grid(t.iter().enumerate().filter(|(_, v)| v.is_finite()).map(|(i, _)| i).collect())
            }
            TargetValues::Line(_) => PointSet::Line(IntervalSet::whole_line()),
            TargetValues::NegInfinity => PointSet::empty_in(&self.domain),
        }
    }

    /// The finite-valued form of `f`, if `f` is finite everywhere.
    pub fn as_form(&self) -> Option<Form> {
        match &self.values {
            TargetValues::Line(f) => Some(Form::Line(f.clone())),
            TargetValues::Table(t) => {
                t.iter().map(|v| v.finite().cloned()).collect::<Option<Vec<_>>>().map(Form::Table)
            }
            TargetValues::NegInfinity => None,
        }
    }

    fn same_domain(&self, other: &Domain) -> Result<()> {
        if *self.domain == *other {
            Ok(())
        } else {
            Err(Error::DomainMismatch(format!("{} vs {}", self.domain, other)))
        }
    }

    pub fn check_domain(&self, other: &Domain) -> Result<()> {
        self.same_domain(other)
    }

    /// `f + g`, with `+∞` absorbing in tables; `-∞` absorbs finite values.
    pub fn plus(&self, other: &TargetFunction) -> Result<TargetFunction> {
        self.same_domain(&other.domain)?;
        let values = match (&self.values, &other.values) {
            (TargetValues::NegInfinity, _) | (_, TargetValues::NegInfinity) => TargetValues::NegInfinity,
            (TargetValues::Line(a), TargetValues::Line(b)) => TargetValues::Line(a.add(b)),
            (TargetValues::Table(a), TargetValues::Table(b)) => {
                TargetValues::Table(a.iter().zip(b).map(|(x, y)| x.upper_add(y)).collect())
            }
            _ => unreachable!("same domain implies same backend"),
        };
        Ok(TargetFunction { domain: self.domain.clone(), values })
    }

    /// `f + l`.
    pub fn plus_form(&self, l: &Form) -> TargetFunction {
        let values = match (&self.values, l) {
            (TargetValues::NegInfinity, _) => TargetValues::NegInfinity,
            (TargetValues::Line(a), Form::Line(b)) => TargetValues::Line(a.add(b)),
            (TargetValues::Table(a), Form::Table(b)) => {
                TargetValues::Table(a.iter().zip(b).map(|(x, y)| x.add_finite(y)).collect())
            }
            _ => panic!("mixed backends"),
        };
        TargetFunction { domain: self.domain.clone(), values }
    }

    /// `x ↦ f(x + y)` on `X - y`.
    pub fn translate(&self, y: &[Rational]) -> Result<TargetFunction> {
        let domain = Arc::new(self.domain.translated(y)?);
        let values = match &self.values {
            TargetValues::Line(f) => TargetValues::Line(f.translate(&y[0])),
            other => other.clone(),
        };
        Ok(TargetFunction { domain, values })
    }

    /// True iff `l ≤ f` everywhere.
    pub fn dominates(&self, l: &Form) -> bool {
        match (&self.values, l) {
            (TargetValues::NegInfinity, _) => false,
            (TargetValues::Line(f), Form::Line(g)) => f.dominates(g),
            (TargetValues::Table(t), Form::Table(g)) => {
                t.iter().zip(g).all(|(v, w)| *v >= ExtReal::Finite(w.clone()))
            }
            _ => panic!("mixed backends"),
        }
    }

    /// True iff `f ≥ g` everywhere, for another target function `g`.
    pub fn dominates_target(&self, g: &TargetFunction) -> Result<bool> {
        self.same_domain(&g.domain)?;
        Ok(match (&self.values, &g.values) {
            (_, TargetValues::NegInfinity) => true,
            (TargetValues::NegInfinity, _) => false,
            (TargetValues::Line(a), TargetValues::Line(b)) => a.dominates(b),
            (TargetValues::Table(a), TargetValues::Table(b)) => a.iter().zip(b).all(|(x, y)| x >= y),
            _ => unreachable!("same domain implies same backend"),
        })
    }

    /// `sup_{x ∈ dom f} (l(x) - f(x))` with a canonical maximizer when the
    /// supremum is finite and attained. This is the conjugate value `f*(l)`.
    pub fn sup_of_difference(&self, l: &Form) -> (ExtReal, Option<Point>) {
        match (&self.values, l) {
            (TargetValues::NegInfinity, _) => (ExtReal::PosInf, None),
            (TargetValues::Line(f), Form::Line(g)) => {
                let (v, at) = g.sub(f).supremum();
                (v, at.map(Point::Real))
            }
            (TargetValues::Table(t), Form::Table(g)) => {
                let order = self.domain.finite_points().unwrap().canonical_order();
                let mut best: Option<(Rational, usize)> = None;
                for &i in order {
                    if let ExtReal::Finite(fv) = &t[i] {
                        let d = &g[i] - fv;
                        if best.as_ref().is_none_or(|(b, _)| d > *b) {
                            best = Some((d, i));
                        }
                    }
                }
                match best {
                    Some((v, i)) => (ExtReal::Finite(v), Some(Point::Grid(i))),
                    None => (ExtReal::NegInf, None),
                }
            }
            _ => panic!("mixed backends"),
        }
    }

    /// `{x : l(x) > f(x)}`.
    pub fn strict_below(&self, l: &Form) -> PointSet {
        match (&self.values, l) {
            (TargetValues::NegInfinity, _) => PointSet::everything(&self.domain),
            (TargetValues::Line(f), Form::Line(g)) => PointSet::Line(g.strict_above_region(f)),
            (TargetValues::Table(t), Form::Table(g)) => PointSet::Grid(
                t.iter()
                    .zip(g)
                    .enumerate()
                    .filter(|(_, (v, w))| ExtReal::Finite((*w).clone()) > **v)
                    .map(|(i, _)| i)
                    .collect(),
            ),
            _ => panic!("mixed backends"),
        }
    }

    /// `{x : f(x) ≤ c}`.
    pub fn sublevel(&self, c: &Rational) -> PointSet {
        match &self.values {
            TargetValues::NegInfinity => PointSet::everything(&self.domain),
            TargetValues::Line(f) => {
                PointSet::Line(f.add_constant(&-c).positive_region().complement())
            }
            TargetValues::Table(t) => PointSet::Grid(
                t.iter()
                    .enumerate()
                    .filter(|(_, v)| **v <= ExtReal::Finite(c.clone()))
                    .map(|(i, _)| i)
                    .collect(),
            ),
        }
    }

    /// `inf_x f(x)`, `-∞` when unbounded below.
    pub fn infimum(&self) -> ExtReal {
        match &self.values {
            TargetValues::NegInfinity => ExtReal::NegInf,
            TargetValues::Line(f) => -f.neg().supremum().0,
            TargetValues::Table(t) => t.iter().min().cloned().unwrap_or(ExtReal::PosInf),
        }
    }

    /// Pointwise comparison used for exact equality of two targets.
    pub fn pointwise_eq(&self, other: &TargetFunction) -> bool {
        *self.domain == *other.domain && self.values == other.values
    }

    pub fn render(&self) -> String {
        match &self.values {
            TargetValues::NegInfinity => "-inf".into(),
            TargetValues::Line(f) => f.to_string(),
            TargetValues::Table(t) => {
                let vals: Vec<String> = t.iter().map(|v| v.to_string()).collect();
                format!("[{}]", vals.join(", "))
            }
        }
    }
}
