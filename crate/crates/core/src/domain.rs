//! Evaluation domains, points and point sets.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::numeric::rational::{canonical_cmp, norm_squared};
use crate::numeric::{IntervalSet, Rational};

/// The set `X` functions are defined on.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Domain {
    RealLine,
    Finite(FinitePoints),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinitePoints {
    dim: usize,
    points: Vec<Vec<Rational>>,
    /// Point indices sorted by squared norm, then lexicographically.
    canonical: Vec<usize>,
}

/// A point of a [`Domain`]: a rational on the line, an index on a finite
/// domain.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Real(Rational),
    Grid(usize),
}

impl Point {
    pub fn grid_index(&self) -> Option<usize> {
        match self {
            Point::Grid(i) => Some(*i),
            Point::Real(_) => None,
        }
    }

    pub fn real(&self) -> Option<&Rational> {
        match self {
            Point::Real(x) => Some(x),
            Point::Grid(_) => None,
        }
    }
}

fn coord_cmp(a: &[Rational], b: &[Rational]) -> Ordering {
    norm_squared(a).cmp(&norm_squared(b)).then_with(|| a.cmp(b))
}

impl Domain {
    /// A finite domain of `dim`-tuples; points must be distinct.
    pub fn finite(dim: usize, points: Vec<Vec<Rational>>) -> Result<Domain> {
        if dim == 0 {
            return Err(Error::InvalidDomain("dimension must be positive".into()));
        }
        if points.is_empty() {
            return Err(Error::InvalidDomain("no points".into()));
        }
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::InvalidDomain(format!(
                "point of dimension {} in a domain of dimension {dim}",
                p.len()
            )));
        }
        let distinct: BTreeSet<&Vec<Rational>> = points.iter().collect();
        if distinct.len() != points.len() {
            return Err(Error::InvalidDomain("repeated point".into()));
        }
        let mut canonical: Vec<usize> = (0..points.len()).collect();
        canonical.sort_by(|&a, &b| coord_cmp(&points[a], &points[b]));
        Ok(Domain::Finite(FinitePoints { dim, points, canonical }))
    }

    /// A one-dimensional finite domain.
    pub fn grid(points: Vec<Rational>) -> Result<Domain> {
        Domain::finite(1, points.into_iter().map(|p| vec![p]).collect())
    }

    pub fn dimension(&self) -> usize {
        match self {
            Domain::RealLine => 1,
            Domain::Finite(f) => f.dim,
        }
    }

    pub fn is_line(&self) -> bool {
        matches!(self, Domain::RealLine)
    }

    pub fn finite_points(&self) -> Option<&FinitePoints> {
        match self {
            Domain::Finite(f) => Some(f),
            Domain::RealLine => None,
        }
    }

    /// Number of points of a finite domain.
    pub fn len(&self) -> Option<usize> {
        self.finite_points().map(|f| f.points.len())
    }

    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }

    pub fn contains(&self, p: &Point) -> bool {
        match (self, p) {
            (Domain::RealLine, Point::Real(_)) => true,
            (Domain::Finite(f), Point::Grid(i)) => *i < f.points.len(),
            _ => false,
        }
    }

    pub fn check(&self, p: &Point) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::PointOutsideDomain(format!("{p:?}")))
        }
    }

    /// Coordinates of a point.
    pub fn coords(&self, p: &Point) -> Vec<Rational> {
        match (self, p) {
            (_, Point::Real(x)) => vec![x.clone()],
            (Domain::Finite(f), Point::Grid(i)) => f.points[*i].clone(),
            (Domain::RealLine, Point::Grid(_)) => panic!("grid point on the real line"),
        }
    }

    /// The point with the given coordinates, if it belongs to the domain.
    pub fn locate(&self, coords: &[Rational]) -> Option<Point> {
        match self {
            Domain::RealLine if coords.len() == 1 => Some(Point::Real(coords[0].clone())),
            Domain::RealLine => None,
            Domain::Finite(f) => f.points.iter().position(|p| p == coords).map(Point::Grid),
        }
    }

    /// The origin, when it is a point of the domain.
    pub fn origin(&self) -> Option<Point> {
        let zeros = vec![Rational::default(); self.dimension()];
        self.locate(&zeros)
    }

    pub fn format_point(&self, p: &Point) -> String {
        let c = self.coords(p);
        if c.len() == 1 {
            c[0].to_string()
        } else {
            let parts: Vec<String> = c.iter().map(|v| v.to_string()).collect();
            format!("({})", parts.join(", "))
        }
    }

    /// Orders points by squared norm, then lexicographically.
    pub fn point_cmp(&self, a: &Point, b: &Point) -> Ordering {
        match (a, b) {
            (Point::Real(x), Point::Real(y)) => canonical_cmp(x, y),
            _ => coord_cmp(&self.coords(a), &self.coords(b)),
        }
    }

    /// Squared Euclidean distance between two points.
    pub fn distance_squared(&self, a: &Point, b: &Point) -> Rational {
        let (ca, cb) = (self.coords(a), self.coords(b));
        let diff: Vec<Rational> = ca.iter().zip(&cb).map(|(u, v)| u - v).collect();
        norm_squared(&diff)
    }

    /// The domain `X - y`, with point `i` of the result being point `i` of
    /// `self` moved by `-y`. The line is mapped to itself.
    pub fn translated(&self, y: &[Rational]) -> Result<Domain> {
        match self {
            Domain::RealLine if y.len() == 1 => Ok(Domain::RealLine),
            Domain::Finite(f) if y.len() == f.dim => Domain::finite(
                f.dim,
                f.points
                    .iter()
                    .map(|p| p.iter().zip(y).map(|(a, b)| a - b).collect())
                    .collect(),
            ),
            _ => Err(Error::NotRepresentable(format!(
                "shift of dimension {} on a domain of dimension {}",
                y.len(),
                self.dimension()
            ))),
        }
    }
}

impl FinitePoints {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Vec<Rational>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Indices in canonical point order.
    pub fn canonical_order(&self) -> &[usize] {
        &self.canonical
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::RealLine => write!(f, "real line"),
            Domain::Finite(p) => write!(f, "{} points in dimension {}", p.points.len(), p.dim),
        }
    }
}

/// A subset of a domain.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PointSet {
    Grid(BTreeSet<usize>),
    Line(IntervalSet),
}

impl PointSet {
    pub fn empty_in(domain: &Domain) -> PointSet {
        match domain {
            Domain::RealLine => PointSet::Line(IntervalSet::empty()),
            Domain::Finite(_) => PointSet::Grid(BTreeSet::new()),
        }
    }

    pub fn everything(domain: &Domain) -> PointSet {
        match domain {
            Domain::RealLine => PointSet::Line(IntervalSet::whole_line()),
            Domain::Finite(f) => PointSet::Grid((0..f.len()).collect()),
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            PointSet::Grid(s) => s.is_empty(),
            PointSet::Line(s) => s.is_empty(),
        }
    }

    pub fn contains(&self, p: &Point) -> bool {
        match (self, p) {
            (PointSet::Grid(s), Point::Grid(i)) => s.contains(i),
            (PointSet::Line(s), Point::Real(x)) => s.contains(x),
            _ => false,
        }
    }

    pub fn intersection(&self, other: &PointSet) -> PointSet {
        match (self, other) {
            (PointSet::Grid(a), PointSet::Grid(b)) => PointSet::Grid(a & b),
            (PointSet::Line(a), PointSet::Line(b)) => PointSet::Line(a.intersection(b)),
            _ => panic!("point sets from different backends"),
        }
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        match (self, other) {
            (PointSet::Grid(a), PointSet::Grid(b)) => a.is_subset(b),
            (PointSet::Line(a), PointSet::Line(b)) => a.is_subset(b),
            _ => false,
        }
    }

    /// The canonical witness: smallest norm first on finite domains, the
    /// interval-set representative on the line.
    pub fn representative(&self, domain: &Domain) -> Option<Point> {
        match self {
            PointSet::Grid(s) => s
                .iter()
                .map(|&i| Point::Grid(i))
                .min_by(|a, b| domain.point_cmp(a, b)),
            PointSet::Line(s) => s.representative().map(Point::Real),
        }
    }

    pub fn format(&self, domain: &Domain) -> String {
        match self {
            PointSet::Line(s) => s.to_string(),
            PointSet::Grid(s) => {
                let parts: Vec<String> =
                    s.iter().map(|&i| domain.format_point(&Point::Grid(i))).collect();
                format!("{{{}}}", parts.join(", "))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, ratio};

    #[test]
    fn rejects_bad_domains() {
        assert!(Domain::grid(vec![]).is_err());
        assert!(Domain::grid(vec![int(1), int(1)]).is_err());
        assert!(Domain::finite(2, vec![vec![int(1)]]).is_err());
    }

    #[test]
    fn canonical_order_and_lookup() {
        let d = Domain::grid(vec![int(2), int(-1), int(0), ratio(1, 2), int(1)]).unwrap();
        let order: Vec<_> = d.finite_points().unwrap().canonical_order().to_vec();
        assert_eq!(order, vec![2, 3, 1, 4, 0]);
        assert_eq!(d.locate(&[int(1)]), Some(Point::Grid(4)));
        assert_eq!(d.origin(), Some(Point::Grid(2)));
        let s = PointSet::Grid([0, 1, 4].into_iter().collect());
        assert_eq!(s.representative(&d), Some(Point::Grid(1)));
        assert_eq!(s.format(&d), "{2, -1, 1}");
    }

    #[test]
    fn translation_keeps_indices() {
        let d = Domain::grid(vec![int(0), int(1)]).unwrap();
        let t = d.translated(&[int(1)]).unwrap();
        assert_eq!(t.coords(&Point::Grid(1)), vec![int(0)]);
        assert!(d.translated(&[int(1), int(2)]).is_err());
    }
}
