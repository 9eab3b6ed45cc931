//! Exact continuous piecewise-linear functions on the whole rational line.
//!
//! A [`PlFunction`] is stored in canonical form: strictly increasing
//! breakpoints, no two adjacent pieces with the same slope. Two functions
//! are pointwise equal on ℝ exactly when their canonical forms are equal,
//! so derived `Eq`/`Hash` are extensional.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, Zero};

use super::ext_real::ExtReal;
use super::interval::{Interval, IntervalSet};
use super::rational::{canonical_cmp, int, ratio, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlFunction {
    breakpoints: Vec<Rational>,
    /// Value at the first breakpoint, or at 0 when there are none.
    anchor: Rational,
    /// Left tail, inner pieces, right tail.
    slopes: Vec<Rational>,
    /// Values at the breakpoints; derived from `anchor` and `slopes`.
    values: Vec<Rational>,
}

impl PlFunction {
    pub fn constant(c: Rational) -> PlFunction {
        PlFunction::affine(Rational::zero(), c)
    }

    pub fn zero() -> PlFunction {
        PlFunction::constant(Rational::zero())
    }

    /// `x ↦ slope·x + intercept`.
    pub fn affine(slope: Rational, intercept: Rational) -> PlFunction {
        PlFunction {
            breakpoints: Vec::new(),
            anchor: intercept,
            slopes: vec![slope],
            values: Vec::new(),
        }
    }

    pub fn identity() -> PlFunction {
        PlFunction::affine(int(1), Rational::zero())
    }

    /// Builds the function through the given vertices (strictly increasing
    /// abscissae) with the given tail slopes. With no vertices the slopes
    /// must agree and the function is `x ↦ slope·x`.
    ///
    /// Panics if abscissae are not strictly increasing.
    pub fn from_vertices(
        vertices: Vec<(Rational, Rational)>,
        left_slope: Rational,
        right_slope: Rational,
    ) -> PlFunction {
        assert!(
            vertices.windows(2).all(|w| w[0].0 < w[1].0),
            "vertex abscissae must be strictly increasing"
        );
        if vertices.is_empty() {
            assert_eq!(left_slope, right_slope, "vertex-free function needs one slope");
            return PlFunction::affine(left_slope, Rational::zero());
        }
        let mut slopes = Vec::with_capacity(vertices.len() + 1);
        slopes.push(left_slope);
        for w in vertices.windows(2) {
            slopes.push((&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0));
        }
        slopes.push(right_slope);

        // Drop vertices whose two incident pieces share a slope.
        let mut kept_x = Vec::with_capacity(vertices.len());
        let mut kept_v = Vec::with_capacity(vertices.len());
        let mut kept_s = vec![slopes[0].clone()];
        for (i, (x, v)) in vertices.iter().enumerate() {
            if slopes[i + 1] != *kept_s.last().unwrap() {
                kept_x.push(x.clone());
                kept_v.push(v.clone());
                kept_s.push(slopes[i + 1].clone());
            }
        }
        if kept_x.is_empty() {
            let (x0, v0) = &vertices[0];
            let s = kept_s[0].clone();
            let intercept = v0 - &s * x0;
            return PlFunction::affine(s, intercept);
        }
        PlFunction {
            anchor: kept_v[0].clone(),
            breakpoints: kept_x,
            slopes: kept_s,
            values: kept_v,
        }
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn anchor_value(&self) -> &Rational {
        &self.anchor
    }

    pub fn slopes(&self) -> &[Rational] {
        &self.slopes
    }

    pub fn left_slope(&self) -> &Rational {
        &self.slopes[0]
    }

    pub fn right_slope(&self) -> &Rational {
        self.slopes.last().unwrap()
    }

    pub fn is_affine(&self) -> bool {
        self.breakpoints.is_empty()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        if self.breakpoints.is_empty() {
            return &self.anchor + &self.slopes[0] * x;
        }
        // Index of the piece containing x: number of breakpoints ≤ x.
        let k = self.breakpoints.partition_point(|b| b <= x);
        if k == 0 {
            &self.values[0] + &self.slopes[0] * (x - &self.breakpoints[0])
        } else {
            &self.values[k - 1] + &self.slopes[k] * (x - &self.breakpoints[k - 1])
        }
    }

    /// Exact linear combination `Σ cᵢ·fᵢ + offset`.
    pub fn combine(terms: &[(Rational, &PlFunction)], offset: &Rational) -> PlFunction {
        let xs: BTreeSet<&Rational> = terms.iter().flat_map(|(_, f)| f.breakpoints.iter()).collect();
        let left = terms
            .iter()
            .fold(Rational::zero(), |acc, (c, f)| acc + c * f.left_slope());
        let right = terms
            .iter()
            .fold(Rational::zero(), |acc, (c, f)| acc + c * f.right_slope());
        if xs.is_empty() {
            let at_zero = terms
                .iter()
                .fold(offset.clone(), |acc, (c, f)| acc + c * &f.anchor);
            return PlFunction::affine(left, at_zero);
        }
        let vertices = xs
            .into_iter()
            .map(|x| {
                let v = terms
                    .iter()
                    .fold(offset.clone(), |acc, (c, f)| acc + c * f.eval(x));
                (x.clone(), v)
            })
            .collect();
        PlFunction::from_vertices(vertices, left, right)
    }

    pub fn add(&self, other: &PlFunction) -> PlFunction {
        PlFunction::combine(&[(int(1), self), (int(1), other)], &Rational::zero())
    }

    pub fn sub(&self, other: &PlFunction) -> PlFunction {
        PlFunction::combine(&[(int(1), self), (int(-1), other)], &Rational::zero())
    }

    pub fn scale(&self, c: &Rational) -> PlFunction {
        PlFunction::combine(&[(c.clone(), self)], &Rational::zero())
    }

    pub fn neg(&self) -> PlFunction {
        self.scale(&int(-1))
    }

    pub fn add_constant(&self, c: &Rational) -> PlFunction {
        PlFunction::combine(&[(int(1), self)], c)
    }

    /// `x ↦ f(x + shift)`.
    pub fn translate(&self, shift: &Rational) -> PlFunction {
        if self.breakpoints.is_empty() {
            return PlFunction::affine(self.slopes[0].clone(), self.eval(shift));
        }
        PlFunction {
            breakpoints: self.breakpoints.iter().map(|b| b - shift).collect(),
            anchor: self.anchor.clone(),
            slopes: self.slopes.clone(),
            values: self.values.clone(),
        }
    }

    /// Points where the function changes sign strictly inside a piece
    /// (roots that are not already breakpoints).
    pub fn crossings(&self) -> Vec<Rational> {
        let mut roots = Vec::new();
        if self.breakpoints.is_empty() {
            let s = &self.slopes[0];
            if !s.is_zero() {
                roots.push(-(&self.anchor) / s);
            }
            return roots;
        }
        let n = self.breakpoints.len();
        let (v0, s0) = (&self.values[0], &self.slopes[0]);
        if !v0.is_zero() && !s0.is_zero() && v0.is_positive() == s0.is_positive() {
            roots.push(&self.breakpoints[0] - v0 / s0);
        }
        for i in 0..n - 1 {
            let (a, b) = (&self.values[i], &self.values[i + 1]);
            if (a.is_positive() && b.is_negative()) || (a.is_negative() && b.is_positive()) {
                roots.push(&self.breakpoints[i] - a / &self.slopes[i + 1]);
            }
        }
        let (vn, sn) = (&self.values[n - 1], &self.slopes[n]);
        if !vn.is_zero() && !sn.is_zero() && vn.is_positive() != sn.is_positive() {
            roots.push(&self.breakpoints[n - 1] - vn / sn);
        }
        roots
    }

    /// Pointwise maximum of two functions.
    pub fn pointwise_max(&self, other: &PlFunction) -> PlFunction {
        let diff = self.sub(other);
        let xs: BTreeSet<Rational> = self
            .breakpoints
            .iter()
            .chain(&other.breakpoints)
            .cloned()
            .chain(diff.crossings())
            .collect();
        if xs.is_empty() {
            // Parallel lines: one of them is everywhere on top.
            return if diff.anchor.is_negative() {
                other.clone()
            } else {
                self.clone()
            };
        }
        let first = xs.iter().next().unwrap();
        let last = xs.iter().next_back().unwrap();
        let left = match diff.eval(first).cmp(&Rational::zero()) {
            Ordering::Greater => self.left_slope().clone(),
            Ordering::Less => other.left_slope().clone(),
            Ordering::Equal => self.left_slope().min(other.left_slope()).clone(),
        };
        let right = match diff.eval(last).cmp(&Rational::zero()) {
            Ordering::Greater => self.right_slope().clone(),
            Ordering::Less => other.right_slope().clone(),
            Ordering::Equal => self.right_slope().max(other.right_slope()).clone(),
        };
        let vertices = xs
            .into_iter()
            .map(|x| {
                let (a, b) = (self.eval(&x), other.eval(&x));
                (x, a.max(b))
            })
            .collect();
        PlFunction::from_vertices(vertices, left, right)
    }

    pub fn pointwise_min(&self, other: &PlFunction) -> PlFunction {
        self.neg().pointwise_max(&other.neg()).neg()
    }

    /// Pointwise maximum of a nonempty collection; `None` when empty.
    pub fn upper_envelope<'a, I>(fs: I) -> Option<PlFunction>
    where
        I: IntoIterator<Item = &'a PlFunction>,
    {
        let mut it = fs.into_iter();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, f| acc.pointwise_max(f)))
    }

    /// True iff `self(x) ≥ other(x)` for every real `x`.
    pub fn dominates(&self, other: &PlFunction) -> bool {
        match other.sub(self).supremum().0 {
            ExtReal::Finite(v) => !v.is_positive(),
            ExtReal::NegInf => true,
            ExtReal::PosInf => false,
        }
    }

    /// Exact `sup_x f(x)`, with a maximizing breakpoint (smallest magnitude
    /// first) when the supremum is finite. A constant function reports 0.
    pub fn supremum(&self) -> (ExtReal, Option<Rational>) {
        if self.left_slope().is_negative() || self.right_slope().is_positive() {
            return (ExtReal::PosInf, None);
        }
        if self.breakpoints.is_empty() {
            return (ExtReal::Finite(self.anchor.clone()), Some(Rational::zero()));
        }
        let best = self.values.iter().max().unwrap();
        let witness = self
            .breakpoints
            .iter()
            .zip(&self.values)
            .filter(|(_, v)| *v == best)
            .map(|(x, _)| x)
            .min_by(|a, b| canonical_cmp(a, b))
            .unwrap();
        (ExtReal::Finite(best.clone()), Some(witness.clone()))
    }

    /// `sup` of the function restricted to an interval set (`-∞` on the
    /// empty set). By continuity open endpoints count as their limits.
    pub fn supremum_on(&self, set: &IntervalSet) -> ExtReal {
        let mut best = ExtReal::NegInf;
        for part in set.parts() {
            let v = self.supremum_on_interval(part);
            if v > best {
                best = v;
            }
        }
        best
    }

    fn supremum_on_interval(&self, part: &Interval) -> ExtReal {
        if matches!(part.lo(), ExtReal::NegInf) && self.left_slope().is_negative() {
            return ExtReal::PosInf;
        }
        if matches!(part.hi(), ExtReal::PosInf) && self.right_slope().is_positive() {
            return ExtReal::PosInf;
        }
        let mut candidates: Vec<Rational> = self
            .breakpoints
            .iter()
            .filter(|b| part.contains(b))
            .cloned()
            .collect();
        candidates.extend(part.lo().finite().cloned());
        candidates.extend(part.hi().finite().cloned());
        if candidates.is_empty() {
            // Whole line with a flat, breakpoint-free function.
            return ExtReal::Finite(self.anchor.clone());
        }
        candidates
            .iter()
            .map(|x| self.eval(x))
            .max()
            .map(ExtReal::Finite)
            .unwrap()
    }

    /// The exact set `{x : self(x) > other(x)}`.
    pub fn strict_above_region(&self, other: &PlFunction) -> IntervalSet {
        self.sub(other).positive_region()
    }

    /// The exact set `{x : f(x) > 0}`.
    pub fn positive_region(&self) -> IntervalSet {
        let xs: BTreeSet<Rational> = self
            .breakpoints
            .iter()
            .cloned()
            .chain(self.crossings())
            .collect();
        if xs.is_empty() {
            return if self.anchor.is_positive() {
                IntervalSet::whole_line()
            } else {
                IntervalSet::empty()
            };
        }
        let xs: Vec<Rational> = xs.into_iter().collect();
        let positive = |x: &Rational| self.eval(x).is_positive();
        let fin = |x: &Rational| ExtReal::Finite(x.clone());
        let mut parts = Vec::new();
        let first = &xs[0];
        if positive(&(first - int(1))) {
            parts.extend(Interval::open(ExtReal::NegInf, fin(first)));
        }
        for (i, x) in xs.iter().enumerate() {
            if positive(x) {
                parts.push(Interval::point(x.clone()));
            }
            let next = xs.get(i + 1);
            let probe = match next {
                Some(n) => (x + n) * ratio(1, 2),
                None => x + int(1),
            };
            if positive(&probe) {
                let hi = next.map(fin).unwrap_or(ExtReal::PosInf);
                parts.extend(Interval::open(fin(x), hi));
            }
        }
        IntervalSet::from_parts(parts)
    }

    /// `{x : f(x) = inf f}` when the infimum is attained, else empty.
    pub fn argmin_set(&self) -> IntervalSet {
        match self.neg().supremum().0 {
            ExtReal::Finite(neg_min) => {
                let min = -neg_min;
                self.add_constant(&-min).positive_region().complement()
            }
            _ => IntervalSet::empty(),
        }
    }
}

impl fmt::Display for PlFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.breakpoints.is_empty() {
            return write!(f, "pl[slope {}; f(0) = {}]", self.slopes[0], self.anchor);
        }
        write!(f, "pl[slope {}", self.slopes[0])?;
        for (i, (x, v)) in self.breakpoints.iter().zip(&self.values).enumerate() {
            write!(f, "; ({x}, {v}); slope {}", self.slopes[i + 1])?;
        }
        write!(f, "]")
    }
}
