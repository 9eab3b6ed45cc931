//! Intervals of the extended real line and finite unions of them.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use super::ext_real::ExtReal;
use super::rational::{canonical_cmp, int, ratio, Rational};
use crate::error::Error;

/// A nonempty interval. Infinite endpoints are always open; a degenerate
/// interval is a closed point.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: ExtReal,
    hi: ExtReal,
    lo_closed: bool,
    hi_closed: bool,
}

impl Interval {
    /// Returns `None` when the described set is empty.
    pub fn new(lo: ExtReal, hi: ExtReal, lo_closed: bool, hi_closed: bool) -> Option<Interval> {
        let lo_closed = lo_closed && lo.is_finite();
        let hi_closed = hi_closed && hi.is_finite();
        match lo.cmp(&hi) {
            Ordering::Greater => None,
            Ordering::Equal if !(lo_closed && hi_closed) => None,
            _ => Some(Interval {
                lo,
                hi,
                lo_closed,
                hi_closed,
            }),
        }
    }

    pub fn point(x: Rational) -> Interval {
        Interval {
            lo: ExtReal::Finite(x.clone()),
            hi: ExtReal::Finite(x),
            lo_closed: true,
            hi_closed: true,
        }
    }

    pub fn open(lo: ExtReal, hi: ExtReal) -> Option<Interval> {
        Interval::new(lo, hi, false, false)
    }

    pub fn closed(lo: Rational, hi: Rational) -> Option<Interval> {
        Interval::new(ExtReal::Finite(lo), ExtReal::Finite(hi), true, true)
    }

    pub fn whole_line() -> Interval {
        Interval {
            lo: ExtReal::NegInf,
            hi: ExtReal::PosInf,
            lo_closed: false,
            hi_closed: false,
        }
    }

    pub fn lo(&self) -> &ExtReal {
        &self.lo
    }

    pub fn hi(&self) -> &ExtReal {
        &self.hi
    }

    pub fn lo_closed(&self) -> bool {
        self.lo_closed
    }

    pub fn hi_closed(&self) -> bool {
        self.hi_closed
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let x = ExtReal::Finite(x.clone());
        let above = match x.cmp(&self.lo) {
            Ordering::Greater => true,
            Ordering::Equal => self.lo_closed,
            Ordering::Less => false,
        };
        let below = match x.cmp(&self.hi) {
            Ordering::Less => true,
            Ordering::Equal => self.hi_closed,
            Ordering::Greater => false,
        };
        above && below
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let (lo, lo_closed) = match self.lo.cmp(&other.lo) {
            Ordering::Greater => (self.lo.clone(), self.lo_closed),
            Ordering::Less => (other.lo.clone(), other.lo_closed),
            Ordering::Equal => (self.lo.clone(), self.lo_closed && other.lo_closed),
        };
        let (hi, hi_closed) = match self.hi.cmp(&other.hi) {
            Ordering::Less => (self.hi.clone(), self.hi_closed),
            Ordering::Greater => (other.hi.clone(), other.hi_closed),
            Ordering::Equal => (self.hi.clone(), self.hi_closed && other.hi_closed),
        };
        Interval::new(lo, hi, lo_closed, hi_closed)
    }

    /// A canonical member: 0 when contained, the midpoint of a bounded
    /// interval, otherwise one unit past the finite endpoint.
    pub fn representative(&self) -> Rational {
        let zero = int(0);
        if self.contains(&zero) {
            return zero;
        }
        match (&self.lo, &self.hi) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => (a + b) * ratio(1, 2),
            (ExtReal::NegInf, ExtReal::Finite(b)) => b - int(1),
            (ExtReal::Finite(a), ExtReal::PosInf) => a + int(1),
            _ => zero,
        }
    }

    fn start_cmp(&self, other: &Interval) -> Ordering {
        self.lo
            .cmp(&other.lo)
            .then_with(|| other.lo_closed.cmp(&self.lo_closed))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            return write!(f, "{{{}}}", self.lo);
        }
        let open = if self.lo_closed { '[' } else { '(' };
        let close = if self.hi_closed { ']' } else { ')' };
        write!(f, "{open}{}, {}{close}", self.lo, self.hi)
    }
}

/// A finite union of intervals in canonical form: sorted, pairwise
/// disjoint and non-adjacent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntervalSet {
    parts: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> IntervalSet {
        IntervalSet { parts: Vec::new() }
    }

    pub fn whole_line() -> IntervalSet {
        IntervalSet {
            parts: vec![Interval::whole_line()],
        }
    }

    /// Normalizes an arbitrary collection of intervals.
    pub fn from_parts(mut parts: Vec<Interval>) -> IntervalSet {
        parts.sort_by(|a, b| a.start_cmp(b));
        let mut merged: Vec<Interval> = Vec::with_capacity(parts.len());
        for next in parts {
            if let Some(last) = merged.last_mut() {
                let touches = match next.lo.cmp(&last.hi) {
                    Ordering::Less => true,
                    Ordering::Equal => last.hi_closed || next.lo_closed,
                    Ordering::Greater => false,
                };
                if touches {
                    match next.hi.cmp(&last.hi) {
                        Ordering::Greater => {
                            last.hi = next.hi;
                            last.hi_closed = next.hi_closed;
                        }
                        Ordering::Equal => last.hi_closed |= next.hi_closed,
                        Ordering::Less => {}
                    }
                    continue;
                }
            }
            merged.push(next);
        }
        IntervalSet { parts: merged }
    }

    pub fn parts(&self) -> &[Interval] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.parts.iter().any(|p| p.contains(x))
    }

    pub fn intersection(&self, other: &IntervalSet) -> IntervalSet {
        let mut out = Vec::new();
        for a in &self.parts {
            for b in &other.parts {
                if let Some(i) = a.intersect(b) {
                    out.push(i);
                }
            }
        }
        IntervalSet::from_parts(out)
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        IntervalSet::from_parts(self.parts.iter().chain(&other.parts).cloned().collect())
    }

    pub fn complement(&self) -> IntervalSet {
        let mut out = Vec::new();
        let mut lo = ExtReal::NegInf;
        let mut lo_closed = false;
        for p in &self.parts {
            if let Some(gap) = Interval::new(lo.clone(), p.lo.clone(), lo_closed, !p.lo_closed) {
                out.push(gap);
            }
            lo = p.hi.clone();
            lo_closed = !p.hi_closed;
        }
        if let Some(gap) = Interval::new(lo, ExtReal::PosInf, lo_closed, false) {
            out.push(gap);
        }
        IntervalSet::from_parts(out)
    }

    pub fn is_subset(&self, other: &IntervalSet) -> bool {
        self.intersection(&other.complement()).is_empty()
    }

    /// The canonical witness point: the representative of each part,
    /// smallest magnitude first, then smallest value.
    pub fn representative(&self) -> Option<Rational> {
        self.parts
            .iter()
            .map(Interval::representative)
            .min_by(canonical_cmp)
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "{{}}");
        }
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, " U ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Interval {
    type Err = Error;
    fn from_str(s: &str) -> Result<Interval, Error> {
        let bad = || Error::MalformedInterval(s.to_string());
        let t = s.trim();
        if let Some(inner) = t.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
            let v: ExtReal = inner.parse()?;
            return match v {
                ExtReal::Finite(x) => Ok(Interval::point(x)),
                _ => Err(bad()),
            };
        }
        let lo_closed = match t.chars().next() {
            Some('[') => true,
            Some('(') => false,
            _ => return Err(bad()),
        };
        let hi_closed = match t.chars().last() {
            Some(']') => true,
            Some(')') => false,
            _ => return Err(bad()),
        };
        let inner = &t[1..t.len() - 1];
        let (a, b) = inner.split_once(',').ok_or_else(bad)?;
        Interval::new(a.parse()?, b.parse()?, lo_closed, hi_closed).ok_or_else(bad)
    }
}

impl FromStr for IntervalSet {
    type Err = Error;
    fn from_str(s: &str) -> Result<IntervalSet, Error> {
        let t = s.trim();
        if t == "{}" || t.is_empty() {
            return Ok(IntervalSet::empty());
        }
        let parts = t
            .split('U')
            .map(str::parse)
            .collect::<Result<Vec<Interval>, _>>()?;
        Ok(IntervalSet::from_parts(parts))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fin(v: Rational) -> ExtReal {
        ExtReal::Finite(v)
    }

    #[test]
    fn merges_adjacent_parts() {
        let s = IntervalSet::from_parts(vec![
            Interval::open(fin(int(1)), fin(int(2))).unwrap(),
            Interval::point(int(1)),
            Interval::open(fin(int(0)), fin(int(1))).unwrap(),
            Interval::open(fin(int(3)), fin(int(4))).unwrap(),
        ]);
        assert_eq!(s.to_string(), "(0, 2) U (3, 4)");
    }

    #[test]
    fn open_parts_sharing_an_endpoint_stay_apart() {
        let s = IntervalSet::from_parts(vec![
            Interval::open(fin(int(0)), fin(int(1))).unwrap(),
            Interval::open(fin(int(1)), fin(int(2))).unwrap(),
        ]);
        assert_eq!(s.parts().len(), 2);
        assert!(!s.contains(&int(1)));
    }

    #[test]
    fn complement_and_intersection() {
        let s: IntervalSet = "(-inf, -3) U (3, +inf)".parse().unwrap();
        assert_eq!(s.complement().to_string(), "[-3, 3]");
        let t: IntervalSet = "(-1/2, 1/2)".parse().unwrap();
        assert!(s.intersection(&t).is_empty());
        assert_eq!(s.complement().complement(), s);
        assert!(t.is_subset(&s.complement()));
    }

    #[test]
    fn degenerate_and_empty_intervals() {
        assert!(Interval::open(fin(int(1)), fin(int(1))).is_none());
        assert!(Interval::closed(int(2), int(1)).is_none());
        assert!(Interval::closed(int(1), int(1)).unwrap().is_point());
        assert_eq!(Interval::point(int(2)).to_string(), "{2}");
    }

    #[test]
    fn representatives() {
        let s: IntervalSet = "(-1/2, 1/2)".parse().unwrap();
        assert_eq!(s.representative(), Some(int(0)));
        let s: IntervalSet = "(-inf, 0)".parse().unwrap();
        assert_eq!(s.representative(), Some(int(-1)));
        let s: IntervalSet = "(1/2, 3) U (-3, -1/2)".parse().unwrap();
        assert_eq!(s.representative(), Some(ratio(-7, 4)));
        assert_eq!(IntervalSet::empty().representative(), None);
    }
}
