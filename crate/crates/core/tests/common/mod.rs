//! Brute-force oracles over small integer tables.
//!
//! A function is a `Vec<Option<i64>>` with `None` for `+∞`; a family is a
//! list of integer tables. Nothing here touches the library's arithmetic.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use abscon_core::domain::{Domain, Point};
use abscon_core::family::{FunctionFamily, MemberSet};
use abscon_core::function::{ElementaryFunction, Form, TargetFunction, TargetValues};
use abscon_core::numeric::{int, ExtReal};
use proptest::prelude::*;

pub type Table = Vec<i64>;
pub type Values = Vec<Option<i64>>;

pub fn dom(f: &Values) -> Vec<usize> {
    (0..f.len()).filter(|&i| f[i].is_some()).collect()
}

/// `f*(l) = max_{x ∈ dom f} l(x) - f(x)`; `None` for `-∞`.
pub fn conj(f: &Values, l: &Table) -> Option<i64> {
    dom(f).into_iter().map(|x| l[x] - f[x].unwrap()).max()
}

pub fn subgradients(f: &Values, fam: &[Table], x: usize) -> BTreeSet<Table> {
    let fx = f[x].expect("x in dom f");
    fam.iter()
        .filter(|l| dom(f).into_iter().all(|y| f[y].unwrap() - fx >= l[y] - l[x]))
        .cloned()
        .collect()
}

pub fn normals(fam: &[Table], x: usize, c: &BTreeSet<usize>) -> BTreeSet<Table> {
    if !c.contains(&x) {
        return BTreeSet::new();
    }
    fam.iter().filter(|l| c.iter().all(|&y| l[y] <= l[x])).cloned().collect()
}

/// `sup_l l(x) - f*(l)` over members with finite conjugate; `None` is `-∞`.
pub fn hull(f: &Values, fam: &[Table]) -> Vec<Option<i64>> {
    (0..f.len())
        .map(|x| fam.iter().filter_map(|l| conj(f, l).map(|c| l[x] - c)).max())
        .collect()
}

pub fn add(a: &Values, b: &Values) -> Values {
    a.iter().zip(b).map(|(p, q)| Some((*p)? + (*q)?)).collect()
}

/// Distinct sums `l1 + l2` in first-seen order, each with its splits.
pub fn sum_family(l1: &[Table], l2: &[Table]) -> Vec<(Table, Vec<(usize, usize)>)> {
    let mut out: Vec<(Table, Vec<(usize, usize)>)> = Vec::new();
    for (i, a) in l1.iter().enumerate() {
        for (j, b) in l2.iter().enumerate() {
            let s: Table = a.iter().zip(b).map(|(p, q)| p + q).collect();
            match out.iter_mut().find(|(t, _)| *t == s) {
                Some((_, splits)) => splits.push((i, j)),
                None => out.push((s, vec![(i, j)])),
            }
        }
    }
    out
}

/// `(f1 + f2)* = f1* ⊕ f2*` on every member of the sum family.
pub fn sum_hypothesis(f1: &Values, l1: &[Table], f2: &Values, l2: &[Table]) -> bool {
    let total = add(f1, f2);
    sum_family(l1, l2).iter().all(|(s, splits)| {
        let direct = conj(&total, s);
        let conv = splits
            .iter()
            .map(|&(i, j)| Some(conj(f1, &l1[i])? + conj(f2, &l2[j])?))
            .min()
            .flatten();
        direct == conv
    })
}

pub fn minkowski(a: &BTreeSet<Table>, b: &BTreeSet<Table>) -> BTreeSet<Table> {
    a.iter()
        .flat_map(|p| b.iter().map(move |q| p.iter().zip(q).map(|(s, t)| s + t).collect()))
        .collect()
}

/// `u(x) - u(y) + v(y) - v(x) ≥ 0` for all pairs of graph elements.
pub fn monotone(pairs: &BTreeSet<(usize, usize)>, fam: &[Table]) -> bool {
    pairs.iter().all(|&(x, u)| {
        pairs.iter().all(|&(y, v)| fam[u][x] - fam[u][y] + fam[v][y] - fam[v][x] >= 0)
    })
}

pub fn indicator(n: usize, c: &BTreeSet<usize>) -> Values {
    (0..n).map(|i| c.contains(&i).then_some(0)).collect()
}

// Conversions into the library.

pub fn grid(n: usize) -> Arc<Domain> {
    Arc::new(Domain::grid((0..n as i64).map(|i| int(i - (n as i64) / 2)).collect()).unwrap())
}

pub fn form(t: &Table) -> Form {
    Form::Table(t.iter().map(|&v| int(v)).collect())
}

pub fn family(d: &Arc<Domain>, fam: &[Table]) -> Arc<FunctionFamily> {
    let members = fam.iter().enumerate().map(|(i, t)| ElementaryFunction::from_form(form(t), format!("l{i}")));
    Arc::new(FunctionFamily::new(d.clone(), members))
}

pub fn target(d: &Arc<Domain>, f: &Values) -> TargetFunction {
    let values = f.iter().map(|v| v.map_or(ExtReal::PosInf, |v| ExtReal::Finite(int(v)))).collect();
    TargetFunction::new(d.clone(), TargetValues::Table(values)).unwrap()
}

pub fn forms(set: &MemberSet) -> BTreeSet<Form> {
    set.members().map(|m| m.form().clone()).collect()
}

pub fn oracle_forms(set: &BTreeSet<Table>) -> BTreeSet<Form> {
    set.iter().map(form).collect()
}

pub fn ext(v: Option<i64>) -> ExtReal {
    v.map_or(ExtReal::NegInf, |v| ExtReal::Finite(int(v)))
}

pub fn at(i: usize) -> Point {
    Point::Grid(i)
}

// Strategies.

/// A family of distinct tables on `n` points.
pub fn family_strategy(n: usize, max_len: usize) -> impl Strategy<Value = Vec<Table>> {
    prop::collection::vec(prop::collection::vec(-4i64..=4, n), 1..=max_len).prop_map(|mut fam| {
        let mut seen = BTreeSet::new();
        fam.retain(|t| seen.insert(t.clone()));
        fam
    })
}

/// A function with at least one finite value.
pub fn values_strategy(n: usize) -> impl Strategy<Value = Values> {
    prop::collection::vec(prop::option::weighted(0.8, -4i64..=4), n)
        .prop_filter("empty domain", |f| f.iter().any(Option::is_some))
}

pub fn point_set_strategy(n: usize) -> impl Strategy<Value = BTreeSet<usize>> {
    prop::collection::btree_set(0..n, 1..=n)
}
