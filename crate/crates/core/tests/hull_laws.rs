//! Hull operator laws and separation on random grid instances.

mod common;

use std::collections::BTreeSet;

use abscon_core::calculus::{abstract_hull, conjugate, pinned_subdiff_hull_closed};
use abscon_core::domain::PointSet;
use abscon_core::family::MemberSet;
use abscon_core::hull::{co_function, co_set, envelope, is_hull_closed, point_set_hull, separate_point_from_set, support_set};
use abscon_core::numeric::{int, ExtReal};
use common::*;
use proptest::prelude::*;

fn instance() -> impl Strategy<Value = (usize, Vec<Table>, Values)> {
    (2usize..=9).prop_flat_map(|n| (Just(n), family_strategy(n, 8), values_strategy(n)))
}

fn subset(len: usize, mask: &[bool]) -> BTreeSet<usize> {
    (0..len).filter(|&i| mask[i % mask.len()]).collect()
}

/// `{h : h ≤ max_{c ∈ C} c}`.
fn co_oracle(fam: &[Table], c: &BTreeSet<usize>) -> BTreeSet<usize> {
    let n = fam[0].len();
    let top: Vec<Option<i64>> = (0..n).map(|x| c.iter().map(|&i| fam[i][x]).max()).collect();
    (0..fam.len())
        .filter(|&h| (0..n).all(|x| top[x].is_some_and(|t| fam[h][x] <= t)))
        .collect()
}

/// `{y : l(y) ≤ max_{x ∈ Y} l(x) for every l}`.
fn point_hull_oracle(fam: &[Table], ys: &BTreeSet<usize>) -> BTreeSet<usize> {
    let n = fam[0].len();
    (0..n)
        .filter(|&y| fam.iter().all(|l| ys.iter().map(|&x| l[x]).max().is_some_and(|m| l[y] <= m)))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn support_sets_and_function_hulls((n, fam, f) in instance()) {
        let d = grid(n);
        let (h, tf) = (family(&d, &fam), target(&d, &f));
        let supp = support_set(&h, &tf).unwrap();
        let expected: BTreeSet<usize> = (0..fam.len())
            .filter(|&i| (0..n).all(|x| f[x].is_none_or(|v| fam[i][x] <= v)))
            .collect();
        prop_assert_eq!(supp.indices(), &expected);
        // co_H f ≤ f and co_H co_H f = co_H f.
        let co = co_function(&h, &tf).unwrap();
        prop_assert!(tf.dominates_target(&co).unwrap());
        prop_assert!(co_function(&h, &co).unwrap().pointwise_eq(&co));
        // The same for the hull over all vertical shifts.
        let hl = abstract_hull(&tf, &h).unwrap();
        prop_assert!(tf.dominates_target(&hl).unwrap());
        prop_assert!(abstract_hull(&hl, &h).unwrap().pointwise_eq(&hl));
    }

    #[test]
    fn co_set_laws((n, fam, _f) in instance(), a in prop::collection::vec(any::<bool>(), 8), b in prop::collection::vec(any::<bool>(), 8)) {
        let d = grid(n);
        let h = family(&d, &fam);
        let ca = subset(fam.len(), &a);
        let cb: BTreeSet<usize> = ca.union(&subset(fam.len(), &b)).cloned().collect();
        let sa = MemberSet::new(h.clone(), ca.clone()).unwrap();
        let sb = MemberSet::new(h.clone(), cb.clone()).unwrap();
        let (ha, hb) = (co_set(&sa), co_set(&sb));
        prop_assert_eq!(ha.indices(), &co_oracle(&fam, &ca));
        prop_assert!(sa.is_subset(&ha));
        prop_assert!(ha.is_subset(&hb));
        prop_assert_eq!(co_set(&ha), ha.clone());
        // Intersections of hull-closed sets are hull-closed.
        prop_assert!(is_hull_closed(&ha.intersection(&hb)));
        let other = co_set(&MemberSet::new(h.clone(), subset(fam.len(), &b)).unwrap());
        prop_assert!(is_hull_closed(&ha.intersection(&other)));
        // Every envelope's support set is hull-closed.
        prop_assert!(is_hull_closed(&support_set(&h, &envelope(&sa)).unwrap()));
    }

    #[test]
    fn point_set_hull_laws((n, fam, _f) in instance(), ys in point_set_strategy(9), more in point_set_strategy(9)) {
        let d = grid(n);
        let h = family(&d, &fam);
        let ys: BTreeSet<usize> = ys.into_iter().filter(|&i| i < n).collect();
        let zs: BTreeSet<usize> = ys.iter().cloned().chain(more.into_iter().filter(|&i| i < n)).collect();
        let hy = point_set_hull(&h, &PointSet::Grid(ys.clone())).unwrap();
        let hz = point_set_hull(&h, &PointSet::Grid(zs.clone())).unwrap();
        prop_assert_eq!(&hy, &PointSet::Grid(point_hull_oracle(&fam, &ys)));
        prop_assert!(PointSet::Grid(ys.clone()).is_subset(&hy));
        prop_assert!(hy.is_subset(&hz));
        prop_assert_eq!(point_set_hull(&h, &hy).unwrap(), hy.clone());
        prop_assert_eq!(point_set_hull(&h, &hy.intersection(&hz)).unwrap(), hy.intersection(&hz));
    }

    #[test]
    fn sublevel_sets_of_convex_functions((n, fam, f) in instance(), c in -6i64..=6) {
        let d = grid(n);
        let h = family(&d, &fam);
        let convex = abstract_hull(&target(&d, &f), &h).unwrap();
        let s = convex.sublevel(&int(c));
        prop_assert_eq!(point_set_hull(&h, &s).unwrap(), s);
    }

    #[test]
    fn separation_from_hull_closed_sets((n, fam, _f) in instance(), a in prop::collection::vec(any::<bool>(), 8)) {
        let d = grid(n);
        let h = family(&d, &fam);
        let u = co_set(&MemberSet::new(h.clone(), subset(fam.len(), &a)).unwrap());
        let top: Vec<Option<i64>> = (0..n).map(|x| u.indices().iter().map(|&i| fam[i][x]).max()).collect();
        for l in 0..fam.len() {
            if u.contains(l) {
                continue;
            }
            let y = separate_point_from_set(&u, l).unwrap();
            let y = y.grid_index().unwrap();
            prop_assert!(top[y].is_none_or(|t| fam[l][y] > t));
        }
    }

    #[test]
    fn envelope_conjugate_vanishes_on_its_members((n, fam, _f) in instance(), a in prop::collection::vec(any::<bool>(), 8)) {
        let d = grid(n);
        let h = family(&d, &fam);
        let set = MemberSet::new(h.clone(), subset(fam.len(), &a)).unwrap();
        prop_assume!(!set.is_empty());
        let table = conjugate(&envelope(&set), &h).unwrap();
        for &i in set.indices() {
            prop_assert!(table.values[i] <= ExtReal::Finite(int(0)));
        }
    }

    #[test]
    fn pinned_subdifferentials_of_convex_functions((n, fam, f) in instance(), k in 0usize..9) {
        let d = grid(n);
        let h = family(&d, &fam);
        let convex = abstract_hull(&target(&d, &f), &h).unwrap();
        prop_assert!(pinned_subdiff_hull_closed(&convex, &h, &at(k % n)).unwrap());
    }
}
