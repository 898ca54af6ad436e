//! Cohomological and grading invariants on catalog algebras under random
//! changes of basis and weight manipulations.

use nilgrade_core::catalog::{self, CatalogEntry};
use nilgrade_core::linalg::scalar;
use nilgrade_core::{
    betti_numbers, ce_differential, check_conditions, enumerate_gradings, find_grading, graded_betti, is_homogeneous,
    LieAlgebra, Mode, RationalMatrix,
};
use proptest::prelude::*;

fn small_catalog() -> Vec<&'static CatalogEntry> {
    catalog::catalog().iter().filter(|e| e.algebra.dim() <= 5).collect()
}

fn entry() -> impl Strategy<Value = &'static CatalogEntry> {
    let entries = catalog::catalog();
    (0..entries.len()).prop_map(move |i| &entries[i])
}

/// Unit lower-triangular times a signed permutation: always invertible.
fn change(n: usize) -> impl Strategy<Value = RationalMatrix> {
    (
        proptest::collection::vec(-2i64..=2, n * n),
        Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
        proptest::collection::vec(prop_oneof![Just(1i64), Just(-1i64), Just(2i64)], n),
    )
        .prop_map(move |(entries, perm, signs)| {
            let rows = (0..n)
                .map(|r| {
                    let mut row = vec![scalar(0); n];
                    for c in 0..r {
                        row[perm[c]] = scalar(entries[r * n + c]);
                    }
                    row[perm[r]] = scalar(signs[r]);
                    row
                })
                .collect();
            RationalMatrix::from_rows(n, rows).unwrap()
        })
}

fn entry_with_change() -> impl Strategy<Value = (&'static CatalogEntry, RationalMatrix)> {
    entry().prop_flat_map(|e| (Just(e), change(e.algebra.dim())))
}

fn check_cohomology(l: &LieAlgebra) -> Result<Vec<usize>, TestCaseError> {
    let n = l.dim();
    for k in 0..n.saturating_sub(1) {
        let dd = ce_differential(l, k + 1).unwrap().mul(&ce_differential(l, k).unwrap()).unwrap();
        prop_assert!(dd.is_zero(), "{}: d∘d != 0 at degree {k}", l.name());
    }
    let b = betti_numbers(l, n).unwrap();
    let euler: i64 = b.iter().enumerate().map(|(k, &x)| if k % 2 == 0 { x as i64 } else { -(x as i64) }).sum();
    prop_assert_eq!(euler, 0);
    for k in 0..=n {
        prop_assert_eq!(b[k], b[n - k]);
    }
    let c1 = l.lower_central_series().unwrap().dims[1];
    prop_assert_eq!(b[1], n - c1);
    Ok(b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cohomology_invariants_survive_basis_change((e, m) in entry_with_change()) {
        let original = check_cohomology(&e.algebra)?;
        let changed = e.algebra.change_basis(&m).unwrap().validated().unwrap();
        let b = check_cohomology(&changed)?;
        prop_assert_eq!(b, original);
        prop_assert_eq!(changed.p_filiform_degree().unwrap(), e.algebra.p_filiform_degree().unwrap());
    }

    #[test]
    fn graded_betti_sums_to_betti(i in 0usize..32, bound in 1i64..=3) {
        let entries = small_catalog();
        let l = &entries[i % entries.len()].algebra;
        let b = betti_numbers(l, l.dim()).unwrap();
        for w in enumerate_gradings(l, bound).unwrap() {
            for (j, &bj) in b.iter().enumerate().skip(1) {
                prop_assert_eq!(graded_betti(l, &w, j).unwrap().total(), bj);
            }
        }
    }
}

#[test]
fn doubling_keeps_homogeneity_and_forces_parity() {
    for e in small_catalog() {
        let l = &e.algebra;
        for w in enumerate_gradings(l, 2).unwrap() {
            let d = w.doubled();
            assert!(is_homogeneous(l, &d).unwrap().homogeneous);
            let r = check_conditions(l, &d).unwrap();
            assert_eq!(r.h_pass, Some(true), "{}: doubled {w}", e.name);
            for j in 1..=2 {
                let before = graded_betti(l, &w, j).unwrap();
                let after = graded_betti(l, &d, j).unwrap();
                let shifted: Vec<_> = before.by_degree.iter().map(|(k, v)| (2 * k, *v)).collect();
                assert_eq!(after.by_degree.into_iter().collect::<Vec<_>>(), shifted);
            }
        }
    }
}

#[test]
fn trivial_extensions_transfer_conditions() {
    for e in small_catalog() {
        let l = &e.algebra;
        if let Some(w) = find_grading(l, 4, Mode::W).unwrap().first() {
            for m in 1..=3 {
                let g = l.direct_sum_abelian(m);
                let r = check_conditions(&g, &w.extended(m, -1).unwrap()).unwrap();
                assert_eq!(r.w_pass, Some(true), "{} + K^{m}", e.name);
            }
        }
        if let Some(w) = find_grading(l, 4, Mode::Wh).unwrap().first() {
            let g = l.direct_sum_abelian(2);
            let r = check_conditions(&g, &w.extended(2, -1).unwrap()).unwrap();
            assert!(r.passes(Mode::Wh), "{} + K^2", e.name);
        }
    }
}
