//! Heavier symbolic identities on the lifted matrix, at sizes beyond the
//! unit tests.

use casimir_core::algebra::AlgebraKind;
use casimir_core::lifted::{
    expanded_entry, lifted_invariant, symbolic_inverse, x_matrix, GroupElement, GroupKind,
};

#[test]
fn pivotal_identity_holds_at_larger_sizes() {
    // B·X = I·B entrywise, which avoids dividing by the b_ii.
    for kind in [AlgebraKind::T0, AlgebraKind::T] {
        for n in 5..=6u32 {
            let group_kind = GroupKind::for_algebra(kind).unwrap();
            let b = GroupElement::generic(group_kind, n).unwrap();
            let x = x_matrix(kind, n);
            let lifted = lifted_invariant(kind, n).unwrap();
            let lhs = b.entries.mul(&x);
            let rhs = lifted.entries.mul(&b.entries);
            for r in 0..n as usize {
                for c in 0..n as usize {
                    assert_eq!(lhs.get(r, c), rhs.get(r, c), "{kind} n={n} ({r},{c})");
                }
            }
        }
    }
}

#[test]
fn expanded_sum_matches_triple_product_at_n5() {
    for kind in [AlgebraKind::T0, AlgebraKind::T] {
        let n = 5;
        let group_kind = GroupKind::for_algebra(kind).unwrap();
        let b = GroupElement::generic(group_kind, n).unwrap();
        let inv = symbolic_inverse(&b);
        let lifted = lifted_invariant(kind, n).unwrap();
        for (i, j) in lifted.significant_positions() {
            let direct = lifted.entry(i, j);
            let summed = expanded_entry(kind, n, i, j, &b, &inv);
            assert_eq!(direct, &summed, "{kind} I_{i}{j}");
        }
    }
}
