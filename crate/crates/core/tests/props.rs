//! Property-based invariants of the expression kernel: the polynomial ring
//! laws and the canonical form of rational expressions.

use num::BigRational;
use proptest::prelude::*;

use casimir_core::{Monomial, MultiPoly, RationalExpr, VarId};

fn arb_poly(max_terms: usize) -> impl Strategy<Value = MultiPoly> {
    proptest::collection::vec(
        (
            proptest::collection::vec((1u32..=4, 1u32..=4, 1u32..=2), 0..3),
            -9i64..=9,
            1i64..=4,
        ),
        0..=max_terms,
    )
    .prop_map(|terms| {
        MultiPoly::from_terms(terms.into_iter().map(|(vars, num, den)| {
            let pairs: Vec<(VarId, u32)> = vars
                .into_iter()
                .map(|(i, j, e)| (VarId::x(i, j), e))
                .collect();
            (
                Monomial::from_pairs(&pairs),
                BigRational::new(num.into(), den.into()),
            )
        }))
    })
}

proptest! {
    #[test]
    fn polynomials_form_a_commutative_ring(
        a in arb_poly(4),
        b in arb_poly(4),
        c in arb_poly(3),
    ) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        prop_assert_eq!(a.mul(&MultiPoly::one()), a.clone());
    }

    #[test]
    fn rational_canonical_form_kills_monomial_factors(
        p in arb_poly(3),
        q in arb_poly(3),
        i in 1u32..=4,
        j in 1u32..=4,
        e in 1u32..=2,
        num in 1i64..=9,
        den in 1i64..=4,
    ) {
        prop_assume!(!q.is_zero());
        let t = MultiPoly::from_terms([(
            Monomial::from_pairs(&[(VarId::x(i, j), e)]),
            BigRational::new(num.into(), den.into()),
        )]);
        let plain = RationalExpr::new(p.clone(), q.clone());
        let inflated = RationalExpr::new(p.mul(&t), q.mul(&t));
        // Not just equal as fractions: the stored representation is identical.
        prop_assert_eq!(plain.num(), inflated.num());
        prop_assert_eq!(plain.den(), inflated.den());
    }
}
