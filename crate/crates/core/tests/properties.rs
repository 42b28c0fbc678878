mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polynomial_ring_axioms(a in poly(), b in poly(), c in poly()) {
        ring_axioms(&a, &b, &c)?;
    }

    #[test]
    fn exact_division_inverts_multiplication(a in poly(), b in nonzero_poly()) {
        exact_division(&a, &b)?;
    }

    #[test]
    fn rational_field_axioms(a in ratf(), b in ratf(), c in ratf()) {
        field_axioms(&a, &b, &c)?;
    }

    #[test]
    fn lambda_shift_and_swap_are_automorphisms(a in ratf(), b in ratf(), m in -3i64..=3) {
        automorphisms(&a, &b, m)?;
    }

    #[test]
    fn laurent_expansion_is_a_homomorphism(f in regular_at_infinity(), g in regular_at_infinity()) {
        laurent_homomorphism(&f, &g)?;
    }

    #[test]
    fn matrix_inverse_verifies(entries in matrix_entries()) {
        matrix_inverse(&entries)?;
    }

    #[test]
    fn sigma_order_is_a_partial_order(input in order_input()) {
        partial_order(input)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn stable_envelopes_are_triangular(n in 1usize..=3, p in 0usize..6, k in 0usize..=3) {
        triangular(n, p, k)?;
    }

    #[test]
    fn geometric_r_is_a_cocycle(a in 0usize..6, b in 0usize..6, c in 0usize..6) {
        cocycle(a, b, c)?;
    }
}
