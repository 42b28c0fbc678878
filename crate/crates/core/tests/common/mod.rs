#![allow(dead_code)]

use dynstab::cohomology::{geometric_r, stab_matrix};
use dynstab::combinatorics::{leq_sigma, permutations, subsets};
use dynstab::context::Context;
use dynstab::symalg::{LaurentSeries, Matrix, Monomial, Var};
use dynstab::{Poly, RatF, Rational};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub type Outcome = Result<(), TestCaseError>;

pub fn vars() -> [Var; 4] {
    let vt = Context::get(2).unwrap().vars();
    [Var::LAMBDA, Var::Y, vt.z(1), vt.z(2)]
}

fn poly_from(terms: &[(i64, [u32; 4])], pool: [Var; 4]) -> Poly {
    Poly::from_terms(terms.iter().map(|(c, e)| {
        let m = pool.iter().zip(e).fold(Monomial::default(), |m, (v, &k)| m.mul(&Monomial::var_pow(*v, k)));
        (m, Rational::from_integer((*c).into()))
    }))
}

pub fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((-5i64..=5, [0u32..=2, 0u32..=2, 0u32..=2, 0u32..=2]), 0..4).prop_map(|t| poly_from(&t, vars()))
}

pub fn small_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((-3i64..=3, [0u32..=1, 0u32..=1, 0u32..=1, 0u32..=1]), 1..3).prop_map(|t| poly_from(&t, vars()))
}

pub fn nonzero_poly() -> impl Strategy<Value = Poly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

pub fn ratf() -> impl Strategy<Value = RatF> {
    (poly(), nonzero_poly()).prop_map(|(n, d)| RatF::new(n, d).unwrap())
}

/// `(a w + b)/(w + c)` with `a, b, c` free of `w`: regular at `w = ∞`.
pub fn regular_at_infinity() -> impl Strategy<Value = RatF> {
    (poly(), poly(), poly()).prop_map(|(a, b, c)| {
        let w = Poly::var(Var::W);
        RatF::new(&(&a * &w) + &b, &w + &c).unwrap()
    })
}

pub fn matrix_entries() -> impl Strategy<Value = Vec<Poly>> {
    prop::collection::vec(small_poly(), 9)
}

pub fn order_input() -> impl Strategy<Value = (usize, usize, usize, usize, usize, usize)> {
    (1usize..=4, 0usize..24, 0usize..=4, 0usize..6, 0usize..6, 0usize..6)
}

#[allow(clippy::eq_op)]
pub fn ring_axioms(a: &Poly, b: &Poly, c: &Poly) -> Outcome {
    prop_assert_eq!(&(a + b) + c, a + &(b + c));
    prop_assert_eq!(&(a * b) * c, a * &(b * c));
    prop_assert_eq!(a * b, b * a);
    prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
    prop_assert!((a - a).is_zero());
    prop_assert_eq!(a * &Poly::one(), a.clone());
    Ok(())
}

pub fn exact_division(a: &Poly, b: &Poly) -> Outcome {
    prop_assert_eq!((a * b).div_exact(b), Some(a.clone()));
    Ok(())
}

pub fn field_axioms(a: &RatF, b: &RatF, c: &RatF) -> Outcome {
    prop_assert_eq!(&(a + b) + c, a + &(b + c));
    prop_assert_eq!(&(a * b) * c, a * &(b * c));
    prop_assert_eq!(a + b, b + a);
    prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
    if !a.is_zero() {
        prop_assert!((a * &a.inv().unwrap()).is_one());
    }
    Ok(())
}

pub fn automorphisms(a: &RatF, b: &RatF, m: i64) -> Outcome {
    prop_assert_eq!((a * b).shift_lambda(m), &a.shift_lambda(m) * &b.shift_lambda(m));
    prop_assert_eq!((a + b).shift_lambda(m), &a.shift_lambda(m) + &b.shift_lambda(m));
    prop_assert_eq!(a.shift_lambda(m).shift_lambda(-m), a.clone());
    let [_, _, z1, z2] = vars();
    prop_assert_eq!((a * b).swap_vars(z1, z2), &a.swap_vars(z1, z2) * &b.swap_vars(z1, z2));
    prop_assert_eq!(a.swap_vars(z1, z2).swap_vars(z1, z2), a.clone());
    Ok(())
}

pub fn laurent_homomorphism(f: &RatF, g: &RatF) -> Outcome {
    let order = 4;
    let ef = LaurentSeries::expand(f, Var::W, order).unwrap();
    let eg = LaurentSeries::expand(g, Var::W, order).unwrap();
    prop_assert_eq!(LaurentSeries::expand(&(f * g), Var::W, order).unwrap(), ef.mul_truncated(&eg));
    prop_assert_eq!(LaurentSeries::expand(&(f + g), Var::W, order).unwrap(), ef.add(&eg));
    Ok(())
}

pub fn matrix_inverse(entries: &[Poly]) -> Outcome {
    let rows: Vec<Vec<RatF>> = entries.chunks(3).map(|r| r.iter().cloned().map(RatF::from_poly).collect()).collect();
    let m = Matrix::from_rows(rows).unwrap();
    match m.inverse() {
        Ok(inv) => {
            prop_assert!(m.checked_mul(&inv).unwrap().is_identity());
            prop_assert!(inv.checked_mul(&m).unwrap().is_identity());
            prop_assert!((&m.determinant().unwrap() * &inv.determinant().unwrap()).is_one());
        }
        Err(_) => prop_assert!(m.determinant().unwrap().is_zero()),
    }
    Ok(())
}

pub fn partial_order((n, p, k, i, j, l): (usize, usize, usize, usize, usize, usize)) -> Outcome {
    let k = k.min(n);
    let perms = permutations(n);
    let sigma = &perms[p % perms.len()];
    let s = subsets(n, k);
    let (a, b, c) = (&s[i % s.len()], &s[j % s.len()], &s[l % s.len()]);
    prop_assert!(leq_sigma(a, a, sigma).unwrap());
    if leq_sigma(a, b, sigma).unwrap() && leq_sigma(b, a, sigma).unwrap() {
        prop_assert_eq!(a, b);
    }
    if leq_sigma(a, b, sigma).unwrap() && leq_sigma(b, c, sigma).unwrap() {
        prop_assert!(leq_sigma(a, c, sigma).unwrap());
    }
    Ok(())
}

pub fn triangular(n: usize, p: usize, k: usize) -> Outcome {
    let perms = permutations(n);
    let sigma = &perms[p % perms.len()];
    prop_assert!(stab_matrix(sigma, k.min(n)).unwrap().is_triangular().unwrap());
    Ok(())
}

pub fn cocycle(a: usize, b: usize, c: usize) -> Outcome {
    let perms = permutations(3);
    let (a, b, c) = (&perms[a], &perms[b], &perms[c]);
    let lhs = geometric_r(a, b).unwrap().compose(&geometric_r(b, c).unwrap());
    prop_assert_eq!(lhs, geometric_r(a, c).unwrap());
    Ok(())
}
