//! Linear-factor extraction against the dictionary of factor shapes that
//! occur in the constructions: `x_v ± x_u ± x_u' + m·y` with unit
//! coefficients on the non-`y` variables.

use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::Polynomial;
use super::scalar::{addmod, mulmod, negmod, Scalar, SCREEN_PRIME};
use super::vars::{Var, MAX_VARS};

/// Largest `|m|` tried for the `m·y` part of a candidate factor.
pub const MAX_Y_SHIFT: i64 = 16;

const SCREEN_POINTS: usize = 2;

/// Fixed pseudo-random evaluation points, one residue per variable.
pub(crate) fn screen_points() -> &'static [[u64; MAX_VARS]; SCREEN_POINTS] {
    static POINTS: OnceLock<[[u64; MAX_VARS]; SCREEN_POINTS]> = OnceLock::new();
    POINTS.get_or_init(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_d15c_0de5_7ab1);
        let mut pts = [[0u64; MAX_VARS]; SCREEN_POINTS];
        for p in pts.iter_mut() {
            for r in p.iter_mut() {
                *r = rng.gen_range(1..SCREEN_PRIME);
            }
        }
        pts
    })
}

fn residue_i64(m: i64) -> u64 {
    if m >= 0 {
        m as u64 % SCREEN_PRIME
    } else {
        negmod((-m) as u64 % SCREEN_PRIME)
    }
}

/// Univariate images of `p` in `v` at each screening point.
fn univariate_images<C: Scalar>(p: &Polynomial<C>, v: Var) -> Option<Vec<Vec<u64>>> {
    let coeffs = p.coefficients_in(v);
    screen_points()
        .iter()
        .map(|pt| coeffs.iter().map(|c| c.eval_mod(pt)).collect::<Option<Vec<u64>>>())
        .collect()
}

fn horner(coeffs: &[u64], s: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| addmod(mulmod(acc, s), c))
}

/// Quick necessary test for `linear | p`. `false` is definitive; `true`
/// must be confirmed by exact division. Falls back to `true` when a
/// coefficient has no residue.
pub fn screen_linear_divides<C: Scalar>(p: &Polynomial<C>, linear: &Polynomial<C>) -> bool {
    let Some((lm, a)) = linear.leading() else { return false };
    let Some((v, 1)) = lm.support().next() else { return true };
    let Some(a) = a.residue() else { return true };
    let Some(a_inv) = super::scalar::invmod(a) else { return true };
    for pt in screen_points() {
        let mut pt = *pt;
        pt[v.index()] = 0;
        // a·x_v + b = 0  =>  x_v = -b/a
        let Some(b) = linear.eval_mod(&pt) else { return true };
        pt[v.index()] = mulmod(negmod(b), a_inv);
        match p.eval_mod(&pt) {
            Some(0) => {}
            Some(_) => return false,
            None => return true,
        }
    }
    true
}

/// A polynomial split as `content · ∏ factor^e · cofactor`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearSplit<C> {
    pub content: C,
    /// Monic linear factors with multiplicity, in discovery order.
    pub factors: Vec<(Polynomial<C>, u32)>,
    /// Monic remainder with no dictionary linear factor (possibly `1`).
    pub cofactor: Polynomial<C>,
}

/// Divide out every dictionary-shaped linear factor of `p`.
pub fn split_linear_factors<C: Scalar>(p: &Polynomial<C>) -> LinearSplit<C> {
    assert!(!p.is_zero(), "cannot split the zero polynomial");
    let (content, mut rest) = p.make_monic();
    let mut factors: Vec<(Polynomial<C>, u32)> = Vec::new();
    if rest.is_constant() {
        return LinearSplit { content, factors, cofactor: rest };
    }
    if rest.is_linear() {
        factors.push((rest, 1));
        return LinearSplit { content, factors, cofactor: Polynomial::one() };
    }

    let y = Var::Y;
    let support: Vec<Var> = (0..MAX_VARS)
        .map(Var::from_index)
        .filter(|v| rest.support_mask() & (1 << v.index()) != 0)
        .collect();

    let mut take = |rest: &mut Polynomial<C>, cand: Polynomial<C>| {
        let mut e = 0;
        while let Some(q) = rest.div_exact(&cand) {
            *rest = q;
            e += 1;
            if rest.is_constant() {
                break;
            }
        }
        if e > 0 {
            factors.push((cand, e));
        }
    };

    if support.contains(&y) {
        take(&mut rest, Polynomial::var(y));
    }

    for &main in support.iter().filter(|&&v| v != y) {
        if rest.is_constant() {
            break;
        }
        if !rest.contains_var(main) {
            continue;
        }
        let Some(images) = univariate_images(&rest, main) else { continue };
        let others: Vec<Var> =
            support.iter().copied().filter(|&u| u != y && u.index() > main.index()).collect();
        // Sign patterns over at most two companion variables.
        let mut combos: Vec<Vec<(Var, i64)>> = vec![Vec::new()];
        for (i, &u) in others.iter().enumerate() {
            for s in [1i64, -1] {
                combos.push(vec![(u, s)]);
                for &u2 in &others[i + 1..] {
                    for s2 in [1i64, -1] {
                        combos.push(vec![(u, s), (u2, s2)]);
                    }
                }
            }
        }
        let pts = screen_points();
        for combo in &combos {
            if rest.is_constant() {
                break;
            }
            if combo.iter().any(|(u, _)| !rest.contains_var(*u)) {
                continue;
            }
            for m in -MAX_Y_SHIFT..=MAX_Y_SHIFT {
                let hits = (0..SCREEN_POINTS).all(|k| {
                    let pt = &pts[k];
                    // root of x_main + Σ s_u x_u + m y
                    let mut val = mulmod(residue_i64(m), pt[y.index()]);
                    for &(u, s) in combo {
                        val = addmod(val, mulmod(residue_i64(s), pt[u.index()]));
                    }
                    horner(&images[k], negmod(val)) == 0
                });
                if !hits {
                    continue;
                }
                let mut cand = Polynomial::var(main);
                for &(u, s) in combo {
                    cand = &cand + &Polynomial::var(u).scale(&super::scalar::int(s));
                }
                if m != 0 {
                    cand = &cand + &Polynomial::var(y).scale(&super::scalar::int(m));
                }
                take(&mut rest, cand.make_monic().1);
            }
        }
    }
    let (c2, cofactor) = rest.make_monic();
    LinearSplit { content: content * c2, factors, cofactor }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type P = Polynomial<BigRational>;

    fn v(i: usize) -> P {
        P::var(Var::from_index(i))
    }

    #[test]
    fn recovers_planted_factors() {
        // (λ - 2y)(z1 - z2 + y)^2 (t1 - z1) * 3 * (λ^2 + z1 z2 + y^2)
        let y = v(1);
        let f1 = &v(0) - &y.scale(&super::super::scalar::int(2));
        let f2 = &(&v(5) - &v(6)) + &y;
        let f3 = &v(8) - &v(5);
        let irr = &(&v(0).pow(2) + &(&v(5) * &v(6))) + &y.pow(2);
        let p = (&f1 * &f2.pow(2)) * (&f3 * &irr).scale(&super::super::scalar::int(3));
        let split = split_linear_factors(&p);
        let total: u32 = split.factors.iter().map(|f| f.1).sum();
        assert_eq!(total, 4);
        assert_eq!(split.cofactor, irr);
        let rebuilt = split
            .factors
            .iter()
            .fold(split.cofactor.scale(&split.content), |acc, (f, e)| &acc * &f.pow(*e));
        assert_eq!(rebuilt, p);
    }

    #[test]
    fn split_factors_are_monic() {
        // (z1 - z2 - y)(z1 + z3 - 2y) t1
        let y = v(1);
        let f1 = &(&v(5) - &v(6)) - &y;
        let f2 = &(&v(5) + &v(7)) - &y.scale(&super::super::scalar::int(2));
        let p = &(&f1 * &f2) * &v(8);
        let split = split_linear_factors(&p);
        for (f, _) in &split.factors {
            assert_eq!(f.leading_coeff(), BigRational::from_integer(1.into()), "{f:?}");
        }
        let rebuilt = split
            .factors
            .iter()
            .fold(split.cofactor.scale(&split.content), |acc, (f, e)| &acc * &f.pow(*e));
        assert_eq!(rebuilt, p);
    }

    #[test]
    fn screening_rejects_non_divisors() {
        let p = &(&v(5) - &v(6)) * &v(0);
        assert!(screen_linear_divides(&p, &(&v(5) - &v(6))));
        assert!(!screen_linear_divides(&p, &(&v(5) - &v(7))));
    }
}
