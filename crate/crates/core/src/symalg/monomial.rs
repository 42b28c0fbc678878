use std::cmp::Ordering;

use super::vars::{Var, MAX_VARS};

/// Exponent vector packed into a `u128`, eight bits per variable.
///
/// Variable 0 lives in the most significant byte, so comparing
/// `(degree, bits)` is graded-lexicographic in registration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    deg: u32,
    bits: u128,
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.deg.cmp(&other.deg).then(self.bits.cmp(&other.bits))
    }
}

#[inline]
fn shift(v: Var) -> u32 {
    8 * (MAX_VARS as u32 - 1 - v.0 as u32)
}

impl Monomial {
    pub const ONE: Monomial = Monomial { deg: 0, bits: 0 };

    pub fn var(v: Var) -> Monomial {
        Monomial::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: u32) -> Monomial {
        assert!(e <= 255, "exponent {e} overflows the packed monomial");
        Monomial { deg: e, bits: (e as u128) << shift(v) }
    }

    pub fn from_exponents(exps: &[u32]) -> Monomial {
        assert!(exps.len() <= MAX_VARS);
        exps.iter().enumerate().fold(Monomial::ONE, |m, (i, &e)| {
            if e == 0 {
                m
            } else {
                m.mul(&Monomial::var_pow(Var(i as u8), e))
            }
        })
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    #[inline]
    pub fn exp(&self, v: Var) -> u32 {
        ((self.bits >> shift(v)) & 0xff) as u32
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        (0..nvars).map(|i| self.exp(Var(i as u8))).collect()
    }

    /// Variables with nonzero exponent, with their exponents.
    pub fn support(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        (0..MAX_VARS as u8).filter_map(move |i| {
            let e = self.exp(Var(i));
            (e > 0).then_some((Var(i), e))
        })
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        if self.deg + other.deg > 255 {
            for i in 0..MAX_VARS as u8 {
                assert!(
                    self.exp(Var(i)) + other.exp(Var(i)) <= 255,
                    "exponent overflow in monomial product"
                );
            }
        }
        Monomial { deg: self.deg + other.deg, bits: self.bits + other.bits }
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.deg > self.deg {
            return None;
        }
        if self.divides_check(other) {
            Some(Monomial { deg: self.deg - other.deg, bits: self.bits - other.bits })
        } else {
            None
        }
    }

    fn divides_check(&self, other: &Monomial) -> bool {
        // every byte of other must be <= the same byte of self
        let mut a = self.bits;
        let mut b = other.bits;
        while b != 0 {
            if (b & 0xff) > (a & 0xff) {
                return false;
            }
            a >>= 8;
            b >>= 8;
        }
        true
    }

    /// Replace the exponent of `v` by zero, returning the removed exponent.
    pub fn without(&self, v: Var) -> (Monomial, u32) {
        let e = self.exp(v);
        (Monomial { deg: self.deg - e, bits: self.bits & !(0xffu128 << shift(v)) }, e)
    }

    /// Apply a variable renaming; exponents of colliding targets add up.
    pub fn rename(&self, map: &[Var]) -> Monomial {
        let mut out = Monomial::ONE;
        for (v, e) in self.support() {
            out = out.mul(&Monomial::var_pow(map[v.index()], e));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let l = Monomial::var(Var(0));
        let y = Monomial::var(Var(1));
        let y2 = Monomial::var_pow(Var(1), 2);
        assert!(l > y);
        assert!(y2 > l);
        assert!(l.mul(&y) < y2.mul(&Monomial::ONE).mul(&Monomial::var(Var(3))));
        assert!(Monomial::ONE < y);
    }

    #[test]
    fn divide_and_rename() {
        let m = Monomial::from_exponents(&[2, 0, 1]);
        let d = Monomial::from_exponents(&[1, 0, 1]);
        assert_eq!(m.div(&d), Some(Monomial::var(Var(0))));
        assert_eq!(d.div(&m), None);
        let swap: Vec<Var> = [2u8, 1, 0].into_iter().map(Var).chain((3..16).map(Var)).collect();
        assert_eq!(m.rename(&swap), Monomial::from_exponents(&[1, 0, 2]));
        assert_eq!(m.without(Var(0)), (Monomial::var(Var(2)), 2));
    }
}
