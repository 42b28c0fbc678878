use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::factor::{screen_linear_divides, screen_points, split_linear_factors};
use super::poly::Polynomial;
use super::scalar::{invmod, mulmod, Scalar};
use super::vars::Var;
use crate::error::{Error, Result};

/// Quotient of polynomials with a factored denominator.
///
/// The denominator is a list of distinct monic factors with multiplicities;
/// every factor from the linear dictionary is split out, and no linear
/// denominator factor divides the numerator. Constants live in the
/// numerator, so the expanded denominator always has leading coefficient 1.
#[derive(Clone, Debug)]
pub struct RationalFunction<C> {
    num: Polynomial<C>,
    den: Vec<(Polynomial<C>, u32)>,
}

/// Deterministic total order on polynomials, used to sort factors.
pub(crate) fn poly_order<C: Scalar>(a: &Polynomial<C>, b: &Polynomial<C>) -> Ordering {
    let (ta, tb) = (a.terms(), b.terms());
    ta.len().cmp(&tb.len()).then_with(|| {
        for ((ma, ca), (mb, cb)) in ta.iter().zip(tb) {
            let o = mb.cmp(ma);
            if o != Ordering::Equal {
                return o;
            }
            if ca != cb {
                return ca.to_canonical_string().cmp(&cb.to_canonical_string());
            }
        }
        Ordering::Equal
    })
}

fn insert_factor<C: Scalar>(den: &mut Vec<(Polynomial<C>, u32)>, f: Polynomial<C>, e: u32) {
    if e == 0 {
        return;
    }
    match den.iter_mut().find(|(g, _)| *g == f) {
        Some(slot) => slot.1 += e,
        None => den.push((f, e)),
    }
}

fn sort_factors<C: Scalar>(den: &mut [(Polynomial<C>, u32)]) {
    den.sort_by(|a, b| poly_order(&a.0, &b.0));
}

fn expand<C: Scalar>(factors: &[(Polynomial<C>, u32)]) -> Polynomial<C> {
    factors.iter().fold(Polynomial::one(), |acc, (f, e)| &acc * &f.pow(*e))
}

/// Divide `num` by as many copies of the given factors as possible.
fn cancel_into<C: Scalar>(num: &mut Polynomial<C>, den: &mut [(Polynomial<C>, u32)]) {
    if num.is_zero() {
        return;
    }
    for (f, e) in den.iter_mut() {
        while *e > 0 && !num.is_constant() {
            if f.is_linear() && !screen_linear_divides(num, f) {
                break;
            }
            match num.div_exact(f) {
                Some(q) => {
                    *num = q;
                    *e -= 1;
                }
                None => break,
            }
        }
    }
}

impl<C: Scalar> RationalFunction<C> {
    pub fn zero() -> Self {
        RationalFunction { num: Polynomial::zero(), den: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }

    pub fn from_poly(p: Polynomial<C>) -> Self {
        RationalFunction { num: p, den: Vec::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn from_i64(v: i64) -> Self {
        Self::from_poly(Polynomial::from_i64(v))
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(Polynomial::var(v))
    }

    /// `num / den`, cancelling dictionary factors.
    pub fn new(num: Polynomial<C>, den: Polynomial<C>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut out = Self::from_poly(num);
        out.absorb_denominator(&den);
        Ok(out)
    }

    /// Build from a numerator and already-factored denominator pieces; each
    /// piece is split and normalized.
    pub fn from_factored(num: Polynomial<C>, den: &[(Polynomial<C>, u32)]) -> Result<Self> {
        let mut out = Self::from_poly(num);
        for (f, e) in den {
            if f.is_zero() {
                return Err(Error::DivisionByZero);
            }
            for _ in 0..*e {
                out.absorb_denominator(f);
            }
        }
        Ok(out)
    }

    /// Divide by the nonzero polynomial `d`.
    fn absorb_denominator(&mut self, d: &Polynomial<C>) {
        if self.num.is_zero() {
            return;
        }
        let split = split_linear_factors(d);
        let mut fresh: Vec<(Polynomial<C>, u32)> = split.factors;
        if !split.cofactor.is_constant() {
            fresh.push((split.cofactor, 1));
        }
        self.num = self.num.scale(&(C::one() / split.content));
        cancel_into(&mut self.num, &mut fresh);
        for (f, e) in fresh {
            insert_factor(&mut self.den, f, e);
        }
        sort_factors(&mut self.den);
        if self.num.is_zero() {
            self.den.clear();
        }
    }

    pub fn num(&self) -> &Polynomial<C> {
        &self.num
    }

    /// Expanded denominator.
    pub fn den(&self) -> Polynomial<C> {
        expand(&self.den)
    }

    /// Monic denominator factors with multiplicities.
    pub fn den_factors(&self) -> &[(Polynomial<C>, u32)] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        if self.den.is_empty() {
            return self.num.is_one();
        }
        self.num == expand(&self.den)
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn to_poly(&self) -> Option<Polynomial<C>> {
        self.is_polynomial().then(|| self.num.clone())
    }

    pub fn constant_value(&self) -> Option<C> {
        if self.is_polynomial() {
            self.num.constant_value()
        } else {
            None
        }
    }

    /// Degrees of numerator and denominator in `v`.
    pub fn degrees_in(&self, v: Var) -> (u32, u32) {
        let d = self.den.iter().map(|(f, e)| f.degree_in(v) * e).sum();
        (self.num.degree_in(v), d)
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.num.contains_var(v) || self.den.iter().any(|(f, _)| f.contains_var(v))
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul_poly(&self, p: &Polynomial<C>) -> Self {
        self * &Self::from_poly(p.clone())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut out = Self::from_poly(self.den());
        out.absorb_denominator(&self.num);
        Ok(out)
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i32) -> Self {
        if e == 0 {
            return Self::one();
        }
        let base = if e < 0 { self.inv().expect("negative power of zero") } else { self.clone() };
        let mut out = RationalFunction { num: base.num.pow(e.unsigned_abs()), den: base.den };
        for f in out.den.iter_mut() {
            f.1 *= e.unsigned_abs();
        }
        out
    }

    /// Residue at the point, `None` if the denominator vanishes there.
    pub fn eval_mod(&self, point: &[u64]) -> Option<u64> {
        let n = self.num.eval_mod(point)?;
        let d = self.den.iter().try_fold(1u64, |acc, (f, e)| {
            let v = f.eval_mod(point)?;
            Some(mulmod(acc, super::scalar::powmod(v, *e as u64)))
        })?;
        invmod(d).map(|inv| mulmod(n, inv))
    }

    fn sum(&self, other: &Self, negate: bool) -> Self {
        let rhs_num = if negate { -&other.num } else { other.num.clone() };
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return RationalFunction { num: rhs_num, den: other.den.clone() };
        }
        if self.den == other.den {
            let mut num = &self.num + &rhs_num;
            let mut den = self.den.clone();
            cancel_into(&mut num, &mut den);
            return Self::finish(num, den);
        }
        let mut lcm = self.den.clone();
        for (f, e) in &other.den {
            match lcm.iter_mut().find(|(g, _)| g == f) {
                Some(slot) => slot.1 = slot.1.max(*e),
                None => lcm.push((f.clone(), *e)),
            }
        }
        let cofactor = |den: &[(Polynomial<C>, u32)]| {
            lcm.iter().fold(Polynomial::one(), |acc, (f, e)| {
                let have = den.iter().find(|(g, _)| g == f).map_or(0, |x| x.1);
                if *e > have {
                    &acc * &f.pow(e - have)
                } else {
                    acc
                }
            })
        };
        let mut num = &(&self.num * &cofactor(&self.den)) + &(&rhs_num * &cofactor(&other.den));
        sort_factors(&mut lcm);
        cancel_into(&mut num, &mut lcm);
        Self::finish(num, lcm)
    }

    fn finish(num: Polynomial<C>, mut den: Vec<(Polynomial<C>, u32)>) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        den.retain(|(_, e)| *e > 0);
        RationalFunction { num, den }
    }

    fn product(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut an = self.num.clone();
        let mut bn = other.num.clone();
        let mut aden = self.den.clone();
        let mut bden = other.den.clone();
        cancel_into(&mut an, &mut bden);
        cancel_into(&mut bn, &mut aden);
        let mut den = aden;
        for (f, e) in bden {
            insert_factor(&mut den, f, e);
        }
        den.retain(|(_, e)| *e > 0);
        sort_factors(&mut den);
        RationalFunction { num: &an * &bn, den }
    }

    /// Exact equality by cross-multiplication over the common denominator.
    pub fn equals(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        if self.is_zero() != other.is_zero() {
            return false;
        }
        for pt in screen_points() {
            if let (Some(a), Some(b)) = (self.eval_mod(pt), other.eval_mod(pt)) {
                if a != b {
                    return false;
                }
            }
        }
        self.sum(other, true).is_zero()
    }

    /// Simultaneous substitution `v ↦ f_v`.
    pub fn substitute(&self, bindings: &[(Var, RationalFunction<C>)]) -> Result<Self> {
        if bindings.iter().all(|(_, f)| f.is_polynomial()) {
            let polys: Vec<(Var, Polynomial<C>)> =
                bindings.iter().map(|(v, f)| (*v, f.num.clone())).collect();
            return self.substitute_poly(&polys);
        }
        let num = eval_rational(&self.num, bindings);
        let mut den = Self::one();
        for (f, e) in &self.den {
            let fv = eval_rational(f, bindings);
            if fv.is_zero() {
                return Err(Error::ZeroDenominator);
            }
            den = &den * &fv.pow(*e as i32);
        }
        num.checked_div(&den)
    }

    /// Substitution by polynomials.
    pub fn substitute_poly(&self, bindings: &[(Var, Polynomial<C>)]) -> Result<Self> {
        let num = self.num.substitute(bindings);
        let mut out = Self::from_poly(num);
        for (f, e) in &self.den {
            let g = f.substitute(bindings);
            if g.is_zero() {
                return Err(Error::ZeroDenominator);
            }
            for _ in 0..*e {
                out.absorb_denominator(&g);
            }
        }
        if out.is_zero() {
            return Ok(Self::zero());
        }
        Ok(out)
    }

    /// Rename variables; `map[v]` is the image of `v` and must be injective
    /// on the variables that occur.
    pub fn rename(&self, map: &[Var]) -> Self {
        let mut num = self.num.rename(map);
        let mut den = Vec::with_capacity(self.den.len());
        for (f, e) in &self.den {
            let (c, g) = f.rename(map).make_monic();
            if !c.is_one() {
                let ce = (0..*e).fold(C::one(), |acc, _| acc * c.clone());
                num = num.scale(&(C::one() / ce));
            }
            den.push((g, *e));
        }
        sort_factors(&mut den);
        RationalFunction { num, den }
    }

    pub fn swap_vars(&self, a: Var, b: Var) -> Self {
        let mut map: Vec<Var> = (0..super::vars::MAX_VARS).map(Var::from_index).collect();
        map.swap(a.index(), b.index());
        self.rename(&map)
    }

    /// `λ ↦ λ + m·y`.
    pub fn shift_lambda(&self, m: i64) -> Self {
        if m == 0 {
            return self.clone();
        }
        let img = &Polynomial::var(Var::LAMBDA) + &Polynomial::var(Var::Y).scale(&super::scalar::int(m));
        self.substitute_poly(&[(Var::LAMBDA, img)]).expect("shifts are invertible")
    }

    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> RationalFunction<D> {
        let num = self.num.map_coeffs(&f);
        let den: Vec<(Polynomial<D>, u32)> = self.den.iter().map(|(p, e)| (p.map_coeffs(&f), *e)).collect();
        RationalFunction::from_factored(num, &den).expect("coefficient map keeps denominators nonzero")
    }
}

fn eval_rational<C: Scalar>(p: &Polynomial<C>, bindings: &[(Var, RationalFunction<C>)]) -> RationalFunction<C> {
    let mut acc = RationalFunction::zero();
    for (m, c) in p.terms() {
        let mut kept = super::monomial::Monomial::ONE;
        let mut factor = RationalFunction::constant(c.clone());
        for (v, e) in m.support() {
            match bindings.iter().find(|(b, _)| *b == v) {
                Some((_, f)) => factor = &factor * &f.pow(e as i32),
                None => kept = kept.mul(&super::monomial::Monomial::var_pow(v, e)),
            }
        }
        acc = &acc + &factor.mul_poly(&Polynomial::term(kept, C::one()));
    }
    acc
}

impl<C: Scalar> PartialEq for RationalFunction<C> {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl<C: Scalar> From<Polynomial<C>> for RationalFunction<C> {
    fn from(p: Polynomial<C>) -> Self {
        Self::from_poly(p)
    }
}

impl<C: Scalar> Default for RationalFunction<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Scalar> Add for &RationalFunction<C> {
    type Output = RationalFunction<C>;
    fn add(self, rhs: &RationalFunction<C>) -> RationalFunction<C> {
        self.sum(rhs, false)
    }
}

impl<C: Scalar> Sub for &RationalFunction<C> {
    type Output = RationalFunction<C>;
    fn sub(self, rhs: &RationalFunction<C>) -> RationalFunction<C> {
        self.sum(rhs, true)
    }
}

impl<C: Scalar> Mul for &RationalFunction<C> {
    type Output = RationalFunction<C>;
    fn mul(self, rhs: &RationalFunction<C>) -> RationalFunction<C> {
        self.product(rhs)
    }
}

impl<C: Scalar> Div for &RationalFunction<C> {
    type Output = RationalFunction<C>;
    fn div(self, rhs: &RationalFunction<C>) -> RationalFunction<C> {
        self.checked_div(rhs).expect("division by the zero rational function")
    }
}

impl<C: Scalar> Neg for &RationalFunction<C> {
    type Output = RationalFunction<C>;
    fn neg(self) -> RationalFunction<C> {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl<C: Scalar> Neg for RationalFunction<C> {
    type Output = RationalFunction<C>;
    fn neg(self) -> RationalFunction<C> {
        RationalFunction { num: -self.num, den: self.den }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl<C: Scalar> $tr for RationalFunction<C> {
            type Output = RationalFunction<C>;
            fn $method(self, rhs: RationalFunction<C>) -> RationalFunction<C> {
                (&self).$method(&rhs)
            }
        }
        impl<C: Scalar> $tr<&RationalFunction<C>> for RationalFunction<C> {
            type Output = RationalFunction<C>;
            fn $method(self, rhs: &RationalFunction<C>) -> RationalFunction<C> {
                (&self).$method(rhs)
            }
        }
        impl<C: Scalar> $tr<RationalFunction<C>> for &RationalFunction<C> {
            type Output = RationalFunction<C>;
            fn $method(self, rhs: RationalFunction<C>) -> RationalFunction<C> {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl<C: Scalar> std::ops::AddAssign<&RationalFunction<C>> for RationalFunction<C> {
    fn add_assign(&mut self, rhs: &RationalFunction<C>) {
        *self = self.sum(rhs, false);
    }
}

impl<C: Scalar> std::ops::SubAssign<&RationalFunction<C>> for RationalFunction<C> {
    fn sub_assign(&mut self, rhs: &RationalFunction<C>) {
        *self = self.sum(rhs, true);
    }
}

impl<C: Scalar> std::ops::MulAssign<&RationalFunction<C>> for RationalFunction<C> {
    fn mul_assign(&mut self, rhs: &RationalFunction<C>) {
        *self = self.product(rhs);
    }
}

impl<C: Scalar> std::iter::Sum for RationalFunction<C> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| a + b)
    }
}

impl<C: Scalar> std::iter::Product for RationalFunction<C> {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |a, b| a * b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type R = RationalFunction<BigRational>;
    type P = Polynomial<BigRational>;

    fn v(i: usize) -> P {
        P::var(Var::from_index(i))
    }

    #[test]
    fn reciprocal_cancels() {
        let lam = v(0);
        let y = v(1);
        let a = R::new(&lam + &y, lam.clone()).unwrap();
        let b = R::new(lam.clone(), &lam + &y).unwrap();
        assert!((&a * &b).is_one());
    }

    #[test]
    fn difference_of_reciprocals() {
        let lam = v(0);
        let y = v(1);
        let a = R::new(P::one(), lam.clone()).unwrap();
        let b = R::new(P::one(), &lam + &y).unwrap();
        let d = &a - &b;
        assert_eq!(d.num(), &y);
        assert_eq!(d.den(), &lam * &(&lam + &y));
    }

    #[test]
    fn equality_ignores_cancellation_state() {
        let lam = v(0);
        let y = v(1);
        let a = R::new(&lam.pow(2) - &y.pow(2), &lam - &y).unwrap();
        assert!(a.is_polynomial());
        assert_eq!(a, R::from_poly(&lam + &y));
        assert_ne!(R::new(lam.clone(), &lam - &y).unwrap(), R::new(lam.clone(), &lam + &y).unwrap());
    }

    #[test]
    fn denominator_sign_is_normalized() {
        let d = &v(6) - &v(5);
        let r = R::new(P::one(), d).unwrap();
        assert!(r.den().leading_coeff() > BigRational::from_integer(0.into()));
        assert_eq!(r.num(), &P::from_i64(-1));
    }

    #[test]
    fn substitution_into_denominator_can_fail() {
        let r = R::new(P::one(), &v(9) - &v(5)).unwrap();
        assert_eq!(r.substitute_poly(&[(Var::from_index(9), v(5))]), Err(Error::ZeroDenominator));
    }

    #[test]
    fn lambda_shift_round_trip() {
        let lam = v(0);
        let y = v(1);
        let r = R::new(&lam - &y, lam.clone()).unwrap();
        let s = r.shift_lambda(-1);
        assert_eq!(s, R::new(&lam - &y.scale(&super::super::scalar::int(2)), &lam - &y).unwrap());
        assert_eq!(s.shift_lambda(1), r);
    }
}
