use std::cmp::Ordering;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use rustc_hash::FxHashMap;

use super::monomial::Monomial;
use super::scalar::{addmod, int, mulmod, powmod, Scalar};
use super::vars::{Var, MAX_VARS};

/// Sparse multivariate polynomial.
///
/// Terms are kept sorted in descending graded-lex order and never carry a
/// zero coefficient; the zero polynomial has no terms.
#[derive(Clone, Debug, PartialEq, Hash, Eq)]
pub struct Polynomial<C> {
    terms: Vec<(Monomial, C)>,
}

impl<C: Scalar> Default for Polynomial<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Scalar> Polynomial<C> {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Polynomial { terms: vec![(Monomial::ONE, c)] }
        }
    }

    pub fn from_i64(v: i64) -> Self {
        Self::constant(int(v))
    }

    pub fn var(v: Var) -> Self {
        Polynomial { terms: vec![(Monomial::var(v), C::one())] }
    }

    pub fn term(m: Monomial, c: C) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Polynomial { terms: vec![(m, c)] }
        }
    }

    /// Build from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut acc: FxHashMap<Monomial, C> = FxHashMap::default();
        for (m, c) in terms {
            match acc.get_mut(&m) {
                Some(slot) => *slot = slot.clone() + c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Self::from_map(acc)
    }

    fn from_map(acc: FxHashMap<Monomial, C>) -> Self {
        let mut terms: Vec<(Monomial, C)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Polynomial { terms }
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn constant_value(&self) -> Option<C> {
        match self.terms.as_slice() {
            [] => Some(C::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> C {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => C::zero(),
        }
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms
            .binary_search_by(|(t, _)| m.cmp(t))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| C::zero())
    }

    pub fn leading(&self) -> Option<&(Monomial, C)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> C {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_else(C::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|t| t.0.degree())
    }

    /// Degree if every term has the same total degree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.total_degree()?;
        self.terms.iter().all(|t| t.0.degree() == d).then_some(d)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.iter().map(|t| t.0.exp(v)).max().unwrap_or(0)
    }

    /// Bitmask of variables that occur.
    pub fn support_mask(&self) -> u32 {
        let mut mask = 0u32;
        for (m, _) in &self.terms {
            for (v, _) in m.support() {
                mask |= 1 << v.index();
            }
        }
        mask
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.iter().any(|t| t.0.exp(v) > 0)
    }

    /// True for a non-constant polynomial of total degree one.
    pub fn is_linear(&self) -> bool {
        self.total_degree() == Some(1)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, a)| (*m, a.clone() * c.clone())).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        // Multiplying by a monomial preserves the term order.
        Polynomial { terms: self.terms.iter().map(|(t, a)| (t.mul(m), a.clone() * c.clone())).collect() }
    }

    /// Scale so the leading coefficient is one; returns the removed factor.
    pub fn make_monic(&self) -> (C, Self) {
        let lc = self.leading_coeff();
        if lc.is_zero() || lc.is_one() {
            return (if lc.is_zero() { C::one() } else { lc }, self.clone());
        }
        let inv = C::one() / lc.clone();
        (lc, self.scale(&inv))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -b[j].1.clone() } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { a[i].1.clone() - b[j].1.clone() } else { a[i].1.clone() + b[j].1.clone() };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let c = if negate { -t.1.clone() } else { t.1.clone() };
            out.push((t.0, c));
        }
        Polynomial { terms: out }
    }

    fn product(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_monomial(m, c);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_monomial(m, c);
        }
        let mut acc: FxHashMap<Monomial, C> =
            FxHashMap::with_capacity_and_hasher(self.terms.len() * other.terms.len() / 2, Default::default());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca.clone() * cb.clone();
                match acc.get_mut(&m) {
                    Some(slot) => *slot = std::mem::replace(slot, C::zero()) + c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Self::from_map(acc)
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder. Division with remainder against a single divisor under
    /// graded-lex: a multiple of `divisor` never gets stuck, so the first
    /// irreducible leading term proves non-divisibility.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some(c) = divisor.constant_value() {
            return Some(self.scale(&(C::one() / c)));
        }
        if let Some(q) = self.div_by_unit_linear(divisor) {
            return q;
        }
        let (lm, lc) = divisor.terms[0].clone();
        let lc_inv = C::one() / lc;
        let mut rem = self.clone();
        let mut quotient: Vec<(Monomial, C)> = Vec::new();
        while let Some((m, c)) = rem.terms.first().cloned() {
            let qm = m.div(&lm)?;
            let qc = c * lc_inv.clone();
            let sub = divisor.mul_monomial(&qm, &qc);
            rem = rem.merge(&sub, true);
            quotient.push((qm, qc));
        }
        // Quotient terms come out in strictly decreasing order.
        Some(Polynomial { terms: quotient })
    }

    /// Synthetic division by `a·v + b` with `a` constant and `b` free of `v`.
    /// Returns `None` when the divisor does not have that shape.
    fn div_by_unit_linear(&self, divisor: &Self) -> Option<Option<Self>> {
        let (lm, a) = &divisor.terms[0];
        if lm.degree() != 1 {
            return None;
        }
        let (v, _) = lm.support().next()?;
        if divisor.terms[1..].iter().any(|t| t.0.exp(v) > 0) {
            return None;
        }
        let b = Polynomial { terms: divisor.terms[1..].to_vec() };
        let a_inv = C::one() / a.clone();
        let mut coeffs = self.coefficients_in(v);
        let d = coeffs.len() - 1;
        if d == 0 {
            return Some(None);
        }
        // p = sum_j c_j v^j ; q_{j-1} = (c_j - b q_j) / a, descending.
        let mut q: Vec<Self> = vec![Self::zero(); d];
        let mut carry = Self::zero();
        for j in (1..=d).rev() {
            let cj = std::mem::take(&mut coeffs[j]);
            let qj = (&cj - &(&b * &carry)).scale(&a_inv);
            q[j - 1] = qj.clone();
            carry = qj;
        }
        if &coeffs[0] - &(&b * &carry) != Self::zero() {
            return Some(None);
        }
        let vm = |j: usize| Monomial::var_pow(v, j as u32);
        let terms = q
            .iter()
            .enumerate()
            .flat_map(|(j, qj)| qj.terms.iter().map(move |(m, c)| (m.mul(&vm(j)), c.clone())));
        Some(Some(Self::from_terms(terms)))
    }

    /// `(q, r)` with `self = q·divisor + r`, where no term of `r` is divisible
    /// by the leading monomial of `divisor`.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let (lm, lc) = divisor.terms[0].clone();
        let lc_inv = C::one() / lc;
        let mut rem = self.clone();
        let mut quotient = Vec::new();
        let mut remainder = Vec::new();
        while let Some((m, c)) = rem.terms.first().cloned() {
            match m.div(&lm) {
                Some(qm) => {
                    let qc = c * lc_inv.clone();
                    rem = rem.merge(&divisor.mul_monomial(&qm, &qc), true);
                    quotient.push((qm, qc));
                }
                None => {
                    remainder.push((m, c));
                    rem.terms.remove(0);
                }
            }
        }
        (Polynomial::from_terms(quotient), Polynomial { terms: remainder })
    }

    /// Rename variables (`map[v]` is the image of `v`); images may collide.
    pub fn rename(&self, map: &[Var]) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (m.rename(map), c.clone())))
    }

    /// Exchange two variables.
    pub fn swap_vars(&self, a: Var, b: Var) -> Self {
        let mut map: Vec<Var> = (0..MAX_VARS).map(Var::from_index).collect();
        map.swap(a.index(), b.index());
        self.rename(&map)
    }

    /// Simultaneous substitution of polynomials for variables.
    pub fn substitute(&self, bindings: &[(Var, Self)]) -> Self {
        if bindings.is_empty() {
            return self.clone();
        }
        let mut targets: Vec<Option<&Self>> = vec![None; MAX_VARS];
        for (v, p) in bindings {
            targets[v.index()] = Some(p);
        }
        // Cache of powers per bound variable.
        let mut powers: Vec<Vec<Self>> = vec![Vec::new(); MAX_VARS];
        let mut acc: FxHashMap<Monomial, C> = FxHashMap::default();
        for (m, c) in &self.terms {
            let mut kept = Monomial::ONE;
            let mut factor = Self::constant(c.clone());
            for (v, e) in m.support() {
                match targets[v.index()] {
                    None => kept = kept.mul(&Monomial::var_pow(v, e)),
                    Some(p) => {
                        let cache = &mut powers[v.index()];
                        if cache.is_empty() {
                            cache.push(Self::one());
                        }
                        while cache.len() <= e as usize {
                            let next = &cache[cache.len() - 1] * p;
                            cache.push(next);
                        }
                        factor = &factor * &cache[e as usize];
                    }
                }
            }
            for (fm, fc) in factor.terms {
                let mm = fm.mul(&kept);
                match acc.get_mut(&mm) {
                    Some(slot) => *slot = std::mem::replace(slot, C::zero()) + fc,
                    None => {
                        acc.insert(mm, fc);
                    }
                }
            }
        }
        Self::from_map(acc)
    }

    /// Coefficients of `v^0, v^1, ...` as polynomials free of `v`.
    pub fn coefficients_in(&self, v: Var) -> Vec<Self> {
        let d = self.degree_in(v) as usize;
        let mut buckets: Vec<Vec<(Monomial, C)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            let (rest, e) = m.without(v);
            buckets[e as usize].push((rest, c.clone()));
        }
        buckets.into_iter().map(Self::from_terms).collect()
    }

    /// Evaluate modulo the screening prime at `point` (one residue per
    /// variable). `None` when a coefficient has no residue.
    pub fn eval_mod(&self, point: &[u64]) -> Option<u64> {
        let mut acc = 0u64;
        for (m, c) in &self.terms {
            let mut v = c.residue()?;
            for (var, e) in m.support() {
                v = mulmod(v, powmod(point[var.index()], e as u64));
            }
            acc = addmod(acc, v);
        }
        Some(acc)
    }

    /// Map every coefficient through `f`.
    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))))
    }
}

impl<C: Scalar> Add for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        self.merge(rhs, false)
    }
}

impl<C: Scalar> Sub for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        self.merge(rhs, true)
    }
}

impl<C: Scalar> Mul for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        self.product(rhs)
    }
}

impl<C: Scalar> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        Polynomial { terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl<C: Scalar> $tr for Polynomial<C> {
            type Output = Polynomial<C>;
            fn $method(self, rhs: Polynomial<C>) -> Polynomial<C> {
                (&self).$method(&rhs)
            }
        }
        impl<C: Scalar> $tr<&Polynomial<C>> for Polynomial<C> {
            type Output = Polynomial<C>;
            fn $method(self, rhs: &Polynomial<C>) -> Polynomial<C> {
                (&self).$method(rhs)
            }
        }
        impl<C: Scalar> $tr<Polynomial<C>> for &Polynomial<C> {
            type Output = Polynomial<C>;
            fn $method(self, rhs: Polynomial<C>) -> Polynomial<C> {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<C: Scalar> Neg for Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        -&self
    }
}

impl<C: Scalar> AddAssign<&Polynomial<C>> for Polynomial<C> {
    fn add_assign(&mut self, rhs: &Polynomial<C>) {
        *self = self.merge(rhs, false);
    }
}

impl<C: Scalar> SubAssign<&Polynomial<C>> for Polynomial<C> {
    fn sub_assign(&mut self, rhs: &Polynomial<C>) {
        *self = self.merge(rhs, true);
    }
}

impl<C: Scalar> std::iter::Sum for Polynomial<C> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| a + b)
    }
}

impl<C: Scalar> std::iter::Product for Polynomial<C> {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |a, b| a * b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type P = Polynomial<BigRational>;

    fn x(i: usize) -> P {
        P::var(Var::from_index(i))
    }

    #[test]
    fn arithmetic_basics() {
        let a = &x(0) + &x(1);
        let b = &x(0) - &x(1);
        let prod = &a * &b;
        assert_eq!(prod, &x(0).pow(2) - &x(1).pow(2));
        assert!((&prod - &prod).is_zero());
        assert_eq!(a.pow(3).len(), 4);
    }

    #[test]
    fn exact_division() {
        let d = &x(5) - &x(6);
        let sq = d.pow(2);
        assert_eq!(sq.div_exact(&d), Some(d.clone()));
        let other = &x(5) - &x(7);
        assert_eq!(d.div_exact(&other), None);
        let (q, r) = (&sq + &P::from_i64(3)).div_rem(&d);
        assert_eq!(q, d);
        assert_eq!(r, P::from_i64(3));
    }

    #[test]
    fn substitution_and_rename() {
        let p = &x(0) * &x(1) + x(2);
        let s = p.substitute(&[(Var::from_index(0), &x(1) + &P::one())]);
        assert_eq!(s, &x(1).pow(2) + &x(1) + x(2));
        assert_eq!(p.swap_vars(Var::from_index(0), Var::from_index(2)), &x(2) * &x(1) + x(0));
    }

    #[test]
    fn coefficient_extraction() {
        let p = &x(2).pow(2) * &x(0) + &x(2) * &x(1) + P::from_i64(7);
        let cs = p.coefficients_in(Var::from_index(2));
        assert_eq!(cs, vec![P::from_i64(7), x(1), x(0)]);
    }
}
