use super::poly::Polynomial;
use super::ratfunc::RationalFunction;
use super::scalar::Scalar;
use super::vars::Var;
use crate::error::{Error, Result};

/// Truncated expansion `Σ_{s=0}^{S} c_s v^{-s}` of a function regular at `v = ∞`.
#[derive(Clone, Debug)]
pub struct LaurentSeries<C> {
    var: Var,
    coeffs: Vec<RationalFunction<C>>,
}

impl<C: Scalar> PartialEq for LaurentSeries<C> {
    fn eq(&self, other: &Self) -> bool {
        self.var == other.var && self.coeffs == other.coeffs
    }
}

impl<C: Scalar> LaurentSeries<C> {
    /// Expand `f` in `v^{-1}` through order `order` by long division.
    pub fn expand(f: &RationalFunction<C>, var: Var, order: usize) -> Result<Self> {
        let num = f.num();
        let den = f.den();
        let dn = num.degree_in(var) as usize;
        let dd = den.degree_in(var) as usize;
        if !num.is_zero() && dn > dd {
            return Err(Error::PoleAtInfinity(format!("variable #{}", var.index())));
        }
        let nc = num.coefficients_in(var);
        let dc = den.coefficients_in(var);
        // a_s, b_s: coefficients of v^{dd - s}
        let pick = |cs: &[Polynomial<C>], s: usize| -> Polynomial<C> {
            if s > dd {
                return Polynomial::zero();
            }
            cs.get(dd - s).cloned().unwrap_or_else(Polynomial::zero)
        };
        let b0 = RationalFunction::from_poly(pick(&dc, 0));
        let b0_inv = b0.inv().expect("leading coefficient of the denominator is nonzero");
        let bs: Vec<RationalFunction<C>> = (0..=order).map(|s| pick(&dc, s).into()).collect();
        let mut coeffs: Vec<RationalFunction<C>> = Vec::with_capacity(order + 1);
        for s in 0..=order {
            let mut acc: RationalFunction<C> = pick(&nc, s).into();
            for j in 1..=s {
                if !bs[j].is_zero() {
                    acc = &acc - &(&bs[j] * &coeffs[s - j]);
                }
            }
            coeffs.push(&acc * &b0_inv);
        }
        Ok(LaurentSeries { var, coeffs })
    }

    pub fn from_coeffs(var: Var, coeffs: Vec<RationalFunction<C>>) -> Self {
        LaurentSeries { var, coeffs }
    }

    pub fn var(&self) -> Var {
        self.var
    }

    /// Truncation order `S`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[RationalFunction<C>] {
        &self.coeffs
    }

    pub fn coeff(&self, s: usize) -> &RationalFunction<C> {
        &self.coeffs[s]
    }

    /// Product truncated to the smaller of the two orders.
    pub fn mul_truncated(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|s| (0..=s).map(|j| &self.coeffs[j] * &other.coeffs[s - j]).sum())
            .collect();
        LaurentSeries { var: self.var, coeffs }
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order).map(|s| &self.coeffs[s] + &other.coeffs[s]).collect();
        LaurentSeries { var: self.var, coeffs }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type R = RationalFunction<BigRational>;
    type P = Polynomial<BigRational>;

    #[test]
    fn geometric_series() {
        let w = P::var(Var::W);
        let y = P::var(Var::Y);
        let z = P::var(Var::from_index(5));
        let f = R::new(&(&w - &z) + &y, &w - &z).unwrap();
        let s = LaurentSeries::expand(&f, Var::W, 2).unwrap();
        assert!(s.coeff(0).is_one());
        assert_eq!(s.coeff(1), &R::from_poly(y.clone()));
        assert_eq!(s.coeff(2), &R::from_poly(&y * &z));
    }

    #[test]
    fn pole_is_rejected() {
        let w = P::var(Var::W);
        let f = R::from_poly(w);
        assert!(LaurentSeries::expand(&f, Var::W, 1).is_err());
    }
}
