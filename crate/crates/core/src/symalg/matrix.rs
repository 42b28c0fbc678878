use std::ops::{Add, Mul, Sub};

use super::poly::Polynomial;
use super::ratfunc::RationalFunction;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Dense matrix over the rational-function field, row-major.
#[derive(Clone, Debug)]
pub struct Matrix<C> {
    rows: usize,
    cols: usize,
    data: Vec<RationalFunction<C>>,
}

impl<C: Scalar> PartialEq for Matrix<C> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl<C: Scalar> Matrix<C> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![RationalFunction::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, RationalFunction::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<RationalFunction<C>>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::SizeMismatch("rows of unequal length".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn diagonal(entries: Vec<RationalFunction<C>>) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.into_iter().enumerate() {
            m.set(i, i, e);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RationalFunction<C> {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RationalFunction<C>) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[RationalFunction<C>] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[RationalFunction<C>] {
        &self.data
    }

    pub fn map(&self, f: impl Fn(&RationalFunction<C>) -> RationalFunction<C>) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(RationalFunction::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::SizeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = RationalFunction::zero();
                for l in 0..self.cols {
                    let (a, b) = (self.get(i, l), other.get(l, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[RationalFunction<C>]) -> Vec<RationalFunction<C>> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// Row `i` times a common denominator, as polynomials, plus that denominator.
    fn cleared_row(&self, i: usize) -> (Vec<Polynomial<C>>, Polynomial<C>) {
        let mut lcm: Vec<(Polynomial<C>, u32)> = Vec::new();
        for e in self.row(i) {
            for (f, k) in e.den_factors() {
                match lcm.iter_mut().find(|(g, _)| g == f) {
                    Some(slot) => slot.1 = slot.1.max(*k),
                    None => lcm.push((f.clone(), *k)),
                }
            }
        }
        let d = lcm.iter().fold(Polynomial::one(), |acc, (f, k)| &acc * &f.pow(*k));
        let row = self
            .row(i)
            .iter()
            .map(|e| {
                if e.is_zero() {
                    return Polynomial::zero();
                }
                let cof = lcm.iter().fold(Polynomial::one(), |acc, (f, k)| {
                    let have = e.den_factors().iter().find(|(g, _)| g == f).map_or(0, |x| x.1);
                    &acc * &f.pow(k - have)
                });
                e.num() * &cof
            })
            .collect();
        (row, d)
    }

    /// Fraction-free forward elimination of `[P | extra]`. Returns the
    /// echelon rows and the sign of the row permutation.
    fn bareiss(mut a: Vec<Vec<Polynomial<C>>>, n: usize) -> Result<(Vec<Vec<Polynomial<C>>>, bool)> {
        let width = a.first().map_or(0, Vec::len);
        let mut prev = Polynomial::one();
        let mut odd = false;
        for k in 0..n {
            if a[k][k].is_zero() {
                // smallest nonzero pivot candidate keeps the swell down
                let swap = (k + 1..n)
                    .filter(|&r| !a[r][k].is_zero())
                    .min_by_key(|&r| a[r][k].len())
                    .ok_or(Error::SingularMatrix)?;
                a.swap(k, swap);
                odd = !odd;
            }
            for i in k + 1..n {
                for j in k + 1..width {
                    let t = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = t.div_exact(&prev).ok_or_else(|| {
                        Error::Internal("inexact division in fraction-free elimination".into())
                    })?;
                }
                a[i][k] = Polynomial::zero();
            }
            prev = a[k][k].clone();
        }
        Ok((a, odd))
    }

    pub fn determinant(&self) -> Result<RationalFunction<C>> {
        if !self.is_square() {
            return Err(Error::SizeMismatch("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(RationalFunction::one());
        }
        let mut rows = Vec::with_capacity(n);
        let mut dens = Polynomial::one();
        for i in 0..n {
            let (r, d) = self.cleared_row(i);
            rows.push(r);
            dens = &dens * &d;
        }
        match Self::bareiss(rows, n) {
            Ok((a, odd)) => {
                let det = if odd { -&a[n - 1][n - 1] } else { a[n - 1][n - 1].clone() };
                RationalFunction::new(det, dens)
            }
            Err(Error::SingularMatrix) => Ok(RationalFunction::zero()),
            Err(e) => Err(e),
        }
    }

    /// Inverse by fraction-free elimination on the row-cleared matrix.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::SizeMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut rows = Vec::with_capacity(n);
        let mut dens = Vec::with_capacity(n);
        for i in 0..n {
            let (mut r, d) = self.cleared_row(i);
            r.extend((0..n).map(|j| if i == j { Polynomial::one() } else { Polynomial::zero() }));
            rows.push(r);
            dens.push(RationalFunction::from_poly(d));
        }
        let (a, _) = Self::bareiss(rows, n)?;
        if a[n - 1][n - 1].is_zero() {
            return Err(Error::SingularMatrix);
        }
        let u = |i: usize, j: usize| RationalFunction::<C>::from_poly(a[i][j].clone());
        let mut x = Self::zeros(n, n);
        for col in 0..n {
            for i in (0..n).rev() {
                let mut acc = u(i, n + col);
                for j in i + 1..n {
                    if !a[i][j].is_zero() {
                        acc -= &(&u(i, j) * x.get(j, col));
                    }
                }
                x.set(i, col, acc.checked_div(&u(i, i))?);
            }
        }
        // M = D^{-1} P, so M^{-1} = P^{-1} D.
        for i in 0..n {
            for j in 0..n {
                let v = x.get(i, j) * &dens[j];
                x.set(i, j, v);
            }
        }
        Ok(x)
    }
}

impl<C: Scalar> Add for &Matrix<C> {
    type Output = Matrix<C>;
    fn add(self, rhs: &Matrix<C>) -> Matrix<C> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl<C: Scalar> Sub for &Matrix<C> {
    type Output = Matrix<C>;
    fn sub(self, rhs: &Matrix<C>) -> Matrix<C> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl<C: Scalar> Mul for &Matrix<C> {
    type Output = Matrix<C>;
    fn mul(self, rhs: &Matrix<C>) -> Matrix<C> {
        self.checked_mul(rhs).expect("shape mismatch")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symalg::vars::Var;
    use num_rational::BigRational;

    type R = RationalFunction<BigRational>;
    type P = Polynomial<BigRational>;

    #[test]
    fn diagonal_inverse() {
        let lam = P::var(Var::LAMBDA);
        let y = P::var(Var::Y);
        let m = Matrix::diagonal(vec![R::from_poly(lam.clone()), R::from_poly(&lam - &y)]);
        let inv = m.inverse().unwrap();
        assert_eq!(inv.get(0, 0), &R::new(P::one(), lam.clone()).unwrap());
        assert_eq!(inv.get(1, 1), &R::new(P::one(), &lam - &y).unwrap());
        assert!((&m * &inv).is_identity());
    }

    #[test]
    fn symbolic_inverse_and_determinant() {
        let lam = R::var(Var::LAMBDA);
        let y = R::var(Var::Y);
        let z = R::var(Var::from_index(5));
        let m = Matrix::from_rows(vec![
            vec![R::from_i64(0), &lam / &(&z - &y)],
            vec![&lam + &y, z.clone()],
        ])
        .unwrap();
        let inv = m.inverse().unwrap();
        assert!((&m * &inv).is_identity());
        assert!((&inv * &m).is_identity());
        let det = m.determinant().unwrap();
        assert_eq!(det, -(&(&lam * &(&lam + &y)) / &(&z - &y)));
        let singular = Matrix::from_rows(vec![vec![lam.clone(), y.clone()], vec![&lam * &z, &y * &z]]).unwrap();
        assert_eq!(singular.inverse(), Err(Error::SingularMatrix));
    }
}
