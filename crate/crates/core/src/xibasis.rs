//! The vectors `ξ_I`, their triangular coefficient matrix and expansion of
//! vectors in the `ξ`-basis.

use std::collections::BTreeMap;

use crate::combinatorics::{c_factor, leq_sigma, rq_products, subsets, Perm, SubsetIndex};
use crate::context::Context;
use crate::error::{Error, Result};
use crate::rmatrix::{s_tilde, TensorVector};
use crate::symalg::int;
use crate::weightfns::wminus_at;
use crate::{Poly, RatF, RatMatrix};

/// `ξ_I = (1/Q_I) Σ_J W̃⁻_J(λ, z_I, z, y) v_J`.
pub fn xi(set: &SubsetIndex) -> Result<TensorVector> {
    let n = set.n();
    let ctx = Context::get(n)?;
    Ok(ctx.xi.get_or_init(set, || build_xi(ctx, set).expect("ξ coefficients are well defined")))
}

fn build_xi(ctx: &Context, set: &SubsetIndex) -> Result<TensorVector> {
    let (_, q) = rq_products(set, ctx.vars());
    let q = RatF::from_poly(q);
    let mut v = TensorVector::zero(set.n());
    for j in subsets(set.n(), set.k()) {
        v.add_term(&j, wminus_at(&j, set)?.checked_div(&q)?);
    }
    Ok(v)
}

/// All `ξ_I` with `|I| = k`, in colex order.
pub fn xi_basis(n: usize, k: usize) -> Result<Vec<(SubsetIndex, TensorVector)>> {
    subsets(n, k).into_iter().map(|s| xi(&s).map(|v| (s, v))).collect()
}

/// Coefficient matrix of the `ξ_I` (columns) in the `v_J` basis (rows),
/// colex order.
pub fn xi_matrix(n: usize, k: usize) -> Result<RatMatrix> {
    let basis = subsets(n, k);
    let mut m = RatMatrix::zeros(basis.len(), basis.len());
    for (c, i) in basis.iter().enumerate() {
        let v = xi(i)?;
        for (r, j) in basis.iter().enumerate() {
            m.set(r, c, v.get(j));
        }
    }
    Ok(m)
}

/// Sum of the elements; strictly increases along `≤_id`.
fn rank(set: &SubsetIndex) -> usize {
    set.elements().iter().sum()
}

/// Determinant of the `ξ` coefficient matrix, as the product of diagonal
/// coefficients (the matrix is `≤_id`-triangular).
pub fn xi_determinant(n: usize, k: usize) -> Result<RatF> {
    let mut d = RatF::one();
    for s in subsets(n, k) {
        d *= &xi(&s)?.get(&s);
    }
    Ok(d)
}

/// Coefficients `f_I` with `v = Σ f_I ξ_I`, by back-substitution.
pub fn expand_in_xi(v: &TensorVector, k: usize) -> Result<BTreeMap<SubsetIndex, RatF>> {
    let n = v.n();
    if v.iter().any(|(s, _)| s.k() != k) {
        return Err(Error::InvalidParameter(format!("vector is not supported in weight {k}")));
    }
    let mut order = subsets(n, k);
    order.sort_by_key(|s| std::cmp::Reverse(rank(s)));
    let mut rest = v.clone();
    let mut out = BTreeMap::new();
    for s in order {
        let c = rest.get(&s);
        if c.is_zero() {
            continue;
        }
        let x = xi(&s)?;
        let f = c.checked_div(&x.get(&s))?;
        rest = rest.sub(&x.scale(&f));
        out.insert(s, f);
    }
    if !rest.is_zero() {
        return Err(Error::Internal("ξ expansion left a remainder".into()));
    }
    Ok(out)
}

/// `Σ f_I ξ_I`.
pub fn combine_xi(n: usize, coeffs: &BTreeMap<SubsetIndex, RatF>) -> Result<TensorVector> {
    let mut v = TensorVector::zero(n);
    for (s, f) in coeffs {
        v = v.add(&xi(s)?.scale(f));
    }
    Ok(v)
}

/// `C⁽¹⁾_{id,I} ∏_{b<a, a∈I, b∉I} (z_b − z_a)/(z_b − z_a − y)`.
pub fn expected_diagonal(set: &SubsetIndex) -> Result<RatF> {
    let n = set.n();
    let ctx = Context::get(n)?;
    let y = ctx.y();
    let mut num = c_factor(&Perm::identity(n), set, 1, ctx.vars());
    let mut den = Poly::one();
    for &a in set.elements() {
        for b in set.complement_elements().into_iter().filter(|&b| b < a) {
            let d = &ctx.z(b) - &ctx.z(a);
            den = &den * &(&d - &y);
            num = &num * &d;
        }
    }
    RatF::new(num, den)
}

/// Checks of the triangularity and coefficient formulas for `ξ_I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XiReport {
    pub triangular: bool,
    pub diagonal: bool,
    /// `None` unless `I` is extremal.
    pub extremal: Option<bool>,
}

impl XiReport {
    pub fn all(&self) -> bool {
        self.triangular && self.diagonal && self.extremal.unwrap_or(true)
    }
}

pub fn check_xi(set: &SubsetIndex) -> Result<XiReport> {
    let n = set.n();
    let k = set.k();
    let ctx = Context::get(n)?;
    let v = xi(set)?;
    let id = Perm::identity(n);
    let mut triangular = true;
    for (j, _) in v.iter() {
        triangular &= leq_sigma(j, set, &id)?;
    }
    let diagonal = v.get(set) == expected_diagonal(set)?;
    let lam = ctx.lambda();
    let y = ctx.y();
    let extremal = if *set == SubsetIndex::min(n, k) {
        let c: Poly = (1..=k as i64).map(|i| &lam + &y.scale(&int(n as i64 - k as i64 - i))).product();
        Some(v == TensorVector::from_coeff(set, RatF::from_poly(c)))
    } else if *set == SubsetIndex::max(n, k) {
        let c: Poly = (1..=k as i64).map(|i| &lam - &y.scale(&int(i))).product();
        let (r, q) = rq_products(set, ctx.vars());
        Some(v.get(set) == RatF::new(&c * &r, q)?)
    } else {
        None
    };
    Ok(XiReport { triangular, diagonal, extremal })
}

/// `s̃_i ξ_I = ξ_{s_i(I)}`.
pub fn check_xi_recursion(set: &SubsetIndex, i: usize) -> Result<bool> {
    Ok(s_tilde(i, &xi(set)?)? == xi(&set.swap(i, i + 1))?)
}

/// Regenerate every `ξ_I` from `ξ_{I^min}` by applying `s̃_i`.
pub fn xi_from_min(n: usize, k: usize) -> Result<BTreeMap<SubsetIndex, TensorVector>> {
    let start = SubsetIndex::min(n, k);
    let mut found = BTreeMap::new();
    found.insert(start.clone(), xi(&start)?);
    let mut frontier = vec![start];
    while let Some(s) = frontier.pop() {
        for i in 1..n {
            let t = s.swap(i, i + 1);
            if found.contains_key(&t) {
                continue;
            }
            let v = s_tilde(i, &found[&s])?;
            found.insert(t.clone(), v);
            frontier.push(t);
        }
    }
    Ok(found)
}

/// `(K_σ f)(z) = f(z_σ)`: substitute `z_i ↦ z_{σ(i)}`.
pub fn permute_z(f: &RatF, sigma: &Perm) -> Result<RatF> {
    let ctx = Context::get(sigma.n())?;
    let mut map: Vec<crate::symalg::Var> =
        (0..crate::symalg::vars::MAX_VARS).map(crate::symalg::Var::from_index).collect();
    for i in 1..=sigma.n() {
        map[ctx.vars().z(i).index()] = ctx.vars().z(sigma.apply(i));
    }
    Ok(f.rename(&map))
}

/// Whether `f_{σ(I)}(z) = f_I(z_σ)` for all `σ` and `I`; adjacent
/// transpositions generate, so only those are checked.
pub fn is_equivariant(n: usize, coeffs: &BTreeMap<SubsetIndex, RatF>) -> Result<bool> {
    let ctx = Context::get(n)?;
    let zero = RatF::zero();
    let ks: std::collections::BTreeSet<usize> = coeffs.keys().map(SubsetIndex::k).collect();
    for s in ks.into_iter().flat_map(|k| subsets(n, k)) {
        let f = coeffs.get(&s).unwrap_or(&zero);
        for i in 1..n {
            let g = coeffs.get(&s.swap(i, i + 1)).unwrap_or(&zero);
            if *g != f.swap_vars(ctx.vars().z(i), ctx.vars().z(i + 1)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether `v` is fixed by every `s̃_i`.
pub fn is_invariant(v: &TensorVector) -> Result<bool> {
    for i in 1..v.n() {
        if s_tilde(i, v)? != *v {
            return Ok(false);
        }
    }
    Ok(true)
}
