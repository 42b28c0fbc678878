//! Localized classes on `T*Gr_k(Cⁿ)`, the `κ_{σ,I}` classes, stable envelope
//! maps, their inverse `ν`, and geometric R-matrices.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::combinatorics::{leq_sigma, rq_products, subsets, Perm, SubsetIndex};
use crate::context::Context;
use crate::error::{Error, Result};
use crate::rmatrix::{DynOperator, TensorVector};
use crate::symalg::json::{ratf_from_json, ratf_to_json};
use crate::weightfns::wplus_at;
use crate::xibasis::xi;
use crate::{RatF, RatMatrix};

/// A class given by its restrictions to the fixed points `x_I`, `|I| = k`.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalizedClass {
    n: usize,
    k: usize,
    components: BTreeMap<SubsetIndex, RatF>,
}

impl LocalizedClass {
    pub fn zero(n: usize, k: usize) -> Self {
        let components = subsets(n, k).into_iter().map(|s| (s, RatF::zero())).collect();
        LocalizedClass { n, k, components }
    }

    pub fn from_fn(n: usize, k: usize, mut f: impl FnMut(&SubsetIndex) -> Result<RatF>) -> Result<Self> {
        let mut components = BTreeMap::new();
        for s in subsets(n, k) {
            let v = f(&s)?;
            components.insert(s, v);
        }
        Ok(LocalizedClass { n, k, components })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn get(&self, at: &SubsetIndex) -> &RatF {
        &self.components[at]
    }

    pub fn set(&mut self, at: &SubsetIndex, v: RatF) -> Result<()> {
        match self.components.get_mut(at) {
            Some(slot) => {
                *slot = v;
                Ok(())
            }
            None => Err(Error::SizeMismatch(format!("{at} is not a fixed point of a class with k = {}", self.k))),
        }
    }

    pub fn components(&self) -> impl Iterator<Item = (&SubsetIndex, &RatF)> {
        self.components.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.components.values().all(RatF::is_zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if (self.n, self.k) != (other.n, other.k) {
            return Err(Error::SizeMismatch("classes on different Grassmannians".into()));
        }
        let components = self.components.iter().map(|(s, c)| (s.clone(), c + other.get(s))).collect();
        Ok(LocalizedClass { n: self.n, k: self.k, components })
    }

    pub fn scale(&self, c: &RatF) -> Self {
        let components = self.components.iter().map(|(s, v)| (s.clone(), v * c)).collect();
        LocalizedClass { n: self.n, k: self.k, components }
    }

    pub fn to_json(&self) -> Result<Value> {
        let ctx = Context::get(self.n)?;
        let comps: serde_json::Map<String, Value> =
            self.components.iter().map(|(s, c)| (s.to_string(), ratf_to_json(c, ctx.vars()))).collect();
        Ok(json!({ "k": self.k, "components": comps }))
    }

    pub fn from_json(n: usize, v: &Value) -> Result<Self> {
        let ctx = Context::get(n)?;
        let k = v["k"].as_u64().ok_or_else(|| Error::Parse("missing \"k\"".into()))? as usize;
        let comps = v["components"].as_object().ok_or_else(|| Error::Parse("missing \"components\"".into()))?;
        let mut c = LocalizedClass::zero(n, k);
        for (key, val) in comps {
            let s = SubsetIndex::parse(key, n)?;
            c.set(&s, ratf_from_json(val, ctx.vars())?)?;
        }
        Ok(c)
    }
}

/// `κ_{σ,I}`: restriction to `x_J` is `W̃⁺_{σ,I}(λ, z_J, z, y)`.
pub fn kappa(sigma: &Perm, set: &SubsetIndex) -> Result<LocalizedClass> {
    LocalizedClass::from_fn(set.n(), set.k(), |j| wplus_at(sigma, set, j))
}

fn check_weight(v: &TensorVector, k: usize) -> Result<()> {
    if let Some((s, _)) = v.iter().find(|(s, _)| s.k() != k) {
        return Err(Error::InvalidParameter(format!("vector has a component at {s} outside weight {k}")));
    }
    Ok(())
}

/// `Stab_σ` on the weight-`k` part: `v_I ↦ κ_{σ,I}`.
pub fn stab(sigma: &Perm, k: usize, v: &TensorVector) -> Result<LocalizedClass> {
    check_weight(v, k)?;
    let mut out = LocalizedClass::zero(v.n(), k);
    for (s, c) in v.iter() {
        out = out.add(&kappa(sigma, s)?.scale(c))?;
    }
    Ok(out)
}

/// `ν(c) = Σ_I c|_{x_I} / R_I · ξ_I`.
pub fn nu(c: &LocalizedClass) -> Result<TensorVector> {
    let ctx = Context::get(c.n)?;
    let mut out = TensorVector::zero(c.n);
    for (s, f) in c.components() {
        if f.is_zero() {
            continue;
        }
        let (r, _) = rq_products(s, ctx.vars());
        out = out.add(&xi(s)?.scale(&f.checked_div(&RatF::from_poly(r))?));
    }
    Ok(out)
}

/// Restrictions of `κ_{σ,I}` (column `I`) at `x_J` (row `J`), colex order.
#[derive(Clone, Debug, PartialEq)]
pub struct StabMatrix {
    pub sigma: Perm,
    pub k: usize,
    pub basis: Vec<SubsetIndex>,
    pub matrix: RatMatrix,
}

impl StabMatrix {
    /// Entry `(J, I)` vanishes unless `J ≤_σ I`.
    pub fn is_triangular(&self) -> Result<bool> {
        for (c, i) in self.basis.iter().enumerate() {
            for (r, j) in self.basis.iter().enumerate() {
                if !self.matrix.get(r, c).is_zero() && !leq_sigma(j, i, &self.sigma)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Linear extension of `≤_σ`, smallest first.
    fn order(&self) -> Vec<usize> {
        let inv = self.sigma.inverse();
        let mut idx: Vec<usize> = (0..self.basis.len()).collect();
        idx.sort_by_key(|&i| inv.apply_subset(&self.basis[i]).elements().iter().sum::<usize>());
        idx
    }

    /// `X` with `self · X = rhs`, by back-substitution in `≤_σ` order.
    pub fn solve(&self, rhs: &RatMatrix) -> Result<RatMatrix> {
        let m = self.basis.len();
        let order = self.order();
        let mut x = RatMatrix::zeros(m, rhs.cols());
        for col in 0..rhs.cols() {
            for &row in order.iter().rev() {
                let mut acc = rhs.get(row, col).clone();
                for &other in order.iter() {
                    if other == row {
                        continue;
                    }
                    let a = self.matrix.get(row, other);
                    if !a.is_zero() {
                        acc -= &(a * x.get(other, col));
                    }
                }
                let d = self.matrix.get(row, row);
                if d.is_zero() {
                    return Err(Error::Internal(format!("zero diagonal entry at {}", self.basis[row])));
                }
                x.set(row, col, acc.checked_div(d)?);
            }
        }
        Ok(x)
    }
}

pub fn stab_matrix(sigma: &Perm, k: usize) -> Result<StabMatrix> {
    let n = sigma.n();
    if k > n {
        return Err(Error::InvalidParameter(format!("k = {k} exceeds n = {n}")));
    }
    let basis = subsets(n, k);
    let mut matrix = RatMatrix::zeros(basis.len(), basis.len());
    for (c, i) in basis.iter().enumerate() {
        for (r, j) in basis.iter().enumerate() {
            matrix.set(r, c, wplus_at(sigma, i, j)?);
        }
    }
    Ok(StabMatrix { sigma: sigma.clone(), k, basis, matrix })
}

/// `𝓡_{σ′,σ} = Stab_{σ′}⁻¹ ∘ Stab_σ` on the weight-`k` part, colex order.
pub fn geometric_r_block(sigma2: &Perm, sigma: &Perm, k: usize) -> Result<RatMatrix> {
    stab_matrix(sigma2, k)?.solve(&stab_matrix(sigma, k)?.matrix)
}

/// `𝓡_{σ′,σ}` on all of `(C²)^⊗n`.
pub fn geometric_r(sigma2: &Perm, sigma: &Perm) -> Result<DynOperator> {
    let n = sigma.n();
    if sigma2.n() != n {
        return Err(Error::SizeMismatch(format!("{sigma2} and {sigma}")));
    }
    let blocks: Vec<RatMatrix> = (0..=n).map(|k| geometric_r_block(sigma2, sigma, k)).collect::<Result<_>>()?;
    DynOperator::from_blocks(n, &blocks)
}

/// `𝓡_{σ s_a, σ}` against `R^{(σ(a+1),σ(a))}(λ − y Σ_{i≥a+2} h^{(σ(i))}, z_{σ(a+1)} − z_{σ(a)})`.
pub fn check_coincidence(sigma: &Perm, a: usize) -> Result<bool> {
    let n = sigma.n();
    if a == 0 || a >= n {
        return Err(Error::InvalidParameter(format!("a = {a} outside 1..{n}")));
    }
    let ctx = Context::get(n)?;
    let moved = sigma.compose(&Perm::transposition(n, a, a + 1));
    let geo = geometric_r(&moved, sigma)?;
    let (p, q) = (sigma.apply(a + 1), sigma.apply(a));
    let lam = crate::rmatrix::LambdaArg::minus_h((a + 2..=n).map(|i| sigma.apply(i)));
    let z = RatF::from_poly(&ctx.z(p) - &ctx.z(q));
    Ok(geo == DynOperator::r(n, p, q, &lam, &z)?)
}

/// Whether `c|_{x_I} − c|_{x_{s_{ij}(I)}}` is divisible by `z_i − z_j` for
/// all `i < j`.
pub fn in_loc_image(c: &LocalizedClass) -> Result<bool> {
    let ctx = Context::get(c.n)?;
    for i in 1..=c.n {
        for j in i + 1..=c.n {
            let bind = [(ctx.vars().z(j), ctx.z(i))];
            for s in subsets(c.n, c.k).into_iter().filter(|s| s.contains(i) && !s.contains(j)) {
                let d = c.get(&s) - c.get(&s.swap(i, j));
                if d.is_zero() {
                    continue;
                }
                match d.substitute_poly(&bind) {
                    Ok(v) if v.is_zero() => {}
                    _ => return Ok(false),
                }
            }
        }
    }
    Ok(true)
}

/// Whether the components follow the pattern `f_{σ(I)}(z) = f_I(z_σ)` of a
/// class pulled back from `S_n`-symmetric data.
pub fn gln_symmetric(c: &LocalizedClass) -> Result<bool> {
    crate::xibasis::is_equivariant(c.n, &c.components)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::permutations;
    use crate::symalg::parse::parse_ratf;
    use crate::Poly;

    fn r(n: usize, src: &str) -> RatF {
        parse_ratf(src, Context::get(n).unwrap().vars()).unwrap()
    }

    fn set(n: usize, e: &[usize]) -> SubsetIndex {
        SubsetIndex::new(n, e.iter().copied()).unwrap()
    }

    #[test]
    fn kappa_two_point() {
        let k = kappa(&Perm::identity(2), &set(2, &[1])).unwrap();
        assert_eq!(k.get(&set(2, &[1])), &r(2, "(λ+y)(z1-z2)/(λ(λ+y))"));
        assert_eq!(k.get(&set(2, &[2])), &r(2, "(λ+z2-z1+y)(0)"));
        let k2 = kappa(&Perm::identity(2), &set(2, &[2])).unwrap();
        assert_eq!(k2.get(&set(2, &[1])), &r(2, "(z1-z1+y)(λ+z1-z2)/((λ-y)λ)"));
        assert_eq!(k2.get(&set(2, &[2])), &r(2, "(z2-z1+y)(λ)/((λ-y)λ)"));
    }

    #[test]
    fn stab_matrices_are_triangular() {
        for n in 1..=3 {
            for sigma in permutations(n) {
                for k in 0..=n {
                    assert!(stab_matrix(&sigma, k).unwrap().is_triangular().unwrap());
                }
            }
        }
    }

    #[test]
    fn nu_inverts_stab() {
        for n in 1..=3 {
            let id = Perm::identity(n);
            for k in 0..=n {
                for s in subsets(n, k) {
                    let v = TensorVector::basis(&s);
                    assert_eq!(nu(&stab(&id, k, &v).unwrap()).unwrap(), v, "{s}");
                    let ctx = Context::get(n).unwrap();
                    let cls = LocalizedClass::from_fn(n, k, |j| {
                        Ok(RatF::from_poly(if *j == s { ctx.z(1) } else { Poly::zero() }))
                    })
                    .unwrap();
                    assert_eq!(stab(&id, k, &nu(&cls).unwrap()).unwrap(), cls);
                }
            }
        }
        assert!(nu(&LocalizedClass::zero(2, 1)).unwrap().is_zero());
    }

    #[test]
    fn stab_of_xi() {
        for n in 1..=3 {
            let ctx = Context::get(n).unwrap();
            for k in 0..=n {
                for i in subsets(n, k) {
                    let c = stab(&Perm::identity(n), k, &xi(&i).unwrap()).unwrap();
                    for (j, v) in c.components() {
                        let mut p = Poly::one();
                        for &a in j.elements() {
                            for b in i.complement_elements() {
                                p = &p * &(&ctx.z(a) - &ctx.z(b));
                            }
                        }
                        assert_eq!(*v, RatF::from_poly(p), "{i} at {j}");
                    }
                }
            }
        }
    }

    #[test]
    fn geometric_r_two_point() {
        let id = Perm::identity(2);
        let s = Perm::longest(2);
        let g = geometric_r(&id, &s).unwrap();
        let m = g.block(1);
        assert_eq!(m.get(0, 0), &r(2, "(λ+y)(z1-z2)/(λ(z1-z2-y))"));
        assert_eq!(m.get(0, 1), &r(2, "-(λ+z1-z2)y/(λ(z1-z2-y))"));
        assert_eq!(m.get(1, 0), &r(2, "-(λ-z1+z2)y/(λ(z1-z2-y))"));
        assert_eq!(m.get(1, 1), &r(2, "(λ-y)(z1-z2)/(λ(z1-z2-y))"));
        assert!(g.block(0).is_identity() && g.block(2).is_identity());
        assert!(geometric_r(&s, &s).unwrap().is_identity());
    }

    #[test]
    fn coincidence_and_cocycle() {
        for n in 2..=3 {
            let perms = permutations(n);
            for sigma in &perms {
                for a in 1..n {
                    assert!(check_coincidence(sigma, a).unwrap(), "{sigma} {a}");
                }
            }
            let (a, b, c) = (&perms[0], &perms[perms.len() / 2], &perms[perms.len() - 1]);
            let lhs = geometric_r(a, b).unwrap().compose(&geometric_r(b, c).unwrap());
            assert_eq!(lhs, geometric_r(a, c).unwrap());
        }
    }

    #[test]
    fn localization_image() {
        for n in 1..=3 {
            for sigma in permutations(n) {
                for k in 0..=n {
                    for s in subsets(n, k) {
                        assert!(in_loc_image(&kappa(&sigma, &s).unwrap()).unwrap());
                    }
                }
            }
        }
        let mut c = LocalizedClass::zero(3, 1);
        c.set(&set(3, &[2]), RatF::one()).unwrap();
        assert!(!in_loc_image(&c).unwrap());
        let constant = LocalizedClass::from_fn(3, 2, |_| Ok(r(3, "λ+y"))).unwrap();
        assert!(in_loc_image(&constant).unwrap());
    }

    #[test]
    fn symmetric_classes() {
        let n = 3;
        let ctx = Context::get(n).unwrap();
        let c = LocalizedClass::from_fn(n, 1, |s| {
            let e1: Poly = s.elements().iter().map(|&a| ctx.z(a)).sum();
            Ok(RatF::from_poly(e1))
        })
        .unwrap();
        assert!(gln_symmetric(&c).unwrap());
        assert!(in_loc_image(&c).unwrap());
        assert!(gln_symmetric(&LocalizedClass::zero(2, 1)).unwrap());
        assert!(!gln_symmetric(&kappa(&Perm::identity(2), &set(2, &[1])).unwrap()).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let c = kappa(&Perm::identity(3), &set(3, &[2])).unwrap();
        let v = c.to_json().unwrap();
        assert_eq!(v["k"], 1);
        assert!(!v["components"]["{2}/3"].is_null());
        assert_eq!(LocalizedClass::from_json(3, &v).unwrap(), c);
    }
}
