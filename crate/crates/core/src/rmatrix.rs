//! Tensor vectors in `(C²)^⊗n`, the dynamical R-matrix and its placements,
//! the `s̃_i` and `ŝ_{i,μ}` operators, and the inversion / Yang–Baxter /
//! Coxeter checks.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::combinatorics::{subsets, SubsetIndex};
use crate::context::Context;
use crate::error::{Error, Result};
use crate::symalg::{int, Matrix};
use crate::{Poly, RatF, RatMatrix};

/// Element of `(C²)^⊗n` with rational-function coefficients; position `p`
/// holds `v₁` exactly when `p ∈ I`.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorVector {
    n: usize,
    coeffs: BTreeMap<SubsetIndex, RatF>,
}

impl TensorVector {
    pub fn zero(n: usize) -> Self {
        TensorVector { n, coeffs: BTreeMap::new() }
    }

    /// `v_I`.
    pub fn basis(set: &SubsetIndex) -> Self {
        Self::from_coeff(set, RatF::one())
    }

    pub fn from_coeff(set: &SubsetIndex, c: RatF) -> Self {
        let mut v = Self::zero(set.n());
        v.add_term(set, c);
        v
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, set: &SubsetIndex) -> RatF {
        self.coeffs.get(set).cloned().unwrap_or_else(RatF::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&SubsetIndex, &RatF)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, set: &SubsetIndex, c: RatF) {
        assert_eq!(set.n(), self.n, "subset {set} in a vector of length {}", self.n);
        if c.is_zero() {
            return;
        }
        let sum = match self.coeffs.remove(set) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.coeffs.insert(set.clone(), sum);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, c) in &other.coeffs {
            out.add_term(s, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&RatF::from_i64(-1)))
    }

    pub fn scale(&self, c: &RatF) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        self.map(|x| x * c)
    }

    /// Apply `f` to every coefficient.
    pub fn map(&self, f: impl Fn(&RatF) -> RatF) -> Self {
        let mut out = Self::zero(self.n);
        for (s, c) in &self.coeffs {
            out.add_term(s, f(c));
        }
        out
    }

    /// Try `f` on every coefficient.
    pub fn try_map(&self, f: impl Fn(&RatF) -> Result<RatF>) -> Result<Self> {
        let mut out = Self::zero(self.n);
        for (s, c) in &self.coeffs {
            out.add_term(s, f(c)?);
        }
        Ok(out)
    }

    /// `K^{(i,j)}`: exchange `z_i` and `z_j` in every coefficient.
    pub fn swap_z(&self, i: usize, j: usize) -> Self {
        let ctx = Context::get(self.n).expect("vector length was validated on construction");
        let (zi, zj) = (ctx.vars().z(i), ctx.vars().z(j));
        self.map(|c| c.swap_vars(zi, zj))
    }

    /// `P^{(i,j)}`: exchange tensor positions `i` and `j`.
    pub fn swap_positions(&self, i: usize, j: usize) -> Self {
        let mut out = Self::zero(self.n);
        for (s, c) in &self.coeffs {
            out.add_term(&s.swap(i, j), c.clone());
        }
        out
    }

    /// `λ ↦ λ + m y` in every coefficient.
    pub fn shift_lambda(&self, m: i64) -> Self {
        self.map(|c| c.shift_lambda(m))
    }

    /// Component in `(C²)^⊗n_k`.
    pub fn weight_component(&self, k: usize) -> Self {
        let mut out = Self::zero(self.n);
        for (s, c) in self.coeffs.iter().filter(|(s, _)| s.k() == k) {
            out.add_term(s, c.clone());
        }
        out
    }

    /// The single weight `k` this vector lives in, if any.
    pub fn weight(&self) -> Option<usize> {
        let mut ks = self.coeffs.keys().map(SubsetIndex::k);
        let first = ks.next()?;
        ks.all(|k| k == first).then_some(first)
    }
}

/// `h(v_I)` summed over `positions`: `+1` for `p ∈ I`, `−1` otherwise.
pub fn h_sum(set: &SubsetIndex, positions: impl IntoIterator<Item = usize>) -> i64 {
    positions.into_iter().map(|p| if set.contains(p) { 1 } else { -1 }).sum()
}

/// Dynamical argument `λ + shift·y + y Σ_p c_p h^{(p)}`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LambdaArg {
    pub shift: i64,
    pub h_terms: Vec<(usize, i64)>,
}

impl LambdaArg {
    pub fn lambda() -> Self {
        LambdaArg::default()
    }

    pub fn shifted(shift: i64) -> Self {
        LambdaArg { shift, h_terms: Vec::new() }
    }

    /// `λ − y Σ_{p ∈ positions} h^{(p)}`.
    pub fn minus_h(positions: impl IntoIterator<Item = usize>) -> Self {
        LambdaArg { shift: 0, h_terms: positions.into_iter().map(|p| (p, -1)).collect() }
    }

    pub fn with_shift(mut self, shift: i64) -> Self {
        self.shift += shift;
        self
    }

    /// Integer multiple of `y` added to `λ` on the basis vector `v_I`.
    pub fn resolve(&self, set: &SubsetIndex) -> i64 {
        self.shift + self.h_terms.iter().map(|&(p, c)| c * h_sum(set, [p])).sum::<i64>()
    }

    fn positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.h_terms.iter().map(|&(p, _)| p)
    }
}

/// The four distinct entries of `R(λ, z)` in the order
/// `(R₂₂, R₂₃, R₃₂, R₃₃)` of the middle block.
fn middle_block(lam: &RatF, z: &RatF, y: &RatF) -> Result<[RatF; 4]> {
    let den = &(lam * &(z - y)).clone();
    let e = |num: RatF| num.checked_div(den);
    Ok([
        e(&(lam + y) * z)?,
        e(-&(&(lam + z) * y))?,
        e(-&(&(lam - z) * y))?,
        e(&(lam - y) * z)?,
    ])
}

/// `R(λ, z)` in the basis `v₁⊗v₁, v₁⊗v₂, v₂⊗v₁, v₂⊗v₂`.
pub fn rmat(lam: &RatF, z: &RatF) -> Result<RatMatrix> {
    let y = RatF::var(crate::symalg::Var::Y);
    let [a, b, c, d] = middle_block(lam, z, &y)?;
    let o = RatF::zero;
    Matrix::from_rows(vec![
        vec![RatF::one(), o(), o(), o()],
        vec![o(), a, b, o()],
        vec![o(), c, d, o()],
        vec![o(), o(), o(), RatF::one()],
    ])
}

fn slot_bits(set: &SubsetIndex, i: usize, j: usize) -> usize {
    let bi = usize::from(!set.contains(i));
    let bj = usize::from(!set.contains(j));
    2 * bi + bj
}

fn with_bits(set: &SubsetIndex, i: usize, j: usize, row: usize) -> SubsetIndex {
    let mut mask = set.mask() & !(1 << (i - 1)) & !(1 << (j - 1));
    if row >> 1 == 0 {
        mask |= 1 << (i - 1);
    }
    if row & 1 == 0 {
        mask |= 1 << (j - 1);
    }
    SubsetIndex::from_mask(set.n(), mask)
}

/// `R^{(i,j)}(λarg, zarg)` applied to `v`: the R-matrix acts with position
/// `i` as its first factor and `j` as its second.
pub fn apply_r(i: usize, j: usize, lam: &LambdaArg, zarg: &RatF, v: &TensorVector) -> Result<TensorVector> {
    let n = v.n();
    if i == j || i == 0 || j == 0 || i > n || j > n {
        return Err(Error::InvalidParameter(format!("R^({i},{j}) on {n} factors")));
    }
    if lam.positions().any(|p| p == i || p == j || p == 0 || p > n) {
        return Err(Error::InvalidParameter("dynamical shift involves an acted-on factor".into()));
    }
    let y = RatF::var(crate::symalg::Var::Y);
    let mut blocks: BTreeMap<i64, RatMatrix> = BTreeMap::new();
    let mut out = TensorVector::zero(n);
    for (s, c) in v.iter() {
        let mu = lam.resolve(s);
        if let std::collections::btree_map::Entry::Vacant(e) = blocks.entry(mu) {
            let l = &RatF::var(crate::symalg::Var::LAMBDA) + &y.scale(&int(mu));
            e.insert(rmat(&l, zarg)?);
        }
        let r = &blocks[&mu];
        let col = slot_bits(s, i, j);
        for row in 0..4 {
            let e = r.get(row, col);
            if !e.is_zero() {
                out.add_term(&with_bits(s, i, j, row), c * e);
            }
        }
    }
    Ok(out)
}

/// A linear operator on `(C²)^⊗n`, stored by the images of basis vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct DynOperator {
    n: usize,
    columns: BTreeMap<SubsetIndex, TensorVector>,
}

impl DynOperator {
    pub fn identity(n: usize) -> Self {
        let columns = (0..=n).flat_map(|k| subsets(n, k)).map(|s| (s.clone(), TensorVector::basis(&s))).collect();
        DynOperator { n, columns }
    }

    /// Operator defined by its action on each basis vector.
    pub fn from_fn(n: usize, f: impl Fn(&SubsetIndex) -> Result<TensorVector>) -> Result<Self> {
        let mut columns = BTreeMap::new();
        for s in (0..=n).flat_map(|k| subsets(n, k)) {
            let img = f(&s)?;
            columns.insert(s, img);
        }
        Ok(DynOperator { n, columns })
    }

    /// `R^{(i,j)}(λarg, zarg)` as an operator.
    pub fn r(n: usize, i: usize, j: usize, lam: &LambdaArg, zarg: &RatF) -> Result<Self> {
        Self::from_fn(n, |s| apply_r(i, j, lam, zarg, &TensorVector::basis(s)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn column(&self, s: &SubsetIndex) -> &TensorVector {
        &self.columns[s]
    }

    pub fn columns(&self) -> impl Iterator<Item = (&SubsetIndex, &TensorVector)> {
        self.columns.iter()
    }

    pub fn apply(&self, v: &TensorVector) -> TensorVector {
        let mut out = TensorVector::zero(self.n);
        for (s, c) in v.iter() {
            for (t, e) in self.columns[s].iter() {
                out.add_term(t, c * e);
            }
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let columns = other.columns.iter().map(|(s, col)| (s.clone(), self.apply(col))).collect();
        DynOperator { n: self.n, columns }
    }

    /// Matrix block on `(C²)^⊗n_k`, rows and columns in colex order.
    pub fn block(&self, k: usize) -> RatMatrix {
        let basis = subsets(self.n, k);
        let mut m = Matrix::zeros(basis.len(), basis.len());
        for (c, s) in basis.iter().enumerate() {
            for (r, t) in basis.iter().enumerate() {
                m.set(r, c, self.columns[s].get(t));
            }
        }
        m
    }

    /// Full `2ⁿ × 2ⁿ` matrix in the order of increasing `k`, colex within `k`.
    pub fn matrix(&self) -> RatMatrix {
        let basis: Vec<SubsetIndex> = self.columns.keys().cloned().collect();
        let mut m = Matrix::zeros(basis.len(), basis.len());
        for (c, s) in basis.iter().enumerate() {
            for (r, t) in basis.iter().enumerate() {
                m.set(r, c, self.columns[s].get(t));
            }
        }
        m
    }

    pub fn is_identity(&self) -> bool {
        self.columns.iter().all(|(s, col)| *col == TensorVector::basis(s))
    }

    pub fn zero(n: usize) -> Self {
        let columns = (0..=n).flat_map(|k| subsets(n, k)).map(|s| (s, TensorVector::zero(n))).collect();
        DynOperator { n, columns }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.values().all(TensorVector::is_zero)
    }

    /// Operator acting on `(C²)^⊗n_k` by `blocks[k]` (colex order).
    pub fn from_blocks(n: usize, blocks: &[RatMatrix]) -> Result<Self> {
        if blocks.len() != n + 1 {
            return Err(Error::SizeMismatch(format!("{} blocks for n = {n}", blocks.len())));
        }
        Self::from_fn(n, |s| {
            let basis = subsets(n, s.k());
            let c = basis.iter().position(|b| b == s).expect("subset is in its own basis");
            let mut v = TensorVector::zero(n);
            for (r, t) in basis.iter().enumerate() {
                v.add_term(t, blocks[s.k()].get(r, c).clone());
            }
            Ok(v)
        })
    }

    /// Apply `f` to every matrix entry.
    pub fn map(&self, f: impl Fn(&RatF) -> RatF) -> Self {
        let columns = self.columns.iter().map(|(s, col)| (s.clone(), col.map(&f))).collect();
        DynOperator { n: self.n, columns }
    }

    pub fn try_map(&self, f: impl Fn(&RatF) -> Result<RatF>) -> Result<Self> {
        let mut columns = BTreeMap::new();
        for (s, col) in &self.columns {
            columns.insert(s.clone(), col.try_map(&f)?);
        }
        Ok(DynOperator { n: self.n, columns })
    }

    /// Entries with `λ ↦ λ + m y`.
    pub fn shift_lambda(&self, m: i64) -> Self {
        if m == 0 {
            return self.clone();
        }
        self.map(|c| c.shift_lambda(m))
    }

    pub fn add(&self, other: &Self) -> Self {
        let columns = self.columns.iter().map(|(s, col)| (s.clone(), col.add(&other.columns[s]))).collect();
        DynOperator { n: self.n, columns }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let columns = self.columns.iter().map(|(s, col)| (s.clone(), col.sub(&other.columns[s]))).collect();
        DynOperator { n: self.n, columns }
    }

    pub fn scale(&self, c: &RatF) -> Self {
        self.map(|x| x * c)
    }

    /// Multiply the output component at `v_J` by `f(|J|)`.
    pub fn left_weight_scale(&self, f: impl Fn(usize) -> RatF) -> Self {
        let factors: Vec<RatF> = (0..=self.n).map(f).collect();
        let columns = self
            .columns
            .iter()
            .map(|(s, col)| {
                let mut v = TensorVector::zero(self.n);
                for (t, c) in col.iter() {
                    v.add_term(t, c * &factors[t.k()]);
                }
                (s.clone(), v)
            })
            .collect();
        DynOperator { n: self.n, columns }
    }

    /// Whether every weight subspace is mapped into itself.
    pub fn preserves_weight(&self) -> bool {
        self.columns.iter().all(|(s, col)| col.iter().all(|(t, _)| t.k() == s.k()))
    }

    /// Inverse of a weight-preserving operator, block by block.
    pub fn inverse(&self) -> Result<Self> {
        if !self.preserves_weight() {
            return Err(Error::InvalidParameter("inverse of an operator that mixes weights".into()));
        }
        let blocks: Vec<RatMatrix> = (0..=self.n).map(|k| self.block(k).inverse()).collect::<Result<_>>()?;
        Self::from_blocks(self.n, &blocks)
    }
}

fn check_index(n: usize, i: usize) -> Result<()> {
    if i == 0 || i >= n {
        return Err(Error::InvalidParameter(format!("index {i} outside 1..{n}")));
    }
    Ok(())
}

/// `s̃_i = R^{(i,i+1)}(λ − y Σ_{k≥i+2} h^{(k)}, z_i − z_{i+1}) ∘ P^{(i,i+1)} ∘ K^{(i,i+1)}`.
pub fn s_tilde(i: usize, v: &TensorVector) -> Result<TensorVector> {
    let n = v.n();
    check_index(n, i)?;
    let ctx = Context::get(n)?;
    let pk = v.swap_z(i, i + 1).swap_positions(i, i + 1);
    let z = RatF::from_poly(&ctx.z(i) - &ctx.z(i + 1));
    apply_r(i, i + 1, &LambdaArg::minus_h(i + 2..=n), &z, &pk)
}

/// `ŝ_{i,μ}(f)`.
pub fn s_hat(i: usize, mu: &RatF, f: &RatF, n: usize) -> Result<RatF> {
    check_index(n, i)?;
    let ctx = Context::get(n)?;
    let y = RatF::from_poly(ctx.y());
    let d = RatF::from_poly(&ctx.z(i + 1) - &ctx.z(i));
    let den = &(mu - &y) * &d;
    if (mu - &y).is_zero() {
        return Err(Error::DivisionByZero);
    }
    let a = (&(mu + &d) * &y).checked_div(&den)?;
    let b = (mu * &(&d - &y)).checked_div(&den)?;
    let kf = f.swap_vars(ctx.vars().z(i), ctx.vars().z(i + 1));
    Ok(&(&a * f) + &(&b * &kf))
}

/// `ŝ_{i,μ}⁻¹(f)`, from `(ŝ+1)(ŝ − (μ+y)/(μ−y)) = 0`.
pub fn s_hat_inv(i: usize, mu: &RatF, f: &RatF, n: usize) -> Result<RatF> {
    let ctx = Context::get(n)?;
    let y = RatF::from_poly(ctx.y());
    let c = (mu + &y).checked_div(&(mu - &y))?;
    // ŝ² = (c−1)ŝ + c, so ŝ⁻¹ = (ŝ − (c−1))/c.
    let sf = s_hat(i, mu, f, n)?;
    (&sf - &(&(&c - &RatF::one()) * f)).checked_div(&c)
}

/// Inversion relation `R^{(1,2)}(λ,z) R^{(2,1)}(λ,−z) = Id` on `C² ⊗ C²`.
pub fn check_inversion() -> Result<bool> {
    let ctx = Context::get(2)?;
    let z = RatF::from_poly(ctx.z(1));
    let lam = LambdaArg::lambda();
    let a = DynOperator::r(2, 1, 2, &lam, &z)?;
    let b = DynOperator::r(2, 2, 1, &lam, &-&z)?;
    Ok(a.compose(&b).is_identity() && b.compose(&a).is_identity())
}

/// Both sides of the dynamical Yang–Baxter equation on `(C²)^⊗3`, with
/// spectral parameters `z = z₁`, `w = z₂`.
pub fn ybe_sides() -> Result<(DynOperator, DynOperator)> {
    let ctx = Context::get(3)?;
    let z = RatF::from_poly(ctx.z(1));
    let w = RatF::from_poly(ctx.z(2));
    let zw = &z - &w;
    let lam = LambdaArg::lambda();
    let r = |i, j, l: LambdaArg, a: &RatF| DynOperator::r(3, i, j, &l, a);
    let lhs = r(1, 2, LambdaArg::minus_h([3]), &zw)?
        .compose(&r(1, 3, lam.clone(), &z)?)
        .compose(&r(2, 3, LambdaArg::minus_h([1]), &w)?);
    let rhs = r(2, 3, lam.clone(), &w)?
        .compose(&r(1, 3, LambdaArg::minus_h([2]), &z)?)
        .compose(&r(1, 2, lam, &zw)?);
    Ok((lhs, rhs))
}

pub fn check_ybe() -> Result<bool> {
    let (l, r) = ybe_sides()?;
    Ok(l == r)
}

/// Deterministic pseudo-random vector with small polynomial coefficients in
/// `λ, z, y`, supported in weight `k` (all weights when `None`).
pub fn random_vector(n: usize, k: Option<usize>, seed: u64) -> Result<TensorVector> {
    let ctx = Context::get(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gens = vec![ctx.lambda(), ctx.y()];
    gens.extend((1..=n).map(|i| ctx.z(i)));
    let mut v = TensorVector::zero(n);
    let ks: Vec<usize> = match k {
        Some(k) => vec![k],
        None => (0..=n).collect(),
    };
    for k in ks {
        for s in subsets(n, k) {
            let mut c = Poly::from_i64(rng.gen_range(-3..=3));
            for g in &gens {
                let a: i64 = rng.gen_range(-2..=2);
                if a != 0 {
                    c = &c + &g.scale(&int(a));
                }
            }
            let g = &gens[rng.gen_range(0..gens.len())];
            c = &c * &(g + &Poly::from_i64(rng.gen_range(1..=3)));
            v.add_term(&s, RatF::from_poly(c));
        }
    }
    Ok(v)
}

/// Coxeter relations of the `s̃_i` and their `z`-conjugation rules, tested on
/// pseudo-random vectors.
pub fn check_coxeter(n: usize, samples: u64) -> Result<bool> {
    let ctx = Context::get(n)?;
    for seed in 0..samples {
        let v = random_vector(n, None, seed)?;
        for i in 1..n {
            let si = |u: &TensorVector| s_tilde(i, u);
            if si(&si(&v)?)? != v {
                return Ok(false);
            }
            if i + 1 < n {
                let sj = |u: &TensorVector| s_tilde(i + 1, u);
                if sj(&si(&sj(&v)?)?)? != si(&sj(&si(&v)?)?)? {
                    return Ok(false);
                }
            }
            for j in i + 2..n {
                let sj = |u: &TensorVector| s_tilde(j, u);
                if si(&sj(&v)?)? != sj(&si(&v)?)? {
                    return Ok(false);
                }
            }
            for m in 1..=n {
                let image = if m == i {
                    i + 1
                } else if m == i + 1 {
                    i
                } else {
                    m
                };
                let zm = RatF::from_poly(ctx.z(m));
                let zi = RatF::from_poly(ctx.z(image));
                if si(&v.scale(&zm))? != si(&v)?.scale(&zi) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Coefficient at `s_j(I)` forced by the coefficient `f` at `I` in an
/// `s̃_j`-invariant vector, for `I` containing exactly one of `j, j+1`:
/// `((μ−y)/(μ+y)) ŝ_{j,μ} f` when `j ∈ I`, `((μ+y)/(μ−y)) ŝ⁻¹_{j,μ} f` when
/// `j+1 ∈ I`, with `μ = λ − y Σ_{k≥j+2} h^{(k)}`.
fn partner_coefficient(j: usize, set: &SubsetIndex, f: &RatF, lam: &RatF, y: &RatF) -> Result<RatF> {
    let n = set.n();
    let mu = lam - &y.scale(&int(h_sum(set, j + 2..=n)));
    let c = (&mu + y).checked_div(&(&mu - y))?;
    if set.contains(j) {
        s_hat(j, &mu, f, n)?.checked_div(&c)
    } else {
        Ok(&c * &s_hat_inv(j, &mu, f, n)?)
    }
}

/// Vector with free coefficients from `seed` completed by the componentwise
/// criteria into an `s̃_j`-invariant vector of weight `k`.
pub fn invariant_from_criteria(n: usize, k: usize, j: usize, seed: u64) -> Result<TensorVector> {
    check_index(n, j)?;
    let ctx = Context::get(n)?;
    let lam = RatF::from_poly(ctx.lambda());
    let y = RatF::from_poly(ctx.y());
    let free = random_vector(n, Some(k), seed)?;
    let mut v = TensorVector::zero(n);
    for s in subsets(n, k) {
        let f = free.get(&s);
        match (s.contains(j), s.contains(j + 1)) {
            (a, b) if a == b => {
                v.add_term(&s, &f + &f.swap_vars(ctx.vars().z(j), ctx.vars().z(j + 1)));
            }
            (true, false) => {
                v.add_term(&s.swap(j, j + 1), partner_coefficient(j, &s, &f, &lam, &y)?);
                v.add_term(&s, f);
            }
            _ => {}
        }
    }
    Ok(v)
}

/// Whether `ζ = Σ f_I v_I` satisfies the componentwise criteria for
/// `s̃_j`-invariance.
pub fn satisfies_invariance_criteria(j: usize, v: &TensorVector) -> Result<bool> {
    let n = v.n();
    check_index(n, j)?;
    let ctx = Context::get(n)?;
    let lam = RatF::from_poly(ctx.lambda());
    let y = RatF::from_poly(ctx.y());
    for k in 0..=n {
        for s in subsets(n, k) {
            let f = v.get(&s);
            let (a, b) = (s.contains(j), s.contains(j + 1));
            if a == b {
                if f.swap_vars(ctx.vars().z(j), ctx.vars().z(j + 1)) != f {
                    return Ok(false);
                }
                continue;
            }
            if v.get(&s.swap(j, j + 1)) != partner_coefficient(j, &s, &f, &lam, &y)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symalg::parse::parse_ratf;

    fn r(n: usize, src: &str) -> RatF {
        parse_ratf(src, Context::get(n).unwrap().vars()).unwrap()
    }

    fn set(n: usize, e: &[usize]) -> SubsetIndex {
        SubsetIndex::new(n, e.iter().copied()).unwrap()
    }

    #[test]
    fn r_matrix_entries() {
        let m = rmat(&r(1, "λ"), &r(1, "z1")).unwrap();
        assert!(m.get(0, 0).is_one() && m.get(3, 3).is_one());
        assert_eq!(m.get(1, 1), &r(1, "(λ+y)z1/(λ(z1-y))"));
        assert_eq!(m.get(1, 2), &r(1, "-(λ+z1)y/(λ(z1-y))"));
        assert_eq!(m.get(2, 1), &r(1, "-(λ-z1)y/(λ(z1-y))"));
        assert_eq!(m.get(2, 2), &r(1, "(λ-y)z1/(λ(z1-y))"));
    }

    #[test]
    fn h_sums() {
        assert_eq!(h_sum(&set(3, &[1, 2, 3]), 1..=3), 3);
        assert_eq!(h_sum(&set(3, &[]), 1..=3), -3);
        assert_eq!(h_sum(&set(3, &[1]), 2..=3), -2);
    }

    #[test]
    fn apply_r_on_mixed_vector() {
        let z = r(2, "z1-z2");
        let v = TensorVector::basis(&set(2, &[1]));
        let out = apply_r(1, 2, &LambdaArg::lambda(), &z, &v).unwrap();
        assert_eq!(out.get(&set(2, &[1])), r(2, "(λ+y)(z1-z2)/(λ(z1-z2-y))"));
        assert_eq!(out.get(&set(2, &[2])), r(2, "-(λ-z1+z2)y/(λ(z1-z2-y))"));
        let w = TensorVector::basis(&set(2, &[]));
        assert_eq!(apply_r(1, 2, &LambdaArg::lambda(), &z, &w).unwrap(), w);
    }

    #[test]
    fn inversion_and_ybe() {
        assert!(check_inversion().unwrap());
        assert!(check_ybe().unwrap());
    }

    #[test]
    fn coxeter_n3() {
        assert!(check_coxeter(3, 2).unwrap());
    }

    #[test]
    fn s_hat_quadratic_relation() {
        let n = 3;
        let mu = r(n, "λ+2y");
        let c = r(n, "(λ+3y)/(λ+y)");
        for seed in 0..3 {
            let f = random_vector(n, Some(0), seed).unwrap().get(&SubsetIndex::empty(n));
            let s = |g: &RatF| s_hat(1, &mu, g, n).unwrap();
            let lhs = &(&s(&s(&f)) - &(&(&c - &RatF::one()) * &s(&f))) - &(&c * &f);
            assert!(lhs.is_zero());
            assert_eq!(s_hat_inv(1, &mu, &s(&f), n).unwrap(), f);
        }
        let sym = r(n, "z1 z2 + λ");
        assert_eq!(s_hat(1, &mu, &sym, n).unwrap(), &c * &sym);
        assert!(s_hat(1, &r(n, "y"), &sym, n).is_err());
    }

    #[test]
    fn invariant_vectors_meet_criteria() {
        for n in 2..=3 {
            for j in 1..n {
                for seed in 0..2 {
                    let u = random_vector(n, None, seed).unwrap();
                    let inv = u.add(&s_tilde(j, &u).unwrap());
                    assert_eq!(s_tilde(j, &inv).unwrap(), inv);
                    assert!(satisfies_invariance_criteria(j, &inv).unwrap());
                    assert!(!satisfies_invariance_criteria(j, &u).unwrap());
                }
                for k in 0..=n {
                    let v = invariant_from_criteria(n, k, j, 7 + k as u64).unwrap();
                    assert_eq!(s_tilde(j, &v).unwrap(), v, "n={n} k={k} j={j}");
                }
            }
        }
    }
}
