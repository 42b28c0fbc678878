//! Subsets, permutations and the named scalar factors attached to them.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::symalg::VarTable;
use crate::Poly;

/// A subset `I ⊂ [n]`, elements 1-based and sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubsetIndex {
    n: usize,
    elems: Vec<usize>,
}

impl SubsetIndex {
    pub fn new(n: usize, elems: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut elems: Vec<usize> = elems.into_iter().collect();
        elems.sort_unstable();
        if elems.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidParameter(format!("repeated element in {elems:?}")));
        }
        if let Some(&bad) = elems.iter().find(|&&e| e == 0 || e > n) {
            return Err(Error::InvalidParameter(format!("element {bad} outside [1,{n}]")));
        }
        Ok(SubsetIndex { n, elems })
    }

    pub fn from_mask(n: usize, mask: u32) -> Self {
        SubsetIndex { n, elems: (1..=n).filter(|i| mask >> (i - 1) & 1 == 1).collect() }
    }

    pub fn empty(n: usize) -> Self {
        SubsetIndex { n, elems: Vec::new() }
    }

    /// `{1, …, k}`.
    pub fn min(n: usize, k: usize) -> Self {
        SubsetIndex { n, elems: (1..=k).collect() }
    }

    /// `{n−k+1, …, n}`.
    pub fn max(n: usize, k: usize) -> Self {
        SubsetIndex { n, elems: (n - k + 1..=n).collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.elems.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elems
    }

    pub fn contains(&self, i: usize) -> bool {
        self.elems.binary_search(&i).is_ok()
    }

    /// Bit `i−1` set for each element `i`.
    pub fn mask(&self) -> u32 {
        self.elems.iter().fold(0, |m, &i| m | 1 << (i - 1))
    }

    pub fn complement(&self) -> SubsetIndex {
        SubsetIndex { n: self.n, elems: (1..=self.n).filter(|&i| !self.contains(i)).collect() }
    }

    pub fn complement_elements(&self) -> Vec<usize> {
        (1..=self.n).filter(|&i| !self.contains(i)).collect()
    }

    pub fn with(&self, i: usize) -> SubsetIndex {
        SubsetIndex::from_mask(self.n, self.mask() | 1 << (i - 1))
    }

    pub fn without(&self, i: usize) -> SubsetIndex {
        SubsetIndex::from_mask(self.n, self.mask() & !(1 << (i - 1)))
    }

    /// Image under the transposition of `i` and `j`.
    pub fn swap(&self, i: usize, j: usize) -> SubsetIndex {
        SubsetIndex::new(
            self.n,
            self.elems.iter().map(|&e| if e == i { j } else if e == j { i } else { e }),
        )
        .expect("transposition preserves subsets")
    }

    /// Parse `"1,3"`, `"{1,3}"` or `"{1,3}/4"`; the empty string is `∅`.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let body = s.trim();
        let body = match body.split_once('/') {
            Some((b, m)) => {
                let m: usize = m.trim().parse().map_err(|_| Error::Parse(format!("bad ambient size in {s}")))?;
                if m != n {
                    return Err(Error::InvalidParameter(format!("subset {s} is not in [1,{n}]")));
                }
                b
            }
            None => body,
        };
        let body = body.trim().trim_start_matches('{').trim_end_matches('}');
        let elems = body
            .split(',')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(|p| p.parse::<usize>().map_err(|_| Error::Parse(format!("bad subset element {p:?}"))))
            .collect::<Result<Vec<_>>>()?;
        SubsetIndex::new(n, elems)
    }
}

impl Ord for SubsetIndex {
    /// Ambient size, then cardinality, then colex.
    fn cmp(&self, other: &Self) -> Ordering {
        (self.n, self.k(), self.mask()).cmp(&(other.n, other.k(), other.mask()))
    }
}

impl PartialOrd for SubsetIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SubsetIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.elems.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}/{}", body.join(","), self.n)
    }
}

/// All `k`-subsets of `[n]` in colex order.
pub fn subsets(n: usize, k: usize) -> Vec<SubsetIndex> {
    if k > n {
        return Vec::new();
    }
    let mut out: Vec<SubsetIndex> =
        (0u32..1 << n).filter(|m| m.count_ones() as usize == k).map(|m| SubsetIndex::from_mask(n, m)).collect();
    out.sort();
    out
}

/// A permutation of `[n]` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &i in &images {
            if i == 0 || i > n || seen[i] {
                return Err(Error::InvalidParameter(format!("{images:?} is not a permutation of [1,{n}]")));
            }
            seen[i] = true;
        }
        Ok(Perm { images })
    }

    pub fn identity(n: usize) -> Self {
        Perm { images: (1..=n).collect() }
    }

    /// The longest element `(n, n−1, …, 1)`.
    pub fn longest(n: usize) -> Self {
        Perm { images: (1..=n).rev().collect() }
    }

    /// The transposition `s_{i,j}`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(i - 1, j - 1);
        Perm { images }
    }

    /// Parse one-line notation `"2,1,3"`.
    pub fn parse(s: &str) -> Result<Self> {
        let images = s
            .split(',')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(|p| p.parse::<usize>().map_err(|_| Error::Parse(format!("bad permutation entry {p:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Perm::new(images)
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm { images: other.images.iter().map(|&i| self.apply(i)).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.n()];
        for (i, &s) in self.images.iter().enumerate() {
            images[s - 1] = i + 1;
        }
        Perm { images }
    }

    pub fn apply_subset(&self, s: &SubsetIndex) -> SubsetIndex {
        SubsetIndex::new(s.n, s.elems.iter().map(|&i| self.apply(i))).expect("bijection maps subsets to subsets")
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &s)| s == i + 1)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.images.iter().map(ToString::to_string).collect();
        write!(f, "{}", body.join(","))
    }
}

/// All permutations of `[n]` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Perm> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Perm>) {
        if prefix.len() == used.len() {
            out.push(Perm { images: prefix.clone() });
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i + 1);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

/// `w(i,I) = #{j > i : j ∈ I} − #{j > i : j ∉ I}`.
pub fn wnum(i: usize, set: &SubsetIndex) -> Result<i64> {
    if !set.contains(i) {
        return Err(Error::NotInSubset(i));
    }
    Ok((i + 1..=set.n).map(|j| if set.contains(j) { 1 } else { -1 }).sum())
}

fn sorted_preimage(sigma: &Perm, s: &SubsetIndex) -> Vec<usize> {
    sigma.inverse().apply_subset(s).elems
}

/// `J ≤_σ I`.
pub fn leq_sigma(j: &SubsetIndex, i: &SubsetIndex, sigma: &Perm) -> Result<bool> {
    if j.k() != i.k() || j.n != i.n || sigma.n() != i.n {
        return Err(Error::SizeMismatch(format!("cannot compare {j} and {i} under {sigma}")));
    }
    let (pj, pi) = (sorted_preimage(sigma, j), sorted_preimage(sigma, i));
    Ok(pj.iter().zip(&pi).all(|(a, b)| a <= b))
}

/// `ℓ_{σ,I} = #{(i,j) : i > j, σ(i) ∈ I, σ(j) ∉ I}`.
pub fn schubert_dim(sigma: &Perm, set: &SubsetIndex) -> usize {
    let n = sigma.n();
    (1..=n)
        .flat_map(|i| (1..i).map(move |j| (i, j)))
        .filter(|&(i, j)| set.contains(sigma.apply(i)) && !set.contains(sigma.apply(j)))
        .count()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EulerKind {
    Hor,
    Ver,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

fn zvar(vt: &VarTable, i: usize) -> Poly {
    Poly::var(vt.z(i))
}

/// `e^{hor/ver}_{σ,I,±}`.
pub fn euler_factors(sigma: &Perm, set: &SubsetIndex, kind: EulerKind, sign: Sign, vt: &VarTable) -> Poly {
    let n = sigma.n();
    let y = Poly::var(vt.y());
    let mut acc = Poly::one();
    for a in 1..=n {
        if !set.contains(sigma.apply(a)) {
            continue;
        }
        for b in 1..=n {
            if set.contains(sigma.apply(b)) || b == a {
                continue;
            }
            let wanted = match (kind, sign) {
                (EulerKind::Hor, Sign::Plus) | (EulerKind::Ver, Sign::Minus) => b < a,
                (EulerKind::Hor, Sign::Minus) | (EulerKind::Ver, Sign::Plus) => b > a,
            };
            if !wanted {
                continue;
            }
            let (za, zb) = (zvar(vt, sigma.apply(a)), zvar(vt, sigma.apply(b)));
            let f = match kind {
                EulerKind::Hor => &zb - &za,
                EulerKind::Ver => &(&za - &zb) + &y,
            };
            acc = &acc * &f;
        }
    }
    acc
}

/// `(R_I, Q_I) = (∏(z_a − z_b), ∏(z_a − z_b + y))` over `a ∈ I, b ∉ I`.
pub fn rq_products(set: &SubsetIndex, vt: &VarTable) -> (Poly, Poly) {
    let y = Poly::var(vt.y());
    let mut r = Poly::one();
    let mut q = Poly::one();
    for &a in &set.elems {
        for b in set.complement_elements() {
            let d = &zvar(vt, a) - &zvar(vt, b);
            q = &q * &(&d + &y);
            r = &r * &d;
        }
    }
    (r, q)
}

/// `C^{(r)}_{σ,I} = ∏_{i∈I} (λ − (w(σ⁻¹(i), σ⁻¹(I)) + r) y)`.
pub fn c_factor(sigma: &Perm, set: &SubsetIndex, r: i64, vt: &VarTable) -> Poly {
    let inv = sigma.inverse();
    let pre = inv.apply_subset(set);
    let lam = Poly::var(vt.lambda());
    let y = Poly::var(vt.y());
    set.elems
        .iter()
        .map(|&i| {
            let w = wnum(inv.apply(i), &pre).expect("σ⁻¹(i) ∈ σ⁻¹(I)");
            &lam - &y.scale(&crate::symalg::int(w + r))
        })
        .product()
}

/// `∏_{a,b} (x_a − x_b + y)`; the diagonal contributes `y^k`.
pub fn ek_product(args: &[Poly], vt: &VarTable) -> Poly {
    let y = Poly::var(vt.y());
    let mut acc = Poly::one();
    for xa in args {
        for xb in args {
            acc = &acc * &(&(xa - xb) + &y);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symalg::parse::parse_ratf;

    fn set(n: usize, e: &[usize]) -> SubsetIndex {
        SubsetIndex::new(n, e.iter().copied()).unwrap()
    }

    fn p(src: &str, vt: &VarTable) -> Poly {
        parse_ratf::<crate::Rational>(src, vt).unwrap().to_poly().unwrap()
    }

    #[test]
    fn wnum_examples() {
        assert_eq!(wnum(2, &set(6, &[1, 2, 4])).unwrap(), -2);
        assert_eq!(wnum(2, &set(7, &[1, 2, 4])).unwrap(), -3);
        assert_eq!(wnum(3, &set(3, &[3])).unwrap(), 0);
        assert_eq!(wnum(1, &set(3, &[3])), Err(Error::NotInSubset(1)));
    }

    #[test]
    fn order_examples() {
        let id = Perm::identity(2);
        assert!(leq_sigma(&set(2, &[1]), &set(2, &[2]), &id).unwrap());
        assert!(!leq_sigma(&set(2, &[2]), &set(2, &[1]), &id).unwrap());
        assert!(leq_sigma(&set(3, &[3]), &set(3, &[1]), &Perm::longest(3)).unwrap());
        assert!(leq_sigma(&set(3, &[1]), &set(3, &[1, 2]), &Perm::identity(3)).is_err());
    }

    #[test]
    fn schubert_dimensions() {
        assert_eq!(schubert_dim(&Perm::identity(4), &SubsetIndex::min(4, 2)), 0);
        assert_eq!(schubert_dim(&Perm::identity(2), &set(2, &[2])), 1);
        assert_eq!(schubert_dim(&Perm::identity(4), &SubsetIndex::max(4, 2)), 4);
    }

    #[test]
    fn named_factors() {
        let vt = VarTable::new(3, 3).unwrap();
        let id2 = Perm::identity(2);
        let i1 = set(2, &[1]);
        assert_eq!(euler_factors(&id2, &i1, EulerKind::Hor, Sign::Minus, &vt), p("z2 - z1", &vt));
        assert!(euler_factors(&id2, &i1, EulerKind::Ver, Sign::Minus, &vt).is_one());
        let (r, q) = rq_products(&set(3, &[1, 3]), &vt);
        assert_eq!(r, p("(z1-z2)(z3-z2)", &vt));
        assert_eq!(q, p("(z1-z2+y)(z3-z2+y)", &vt));
        let (r, q) = rq_products(&SubsetIndex::empty(3), &vt);
        assert!(r.is_one() && q.is_one());
        assert_eq!(c_factor(&id2, &i1, 0, &vt), p("λ+y", &vt));
        assert!(c_factor(&id2, &SubsetIndex::empty(2), 0, &vt).is_one());
        let zs = [Poly::var(vt.z(1)), Poly::var(vt.z(2))];
        assert_eq!(ek_product(&zs, &vt), p("y^2 (z1-z2+y)(z2-z1+y)", &vt));
        assert_eq!(ek_product(&zs[..1], &vt), p("y", &vt));
        assert!(ek_product(&[], &vt).is_one());
    }

    #[test]
    fn c_factor_k1_normalizer() {
        for n in 1..=4 {
            let vt = VarTable::new(n, n).unwrap();
            let id = Perm::identity(n);
            for i in 1..=n {
                let s = set(n, &[i]);
                let got = &c_factor(&id, &s, 0, &vt) * &c_factor(&id, &s, 1, &vt);
                let want = p(&format!("(λ+{}y)(λ+{}y)", n - i, n as i64 - i as i64 - 1), &vt);
                assert_eq!(got, want);
            }
        }
    }

    #[test]
    fn euler_products_against_rq() {
        for n in 1..=3 {
            let vt = VarTable::new(n, n).unwrap();
            for sigma in permutations(n) {
                for k in 0..=n {
                    for s in subsets(n, k) {
                        let l = schubert_dim(&sigma, &s) as i64;
                        let hp = euler_factors(&sigma, &s, EulerKind::Hor, Sign::Plus, &vt);
                        let hm = euler_factors(&sigma, &s, EulerKind::Hor, Sign::Minus, &vt);
                        let (r, q) = rq_products(&s, &vt);
                        let sign = if (k * (n - k)) % 2 == 0 { 1 } else { -1 };
                        assert_eq!(&hp * &hm, r.scale(&crate::symalg::int(sign)));
                        let vp = euler_factors(&sigma, &s, EulerKind::Ver, Sign::Plus, &vt);
                        let vm = euler_factors(&sigma, &s, EulerKind::Ver, Sign::Minus, &vt);
                        assert_eq!(&vp * &vm, q);
                        assert!(l as usize <= k * (n - k));
                        assert_eq!(hp.total_degree().unwrap_or(0) as i64, l);
                    }
                }
            }
        }
    }

    #[test]
    fn subsets_and_rendering() {
        let all = subsets(4, 2);
        assert_eq!(all.len(), 6);
        assert_eq!(all[0].to_string(), "{1,2}/4");
        assert_eq!(all[1].to_string(), "{1,3}/4");
        assert_eq!(all[2].to_string(), "{2,3}/4");
        assert_eq!(SubsetIndex::parse("{2,3}/4", 4).unwrap(), all[2]);
        assert_eq!(SubsetIndex::parse("", 3).unwrap(), SubsetIndex::empty(3));
        let s = Perm::parse("2,3,1").unwrap();
        assert_eq!(s.compose(&s.inverse()), Perm::identity(3));
        assert_eq!(s.to_string(), "2,3,1");
        assert!(Perm::parse("1,1").is_err());
        assert_eq!(permutations(3).len(), 6);
    }
}
