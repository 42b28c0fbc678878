//! Named verification suites over the identity checkers, with timing and a
//! uniform report.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cohomology::{check_coincidence, geometric_r, in_loc_image, kappa, nu, stab, stab_matrix, LocalizedClass};
use crate::combinatorics::{permutations, subsets, Perm, SubsetIndex};
use crate::context::Context;
use crate::dynqg::{self, OffDiag};
use crate::error::{Error, Result};
use crate::rmatrix::{
    check_coxeter, check_inversion, check_ybe, invariant_from_criteria, random_vector, s_tilde,
    satisfies_invariance_criteria, TensorVector,
};
use crate::symalg::parse::parse_ratf;
use crate::weightfns::{check_interpolation, check_orthogonality_i, check_orthogonality_ii, check_recursion, diagram_weight, weight};
use crate::xibasis::{check_xi, check_xi_recursion, combine_xi, is_equivariant, is_invariant, xi, xi_from_min};
use crate::{Poly, RatF};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Recursion,
    Orthogonality,
    Interpolation,
    Ybe,
    Inversion,
    Braid,
    StabInverse,
    RCoincide,
    Rll,
    Determinant,
    Eigen,
    Offdiag,
    GzCohomology,
    Submodule,
}

impl Suite {
    pub const ALL: [Suite; 14] = [
        Suite::Recursion,
        Suite::Orthogonality,
        Suite::Interpolation,
        Suite::Ybe,
        Suite::Inversion,
        Suite::Braid,
        Suite::StabInverse,
        Suite::RCoincide,
        Suite::Rll,
        Suite::Determinant,
        Suite::Eigen,
        Suite::Offdiag,
        Suite::GzCohomology,
        Suite::Submodule,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Recursion => "recursion",
            Suite::Orthogonality => "orthogonality",
            Suite::Interpolation => "interpolation",
            Suite::Ybe => "ybe",
            Suite::Inversion => "inversion",
            Suite::Braid => "braid",
            Suite::StabInverse => "stab-inverse",
            Suite::RCoincide => "r-coincide",
            Suite::Rll => "rll",
            Suite::Determinant => "determinant",
            Suite::Eigen => "eigen",
            Suite::Offdiag => "offdiag",
            Suite::GzCohomology => "gz-cohomology",
            Suite::Submodule => "submodule",
        }
    }

    /// Largest `n` run without an explicit override.
    pub fn default_cap(self) -> usize {
        match self {
            Suite::Rll | Suite::Determinant => 2,
            Suite::Interpolation | Suite::Braid => 4,
            _ => 3,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub id: String,
    pub passed: bool,
    pub elapsed: Duration,
    /// First failing instance or error message.
    pub detail: Option<String>,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: String,
    pub n: usize,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn elapsed(&self) -> Duration {
        self.checks.iter().map(|c| c.elapsed).sum()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "n": self.n,
            "passed": self.passed(),
            "checks": self.checks.iter().map(|c| json!({
                "id": c.id,
                "passed": c.passed,
                "elapsed_ms": c.elapsed.as_millis() as u64,
                "detail": c.detail,
            })).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {} (n ≤ {})", self.suite, self.n)?;
        for c in &self.checks {
            let status = if c.passed { "pass" } else { "FAIL" };
            write!(f, "  {status}  {:<40} {:>9.3}s", c.id, c.elapsed.as_secs_f64())?;
            if let Some(d) = &c.detail {
                write!(f, "  {d}")?;
            }
            writeln!(f)?;
        }
        write!(f, "{}: {}", self.suite, if self.passed() { "pass" } else { "FAIL" })
    }
}

/// `Ok(None)` passes; `Ok(Some(instance))` names the first failure.
type Outcome = Result<Option<String>>;
type CheckFn = Box<dyn Fn() -> Outcome + Send + Sync>;

struct Check {
    id: String,
    run: CheckFn,
}

fn check(id: impl Into<String>, run: impl Fn() -> Outcome + Send + Sync + 'static) -> Check {
    Check { id: id.into(), run: Box::new(run) }
}

fn first_failure<T>(items: impl IntoIterator<Item = T>, mut ok: impl FnMut(&T) -> Result<bool>, label: impl Fn(&T) -> String) -> Outcome {
    for item in items {
        if !ok(&item)? {
            return Ok(Some(label(&item)));
        }
    }
    Ok(None)
}

fn all_subsets(n: usize) -> Vec<SubsetIndex> {
    (0..=n).flat_map(|k| subsets(n, k)).collect()
}

fn pairs(n: usize) -> Vec<(SubsetIndex, SubsetIndex)> {
    (0..=n)
        .flat_map(|k| {
            let s = subsets(n, k);
            s.iter().flat_map(|a| s.iter().map(move |b| (a.clone(), b.clone()))).collect::<Vec<_>>()
        })
        .collect()
}

fn r(n: usize, src: &str) -> Result<RatF> {
    parse_ratf(src, Context::get(n)?.vars())
}

/// `Stab_id(ξ_I)` has components `∏_{a∈J} ∏_{b∉I} (z_a − z_b)`.
pub fn check_stab_xi(set: &SubsetIndex) -> Result<bool> {
    let n = set.n();
    let ctx = Context::get(n)?;
    let c = stab(&Perm::identity(n), set.k(), &xi(set)?)?;
    for (j, v) in c.components() {
        let mut p = Poly::one();
        for &a in j.elements() {
            for b in set.complement_elements() {
                p = &p * &(&ctx.z(a) - &ctx.z(b));
            }
        }
        if *v != RatF::from_poly(p) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `ν(Stab_id v_K) = v_K` and `Stab_id(ν c) = c` for point classes `c`.
pub fn check_stab_inverse(set: &SubsetIndex) -> Result<bool> {
    let n = set.n();
    let k = set.k();
    let id = Perm::identity(n);
    let v = TensorVector::basis(set);
    if nu(&stab(&id, k, &v)?)? != v {
        return Ok(false);
    }
    let ctx = Context::get(n)?;
    let point = LocalizedClass::from_fn(n, k, |j| {
        Ok(if j == set { RatF::from_poly(&ctx.z(1) + &ctx.lambda()) } else { RatF::zero() })
    })?;
    if stab(&id, k, &nu(&point)?)? != point {
        return Ok(false);
    }
    let kap = kappa(&Perm::longest(n), set)?;
    Ok(stab(&id, k, &nu(&kap)?)? == kap)
}

/// The displayed two-point geometric R-matrix `𝓡_{id,s}`.
pub fn check_two_point_geometric_r() -> Result<bool> {
    let g = geometric_r(&Perm::identity(2), &Perm::longest(2))?;
    let m = g.block(1);
    Ok(m.get(0, 0) == &r(2, "(λ+y)(z1-z2)/(λ(z1-z2-y))")?
        && m.get(0, 1) == &r(2, "-(λ+z1-z2)y/(λ(z1-z2-y))")?
        && m.get(1, 0) == &r(2, "-(λ-z1+z2)y/(λ(z1-z2-y))")?
        && m.get(1, 1) == &r(2, "(λ-y)(z1-z2)/(λ(z1-z2-y))")?
        && g.block(0).is_identity()
        && g.block(2).is_identity())
}

/// `𝓡_{a,b} 𝓡_{b,c} = 𝓡_{a,c}` for all triples at `n`.
pub fn check_cocycle(n: usize) -> Result<Option<String>> {
    let perms = permutations(n);
    let mut cache = BTreeMap::new();
    let mut get = |a: &Perm, b: &Perm| -> Result<crate::rmatrix::DynOperator> {
        let key = (a.to_string(), b.to_string());
        if let Some(v) = cache.get(&key) {
            return Ok(Clone::clone(v));
        }
        let v = geometric_r(a, b)?;
        cache.insert(key, v.clone());
        Ok(v)
    };
    for a in &perms {
        for b in &perms {
            for c in &perms {
                if get(a, b)?.compose(&get(b, c)?) != get(a, c)? {
                    return Ok(Some(format!("{a} {b} {c}")));
                }
            }
        }
    }
    Ok(None)
}

/// Symmetric coefficient maps give invariant vectors, and a non-symmetric map
/// gives a non-invariant one.
pub fn check_invariance_equivariance(n: usize) -> Result<bool> {
    let ctx = Context::get(n)?;
    for k in 1..n {
        let mut sym = BTreeMap::new();
        let mut plain = BTreeMap::new();
        for s in subsets(n, k) {
            let inside: Poly = s.elements().iter().map(|&a| &ctx.z(a) + &ctx.lambda()).product();
            let outside: Poly = s.complement_elements().into_iter().map(|b| ctx.z(b)).sum();
            sym.insert(s.clone(), RatF::from_poly(&inside + &(&outside * &ctx.y())));
            plain.insert(s.clone(), RatF::from_poly(ctx.z(1)));
        }
        if !is_equivariant(n, &sym)? || !is_invariant(&combine_xi(n, &sym)?)? {
            return Ok(false);
        }
        if is_equivariant(n, &plain)? || is_invariant(&combine_xi(n, &plain)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Invariant vectors satisfy the componentwise criteria, non-invariant ones do
/// not, and vectors completed from the criteria are invariant.
pub fn check_invariance_criteria(n: usize, j: usize) -> Result<bool> {
    for seed in 0..2 {
        let u = random_vector(n, None, seed)?;
        let inv = u.add(&s_tilde(j, &u)?);
        if s_tilde(j, &inv)? != inv || !satisfies_invariance_criteria(j, &inv)? || satisfies_invariance_criteria(j, &u)? {
            return Ok(false);
        }
    }
    for k in 0..=n {
        let v = invariant_from_criteria(n, k, j, 7 + k as u64)?;
        if s_tilde(j, &v)? != v {
            return Ok(false);
        }
    }
    Ok(true)
}

fn suite_checks(suite: Suite, n_max: usize) -> Vec<Check> {
    let mut out = Vec::new();
    match suite {
        Suite::Recursion => {
            for n in 2..=n_max {
                out.push(check(format!("three-case recursion n={n}"), move || {
                    let items: Vec<_> = all_subsets(n).into_iter().flat_map(|s| (1..n).map(move |a| (s.clone(), a))).collect();
                    first_failure(items, |(s, a)| check_recursion(s, *a), |(s, a)| format!("I={s} a={a}"))
                }));
            }
        }
        Suite::Orthogonality => {
            for n in 1..=n_max {
                out.push(check(format!("(−1)^k δ pairing n={n}"), move || {
                    first_failure(pairs(n), |(j, k)| check_orthogonality_i(j, k), |(j, k)| format!("J={j} K={k}"))
                }));
                out.push(check(format!("δ pairing n={n}"), move || {
                    first_failure(pairs(n), |(j, k)| check_orthogonality_ii(j, k), |(j, k)| format!("J={j} K={k}"))
                }));
            }
        }
        Suite::Interpolation => {
            for n in 1..=n_max {
                for sigma in permutations(n) {
                    let s2 = sigma.clone();
                    out.push(check(format!("fixed-point properties σ={sigma}"), move || {
                        first_failure(
                            pairs(n),
                            |(i, j)| Ok(check_interpolation(&s2, i, j)?.all()),
                            |(i, j)| format!("I={i} J={j}"),
                        )
                    }));
                    if n <= 3 {
                        let s3 = sigma.clone();
                        out.push(check(format!("diagram oracle σ={sigma}"), move || {
                            first_failure(all_subsets(n), |i| Ok(diagram_weight(&s3, i)? == weight(&s3, i)?), |i| format!("I={i}"))
                        }));
                    }
                }
            }
        }
        Suite::Ybe => out.push(check("dynamical Yang–Baxter", || Ok((!check_ybe()?).then(|| "8×8 sides differ".into())))),
        Suite::Inversion => {
            out.push(check("R(λ,z)R^{(21)}(λ,−z) = 1", || Ok((!check_inversion()?).then(|| "product is not 1".into()))))
        }
        Suite::Braid => {
            for n in 2..=n_max {
                out.push(check(format!("s̃ Coxeter relations n={n}"), move || Ok((!check_coxeter(n, 2)?).then(|| "random vector".into()))));
                if n <= 3 {
                    out.push(check(format!("s̃_i ξ_I = ξ_{{s_i(I)}} n={n}"), move || {
                        let items: Vec<_> = all_subsets(n).into_iter().flat_map(|s| (1..n).map(move |i| (s.clone(), i))).collect();
                        first_failure(items, |(s, i)| check_xi_recursion(s, *i), |(s, i)| format!("I={s} i={i}"))
                    }));
                    out.push(check(format!("ξ regenerated from ξ_min n={n}"), move || {
                        first_failure(
                            0..=n,
                            |&k| Ok(xi_from_min(n, k)?.into_iter().all(|(s, v)| xi(&s).map(|x| x == v).unwrap_or(false))),
                            |k| format!("k={k}"),
                        )
                    }));
                    out.push(check(format!("invariance criteria n={n}"), move || {
                        first_failure(1..n, |&j| check_invariance_criteria(n, j), |j| format!("j={j}"))
                    }));
                    out.push(check(format!("invariant iff equivariant n={n}"), move || {
                        Ok((!check_invariance_equivariance(n)?).then(|| "test coefficients".into()))
                    }));
                }
            }
        }
        Suite::StabInverse => {
            for n in 1..=n_max {
                out.push(check(format!("ν∘Stab = 1, Stab∘ν = 1 n={n}"), move || {
                    first_failure(all_subsets(n), check_stab_inverse, |s| format!("K={s}"))
                }));
                out.push(check(format!("Stab(ξ_I) product n={n}"), move || first_failure(all_subsets(n), check_stab_xi, |s| format!("I={s}"))));
                out.push(check(format!("ξ triangularity and coefficients n={n}"), move || {
                    first_failure(all_subsets(n), |s| Ok(check_xi(s)?.all()), |s| format!("I={s}"))
                }));
                out.push(check(format!("Stab matrices triangular n={n}"), move || {
                    let items: Vec<_> = permutations(n).into_iter().flat_map(|p| (0..=n).map(move |k| (p.clone(), k))).collect();
                    first_failure(items, |(p, k)| stab_matrix(p, *k)?.is_triangular(), |(p, k)| format!("σ={p} k={k}"))
                }));
            }
        }
        Suite::RCoincide => {
            out.push(check("two-point 𝓡_{id,s} display", || Ok((!check_two_point_geometric_r()?).then(|| "entry mismatch".into()))));
            for n in 2..=n_max {
                out.push(check(format!("geometric = dynamical n={n}"), move || {
                    let items: Vec<_> = permutations(n).into_iter().flat_map(|p| (1..n).map(move |a| (p.clone(), a))).collect();
                    first_failure(items, |(p, a)| check_coincidence(p, *a), |(p, a)| format!("σ={p} a={a}"))
                }));
                out.push(check(format!("cocycle n={n}"), move || check_cocycle(n)));
                out.push(check(format!("κ in localization image n={n}"), move || {
                    let items: Vec<_> = permutations(n).into_iter().flat_map(|p| all_subsets(n).into_iter().map(move |s| (p.clone(), s))).collect();
                    first_failure(items, |(p, s)| in_loc_image(&kappa(p, s)?), |(p, s)| format!("σ={p} I={s}"))
                }));
                out.push(check(format!("R̂ intertwines L̃ n={n}"), move || {
                    let items: Vec<_> = permutations(n).into_iter().flat_map(|p| (1..n).map(move |i| (p.clone(), i))).collect();
                    first_failure(items, |(p, i)| dynqg::check_intertwiner(p, *i), |(p, i)| format!("σ={p} i={i}"))
                }));
            }
        }
        Suite::Rll => {
            for n in 1..=n_max {
                out.push(check(format!("RLL n={n}"), move || first_failure(permutations(n), dynqg::check_rll, |p| format!("σ={p}"))));
                out.push(check(format!("L₁₁, L₂₂ scalar relations n={n}"), move || {
                    first_failure(permutations(n), |p| Ok(dynqg::check_rll_scalar_relations(p)? == (true, true)), |p| format!("σ={p}"))
                }));
                out.push(check(format!("L̃_aa(w₁), L̃_aa(w₂) commute n={n}"), move || {
                    first_failure(permutations(n), dynqg::check_tilde_commutation, |p| format!("σ={p}"))
                }));
                out.push(check(format!("δ-conjugation relations n={n}"), move || {
                    first_failure(permutations(n), dynqg::check_shift_relations, |p| format!("σ={p}"))
                }));
            }
        }
        Suite::Determinant => {
            for n in 1..=n_max {
                out.push(check(format!("Det̃ scalar, both forms, central n={n}"), move || {
                    first_failure(permutations(n), |p| Ok(dynqg::check_determinant(p)?.all()), |p| format!("σ={p}"))
                }));
                out.push(check(format!("GZ generators commute n={n}"), move || {
                    Ok((!dynqg::check_gz_commutative(n, 3)?).then(|| "s ≤ 3".into()))
                }));
                out.push(check(format!("L̃₂₂⁻¹ series = matrix inverse n={n}"), move || {
                    Ok((!dynqg::check_series_inverse(n, 3)?).then(|| "s ≤ 3".into()))
                }));
                out.push(check(format!("Det̃₀ = 1, Det̃₁ = ny n={n}"), move || {
                    let b = dynqg::b_coeffs(n, 1)?;
                    let ok = b[0].is_one() && b[1] == r(n, &format!("{n}y"))?;
                    Ok((!ok).then(|| "coefficients".into()))
                }));
            }
        }
        Suite::Eigen => {
            for n in 1..=n_max {
                out.push(check(format!("L̃₂₂ ξ_I eigenvalue n={n}"), move || first_failure(all_subsets(n), dynqg::check_eigen, |s| format!("I={s}"))));
            }
        }
        Suite::Offdiag => {
            for n in 1..=n_max {
                out.push(check(format!("F̃, Ẽ on ξ_I n={n}"), move || {
                    first_failure(all_subsets(n), |s| Ok(dynqg::check_offdiag(s)? == (true, true)), |s| format!("I={s}"))
                }));
            }
        }
        Suite::GzCohomology => {
            for n in 1..=n_max {
                out.push(check(format!("L̃₂₂, Det̃ transport n={n}"), move || {
                    let items: Vec<_> =
                        all_subsets(n).into_iter().flat_map(|s| [(s.clone(), false), (s, true)]).collect();
                    first_failure(
                        items,
                        |(s, use_xi)| {
                            let v = if *use_xi { xi(s)? } else { TensorVector::basis(s) };
                            Ok(dynqg::check_gz_transport(s.k(), &v)? == (true, true))
                        },
                        |(s, use_xi)| format!("{}_{s}", if *use_xi { "ξ" } else { "v" }),
                    )
                }));
                out.push(check(format!("a_s, b_s generator transport n={n}"), move || {
                    first_failure(all_subsets(n), |s| dynqg::check_gz_isomorphism(s.k(), &xi(s)?, n + 2), |s| format!("ξ_{s}"))
                }));
                out.push(check(format!("F̃, Ẽ two routes on κ n={n}"), move || {
                    let id = Perm::identity(n);
                    let mut items = Vec::new();
                    for s in all_subsets(n) {
                        if s.k() > 0 {
                            items.push((s.clone(), OffDiag::F));
                        }
                        if s.k() < n {
                            items.push((s, OffDiag::E));
                        }
                    }
                    first_failure(items, |(s, w)| dynqg::check_offdiag_transport(&kappa(&id, s)?, *w), |(s, w)| format!("{w:?} κ_{s}"))
                }));
            }
            out.push(check("a_s generate e_j (k ≤ 2)", || first_failure(1..=2, |&k| dynqg::check_a_generators(k), |k| format!("k={k}"))));
        }
        Suite::Submodule => {
            for n in 1..=n_max {
                out.push(check(format!("symmetric classes closed n={n}"), move || Ok((!dynqg::check_submodule(n)?).then(|| "image not symmetric".into()))));
            }
        }
    }
    out
}

fn run_checks(checks: Vec<Check>, jobs: usize) -> Vec<CheckResult> {
    let run = |c: &Check| {
        let t = Instant::now();
        let outcome = (c.run)();
        let elapsed = t.elapsed();
        let (passed, detail) = match outcome {
            Ok(None) => (true, None),
            Ok(Some(d)) => (false, Some(d)),
            Err(e) => (false, Some(format!("error: {e}"))),
        };
        CheckResult { id: c.id.clone(), passed, elapsed, detail }
    };
    if jobs <= 1 {
        return checks.iter().map(run).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(|| checks.par_iter().map(run).collect()),
        Err(_) => checks.iter().map(run).collect(),
    }
}

/// Run `suite` for every size up to `n_max`.
pub fn run_suite(suite: Suite, n_max: usize, jobs: usize) -> SuiteReport {
    SuiteReport { suite: suite.name().into(), n: n_max, checks: run_checks(suite_checks(suite, n_max), jobs) }
}
