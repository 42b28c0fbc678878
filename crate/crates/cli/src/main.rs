mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dynstab::cohomology::{geometric_r, kappa};
use dynstab::combinatorics::{subsets, Perm, SubsetIndex};
use dynstab::context::Context;
use dynstab::dynqg::{self, ShiftOp};
use dynstab::rmatrix::rmat;
use dynstab::suites::{run_suite, Suite, SuiteReport};
use dynstab::symalg::{LaurentSeries, Var, VarTable};
use dynstab::weightfns::{modified, weight, Variant};
use dynstab::xibasis::xi;
use dynstab::{Error, RatF};
use output::Format;
use serde_json::{json, Value};

/// Exact dynamical weight functions, stable envelopes and the dynamical
/// quantum group action on cotangent bundles of Grassmannians.
#[derive(Parser)]
#[command(name = "dynstab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute and print one object.
    Compute(ComputeArgs),
    /// Run a verification suite; exit status 1 if any identity fails.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Object {
    /// Weight function W_{σ,I}.
    Weight,
    /// Normalized W̃⁺_{σ,I}.
    Wplus,
    /// Normalized W̃⁻_I.
    Wminus,
    /// Restrictions of κ_{σ,I} to the fixed points.
    Kappa,
    /// ξ_I in the v-basis.
    Xi,
    /// Dynamical R-matrix, or the geometric 𝓡_{id,σ} with --sigma.
    Rmatrix,
    /// Entries L_{ab}(λ,w) of the L-operator of V_σ.
    Loperator,
    /// Determinant element Det̃(w).
    Det,
}

#[derive(Args)]
struct ComputeArgs {
    #[arg(value_enum)]
    object: Object,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// One-line notation, e.g. 2,1,3.
    #[arg(long)]
    sigma: Option<String>,
    /// Comma-separated subset, e.g. 1,3.
    #[arg(long = "I", value_name = "I")]
    set: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Also print Laurent coefficients at w = ∞ up to w^{-S}.
    #[arg(long, value_name = "S")]
    trunc: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
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
    All,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: SuiteArg,
    /// Largest n checked; defaults to the suite's cap.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Allow n above the suite's default cap.
    #[arg(long = "unsafe")]
    allow_unsafe: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

enum Failure {
    Usage(String),
    Identity(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(_) | Error::Parse(_) | Error::SizeMismatch(_) | Error::NotInSubset(_) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Identity(e.to_string()),
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn max_n() -> Outcome<usize> {
    match std::env::var("DYNSTAB_MAX_N") {
        Ok(v) => v.trim().parse().map_err(|_| usage(format!("DYNSTAB_MAX_N={v:?} is not a number"))),
        Err(_) => Ok(4),
    }
}

fn check_n(n: usize) -> Outcome<usize> {
    let cap = max_n()?;
    if n == 0 || n > cap {
        return Err(usage(format!("n = {n} outside 1..={cap} (set DYNSTAB_MAX_N to raise the limit)")));
    }
    Ok(n)
}

struct Params {
    n: usize,
    sigma: Perm,
    sets: Vec<SubsetIndex>,
    /// Whether a single subset was requested explicitly or implied.
    single: bool,
}

fn params(a: &ComputeArgs, need_set: bool) -> Outcome<Params> {
    let n = check_n(a.n.ok_or_else(|| usage("--n is required"))?)?;
    let sigma = match &a.sigma {
        Some(s) => Perm::parse(s)?,
        None => Perm::identity(n),
    };
    if sigma.n() != n {
        return Err(usage(format!("σ = {} is not a permutation of 1..{n}", a.sigma.as_deref().unwrap_or(""))));
    }
    let explicit = a.set.as_deref().map(|s| SubsetIndex::parse(s, n)).transpose()?;
    if let (Some(s), Some(k)) = (&explicit, a.k) {
        if s.k() != k {
            return Err(usage(format!("--I has {} elements but --k is {k}", s.k())));
        }
    }
    if let Some(k) = a.k {
        if k > n {
            return Err(usage(format!("k = {k} exceeds n = {n}")));
        }
    }
    let (sets, single) = match (explicit, a.k) {
        (Some(s), _) => (vec![s], true),
        (None, Some(0)) => (vec![SubsetIndex::empty(n)], true),
        (None, Some(k)) => (subsets(n, k), false),
        (None, None) if need_set => return Err(usage("give --I or --k")),
        (None, None) => (Vec::new(), false),
    };
    Ok(Params { n, sigma, sets, single })
}

fn labelled(p: &Params, fmt: Format, render: impl Fn(&SubsetIndex) -> Outcome<String>) -> Outcome<String> {
    let mut lines = Vec::new();
    for s in &p.sets {
        let body = render(s)?;
        lines.push(if p.single { body } else { format!("{}: {body}", output::subset_label(s, fmt)) });
    }
    Ok(lines.join("\n"))
}

fn keyed_json(p: &Params, render: impl Fn(&SubsetIndex) -> Outcome<Value>) -> Outcome<Value> {
    let mut m = serde_json::Map::new();
    for s in &p.sets {
        m.insert(s.to_string(), render(s)?);
    }
    Ok(Value::Object(m))
}

fn w_coeffs(f: &RatF, order: usize) -> Outcome<Vec<RatF>> {
    Ok(LaurentSeries::expand(f, Var::W, order)?.coeffs().to_vec())
}

fn compute(a: &ComputeArgs) -> Outcome<String> {
    let fmt = a.format;
    let json_out = |object: &str, n: usize, extra: Value| -> Outcome<String> {
        let mut v = json!({ "object": object, "n": n });
        if let (Value::Object(m), Value::Object(e)) = (&mut v, extra) {
            m.extend(e);
        }
        serde_json::to_string_pretty(&v).map_err(|e| Failure::Identity(e.to_string()))
    };
    match a.object {
        Object::Weight | Object::Wplus | Object::Wminus | Object::Kappa | Object::Xi => {
            let p = params(a, true)?;
            let vt: &VarTable = Context::get(p.n)?.vars();
            let sigma = &p.sigma;
            let object = format!("{:?}", a.object).to_lowercase();
            if fmt == Format::Json {
                let body = keyed_json(&p, |s| {
                    Ok(match a.object {
                        Object::Weight => output::poly_json(&weight(sigma, s)?.value, vt),
                        Object::Wplus => output::scalar_json(&modified(Variant::Plus, sigma, s)?.value, vt),
                        Object::Wminus => output::scalar_json(&modified(Variant::Minus, sigma, s)?.value, vt),
                        Object::Kappa => kappa(sigma, s)?.to_json()?,
                        _ => output::vector_json(&xi(s)?, vt),
                    })
                })?;
                return json_out(&object, p.n, json!({ "sigma": sigma.images(), "values": body }));
            }
            labelled(&p, fmt, |s| {
                Ok(match a.object {
                    Object::Weight => output::poly(&weight(sigma, s)?.value, vt, fmt),
                    Object::Wplus => output::scalar(&modified(Variant::Plus, sigma, s)?.value, vt, fmt),
                    Object::Wminus => output::scalar(&modified(Variant::Minus, sigma, s)?.value, vt, fmt),
                    Object::Kappa => {
                        let c = kappa(sigma, s)?;
                        let parts: Vec<String> = c
                            .components()
                            .map(|(j, v)| format!("{} ↦ {}", output::subset_label(j, fmt), output::scalar(v, vt, fmt)))
                            .collect();
                        parts.join("; ")
                    }
                    _ => output::vector(&xi(s)?, vt, fmt),
                })
            })
        }
        Object::Rmatrix => {
            if a.sigma.is_none() {
                let n = a.n.unwrap_or(2);
                let vt = Context::get(n.max(2))?.vars();
                let z = RatF::var(vt.z(1)) - RatF::var(vt.z(2));
                let m = rmat(&RatF::var(Var::LAMBDA), &z)?;
                if fmt == Format::Json {
                    return json_out("rmatrix", 2, json!({ "basis": ["11", "12", "21", "22"], "matrix": output::matrix_json(&m, vt) }));
                }
                return Ok(output::matrix(&m, vt, fmt));
            }
            let p = params(a, false)?;
            let vt = Context::get(p.n)?.vars();
            let g = geometric_r(&Perm::identity(p.n), &p.sigma)?;
            if fmt == Format::Json {
                let blocks: Vec<Value> = (0..=p.n)
                    .map(|k| {
                        let basis: Vec<String> = subsets(p.n, k).iter().map(ToString::to_string).collect();
                        json!({ "k": k, "basis": basis, "matrix": output::matrix_json(&g.block(k), vt) })
                    })
                    .collect();
                return json_out("rmatrix", p.n, json!({ "sigma": p.sigma.images(), "blocks": blocks }));
            }
            let mut out = Vec::new();
            for k in 0..=p.n {
                let basis: Vec<String> = subsets(p.n, k).iter().map(|s| output::subset_label(s, fmt)).collect();
                out.push(format!("k = {k}, basis {}", basis.join(", ")));
                out.push(output::matrix(&g.block(k), vt, fmt));
            }
            Ok(out.join("\n"))
        }
        Object::Loperator => {
            let p = params(a, false)?;
            let vt = Context::get(p.n)?.vars();
            let l = dynqg::build_l(&p.sigma, &RatF::var(Var::W))?;
            let names = [(1, 1), (1, 2), (2, 1), (2, 2)];
            if fmt == Format::Json {
                let mut m = serde_json::Map::new();
                for (i, j) in names {
                    m.insert(format!("L{i}{j}"), output::operator_json(l.entry(i, j), vt));
                    if let Some(order) = a.trunc {
                        let coeffs = dynqg::laurent_coeffs(l.entry(i, j), order)?;
                        let cs: Vec<Value> = coeffs.iter().map(|c| output::operator_json(c, vt)).collect();
                        m.insert(format!("L{i}{j}_coefficients"), Value::Array(cs));
                    }
                }
                return json_out("loperator", p.n, json!({ "sigma": p.sigma.images(), "entries": m }));
            }
            let mut out = Vec::new();
            for (i, j) in names {
                let name = if fmt == Format::Latex { format!("L_{{{i}{j}}}") } else { format!("L{i}{j}") };
                out.extend(output::operator(&name, l.entry(i, j), vt, fmt));
                if let Some(order) = a.trunc {
                    for (s, c) in dynqg::laurent_coeffs(l.entry(i, j), order)?.iter().enumerate() {
                        let cname = if fmt == Format::Latex { format!("L_{{{i}{j},{s}}}") } else { format!("L{i}{j},{s}") };
                        out.extend(output::operator(&cname, c, vt, fmt));
                    }
                }
            }
            Ok(out.join("\n"))
        }
        Object::Det => {
            let p = params(a, false)?;
            let vt = Context::get(p.n)?.vars();
            let w = RatF::var(Var::W);
            let det = dynqg::det_element(&p.sigma, &w)?;
            let scalar = dynqg::det_scalar(p.n, &w)?;
            let is_scalar = det == ShiftOp::scalar(p.n, &scalar);
            let coeffs = a.trunc.map(|s| w_coeffs(&scalar, s)).transpose()?;
            if fmt == Format::Json {
                let mut extra = json!({ "sigma": p.sigma.images(), "scalar": is_scalar });
                extra["value"] = if is_scalar { output::scalar_json(&scalar, vt) } else { output::shift_op_json(&det, vt) };
                if let Some(cs) = &coeffs {
                    extra["coefficients"] = Value::Array(cs.iter().map(|c| output::scalar_json(c, vt)).collect());
                }
                return json_out("det", p.n, extra);
            }
            let mut out = Vec::new();
            if is_scalar {
                out.push(output::scalar(&scalar, vt, fmt));
            } else {
                out.extend(output::shift_op("Det", &det, vt, fmt));
            }
            for (s, c) in coeffs.iter().flatten().enumerate() {
                out.push(format!("Det_{s} = {}", output::scalar(c, vt, fmt)));
            }
            Ok(out.join("\n"))
        }
    }
}

fn verify(a: &VerifyArgs) -> Outcome<(String, bool)> {
    let suites: Vec<Suite> = match a.suite {
        SuiteArg::All => Suite::ALL.to_vec(),
        other => {
            let name = other.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
            vec![name.parse()?]
        }
    };
    let limit = max_n()?;
    let mut reports: Vec<SuiteReport> = Vec::new();
    for suite in suites {
        let cap = suite.default_cap();
        let n = match a.n {
            Some(n) => {
                check_n(n)?;
                if n > cap && !a.allow_unsafe {
                    if a.suite != SuiteArg::All {
                        return Err(usage(format!(
                            "suite {suite} is capped at n = {cap}; pass --unsafe to run n = {n}"
                        )));
                    }
                    cap
                } else {
                    n
                }
            }
            None => cap.min(limit),
        };
        reports.push(run_suite(suite, n, a.jobs.max(1)));
    }
    let ok = reports.iter().all(SuiteReport::passed);
    let text = if a.format == Format::Json {
        let v = json!({ "passed": ok, "suites": reports.iter().map(SuiteReport::to_json).collect::<Vec<_>>() });
        serde_json::to_string_pretty(&v).map_err(|e| Failure::Identity(e.to_string()))?
    } else {
        let mut parts: Vec<String> = reports.iter().map(ToString::to_string).collect();
        if reports.len() > 1 {
            parts.push(format!("overall: {}", if ok { "pass" } else { "FAIL" }));
        }
        parts.join("\n")
    };
    Ok((text, ok))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Compute(a) => compute(a).map(|s| (s, true)),
        Command::Verify(a) => verify(a),
    };
    match result {
        Ok((text, ok)) => {
            println!("{text}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Identity(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
