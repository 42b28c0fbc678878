mod common;

use std::time::{Duration, Instant};

use dynstab::combinatorics::{permutations, subsets, Perm, SubsetIndex};
use dynstab::context::Context;
use dynstab::dynqg::build_l;
use dynstab::rmatrix::TensorVector;
use dynstab::suites::{run_suite, Suite};
use dynstab::symalg::parse::parse_ratf;
use dynstab::symalg::render::ratf_canonical;
use dynstab::symalg::{Style, Var};
use dynstab::weightfns::{check_interpolation, modified, weight, Variant};
use dynstab::xibasis::xi;
use dynstab::RatF;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Verdict = Result<(), String>;

fn set(n: usize, e: &[usize]) -> SubsetIndex {
    SubsetIndex::new(n, e.iter().copied()).unwrap()
}

fn parse(n: usize, src: &str) -> RatF {
    parse_ratf(src, Context::get(n).unwrap().vars()).unwrap()
}

fn canon(n: usize, f: &RatF) -> String {
    ratf_canonical(f, Context::get(n).unwrap().vars(), Style::Text)
}

fn same(n: usize, label: &str, got: &RatF, want: &str) -> Verdict {
    let (g, w) = (canon(n, got), canon(n, &parse(n, want)));
    if g == w {
        Ok(())
    } else {
        Err(format!("{label}: got {g}, expected {w}"))
    }
}

fn same_vec(n: usize, label: &str, got: &TensorVector, want: &[(SubsetIndex, &str)]) -> Verdict {
    let g: Vec<(String, String)> = got.iter().map(|(s, c)| (s.to_string(), canon(n, c))).collect();
    let mut w: Vec<(SubsetIndex, String)> =
        want.iter().map(|(s, src)| (s.clone(), canon(n, &parse(n, src)))).filter(|(_, c)| c != "0").collect();
    w.sort_by(|a, b| a.0.cmp(&b.0));
    let w: Vec<(String, String)> = w.into_iter().map(|(s, c)| (s.to_string(), c)).collect();
    if g == w {
        Ok(())
    } else {
        Err(format!("{label}: got {g:?}, expected {w:?}"))
    }
}

fn displayed_examples() -> Verdict {
    let (id2, s2) = (Perm::identity(2), Perm::longest(2));
    let two_point = [
        (&id2, 1, "y(λ+t1-z1+y)(t1-z2)"),
        (&id2, 2, "y(t1-z1+y)(λ+t1-z2)"),
        (&s2, 1, "y(λ+t1-z1)(t1-z2+y)"),
        (&s2, 2, "y(t1-z1)(λ+t1-z2+y)"),
    ];
    for (sigma, i, want) in two_point {
        let w = RatF::from_poly(weight(sigma, &set(2, &[i])).map_err(|e| e.to_string())?.value);
        same(2, &format!("W_{{{sigma},{{{i}}}}}"), &w, want)?;
    }

    for n in 1..=4 {
        let id = Perm::identity(n);
        for i in 1..=n {
            let before = |shift: &str| (1..i).map(|a| format!("(t1-z{a}{shift})")).collect::<String>();
            let after = |shift: &str| (i + 1..=n).map(|a| format!("(t1-z{a}{shift})")).collect::<String>();
            let s = set(n, &[i]);
            let w = RatF::from_poly(weight(&id, &s).map_err(|e| e.to_string())?.value);
            same(n, &format!("W_{{{i}}} n={n}"), &w, &format!("y{}(λ+t1-z{i}+({})y){}", before("+y"), n - i, after("")))?;
            let minus = modified(Variant::Minus, &id, &s).map_err(|e| e.to_string())?.value;
            let want = format!("-{}(-λ+t1-z{i}+({})y){}", before(""), i as i64 - n as i64 + 1, after("+y"));
            same(n, &format!("W̃⁻_{{{i}}} n={n}"), &minus, &want)?;
            let plus = modified(Variant::Plus, &id, &s).map_err(|e| e.to_string())?.value;
            let want = format!(
                "{}(λ+t1-z{i}+({})y){}/((λ+({})y)(λ+({})y))",
                before("+y"),
                n - i,
                after(""),
                n - i,
                n as i64 - i as i64 - 1
            );
            same(n, &format!("W̃⁺_{{{i}}} n={n}"), &plus, &want)?;
        }
    }

    let xi_of = |s: &SubsetIndex| xi(s).map_err(|e| e.to_string());
    same_vec(2, "ξ_{1} n=2", &xi_of(&set(2, &[1]))?, &[(set(2, &[1]), "λ")])?;
    same_vec(
        2,
        "ξ_{2} n=2",
        &xi_of(&set(2, &[2]))?,
        &[(set(2, &[1]), "-(λ+z1-z2)y/(z1-z2-y)"), (set(2, &[2]), "(λ-y)(z1-z2)/(z1-z2-y)")],
    )?;
    same_vec(3, "ξ_{1} n=3", &xi_of(&set(3, &[1]))?, &[(set(3, &[1]), "λ+y")])?;
    same_vec(
        3,
        "ξ_{2} n=3",
        &xi_of(&set(3, &[2]))?,
        &[(set(3, &[1]), "-(λ+z1-z2+y)y/(z1-z2-y)"), (set(3, &[2]), "λ(z1-z2)/(z1-z2-y)")],
    )?;
    same_vec(
        3,
        "ξ_{3} n=3",
        &xi_of(&set(3, &[3]))?,
        &[
            (set(3, &[1]), "-(λ+z1-z3+y)y/(z1-z3-y)"),
            (set(3, &[2]), "-(λ+z2-z3)(z1-z3)y/((z1-z3-y)(z2-z3-y))"),
            (set(3, &[3]), "(λ-y)(z1-z3)(z2-z3)/((z1-z3-y)(z2-z3-y))"),
        ],
    )?;

    let w = RatF::var(Var::W);
    let l = build_l(&Perm::identity(1), &w).map_err(|e| e.to_string())?;
    let (v1, v2) = (set(1, &[1]), set(1, &[]));
    let table: [(usize, usize, &SubsetIndex, Vec<(SubsetIndex, &str)>); 8] = [
        (1, 1, &v1, vec![(v1.clone(), "1")]),
        (1, 1, &v2, vec![(v2.clone(), "(λ+y)(w-z1)/(λ(w-z1-y))")]),
        (1, 2, &v1, vec![(v2.clone(), "-(λ+w-z1)y/(λ(w-z1-y))")]),
        (1, 2, &v2, vec![]),
        (2, 1, &v1, vec![]),
        (2, 1, &v2, vec![(v1.clone(), "-(λ-w+z1)y/(λ(w-z1-y))")]),
        (2, 2, &v1, vec![(v1.clone(), "(λ-y)(w-z1)/(λ(w-z1-y))")]),
        (2, 2, &v2, vec![(v2.clone(), "1")]),
    ];
    for (a, b, s, want) in &table {
        same_vec(2, &format!("L{a}{b} {s} n=1"), l.entry(*a, *b).column(s), want)?;
    }

    let l = build_l(&Perm::identity(2), &w).map_err(|e| e.to_string())?;
    let l22 = l.entry(2, 2);
    let (v11, v12, v21, v22) = (set(2, &[1, 2]), set(2, &[1]), set(2, &[2]), set(2, &[]));
    let rows: [(&SubsetIndex, Vec<(SubsetIndex, &str)>); 4] = [
        (&v11, vec![(v11.clone(), "(λ-y)(λ-2y)(w-z1)(w-z2)/(λ(λ-y)(w-z1-y)(w-z2-y))")]),
        (&v12, vec![(v12.clone(), "λ(w-z1)/((λ+y)(w-z1-y))")]),
        (
            &v21,
            vec![
                (v12.clone(), "(λ+y-w+z1)y/((λ+y)(w-z1-y)) (λ+w-z2)y/(λ(w-z2-y))"),
                (v21.clone(), "(λ-y)(w-z2)/(λ(w-z2-y))"),
            ],
        ),
        (&v22, vec![(v22.clone(), "1")]),
    ];
    for (s, want) in &rows {
        same_vec(3, &format!("L22 {s} n=2"), l22.column(s), want)?;
    }
    Ok(())
}

fn suites(list: &[(Suite, usize)]) -> Verdict {
    for &(suite, n) in list {
        let report = run_suite(suite, n, 1);
        if let Some(c) = report.checks.iter().find(|c| !c.passed) {
            return Err(format!("{suite}: {} {}", c.id, c.detail.clone().unwrap_or_default()));
        }
    }
    Ok(())
}

fn recursion() -> Verdict {
    suites(&[(Suite::Recursion, 3)])
}

fn orthogonality() -> Verdict {
    suites(&[(Suite::Orthogonality, 3)])
}

fn interpolation() -> Verdict {
    suites(&[(Suite::Interpolation, 3)])?;
    let n = 4;
    let perms = permutations(n);
    let spot = [0, 7, 13, perms.len() - 1];
    for p in spot {
        let sigma = &perms[p];
        for i in subsets(n, 2) {
            for j in subsets(n, 2) {
                let rep = check_interpolation(sigma, &i, &j).map_err(|e| e.to_string())?;
                if !rep.all() {
                    return Err(format!("σ={sigma} I={i} J={j}: {rep:?}"));
                }
            }
        }
    }
    Ok(())
}

fn r_matrix() -> Verdict {
    suites(&[(Suite::Inversion, 3), (Suite::Ybe, 3), (Suite::Braid, 3), (Suite::RCoincide, 3)])
}

fn stab_inverse() -> Verdict {
    suites(&[(Suite::StabInverse, 3)])
}

fn quantum_group() -> Verdict {
    suites(&[(Suite::Rll, 2), (Suite::Determinant, 2), (Suite::Eigen, 3), (Suite::Offdiag, 3)])
}

fn transport() -> Verdict {
    suites(&[(Suite::GzCohomology, 3), (Suite::Submodule, 2)])
}

fn run_property<S: Strategy>(name: &str, cases: u32, strategy: S, test: impl Fn(S::Value) -> common::Outcome) -> Verdict {
    let mut runner = TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
    runner.run(&strategy, test).map_err(|e| format!("{name}: {e}"))
}

fn properties() -> Verdict {
    use common::*;
    run_property("ring axioms", 64, (poly(), poly(), poly()), |(a, b, c)| ring_axioms(&a, &b, &c))?;
    run_property("exact division", 64, (poly(), nonzero_poly()), |(a, b)| exact_division(&a, &b))?;
    run_property("field axioms", 64, (ratf(), ratf(), ratf()), |(a, b, c)| field_axioms(&a, &b, &c))?;
    run_property("λ-shift and swap", 64, (ratf(), ratf(), -3i64..=3), |(a, b, m)| automorphisms(&a, &b, m))?;
    run_property("Laurent homomorphism", 64, (regular_at_infinity(), regular_at_infinity()), |(f, g)| laurent_homomorphism(&f, &g))?;
    run_property("matrix inverse", 64, matrix_entries(), |e| matrix_inverse(&e))?;
    run_property("partial order", 64, order_input(), partial_order)?;
    run_property("triangularity", 12, (1usize..=3, 0usize..6, 0usize..=3), |(n, p, k)| triangular(n, p, k))?;
    run_property("cocycle", 12, (0usize..6, 0usize..6, 0usize..6), |(a, b, c)| cocycle(a, b, c))?;
    Ok(())
}

struct Criterion {
    name: &'static str,
    budget: Option<Duration>,
    run: fn() -> Verdict,
}

fn main() {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria = [
        Criterion { name: "displayed examples", budget: secs(1), run: displayed_examples },
        Criterion { name: "weight recursion n=2,3", budget: secs(10), run: recursion },
        Criterion { name: "orthogonality n≤3", budget: secs(30), run: orthogonality },
        Criterion { name: "interpolation n≤3, spot n=4 k=2", budget: secs(120), run: interpolation },
        Criterion { name: "R-matrix", budget: secs(60), run: r_matrix },
        Criterion { name: "stable envelope inverse", budget: secs(60), run: stab_inverse },
        Criterion { name: "quantum group", budget: secs(300), run: quantum_group },
        Criterion { name: "cohomology transport", budget: secs(300), run: transport },
        Criterion { name: "property suites", budget: None, run: properties },
    ];
    let mut failures = Vec::new();
    for (i, c) in criteria.iter().enumerate() {
        let t = Instant::now();
        let verdict = (c.run)();
        let elapsed = t.elapsed();
        let over = c.budget.is_some_and(|b| elapsed > b);
        let budget = c.budget.map_or("none".to_string(), |b| format!("{}s", b.as_secs()));
        let status = if verdict.is_ok() && !over { "PASS" } else { "FAIL" };
        println!("criterion {} {status}  {:<34} {:>8.2}s (budget {budget})", i + 1, c.name, elapsed.as_secs_f64());
        if let Err(e) = &verdict {
            println!("    {e}");
        }
        if over {
            println!("    over time budget");
        }
        if status == "FAIL" {
            failures.push(i + 1);
        }
    }
    if !failures.is_empty() {
        println!("failed criteria: {failures:?}");
        std::process::exit(1);
    }
    println!("all {} criteria pass", criteria.len());
}
