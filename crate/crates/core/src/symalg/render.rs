use std::cmp::Ordering;

use super::factor::split_linear_factors;
use super::monomial::Monomial;
use super::poly::Polynomial;
use super::ratfunc::RationalFunction;
use super::scalar::Scalar;
use super::vars::{Var, VarTable};

/// Output flavour for human-readable rendering.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    /// Unicode: `λ`, subscripts, superscripts, `−`.
    Text,
    Latex,
}

const MINUS: &str = "−";

fn superscript(e: u32) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    e.to_string().chars().map(|c| DIGITS[c.to_digit(10).unwrap() as usize]).collect()
}

fn var_name(vt: &VarTable, v: Var, style: Style) -> String {
    match style {
        Style::Text => vt.pretty_name(v),
        Style::Latex => vt.latex_name(v),
    }
}

fn minus(style: Style) -> &'static str {
    match style {
        Style::Text => MINUS,
        Style::Latex => "-",
    }
}

fn power(base: String, e: u32, style: Style) -> String {
    match (e, style) {
        (1, _) => base,
        (_, Style::Text) => format!("{base}{}", superscript(e)),
        (_, Style::Latex) => format!("{base}^{{{e}}}"),
    }
}

fn monomial_string(m: &Monomial, vt: &VarTable, style: Style) -> String {
    let mut vars: Vec<(Var, u32)> = m.support().collect();
    vars.sort_by_key(|(v, _)| vt.display_rank(*v));
    let sep = if style == Style::Latex { " " } else { "" };
    vars.into_iter().map(|(v, e)| power(var_name(vt, v, style), e, style)).collect::<Vec<_>>().join(sep)
}

fn coeff_string<C: Scalar>(c: &C, style: Style) -> String {
    let s = c.to_canonical_string();
    match (style, s.split_once('/')) {
        (Style::Latex, Some((p, q))) => format!("\\frac{{{p}}}{{{q}}}"),
        _ => s,
    }
}

/// Join signed terms `(negative, body)` into `a + b − c`.
fn join_terms(terms: Vec<(bool, String)>, style: Style, compact: bool) -> String {
    let mut out = String::new();
    for (i, (neg, body)) in terms.into_iter().enumerate() {
        let (plus, minus_sep) = if compact { ("+", minus(style).to_string()) } else { (" + ", format!(" {} ", minus(style))) };
        match (i, neg) {
            (0, false) => {}
            (0, true) => out.push_str(minus(style)),
            (_, false) => out.push_str(plus),
            (_, true) => out.push_str(&minus_sep),
        }
        out.push_str(&body);
    }
    out
}

fn term_body<C: Scalar>(m: &Monomial, c: &C, vt: &VarTable, style: Style) -> (bool, String) {
    let neg = c.is_negative();
    let a = c.abs();
    if m.is_one() {
        return (neg, coeff_string(&a, style));
    }
    let mono = monomial_string(m, vt, style);
    if a.is_one() {
        return (neg, mono);
    }
    let cs = coeff_string(&a, style);
    let body = match style {
        Style::Text if cs.contains('/') => format!("{cs}·{mono}"),
        Style::Latex => format!("{cs} {mono}"),
        _ => format!("{cs}{mono}"),
    };
    (neg, body)
}

/// Expanded polynomial, terms in canonical graded-lex order.
pub fn poly_expanded<C: Scalar>(p: &Polynomial<C>, vt: &VarTable, style: Style) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let terms = p.terms().iter().map(|(m, c)| term_body(m, c, vt, style)).collect();
    join_terms(terms, style, false)
}

/// Canonical single-line form `num` or `(num)/(den)` with both parts expanded.
pub fn ratf_canonical<C: Scalar>(f: &RationalFunction<C>, vt: &VarTable, style: Style) -> String {
    let num = poly_expanded(f.num(), vt, style);
    if f.is_polynomial() {
        return num;
    }
    let den = poly_expanded(&f.den(), vt, style);
    match style {
        Style::Text => format!("({num})/({den})"),
        Style::Latex => format!("\\frac{{{num}}}{{{den}}}"),
    }
}

/// A linear factor ordered for reading (`λ+t₁−z₁+y`); returns the sign
/// flip needed to make its first displayed term positive.
fn linear_factor_string<C: Scalar>(f: &Polynomial<C>, vt: &VarTable, style: Style) -> (bool, String) {
    let mut terms: Vec<&(Monomial, C)> = f.terms().iter().collect();
    terms.sort_by_key(|(m, _)| m.support().next().map_or(usize::MAX, |(v, _)| vt.display_rank(v)));
    let flip = terms[0].1.is_negative();
    let parts = terms
        .into_iter()
        .map(|(m, c)| {
            let c = if flip { -c.clone() } else { c.clone() };
            term_body(m, &c, vt, style)
        })
        .collect();
    (flip, join_terms(parts, style, true))
}

struct Factored {
    negative: bool,
    coeff: String,
    body: String,
    pieces: usize,
}

fn factor_key(f: &Polynomial<impl Scalar>, vt: &VarTable) -> (usize, usize) {
    let best = f
        .terms()
        .iter()
        .filter_map(|(m, _)| m.support().next().map(|(v, _)| vt.display_rank(v)))
        .min()
        .unwrap_or(usize::MAX);
    (best, f.len())
}

/// Render `content · ∏ factors` where single-variable factors form a leading
/// monomial and the rest are parenthesized.
fn product_string<C: Scalar>(
    content: C,
    factors: &[(Polynomial<C>, u32)],
    cofactor: Option<&Polynomial<C>>,
    vt: &VarTable,
    style: Style,
) -> Factored {
    let mut negative = content.is_negative();
    let mut mono = Monomial::ONE;
    let mut sorted: Vec<&(Polynomial<C>, u32)> = Vec::new();
    for fe in factors {
        let (f, e) = fe;
        if f.len() == 1 {
            let (m, _) = &f.terms()[0];
            for _ in 0..*e {
                mono = mono.mul(m);
            }
        } else {
            sorted.push(fe);
        }
    }
    sorted.sort_by(|a, b| {
        let (ka, kb) = (factor_key(&a.0, vt), factor_key(&b.0, vt));
        ka.cmp(&kb).then_with(|| match (a.0.len(), b.0.len()) {
            (x, y) if x != y => x.cmp(&y),
            _ => Ordering::Equal,
        })
    });
    let mut body = String::new();
    let mut pieces = 0;
    if !mono.is_one() {
        body.push_str(&monomial_string(&mono, vt, style));
        pieces += mono.support().count();
    }
    for (f, e) in sorted {
        let (flip, s) = linear_factor_string(f, vt, style);
        if flip && e % 2 == 1 {
            negative = !negative;
        }
        body.push_str(&power(format!("({s})"), *e, style));
        pieces += 1;
    }
    if let Some(c) = cofactor {
        if !c.is_constant() {
            body.push_str(&format!("({})", poly_expanded(c, vt, style)));
            pieces += 1;
        }
    }
    let a = content.abs();
    let coeff = if a.is_one() && !body.is_empty() { String::new() } else { coeff_string(&a, style) };
    if !coeff.is_empty() && !body.is_empty() {
        pieces += 1;
    }
    Factored { negative, coeff, body, pieces }
}

/// Factored rendering, e.g. `y(λ+t₁−z₁+y)(t₁−z₂)` or `−(λ+z₁−z₂)y/(z₁−z₂−y)`.
pub fn ratf_factored<C: Scalar>(f: &RationalFunction<C>, vt: &VarTable, style: Style) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let split = split_linear_factors(f.num());
    let mut num = product_string(split.content, &split.factors, Some(&split.cofactor), vt, style);
    let num_str = |n: &Factored| {
        let sep = if style == Style::Latex && !n.coeff.is_empty() && !n.body.is_empty() { " " } else { "" };
        format!("{}{sep}{}", n.coeff, n.body)
    };
    if f.is_polynomial() {
        let sign = if num.negative { minus(style) } else { "" };
        return format!("{sign}{}", num_str(&num));
    }
    let den = product_string(C::one(), f.den_factors(), None, vt, style);
    num.negative ^= den.negative;
    let sign = if num.negative { minus(style) } else { "" };
    let n = num_str(&num);
    let n = if n.is_empty() { "1".to_string() } else { n };
    let d = num_str(&den);
    match style {
        Style::Text => {
            let d = if den.pieces > 1 || !den.coeff.is_empty() { format!("({d})") } else { d };
            format!("{sign}{n}/{d}")
        }
        Style::Latex => format!("{sign}\\frac{{{n}}}{{{d}}}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symalg::parse::parse_ratf;
    use num_rational::BigRational;

    type R = RationalFunction<BigRational>;

    fn roundtrip(src: &str, vt: &VarTable) -> String {
        let f: R = parse_ratf(src, vt).unwrap();
        let text = ratf_factored(&f, vt, Style::Text);
        let back: R = parse_ratf(&text, vt).unwrap();
        assert_eq!(back, f, "factored text {text} does not parse back");
        let canon = ratf_canonical(&f, vt, Style::Text);
        let back: R = parse_ratf(&canon, vt).unwrap();
        assert_eq!(back, f, "canonical text {canon} does not parse back");
        text
    }

    #[test]
    fn factored_forms_read_naturally() {
        let vt = VarTable::new(2, 1).unwrap();
        assert_eq!(roundtrip("y(λ+t₁−z₁+y)(t₁−z₂)", &vt), "y(λ+t₁−z₁+y)(t₁−z₂)");
        assert_eq!(roundtrip("-(λ+z₁−z₂)y/(z₁−z₂−y)", &vt), "−y(λ+z₁−z₂)/(z₁−z₂−y)");
        roundtrip("(λ+y)(z1-z2)/(λ(z1-z2-y))", &vt);
        roundtrip("3/2 λ^2 - y/(2λ)", &vt);
        roundtrip("(λ^2+z1 z2)/(λ+y)^2", &vt);
    }

    #[test]
    fn latex_uses_frac() {
        let vt = VarTable::new(2, 1).unwrap();
        let f: R = parse_ratf("λ/(λ+y)", &vt).unwrap();
        assert_eq!(ratf_factored(&f, &vt, Style::Latex), "\\frac{\\lambda}{(\\lambda+y)}");
    }
}
