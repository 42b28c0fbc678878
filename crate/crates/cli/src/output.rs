use dynstab::combinatorics::SubsetIndex;
use dynstab::dynqg::ShiftOp;
use dynstab::rmatrix::{DynOperator, TensorVector};
use dynstab::symalg::json::{poly_to_json, ratf_to_json};
use dynstab::symalg::render::ratf_factored;
use dynstab::symalg::{Style, VarTable};
use dynstab::{Poly, RatF, RatMatrix};
use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

impl Format {
    fn style(self) -> Style {
        match self {
            Format::Latex => Style::Latex,
            _ => Style::Text,
        }
    }
}

pub fn scalar(f: &RatF, vt: &VarTable, fmt: Format) -> String {
    ratf_factored(f, vt, fmt.style())
}

pub fn poly(p: &Poly, vt: &VarTable, fmt: Format) -> String {
    scalar(&RatF::from_poly(p.clone()), vt, fmt)
}

pub fn subset_label(s: &SubsetIndex, fmt: Format) -> String {
    let body: Vec<String> = s.elements().iter().map(ToString::to_string).collect();
    match fmt {
        Format::Latex => format!("\\{{{}\\}}", body.join(",")),
        _ => format!("{{{}}}", body.join(",")),
    }
}

fn basis_label(s: &SubsetIndex, fmt: Format) -> String {
    match fmt {
        Format::Latex => format!("v_{{{}}}", subset_label(s, fmt)),
        _ => format!("v{}", subset_label(s, fmt)),
    }
}

/// Whether `s` has a `+`, `−` or `/` outside all brackets.
fn needs_parens(s: &str) -> bool {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '{' => depth += 1,
            ')' | '}' => depth -= 1,
            '+' | '/' if depth == 0 => return true,
            '−' | '-' if depth == 0 && i > 0 => return true,
            _ => {}
        }
    }
    false
}

pub fn vector(v: &TensorVector, vt: &VarTable, fmt: Format) -> String {
    if v.is_zero() {
        return "0".into();
    }
    let (minus, dot) = match fmt {
        Format::Latex => ("-", " "),
        _ => ("−", "·"),
    };
    let mut out = String::new();
    for (i, (s, c)) in v.iter().enumerate() {
        let rendered = scalar(c, vt, fmt);
        let (neg, body) = match rendered.strip_prefix(minus) {
            Some(rest) => (true, rest.to_string()),
            None => (false, rendered),
        };
        let term = if body == "1" {
            basis_label(s, fmt)
        } else if needs_parens(&body) && !body.starts_with("\\frac") {
            format!("({body}){dot}{}", basis_label(s, fmt))
        } else {
            format!("{body}{dot}{}", basis_label(s, fmt))
        };
        match (i, neg) {
            (0, true) => out.push_str(minus),
            (0, false) => {}
            (_, true) => out.push_str(&format!(" {minus} ")),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&term);
    }
    out
}

pub fn vector_json(v: &TensorVector, vt: &VarTable) -> Value {
    let mut m = Map::new();
    for (s, c) in v.iter() {
        m.insert(s.to_string(), ratf_to_json(c, vt));
    }
    Value::Object(m)
}

pub fn poly_json(p: &Poly, vt: &VarTable) -> Value {
    poly_to_json(p, vt)
}

pub fn scalar_json(f: &RatF, vt: &VarTable) -> Value {
    ratf_to_json(f, vt)
}

pub fn matrix(m: &RatMatrix, vt: &VarTable, fmt: Format) -> String {
    let rows: Vec<Vec<String>> = (0..m.rows()).map(|i| (0..m.cols()).map(|j| scalar(m.get(i, j), vt, fmt)).collect()).collect();
    match fmt {
        Format::Latex => {
            let body: Vec<String> = rows.iter().map(|r| r.join(" & ")).collect();
            format!("\\begin{{pmatrix}} {} \\end{{pmatrix}}", body.join(" \\\\ "))
        }
        _ => rows.iter().map(|r| format!("[{}]", r.join(", "))).collect::<Vec<_>>().join("\n"),
    }
}

pub fn matrix_json(m: &RatMatrix, vt: &VarTable) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array((0..m.cols()).map(|j| ratf_to_json(m.get(i, j), vt)).collect())).collect())
}

/// `name v_S = …` for every basis vector with a nonzero image.
pub fn operator(name: &str, op: &DynOperator, vt: &VarTable, fmt: Format) -> Vec<String> {
    op.columns()
        .filter(|(_, v)| !v.is_zero())
        .map(|(s, v)| format!("{name} {} = {}", basis_label(s, fmt), vector(v, vt, fmt)))
        .collect()
}

pub fn operator_json(op: &DynOperator, vt: &VarTable) -> Value {
    let mut m = Map::new();
    for (s, v) in op.columns() {
        if !v.is_zero() {
            m.insert(s.to_string(), vector_json(v, vt));
        }
    }
    Value::Object(m)
}

fn delta(m: i64, fmt: Format) -> String {
    match (m, fmt) {
        (0, _) => String::new(),
        (1, Format::Latex) => "\\,\\delta".into(),
        (_, Format::Latex) => format!("\\,\\delta^{{{m}}}"),
        (1, _) => "·δ".into(),
        _ => format!("·δ^{m}"),
    }
}

/// `Σ_m [block]·δ^m`, one basis image per line.
pub fn shift_op(name: &str, op: &ShiftOp, vt: &VarTable, fmt: Format) -> Vec<String> {
    let mut out = Vec::new();
    for (m, b) in op.blocks() {
        out.extend(operator(&format!("{name}[{}]", delta(m, fmt).trim_start_matches('·')), b, vt, fmt));
    }
    out
}

pub fn shift_op_json(op: &ShiftOp, vt: &VarTable) -> Value {
    let blocks: Map<String, Value> = op.blocks().map(|(m, b)| (m.to_string(), operator_json(b, vt))).collect();
    json!({ "shifts": blocks })
}
