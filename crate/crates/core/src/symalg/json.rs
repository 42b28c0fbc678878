use serde_json::{json, Value};

use super::monomial::Monomial;
use super::poly::Polynomial;
use super::ratfunc::RationalFunction;
use super::scalar::Scalar;
use super::vars::{Var, VarTable};
use crate::error::{Error, Result};

pub fn poly_to_json<C: Scalar>(p: &Polynomial<C>, vt: &VarTable) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .iter()
        .map(|(m, c)| json!({ "coeff": c.to_canonical_string(), "exps": m.exponents(vt.len()) }))
        .collect();
    json!({ "vars": vt.names(), "terms": terms })
}

fn bad(msg: &str) -> Error {
    Error::Parse(format!("malformed polynomial JSON: {msg}"))
}

pub fn poly_from_json<C: Scalar>(v: &Value, vt: &VarTable) -> Result<Polynomial<C>> {
    let names = v.get("vars").and_then(Value::as_array).ok_or_else(|| bad("missing vars"))?;
    let vars: Vec<Var> = names
        .iter()
        .map(|n| {
            let s = n.as_str().ok_or_else(|| bad("variable name is not a string"))?;
            vt.lookup(s).ok_or_else(|| Error::Parse(format!("unknown variable {s}")))
        })
        .collect::<Result<_>>()?;
    let terms = v.get("terms").and_then(Value::as_array).ok_or_else(|| bad("missing terms"))?;
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        let cs = t.get("coeff").and_then(Value::as_str).ok_or_else(|| bad("missing coeff"))?;
        let c = C::parse_canonical(cs).ok_or_else(|| Error::Parse(format!("bad coefficient {cs}")))?;
        let exps = t.get("exps").and_then(Value::as_array).ok_or_else(|| bad("missing exps"))?;
        if exps.len() != vars.len() {
            return Err(bad("exponent vector length differs from vars"));
        }
        let mut m = Monomial::ONE;
        for (var, e) in vars.iter().zip(exps) {
            let e = e.as_u64().filter(|&e| e <= 255).ok_or_else(|| bad("bad exponent"))?;
            if e > 0 {
                m = m.mul(&Monomial::var_pow(*var, e as u32));
            }
        }
        out.push((m, c));
    }
    Ok(Polynomial::from_terms(out))
}

pub fn ratf_to_json<C: Scalar>(f: &RationalFunction<C>, vt: &VarTable) -> Value {
    json!({ "num": poly_to_json(f.num(), vt), "den": poly_to_json(&f.den(), vt) })
}

pub fn ratf_from_json<C: Scalar>(v: &Value, vt: &VarTable) -> Result<RationalFunction<C>> {
    let num = poly_from_json(v.get("num").ok_or_else(|| bad("missing num"))?, vt)?;
    let den = poly_from_json(v.get("den").ok_or_else(|| bad("missing den"))?, vt)?;
    RationalFunction::new(num, den)
}
