//! JSON and LaTeX output.
//!
//! Scalars serialize as `[[exponents], [num_re, den_re, num_im, den_im]]`
//! term lists, forms as `[scalar, [generator names]]` lists; zero is `[]`.
//! Integers that do not fit in 64 bits are written as decimal strings.

use std::sync::Arc;

use num::bigint::BigInt;
use num::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::chart::{Chart, VarKind};
use crate::coeff::{from_parts, to_parts, Coeff};
use crate::equivariant::{key_string, parse_key, EquivariantForm};
use crate::error::{Error, Result};
use crate::form::{bits, Form};
use crate::scalar::Scalar;

fn int_value(s: &str) -> Value {
    match s.parse::<BigInt>().ok().and_then(|b| b.to_i64()) {
        Some(n) => json!(n),
        None => json!(s),
    }
}

fn int_text(v: &Value) -> Result<String> {
    match v {
        Value::Number(n) if n.is_i64() => Ok(n.to_string()),
        Value::String(s) => Ok(s.clone()),
        other => Err(Error::Json(format!("expected an integer, got {other}"))),
    }
}

pub fn coeff_json(c: &Coeff) -> Value {
    Value::Array(to_parts(c).iter().map(|s| int_value(s)).collect())
}

pub fn coeff_from_json(v: &Value) -> Result<Coeff> {
    let parts = v.as_array().filter(|a| a.len() == 4).ok_or_else(|| Error::Json("coefficient needs four integers".into()))?;
    let texts = parts.iter().map(int_text).collect::<Result<Vec<_>>>()?;
    from_parts([&texts[0], &texts[1], &texts[2], &texts[3]]).ok_or_else(|| Error::Json("zero denominator".into()))
}

pub fn scalar_json(s: &Scalar) -> Value {
    Value::Array(s.terms().map(|(m, c)| json!([m, coeff_json(c)])).collect())
}

pub fn scalar_from_json(chart: &Chart, v: &Value) -> Result<Scalar> {
    let terms = v.as_array().ok_or_else(|| Error::Json("scalar must be a list".into()))?;
    let mut s = Scalar::zero();
    for t in terms {
        let pair = t.as_array().filter(|a| a.len() == 2).ok_or_else(|| Error::Json("term must be [exponents, coefficient]".into()))?;
        let exps: Vec<i32> = serde_json::from_value(pair[0].clone()).map_err(|e| Error::Json(e.to_string()))?;
        if exps.len() != chart.nvars() {
            return Err(Error::Arity { expected: chart.nvars(), got: exps.len() });
        }
        s.add_term(exps, coeff_from_json(&pair[1])?);
    }
    Ok(chart.reduce(s))
}

pub fn form_json(f: &Form) -> Value {
    let chart = f.chart();
    Value::Array(
        f.terms()
            .map(|(w, s)| {
                let gens: Vec<String> = bits(*w).map(|v| chart.generator_name(v)).collect();
                json!([scalar_json(s), gens])
            })
            .collect(),
    )
}

pub fn form_from_json(chart: &Arc<Chart>, v: &Value) -> Result<Form> {
    let terms = v.as_array().ok_or_else(|| Error::Json("form must be a list".into()))?;
    let mut out = Form::zero(chart);
    for t in terms {
        let pair = t.as_array().filter(|a| a.len() == 2).ok_or_else(|| Error::Json("term must be [scalar, generators]".into()))?;
        let s = scalar_from_json(chart, &pair[0])?;
        let gens: Vec<String> = serde_json::from_value(pair[1].clone()).map_err(|e| Error::Json(e.to_string()))?;
        let mut g = Form::one(chart);
        for name in &gens {
            g = g.wedge(&Form::generator(chart, name)?)?;
        }
        out = &out + &g.mul_scalar(&s);
    }
    Ok(out)
}

pub fn equivariant_json(w: &EquivariantForm) -> Value {
    let mut map = Map::new();
    for (m, f) in w.components() {
        map.insert(key_string(m, w.dual()), form_json(f));
    }
    Value::Object(map)
}

pub fn equivariant_from_json(chart: &Arc<Chart>, dual: &[String], v: &Value) -> Result<EquivariantForm> {
    let obj = v.as_object().ok_or_else(|| Error::Json("equivariant form must be an object".into()))?;
    let mut out = EquivariantForm::zero(chart, dual);
    for (k, f) in obj {
        out.add_component(parse_key(k, dual)?, form_from_json(chart, f)?);
    }
    Ok(out)
}

fn kind_name(k: VarKind) -> &'static str {
    match k {
        VarKind::Real => "real",
        VarKind::Complex => "complex",
        VarKind::Unit => "unit",
        VarKind::Formal => "formal",
    }
}

pub fn chart_json(chart: &Chart) -> Value {
    let vars: Vec<Value> = chart.vars().iter().map(|v| json!({"name": v.name, "kind": kind_name(v.kind)})).collect();
    let rules: Vec<Value> = chart
        .rules()
        .iter()
        .map(|r| json!([chart.fmt_mono(&r.lhs), chart.fmt_scalar(&r.rhs)]))
        .collect();
    json!({"name": chart.name(), "vars": vars, "rules": rules})
}

/// `{"chart": …, "form": …}`.
pub fn form_document(f: &Form) -> Value {
    json!({"chart": chart_json(f.chart()), "form": form_json(f)})
}

pub fn equivariant_document(w: &EquivariantForm) -> Value {
    json!({"chart": chart_json(w.chart()), "dual": w.dual(), "value": equivariant_json(w)})
}

/// One entry per level, for Dupont forms and simplicial de Rham families.
pub fn leveled_forms_json(forms: &[Form]) -> Value {
    Value::Array(
        forms
            .iter()
            .enumerate()
            .map(|(p, f)| json!({"level": p, "chart": f.chart().name(), "form": form_json(f)}))
            .collect(),
    )
}

pub fn leveled_cochain_json(c: &crate::getzler::Cochain) -> Value {
    Value::Array(
        c.iter()
            .map(|(p, w)| json!({"level": p, "chart": w.chart().name(), "value": equivariant_json(w)}))
            .collect(),
    )
}

/// Pretty JSON with a trailing newline.
pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{plane, sphere3};
    use crate::random::Generator;

    #[test]
    fn zero_is_empty_list() {
        assert_eq!(form_json(&Form::zero(&plane())).to_string(), "[]");
    }

    #[test]
    fn round_trip() {
        let mut g = Generator::new(3);
        for chart in [plane(), sphere3("S3", &["tau"])] {
            for _ in 0..25 {
                let f = g.form(&chart);
                assert_eq!(form_from_json(&chart, &form_json(&f)).unwrap(), f);
            }
        }
    }

    #[test]
    fn latex_uses_wedge() {
        let f = Form::parse_terms(&plane(), &[("1", &["dx", "dy"])]).unwrap();
        assert!(f.to_latex().contains("\\wedge"));
    }
}
