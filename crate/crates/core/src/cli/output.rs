//! CSV and JSON rendering. Reals are printed with 17 significant digits; in
//! JSON they are strings so no precision is lost to a parser's doubles.

use num_complex::Complex64;
use serde_json::{json, Map, Value};

use super::{status_tag, Format};
use crate::error::{Error, Result};
use crate::identities::{IdentityReport, LerchReport};
use crate::transform::{JumpEstimate, MethodTag, TransformResult};

pub const CSV_HEADER: &str = "a_re,a_im,xi,method,value_re,value_im,err_est,evals,status";

/// One evaluated `(a, ξ, method)` cell.
#[derive(Debug, Clone)]
pub struct Row {
    pub a: Complex64,
    pub xi: f64,
    pub method: MethodTag,
    pub value: Complex64,
    pub err_est: f64,
    pub evals: usize,
    pub seconds: f64,
    pub error: Option<Error>,
}

impl Row {
    pub fn new(a: Complex64, xi: f64, method: MethodTag, result: Result<TransformResult>, seconds: f64) -> Self {
        let nan = Complex64::new(f64::NAN, f64::NAN);
        match result {
            Ok(r) => Row {
                a,
                xi,
                method,
                value: r.value,
                err_est: r.err_estimate,
                evals: r.evaluations,
                seconds,
                error: None,
            },
            Err(e) => Row {
                a,
                xi,
                method,
                value: nan,
                err_est: f64::NAN,
                evals: 0,
                seconds,
                error: Some(e),
            },
        }
    }

    pub fn status(&self) -> &'static str {
        self.error.as_ref().map_or("ok", status_tag)
    }
}

pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn complex_json(z: Complex64) -> Value {
    json!({"re": num(z.re), "im": num(z.im)})
}

pub fn render(rows: &[Row], format: Format, timing: bool, meta: Value) -> String {
    match format {
        Format::Csv => {
            let mut out = String::from(CSV_HEADER);
            if timing {
                out.push_str(",seconds");
            }
            out.push('\n');
            for r in rows {
                let fields = [
                    num(r.a.re),
                    num(r.a.im),
                    num(r.xi),
                    r.method.as_str().to_string(),
                    num(r.value.re),
                    num(r.value.im),
                    num(r.err_est),
                    r.evals.to_string(),
                    r.status().to_string(),
                ];
                out.push_str(&fields.join(","));
                if timing {
                    out.push(',');
                    out.push_str(&num(r.seconds));
                }
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| {
                    let mut m = Map::new();
                    m.insert("a_re".into(), num(r.a.re).into());
                    m.insert("a_im".into(), num(r.a.im).into());
                    m.insert("xi".into(), num(r.xi).into());
                    m.insert("method".into(), r.method.as_str().into());
                    m.insert("value_re".into(), num(r.value.re).into());
                    m.insert("value_im".into(), num(r.value.im).into());
                    m.insert("err_est".into(), num(r.err_est).into());
                    m.insert("evals".into(), r.evals.into());
                    m.insert("status".into(), r.status().into());
                    if timing {
                        m.insert("seconds".into(), num(r.seconds).into());
                    }
                    Value::Object(m)
                })
                .collect();
            serde_json::to_string_pretty(&json!({"meta": meta, "rows": rows})).expect("json values serialize") + "\n"
        }
    }
}

pub fn jump_json(e: &JumpEstimate) -> Value {
    json!({
        "p": complex_json(e.p),
        "xi": num(e.xi),
        "deltas": e.deltas.iter().map(|&d| num(d)).collect::<Vec<_>>(),
        "two_sided_values": e.two_sided_values.iter()
            .map(|&(r, l)| json!({"right": complex_json(r), "left": complex_json(l)}))
            .collect::<Vec<_>>(),
        "extrapolated": complex_json(e.extrapolated),
        "closed_form": complex_json(e.closed_form),
        "discrepancy": num(e.discrepancy),
        "i_extrapolated": complex_json(e.i_extrapolated),
        "i_closed_form": complex_json(e.i_closed_form),
        "i_discrepancy": num(e.i_discrepancy),
    })
}

pub fn report_json(r: &IdentityReport) -> Value {
    json!({
        "name": r.name,
        "sample_points": r.sample_points,
        "max_rel_residual": num(r.max_rel_residual),
        "tolerance": num(r.tolerance),
        "pass": r.pass,
        "details": r.details.iter().map(|c| {
            let mut m = Map::new();
            m.insert("input".into(), c.input.clone().into());
            m.insert("residual".into(), num(c.residual).into());
            if let Some(err) = &c.error {
                m.insert("error".into(), err.clone().into());
            }
            Value::Object(m)
        }).collect::<Vec<_>>(),
        "skipped": r.skipped,
    })
}

pub fn lerch_json(r: &LerchReport) -> Value {
    json!({
        "a": num(r.a),
        "variant": r.variant.as_str(),
        "bracket_holds": r.bracket_holds(),
        "t_values": r.t_values.iter().map(|&t| num(t)).collect::<Vec<_>>(),
        "lambda_values": r.lambda_values.iter().map(|&l| num(l)).collect::<Vec<_>>(),
        "bracket_low_ok": r.bracket_low_ok,
        "bracket_high_ok": r.bracket_high_ok,
    })
}
