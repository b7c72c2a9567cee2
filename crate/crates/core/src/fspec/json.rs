//! Line-oriented JSON for traces and derivations: one object per line, AQs
//! written as minimal signs.
//!
//! ```text
//! {"kind":"trace","start":"7+0"}
//! {"kind":"rewrite","position":[],"proof":{...},"redex":"7+0","result":"7","step":1}
//! {"kind":"normal_form","aq":"7"}
//! ```
//!
//! ```text
//! {"kind":"derivation","lhs":"7+0","rhs":"7"}
//! {"kind":"step","proof":{...},"result":"7","step":1}
//! ```
//!
//! Proofs are objects tagged by `rule`: `axiom` (with `axiom`, optional
//! `digit`, `bindings` and, for a carry, `premise`), `refl`, `sym` (`of`),
//! `trans` (`first`, `second`), `cong` (`position`, `inner`) and `column`
//! (`left`, `right`).

use serde_json::{json, Map, Value};

use super::{
    Axiom, AxiomInstance, Derivation, DerivationStep, FspecError, ProofStep, RewriteTrace,
    TraceStep,
};
use crate::aq::{parse_aq, Aq, Numeral};

fn bad(msg: impl Into<String>) -> FspecError {
    FspecError::Format(msg.into())
}

fn aq_json(a: &Aq) -> Value {
    Value::String(a.to_string())
}

fn proof_json(p: &ProofStep) -> Value {
    match p {
        ProofStep::Axiom(inst) => {
            let mut m = Map::new();
            m.insert("rule".into(), json!("axiom"));
            m.insert("axiom".into(), json!(inst.axiom.name()));
            if let Some(d) = inst.axiom.digit() {
                m.insert("digit".into(), json!(d));
            }
            let bindings: Map<String, Value> = inst
                .bindings
                .iter()
                .map(|(k, v)| (k.clone(), aq_json(v)))
                .collect();
            m.insert("bindings".into(), Value::Object(bindings));
            if let Some(pr) = &inst.premise {
                m.insert("premise".into(), nested_derivation_json(pr));
            }
            Value::Object(m)
        }
        ProofStep::Reflexivity => json!({"rule": "refl"}),
        ProofStep::Symmetry(q) => json!({"rule": "sym", "of": proof_json(q)}),
        ProofStep::Transitivity(a, b) => {
            json!({"rule": "trans", "first": proof_json(a), "second": proof_json(b)})
        }
        ProofStep::Congruence(path, q) => {
            json!({"rule": "cong", "position": path, "inner": proof_json(q)})
        }
        ProofStep::ColumnSum { left, right } => {
            json!({"rule": "column", "left": left.digits(), "right": right.digits()})
        }
    }
}

fn nested_derivation_json(d: &Derivation) -> Value {
    let steps: Vec<Value> = d
        .steps
        .iter()
        .map(|s| json!({"proof": proof_json(&s.proof), "result": aq_json(&s.result)}))
        .collect();
    json!({"lhs": aq_json(&d.lhs), "rhs": aq_json(&d.rhs), "steps": steps})
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, FspecError> {
    v.get(key).ok_or_else(|| bad(format!("missing field {key:?} in {v}")))
}

fn str_field<'a>(v: &'a Value, key: &str) -> Result<&'a str, FspecError> {
    field(v, key)?
        .as_str()
        .ok_or_else(|| bad(format!("field {key:?} must be a string")))
}

fn aq_field(v: &Value, key: &str) -> Result<Aq, FspecError> {
    let text = str_field(v, key)?;
    parse_aq(text).map_err(|e| bad(format!("field {key:?}: {e}")))
}

fn numeral_field(v: &Value, key: &str) -> Result<Numeral, FspecError> {
    let text = str_field(v, key)?;
    Numeral::new(text).ok_or_else(|| bad(format!("field {key:?}: {text:?} is not a numeral")))
}

fn position_field(v: &Value) -> Result<Vec<usize>, FspecError> {
    field(v, "position")?
        .as_array()
        .ok_or_else(|| bad("position must be an array"))?
        .iter()
        .map(|x| {
            x.as_u64()
                .map(|i| i as usize)
                .ok_or_else(|| bad("position entries must be naturals"))
        })
        .collect()
}

fn proof_from_json(v: &Value) -> Result<ProofStep, FspecError> {
    Ok(match str_field(v, "rule")? {
        "axiom" => {
            let name = str_field(v, "axiom")?;
            let digit = match v.get("digit") {
                None => None,
                Some(d) => Some(
                    d.as_u64()
                        .and_then(|d| u8::try_from(d).ok())
                        .ok_or_else(|| bad("digit must be a small natural"))?,
                ),
            };
            let axiom = Axiom::from_name(name, digit)
                .ok_or_else(|| bad(format!("unknown axiom {name} (digit {digit:?})")))?;
            let mut bindings = super::Bindings::new();
            if let Some(b) = v.get("bindings") {
                let obj = b.as_object().ok_or_else(|| bad("bindings must be an object"))?;
                for k in obj.keys() {
                    bindings.insert(k.clone(), aq_field(b, k)?);
                }
            }
            let premise = match v.get("premise") {
                None => None,
                Some(p) => Some(Box::new(nested_derivation_from_json(p)?)),
            };
            ProofStep::Axiom(AxiomInstance {
                axiom,
                bindings,
                premise,
            })
        }
        "refl" => ProofStep::Reflexivity,
        "sym" => ProofStep::Symmetry(Box::new(proof_from_json(field(v, "of")?)?)),
        "trans" => ProofStep::Transitivity(
            Box::new(proof_from_json(field(v, "first")?)?),
            Box::new(proof_from_json(field(v, "second")?)?),
        ),
        "cong" => ProofStep::Congruence(
            position_field(v)?,
            Box::new(proof_from_json(field(v, "inner")?)?),
        ),
        "column" => ProofStep::ColumnSum {
            left: numeral_field(v, "left")?,
            right: numeral_field(v, "right")?,
        },
        other => return Err(bad(format!("unknown rule {other:?}"))),
    })
}

fn nested_derivation_from_json(v: &Value) -> Result<Derivation, FspecError> {
    let steps = field(v, "steps")?
        .as_array()
        .ok_or_else(|| bad("steps must be an array"))?
        .iter()
        .map(|s| {
            Ok(DerivationStep {
                proof: proof_from_json(field(s, "proof")?)?,
                result: aq_field(s, "result")?,
            })
        })
        .collect::<Result<_, FspecError>>()?;
    Ok(Derivation {
        lhs: aq_field(v, "lhs")?,
        rhs: aq_field(v, "rhs")?,
        steps,
    })
}

fn parse_lines(text: &str) -> Result<Vec<Value>, FspecError> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .enumerate()
        .map(|(i, l)| {
            serde_json::from_str(l).map_err(|e| bad(format!("line {}: {e}", i + 1)))
        })
        .collect()
}

fn expect_kind(v: &Value, kind: &str) -> Result<(), FspecError> {
    match str_field(v, "kind")? {
        k if k == kind => Ok(()),
        k => Err(bad(format!("expected a {kind:?} line, found {k:?}"))),
    }
}

pub fn trace_to_lines(t: &RewriteTrace) -> Vec<String> {
    let mut out = vec![json!({"kind": "trace", "start": aq_json(&t.start)}).to_string()];
    for (i, s) in t.steps.iter().enumerate() {
        out.push(
            json!({
                "kind": "rewrite",
                "step": i + 1,
                "position": s.position,
                "proof": proof_json(&s.proof),
                "redex": aq_json(&s.redex),
                "result": aq_json(&s.result),
            })
            .to_string(),
        );
    }
    out.push(json!({"kind": "normal_form", "aq": aq_json(&t.normal_form)}).to_string());
    out
}

pub fn trace_from_lines(text: &str) -> Result<RewriteTrace, FspecError> {
    let lines = parse_lines(text)?;
    let (first, rest) = lines.split_first().ok_or_else(|| bad("empty trace"))?;
    expect_kind(first, "trace")?;
    let (last, middle) = rest.split_last().ok_or_else(|| bad("trace has no normal_form line"))?;
    expect_kind(last, "normal_form")?;
    let steps = middle
        .iter()
        .map(|v| {
            expect_kind(v, "rewrite")?;
            Ok(TraceStep {
                position: position_field(v)?,
                proof: proof_from_json(field(v, "proof")?)?,
                redex: aq_field(v, "redex")?,
                result: aq_field(v, "result")?,
            })
        })
        .collect::<Result<_, FspecError>>()?;
    Ok(RewriteTrace {
        start: aq_field(first, "start")?,
        steps,
        normal_form: aq_field(last, "aq")?,
    })
}

pub fn derivation_to_lines(d: &Derivation) -> Vec<String> {
    let mut out = vec![
        json!({"kind": "derivation", "lhs": aq_json(&d.lhs), "rhs": aq_json(&d.rhs)}).to_string(),
    ];
    for (i, s) in d.steps.iter().enumerate() {
        out.push(
            json!({
                "kind": "step",
                "step": i + 1,
                "proof": proof_json(&s.proof),
                "result": aq_json(&s.result),
            })
            .to_string(),
        );
    }
    out
}

pub fn derivation_from_lines(text: &str) -> Result<Derivation, FspecError> {
    let lines = parse_lines(text)?;
    let (first, rest) = lines.split_first().ok_or_else(|| bad("empty derivation"))?;
    expect_kind(first, "derivation")?;
    let steps = rest
        .iter()
        .map(|v| {
            expect_kind(v, "step")?;
            Ok(DerivationStep {
                proof: proof_from_json(field(v, "proof")?)?,
                result: aq_field(v, "result")?,
            })
        })
        .collect::<Result<_, FspecError>>()?;
    Ok(Derivation {
        lhs: aq_field(first, "lhs")?,
        rhs: aq_field(first, "rhs")?,
        steps,
    })
}
