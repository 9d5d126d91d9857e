//! Report rendering: UTF-8 text and canonical JSON (sorted keys, exact
//! integers, polynomials as grammar strings). Both views are generated from
//! the same data, so every numeric field agrees.

use serde_json::{json, Map, Value};

use singbound_core::bounds::{BallExpr, BoundReport, InvariantSet, LoewyLength};
use singbound_core::ideal::IdealData;
use singbound_core::invariants::HypothesisStatus;
use singbound_core::ring::Ring;
use singbound_core::FieldSpec;

pub fn ring_json(ring: &Ring) -> Value {
    let field = match ring.ambient.field {
        FieldSpec::Rational => "QQ".to_string(),
        FieldSpec::Prime(p) => format!("GF {p}"),
    };
    json!({
        "field": field,
        "vars": ring.ambient.vars,
        "weights": ring.ambient.weights,
        "relations": ring.relations.iter().map(|r| r.render(&ring.ambient)).collect::<Vec<_>>(),
        "dim": ring.dim,
        "height": ring.h,
    })
}

pub fn ring_text(ring: &Ring) -> String {
    let field = match ring.ambient.field {
        FieldSpec::Rational => "QQ".to_string(),
        FieldSpec::Prime(p) => format!("GF({p})"),
    };
    let rels: Vec<String> = ring
        .relations
        .iter()
        .map(|r| r.render(&ring.ambient))
        .collect();
    let weights: Vec<String> = ring.ambient.weights.iter().map(|w| w.to_string()).collect();
    format!(
        "{field}[{}]/({}) weights ({})",
        ring.ambient.vars.join(", "),
        rels.join(", "),
        weights.join(", ")
    )
}

pub fn ideal_json(kind: &str, ideal: &IdealData) -> Value {
    json!({
        "kind": kind,
        "generators": ideal
            .generators
            .iter()
            .map(|g| g.render(&ideal.ring.ambient))
            .collect::<Vec<_>>(),
    })
}

pub fn ideal_text(kind: &str, ideal: &IdealData) -> String {
    let gens: Vec<String> = ideal
        .generators
        .iter()
        .map(|g| g.render(&ideal.ring.ambient))
        .collect();
    if gens.is_empty() {
        format!("ideal ({kind}): (0)")
    } else {
        format!("ideal ({kind}): {}", gens.join(", "))
    }
}

pub fn invariants_json(inv: &InvariantSet) -> Value {
    let mut m = Map::new();
    if let Some(v) = inv.mu {
        m.insert("mu".into(), json!(v));
    }
    if let Some(v) = inv.grade {
        m.insert("grade".into(), json!(v));
    }
    if let Some(v) = inv.depth {
        m.insert("depth".into(), json!(v));
    }
    if let Some(v) = inv.dim {
        m.insert("dim".into(), json!(v));
    }
    if let Some(v) = inv.dim_quotient {
        m.insert("dim_quotient".into(), json!(v));
    }
    if let Some(v) = inv.loewy {
        match v {
            LoewyLength::Finite(n) => m.insert("loewy".into(), json!(n)),
            LoewyLength::Infinite => m.insert("loewy".into(), json!("infinity")),
        };
    }
    if let Some(v) = inv.nilpotency {
        m.insert("nilpotency".into(), json!(v));
    }
    if let Some(v) = inv.rtype {
        m.insert("type".into(), json!(v));
    }
    if let Some(v) = inv.height {
        m.insert("height".into(), json!(v));
    }
    Value::Object(m)
}

pub fn invariants_text(inv: &InvariantSet) -> Vec<String> {
    let mut lines = Vec::new();
    if let Some(v) = inv.mu {
        lines.push(format!("  mu = {v}"));
    }
    if let Some(v) = inv.grade {
        lines.push(format!("  grade = {v}"));
    }
    if let Some(v) = inv.depth {
        lines.push(format!("  depth = {v}"));
    }
    if let Some(v) = inv.dim {
        lines.push(format!("  dim = {v}"));
    }
    if let Some(v) = inv.dim_quotient {
        lines.push(format!("  dim_quotient = {v}"));
    }
    if let Some(v) = inv.loewy {
        lines.push(format!("  loewy = {}", v.render()));
    }
    if let Some(v) = inv.nilpotency {
        lines.push(format!("  nilpotency = {v}"));
    }
    if let Some(v) = inv.rtype {
        lines.push(format!("  type = {v}"));
    }
    if let Some(v) = inv.height {
        lines.push(format!("  height = {v}"));
    }
    lines
}

pub fn hypotheses_json(hyps: &[HypothesisStatus]) -> Value {
    Value::Array(
        hyps.iter()
            .map(|h| {
                json!({
                    "name": h.name,
                    "status": h.status.as_str(),
                    "evidence": h.evidence,
                })
            })
            .collect(),
    )
}

pub fn hypotheses_text(hyps: &[HypothesisStatus]) -> Vec<String> {
    hyps.iter()
        .map(|h| format!("  {}: {} ({})", h.name, h.status.as_str(), h.evidence))
        .collect()
}

pub fn ball_json(ring: &Ring, ball: &BallExpr) -> Value {
    json!({
        "category": ball.category.render(),
        "generator": ball.generator.render(&ring.ambient),
        "radius": ball.radius,
        "provenance": ball.provenance,
    })
}

/// Full bound report in canonical JSON.
pub fn bound_report_json(ring: &Ring, kind: &str, ideal: &IdealData, report: &BoundReport) -> Value {
    let mut m = Map::new();
    m.insert("ring".into(), ring_json(ring));
    m.insert("ideal".into(), ideal_json(kind, ideal));
    m.insert("invariants".into(), invariants_json(&report.invariants));
    m.insert("hypotheses".into(), hypotheses_json(&report.hypotheses));
    if let Some(ball) = &report.ball {
        m.insert("ball".into(), ball_json(ring, ball));
    }
    match report.dim_bound {
        Some(b) => m.insert("dim_bound".into(), json!(b)),
        None => m.insert("dim_bound".into(), Value::Null),
    };
    m.insert("formula".into(), json!(report.formula));
    if let Some(c) = &report.conditional {
        m.insert("conditional".into(), json!(c));
    }
    m.insert("trace".into(), json!(report.trace));
    m.insert("warnings".into(), json!(report.warnings));
    Value::Object(m)
}

pub fn bound_report_text(
    ring: &Ring,
    kind: &str,
    ideal: &IdealData,
    report: &BoundReport,
) -> String {
    let mut out = Vec::new();
    out.push(format!("ring: {}", ring_text(ring)));
    out.push(ideal_text(kind, ideal));
    out.push("invariants:".to_string());
    out.extend(invariants_text(&report.invariants));
    out.push("hypotheses:".to_string());
    out.extend(hypotheses_text(&report.hypotheses));
    if let Some(ball) = &report.ball {
        out.push(format!(
            "ball: {} in {}",
            ball.render(&ring.ambient),
            ball.category.render()
        ));
    }
    out.push(format!("formula: {}", report.formula));
    match report.dim_bound {
        Some(b) => out.push(format!("dim_bound: {b}")),
        None => out.push("dim_bound: (none; conditional report)".to_string()),
    }
    if let Some(c) = &report.conditional {
        out.push(format!("conditional: {c}"));
    }
    for w in &report.warnings {
        out.push(format!("warning: {w}"));
    }
    out.join("\n")
}

/// Canonical JSON serialization: `serde_json` maps are ordered, so the key
/// order is stable and sorted.
pub fn to_json_string(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}
