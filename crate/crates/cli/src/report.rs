//! Deterministic JSON reports.

use coincidence_core::batch::cross_check;
use coincidence_core::decider::{check_hypotheses, decide, Scenario};
use coincidence_core::lefschetz::{ClassKind, ClassValue};
use coincidence_core::solver::{format_rational, solve_coincidences, StackedSystem};
use coincidence_core::Error;
use serde_json::{json, Map, Value};

use crate::failure::Failure;
use crate::scenario::{Model, ScenarioFile};

pub fn class_json(c: &ClassValue) -> Value {
    let mut out = Map::new();
    out.insert("kind".into(), c.kind_name().into());
    out.insert("provenance".into(), c.provenance.clone().into());
    match &c.kind {
        ClassKind::Integer(v) => {
            out.insert("value".into(), (*v).into());
        }
        ClassKind::Zero { reason } => {
            out.insert("value".into(), 0.into());
            out.insert("reason".into(), reason.clone().into());
        }
        ClassKind::Unknown { reason } => {
            out.insert("value".into(), Value::Null);
            out.insert("reason".into(), reason.clone().into());
        }
    }
    Value::Object(out)
}

fn base(command: &str, file: &ScenarioFile) -> Map<String, Value> {
    let mut out = Map::new();
    out.insert("command".into(), command.into());
    out.insert("model".into(), serde_json::to_value(file.model).expect("plain enum"));
    out.insert("inputs_echo".into(), serde_json::to_value(file).expect("plain data"));
    out
}

pub fn cmd_class(file: &ScenarioFile) -> Result<Value, Failure> {
    let class = file.class()?;
    let mut out = base("class", file);
    out.insert("class".into(), class_json(&class));
    if file.model == Model::TorusAffine {
        let maps = file.torus_maps()?;
        let det = StackedSystem::from_maps(&maps)
            .and_then(|s| s.determinant())
            .map_err(|e| Failure::core("torus.maps", e))?;
        out.insert("stacked_determinant".into(), det.into());
        match cross_check(&maps) {
            Ok(check) => {
                out.insert("transverse".into(), true.into());
                out.insert("oracle_agrees".into(), check.agrees().into());
                out.insert("index_sum".into(), check.index_sum.into());
                out.insert("point_count".into(), check.point_count.into());
            }
            Err(Error::NonTransverse) => {
                out.insert("transverse".into(), false.into());
                out.insert("oracle_agrees".into(), Value::Null);
            }
            Err(e) => return Err(Failure::core("torus.maps", e)),
        }
    }
    Ok(Value::Object(out))
}

pub fn cmd_solve(file: &ScenarioFile) -> Result<Value, Failure> {
    if file.model != Model::TorusAffine {
        return Err(Failure::schema("model: solve requires \"torus-affine\""));
    }
    let maps = file.torus_maps()?;
    let det = StackedSystem::from_maps(&maps)
        .and_then(|s| s.determinant())
        .map_err(|e| Failure::core("torus.maps", e))?;
    let points = solve_coincidences(&maps).map_err(|e| match e {
        Error::NonTransverse => Failure::core(
            "torus.maps",
            e,
        )
        .with_detail(format!("stacked difference matrix has det = {det}")),
        e => Failure::core("torus.maps", e),
    })?;
    let rendered: Vec<Value> = points
        .iter()
        .map(|p| {
            json!({
                "coordinates": p.coordinates.iter().map(format_rational).collect::<Vec<_>>(),
                "local_index": p.local_index,
            })
        })
        .collect();
    let mut out = base("solve", file);
    out.insert("stacked_determinant".into(), det.into());
    out.insert("point_count".into(), points.len().into());
    out.insert("index_sum".into(), coincidence_core::solver::index_sum(&points).into());
    out.insert("coincidence_points".into(), Value::Array(rendered));
    Ok(Value::Object(out))
}

pub fn cmd_decide(file: &ScenarioFile) -> Result<Value, Failure> {
    if file.decider.is_none() {
        return Err(Failure::schema("decider: block is required for the decide command"));
    }
    let class = file.class()?;
    let scenario: Scenario = file.scenario(class.clone())?;
    let verdict = decide(&scenario);
    let hypotheses: Vec<Value> = check_hypotheses(&scenario)
        .iter()
        .map(|h| {
            json!({
                "name": h.hypothesis.name(),
                "passed": h.passed,
                "detail": h.detail,
                "citation": h.hypothesis.citation(),
            })
        })
        .collect();
    let mut out = base("decide", file);
    out.insert("class".into(), class_json(&class));
    out.insert("hypotheses".into(), Value::Array(hypotheses));
    out.insert(
        "verdict".into(),
        json!({
            "decision": verdict.decision.as_str(),
            "rule": verdict.rule.as_str(),
            "notes": verdict.notes,
        }),
    );
    Ok(Value::Object(out))
}

/// Recursively sorts object keys, independent of serde_json's map backend.
fn canonical(v: Value) -> Value {
    match v {
        Value::Object(map) => {
            let mut entries: Vec<(String, Value)> = map.into_iter().collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            Value::Object(entries.into_iter().map(|(k, v)| (k, canonical(v))).collect())
        }
        Value::Array(items) => Value::Array(items.into_iter().map(canonical).collect()),
        other => other,
    }
}

pub fn render(v: Value) -> String {
    let mut text = serde_json::to_string_pretty(&canonical(v)).expect("values always serialize");
    text.push('\n');
    text
}
