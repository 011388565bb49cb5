//! JSON reports and CSV plot data.
//!
//! Every real number in a report is rounded to 12 significant digits and
//! written as the shortest decimal of the rounded value. Non-finite values are
//! written as the strings `"inf"`, `"-inf"` and `"nan"`.

use delone_core::almostperiod::{
    BijectionWitness, EpsPeriodReport, ReturnVectorReport, StepOutcome, UapReport,
};
use delone_core::dynamics::{ForcingReport, ProximalityReport, SeparationOutcome};
use delone_core::sources::{DeloneCheckReport, PatchClass};
use delone_core::{Ball, FinitePointSet, Point};
use serde_json::{json, Map, Value};

/// Round to 12 significant digits.
pub fn round12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

pub fn num(x: f64) -> Value {
    if x.is_finite() {
        json!(round12(x))
    } else if x.is_nan() {
        json!("nan")
    } else if x > 0.0 {
        json!("inf")
    } else {
        json!("-inf")
    }
}

pub fn point(p: &Point) -> Value {
    if p.dim() == 1 {
        num(p.x())
    } else {
        Value::Array(p.coords().iter().map(|c| num(*c)).collect())
    }
}

pub fn points(set: &FinitePointSet) -> Value {
    Value::Array(set.iter().map(point).collect())
}

pub fn ball(b: &Ball) -> Value {
    json!({"center": point(&b.center), "radius": num(b.radius)})
}

/// An `op`-tagged record with its parameters.
pub fn op_record(op: &str, params: Value, fields: Value) -> Value {
    let mut m = Map::new();
    m.insert("op".into(), json!(op));
    m.insert("params".into(), params);
    if let Value::Object(f) = fields {
        m.extend(f);
    }
    Value::Object(m)
}

pub fn delone_check(rep: &DeloneCheckReport) -> Value {
    json!({
        "r_min": num(rep.r_min),
        "r_max": num(rep.r_max),
        "uniformly_discrete": rep.uniformly_discrete,
        "relatively_dense": rep.relatively_dense,
        "window": ball(&rep.window),
    })
}

pub fn census(classes: &[PatchClass]) -> Value {
    json!({
        "class_count": classes.len(),
        "classes": classes
            .iter()
            .map(|c| json!({"count": c.count, "patch": points(&c.patch.points)}))
            .collect::<Vec<_>>(),
    })
}

pub fn periods(ps: &[Point]) -> Value {
    json!({"periods": Value::Array(ps.iter().map(point).collect())})
}

pub fn return_vectors(rep: &ReturnVectorReport) -> Value {
    json!({
        "vector_count": rep.vectors.len(),
        "max_gap": num(rep.max_gap),
        "vectors": points(&rep.vectors),
    })
}

pub fn eps_periods(rep: &EpsPeriodReport) -> Value {
    json!({
        "period_count": rep.periods.len(),
        "max_gap": num(rep.max_gap),
        "relatively_dense_at_scale": rep.relatively_dense_at_scale,
        "periods": points(&rep.periods),
    })
}

pub fn witness(w: &BijectionWitness) -> Value {
    json!({
        "a": point(&w.a),
        "pair_count": w.pairs.len(),
        "max_displacement": num(w.max_displacement),
        "verified": w.verify(),
    })
}

fn step_outcome(o: &StepOutcome) -> Value {
    let (kind, value) = match o.step {
        delone_core::almostperiod::LadderStep::Radius(r) => ("radius", r),
        delone_core::almostperiod::LadderStep::Epsilon(e) => ("epsilon", e),
    };
    json!({
        "step": {kind: num(value)},
        "window": ball(&o.window),
        "count": o.count,
        "max_gap": num(o.max_gap),
        "witnesses_checked": o.witnesses_checked,
        "witness_failures": o.witness_failures,
    })
}

pub fn uap(rep: &UapReport) -> Value {
    json!({
        "verdict": rep.verdict.as_str(),
        "outcomes": rep.outcomes.iter().map(step_outcome).collect::<Vec<_>>(),
    })
}

pub fn proximality(rep: &ProximalityReport) -> Value {
    json!({
        "r": num(rep.r),
        "t_window": ball(&rep.t_window),
        "inf_estimate": num(rep.inf_estimate),
        "argmin_t": point(&rep.argmin_t),
    })
}

pub fn separation(outcome: &SeparationOutcome) -> Value {
    match outcome {
        SeparationOutcome::Found(v) => json!({"status": "found", "anchor": point(v)}),
        SeparationOutcome::NotFound => json!({"status": "not-found"}),
    }
}

pub fn forcing(rep: &ForcingReport) -> Value {
    json!({
        "patch": points(&rep.patch.points),
        "extension_radius": num(rep.extension_radius),
        "forced": rep.forced,
        "counterexample": rep.counterexample.map(|(a, b)| json!([point(&a), point(&b)])),
    })
}

/// Rows of a CSV table; the first row is the header.
pub fn to_csv(rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.write_record(r).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("writing to memory")).expect("csv output is utf-8")
}

pub fn csv_num(x: f64) -> String {
    match num(x) {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s,
        other => other.to_string(),
    }
}
