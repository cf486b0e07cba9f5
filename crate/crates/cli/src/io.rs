//! JSON formats. Everything is emitted through `serde_json::Value`, whose
//! maps keep keys sorted, so identical inputs give identical bytes.

use std::collections::BTreeSet;
use std::str::FromStr;

use num::{BigInt, BigRational};
use pseudoline::geometry::{LineArrangement, RationalLine};
use pseudoline::graph::ArrangementGraph;
use pseudoline::metrics::{conjectured_radius_window, EccentricityReport};
use pseudoline::WiringDiagram;
use serde_json::{json, Value};

/// An input file: either representation of an arrangement.
pub enum Input {
    Wiring(WiringDiagram),
    Lines(LineArrangement),
}

/// `"p/q"`, always with a denominator.
pub fn rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn parse_int(v: &Value) -> Result<BigInt, String> {
    match v {
        Value::String(s) => BigInt::from_str(s.trim()).map_err(|_| format!("not an integer: {s:?}")),
        Value::Number(n) if n.is_i64() => Ok(BigInt::from(n.as_i64().unwrap())),
        other => Err(format!("expected an integer, got {other}")),
    }
}

pub fn arrangement_to_json(a: &LineArrangement) -> Value {
    let lines: Vec<Value> = a
        .lines()
        .iter()
        .map(|l| json!([l.a().to_string(), l.b().to_string(), l.c().to_string()]))
        .collect();
    json!({ "lines": lines })
}

/// `{"lines": [[a, b, c], ...]}` for lines `a·x + b·y = c`; integers may be
/// JSON numbers or decimal strings.
pub fn arrangement_from_json(v: &Value) -> Result<LineArrangement, String> {
    let lines = v
        .get("lines")
        .and_then(Value::as_array)
        .ok_or("missing \"lines\" array")?;
    let parsed = lines
        .iter()
        .enumerate()
        .map(|(i, l)| {
            let coeffs = l
                .as_array()
                .filter(|c| c.len() == 3)
                .ok_or(format!("line {}: expected [a, b, c]", i + 1))?;
            let [a, b, c] = [&coeffs[0], &coeffs[1], &coeffs[2]].map(parse_int);
            RationalLine::new(a?, b?, c?).map_err(|e| format!("line {}: {e}", i + 1))
        })
        .collect::<Result<Vec<_>, _>>()?;
    LineArrangement::new(parsed).map_err(|e| e.to_string())
}

/// Reads a wiring diagram (JSON or `n: s1 s2 ...`) or an arrangement.
pub fn parse_input(text: &str) -> Result<Input, String> {
    if let Ok(v) = serde_json::from_str::<Value>(text) {
        if v.get("lines").is_some() {
            return arrangement_from_json(&v).map(Input::Lines);
        }
    }
    WiringDiagram::from_str(text)
        .map(Input::Wiring)
        .map_err(|e| e.to_string())
}

pub fn wiring_to_json(d: &WiringDiagram) -> Value {
    json!({ "n": d.n, "swaps": d.swaps })
}

fn labels(g: &ArrangementGraph, set: &BTreeSet<usize>) -> Vec<String> {
    set.iter().map(|&v| g.label(v)).collect()
}

pub fn graph_to_json(g: &ArrangementGraph, outer: &BTreeSet<usize>) -> Value {
    let vertices: Vec<Value> = (0..g.vertex_count())
        .map(|v| {
            let (i, j) = g.vertex_lines(v);
            let p = g.coords(v);
            json!({
                "label": g.label(v),
                "lines": [i + 1, j + 1],
                "degree": g.degree(v),
                "x": rational(&p.x),
                "y": rational(&p.y),
            })
        })
        .collect();
    let edges: Vec<Value> = g
        .edges()
        .iter()
        .map(|e| json!({ "a": g.label(e.a), "b": g.label(e.b), "line": e.line + 1 }))
        .collect();
    let orders: Vec<Vec<String>> = g
        .line_orders()
        .iter()
        .map(|o| o.iter().map(|&v| g.label(v)).collect())
        .collect();
    json!({
        "n": g.line_count(),
        "vertices": vertices,
        "edges": edges,
        "line_orders": orders,
        "outer_face": labels(g, outer),
    })
}

pub fn report_to_json(
    g: &ArrangementGraph,
    r: &EccentricityReport,
    outer: &BTreeSet<usize>,
    with_distances: bool,
) -> Value {
    let n = g.line_count();
    let (lo, hi) = conjectured_radius_window(n);
    let ecc: serde_json::Map<String, Value> =
        (0..g.vertex_count()).map(|v| (g.label(v), json!(r.ecc[v]))).collect();
    let mut out = json!({
        "n": n,
        "degree_sequence": g.degree_sequence().entries(),
        "diameter": r.diameter,
        "radius": r.radius,
        "diametrical": labels(g, &r.diametrical),
        "central": labels(g, &r.central),
        "outer_face": labels(g, outer),
        "eccentricities": ecc,
        "diametrical_equals_outer_face": &r.diametrical == outer,
        "radius_window": { "low": lo, "high": hi, "within": lo <= r.radius && r.radius <= hi },
    });
    if with_distances {
        let rows: serde_json::Map<String, Value> = (0..g.vertex_count())
            .map(|u| {
                let row: serde_json::Map<String, Value> =
                    (0..g.vertex_count()).map(|v| (g.label(v), json!(r.dist[u][v]))).collect();
                (g.label(u), Value::Object(row))
            })
            .collect();
        out["distances"] = Value::Object(rows);
    }
    out
}

pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}
