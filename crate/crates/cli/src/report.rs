//! JSON and text forms of reports. JSON objects come out with sorted keys
//! and point sets in lexicographic order, so identical inputs give
//! identical documents.

use std::fmt::Write;

use dtk_core::{DigitalImage, DigitalMap, Point, PointSet, VerificationReport};
use serde_json::{json, Value};

pub fn point(p: &Point) -> Value {
    json!(p.coords())
}

pub fn points<'a>(ps: impl IntoIterator<Item = &'a Point>) -> Value {
    Value::Array(ps.into_iter().map(point).collect())
}

/// `[[source, target], ...]` in domain order.
pub fn map(f: &DigitalMap) -> Value {
    Value::Array(f.pairs().map(|(p, q)| json!([point(p), point(q)])).collect())
}

pub fn image(x: &DigitalImage) -> Value {
    json!({
        "points": x.len(),
        "dimension": x.dimension(),
        "adjacency": x.adjacency().to_string(),
        "edges": x.edge_count(),
    })
}

pub fn verification(r: &VerificationReport) -> Value {
    json!({
        "property": r.property.name(),
        "holds": r.holds,
        "nodes_explored": r.nodes_explored,
        "violating_points": points(&r.violating_points),
        "witnesses": r.witnesses.iter().map(map).collect::<Vec<_>>(),
        "parts": r.parts.iter().map(verification).collect::<Vec<_>>(),
    })
}

pub fn fmt_set(s: &PointSet) -> String {
    let v: Vec<String> = s.iter().map(|p| p.to_string()).collect();
    format!("{{{}}}", v.join(", "))
}

/// The points a witness moves, as `p -> f(p)`.
fn moved(f: &DigitalMap) -> String {
    let v: Vec<String> = f.pairs().filter(|(p, q)| p != q).map(|(p, q)| format!("{p} -> {q}")).collect();
    if v.is_empty() {
        "identity".into()
    } else {
        v.join(", ")
    }
}

pub fn verification_text(r: &VerificationReport, out: &mut String, indent: usize) {
    let pad = " ".repeat(indent);
    let _ = writeln!(out, "{pad}{}: {}", r.property, if r.holds { "holds" } else { "fails" });
    let _ = writeln!(out, "{pad}  nodes explored: {}", r.nodes_explored);
    if indent == 0 {
        let _ = writeln!(out, "{pad}  time: {:.3}s", r.elapsed.as_secs_f64());
    }
    if !r.violating_points.is_empty() {
        let v: Vec<String> = r.violating_points.iter().map(|p| p.to_string()).collect();
        let _ = writeln!(out, "{pad}  violating points: {}", v.join(", "));
    }
    for (i, w) in r.witnesses.iter().enumerate() {
        let _ = writeln!(out, "{pad}  witness {}: {}", i + 1, moved(w));
    }
    for p in &r.parts {
        verification_text(p, out, indent + 2);
    }
}
