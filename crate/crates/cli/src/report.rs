//! Report values: term lists, Betti tables, and a plain-text rendering.

use qpoisson::algebra::Element;
use qpoisson::complex::BettiTable;
use qpoisson::scalar::format_q;
use serde_json::{json, Map, Value};

pub type Report = Map<String, Value>;

pub fn terms(e: &Element) -> Value {
    Value::Array(e.term_list().into_iter().map(|(m, c)| json!([m, format_q(&c)])).collect())
}

/// `{degrees, weights, matrix}` with `matrix[i][j]` the dimension at
/// `degrees[i]`, `weights[j]`.
pub fn betti(t: &BettiTable, degrees: impl Iterator<Item = u32> + Clone, weights: impl Iterator<Item = i32> + Clone) -> Value {
    let ds: Vec<u32> = degrees.collect();
    let ws: Vec<i32> = weights.collect();
    let matrix: Vec<Vec<usize>> = ds.iter().map(|&d| ws.iter().map(|&w| t.get(d, w)).collect()).collect();
    json!({ "degrees": ds, "weights": ws, "matrix": matrix })
}

/// Betti table over the degrees and weights that actually occur.
pub fn betti_auto(t: &BettiTable) -> Value {
    let (Some(dlo), Some(dhi)) = (t.entries.keys().map(|k| k.0).min(), t.entries.keys().map(|k| k.0).max()) else {
        return json!({ "degrees": [], "weights": [], "matrix": [] });
    };
    let wlo = t.entries.keys().map(|k| k.1).min().unwrap_or(0);
    let whi = t.entries.keys().map(|k| k.1).max().unwrap_or(0);
    betti(t, dlo..=dhi, wlo..=whi)
}

pub fn text(v: &Value) -> String {
    let mut out = String::new();
    write(&mut out, v, 0);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.is_empty() => Some("none".into()),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
            Some(a.iter().map(|x| scalar(x).unwrap_or_default()).collect::<Vec<_>>().join(" "))
        }
        _ => None,
    }
}

fn write(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        write(out, x, indent + 1);
                    }
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        write(out, x, indent + 1);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}
