//! Aligned-column text rendering of the JSON reports.
//!
//! Scalars become `key  value` lines, exact rationals print as their
//! decimal expansion followed by the fraction, and arrays of flat objects
//! become tables with a header row.

use serde_json::{Map, Value};

pub fn render(v: &Value) -> String {
    let mut out = String::new();
    match v {
        Value::Array(items) => render_array("", items, &mut out),
        Value::Object(m) => render_object(m, &mut out),
        other => out.push_str(&scalar(other)),
    }
    if !out.ends_with('\n') {
        out.push('\n');
    }
    out
}

fn is_rational(m: &Map<String, Value>) -> bool {
    m.len() == 3 && m.contains_key("num") && m.contains_key("den") && m.contains_key("decimal")
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Object(m) if is_rational(m) => {
            let (num, den) = (m["num"].as_str().unwrap_or(""), m["den"].as_str().unwrap_or(""));
            let dec = m["decimal"].as_str().unwrap_or("");
            if den == "1" {
                num.to_string()
            } else {
                format!("{dec} ({num}/{den})")
            }
        }
        Value::Array(items) if items.iter().all(|i| !i.is_object()) => {
            format!("[{}]", items.iter().map(scalar).collect::<Vec<_>>().join(", "))
        }
        other => other.to_string(),
    }
}

fn flat(v: &Value) -> bool {
    match v {
        Value::Object(m) => is_rational(m),
        Value::Array(items) => items.iter().all(|i| !i.is_object()),
        _ => true,
    }
}

/// Scalar fields of nested objects are flattened to `outer.inner`.
fn collect_scalars(prefix: &str, m: &Map<String, Value>, lines: &mut Vec<(String, String)>, rest: &mut Vec<(String, Value)>) {
    for (k, v) in m {
        let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
        match v {
            Value::Object(inner) if !is_rational(inner) => collect_scalars(&key, inner, lines, rest),
            v if flat(v) => lines.push((key, scalar(v))),
            v => rest.push((key, v.clone())),
        }
    }
}

fn render_object(m: &Map<String, Value>, out: &mut String) {
    let mut lines = Vec::new();
    let mut rest = Vec::new();
    collect_scalars("", m, &mut lines, &mut rest);
    let width = lines.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in &lines {
        out.push_str(&format!("{k:<width$}  {v}\n"));
    }
    for (k, v) in rest {
        if let Value::Array(items) = &v {
            out.push('\n');
            render_array(&k, items, out);
        }
    }
}

fn render_array(title: &str, items: &[Value], out: &mut String) {
    if !title.is_empty() {
        out.push_str(&format!("{title}:\n"));
    }
    let mut headers: Vec<String> = Vec::new();
    let mut rows: Vec<Vec<(String, String)>> = Vec::new();
    for item in items {
        let mut lines = Vec::new();
        let mut rest = Vec::new();
        match item {
            Value::Object(m) => collect_scalars("", m, &mut lines, &mut rest),
            other => lines.push(("value".into(), scalar(other))),
        }
        for (k, _) in &lines {
            if !headers.contains(k) {
                headers.push(k.clone());
            }
        }
        rows.push(lines);
    }
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|row| {
            headers
                .iter()
                .map(|h| row.iter().find(|(k, _)| k == h).map_or("-".to_string(), |(_, v)| v.clone()))
                .collect()
        })
        .collect();
    let widths: Vec<usize> = headers
        .iter()
        .enumerate()
        .map(|(i, h)| cells.iter().map(|c| c[i].len()).chain([h.len()]).max().unwrap_or(0))
        .collect();
    let line = |vals: &[String]| {
        let padded: Vec<String> = vals.iter().zip(&widths).map(|(v, w)| format!("{v:<w$}")).collect();
        format!("{}\n", padded.join("  ").trim_end())
    };
    out.push_str(&line(&headers));
    for c in &cells {
        out.push_str(&line(c));
    }
}
