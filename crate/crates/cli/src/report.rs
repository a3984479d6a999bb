//! Plain-text rendering of JSON reports, so both output modes carry the same content.

use serde_json::Value;

pub fn render_text(value: &Value) -> String {
    let mut out = String::new();
    match value {
        Value::Object(_) | Value::Array(_) => block(value, 0, &mut out),
        other => {
            out.push_str(&scalar(other));
            out.push('\n');
        }
    }
    out
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "none".into(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Values without non-empty objects inside, printable on one line.
fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(is_flat),
        Value::Object(map) => map.is_empty(),
        _ => true,
    }
}

fn depth(v: &Value) -> usize {
    match v {
        Value::Array(items) => 1 + items.iter().map(depth).max().unwrap_or(0),
        _ => 0,
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::Array(items) => format!("[{}]", items.iter().map(inline).collect::<Vec<_>>().join(", ")),
        Value::Object(map) if map.is_empty() => "{}".into(),
        other => scalar(other),
    }
}

fn block(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, item) in map {
                if is_flat(item) && depth(item) <= 1 {
                    out.push_str(&format!("{pad}{k}: {}\n", inline(item)));
                } else if item.as_array().is_some_and(|rows| rows.iter().all(is_flat)) {
                    out.push_str(&format!("{pad}{k}:\n"));
                    for row in item.as_array().into_iter().flatten() {
                        out.push_str(&format!("{pad}  {}\n", inline(row)));
                    }
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    block(item, indent + 1, out);
                }
            }
        }
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                if is_flat(item) {
                    out.push_str(&format!("{pad}- {}\n", inline(item)));
                } else {
                    out.push_str(&format!("{pad}- [{i}]\n"));
                    block(item, indent + 1, out);
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other))),
    }
}
