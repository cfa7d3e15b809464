//! JSON, CSV and plain-text rendering of command results.
//!
//! Results are built as `serde_json::Value` trees with insertion-ordered
//! keys. Floats are written with 17 significant digits so identical runs
//! produce byte-identical output and every value round-trips exactly.

use serde_json::Value;

use super::Format;

pub fn render(v: &Value, table_key: Option<&str>, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = String::new();
            write_json(v, 0, &mut s);
            s.push('\n');
            s
        }
        Format::Csv => render_csv(v, table_key),
        Format::Pretty => render_pretty(v, table_key),
    }
}

fn number(x: f64) -> String {
    if x == 0.0 {
        // drop the sign of negative zero
        return "0.0000000000000000e0".to_string();
    }
    format!("{x:.16e}")
}

fn json_scalar(v: &Value) -> String {
    match v {
        Value::Null => "null".into(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(i), _) => i.to_string(),
            (_, Some(u)) => u.to_string(),
            _ => number(n.as_f64().unwrap_or(f64::NAN)),
        },
        Value::String(s) => serde_json::to_string(s).expect("strings always serialize"),
        _ => unreachable!("containers are not scalars"),
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn is_inline(v: &Value) -> bool {
    match v {
        Value::Array(a) => a.iter().all(is_scalar),
        Value::Object(o) => o.values().all(|x| is_scalar(x) || matches!(x, Value::Array(a) if a.iter().all(is_scalar))),
        _ => true,
    }
}

fn write_inline(v: &Value, out: &mut String) {
    match v {
        Value::Array(a) => {
            out.push('[');
            for (i, x) in a.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_inline(x, out);
            }
            out.push(']');
        }
        Value::Object(o) => {
            out.push('{');
            for (i, (k, x)) in o.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                out.push_str(&json_scalar(&Value::String(k.clone())));
                out.push_str(": ");
                write_inline(x, out);
            }
            out.push('}');
        }
        _ => out.push_str(&json_scalar(v)),
    }
}

fn write_json(v: &Value, depth: usize, out: &mut String) {
    if is_inline(v) && !(depth == 0 && matches!(v, Value::Object(_))) {
        write_inline(v, out);
        return;
    }
    let pad = "  ".repeat(depth + 1);
    let close = "  ".repeat(depth);
    match v {
        Value::Array(a) => {
            out.push_str("[\n");
            for (i, x) in a.iter().enumerate() {
                out.push_str(&pad);
                write_json(x, depth + 1, out);
                out.push_str(if i + 1 < a.len() { ",\n" } else { "\n" });
            }
            out.push_str(&close);
            out.push(']');
        }
        Value::Object(o) => {
            out.push_str("{\n");
            for (i, (k, x)) in o.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&json_scalar(&Value::String(k.clone())));
                out.push_str(": ");
                write_json(x, depth + 1, out);
                out.push_str(if i + 1 < o.len() { ",\n" } else { "\n" });
            }
            out.push_str(&close);
            out.push('}');
        }
        _ => out.push_str(&json_scalar(v)),
    }
}

/// `[re, im]` pairs print as `a+bi` outside JSON.
fn text(v: &Value) -> String {
    match v {
        Value::Array(a) if a.len() == 2 && a.iter().all(Value::is_number) => {
            let (re, im) = (a[0].as_f64().unwrap(), a[1].as_f64().unwrap());
            format!("{}{}{}i", number(re), if im < 0.0 { "-" } else { "+" }, number(im.abs()))
        }
        Value::Array(a) => a.iter().map(text).collect::<Vec<_>>().join(" "),
        Value::String(s) => s.clone(),
        Value::Object(_) => {
            let mut s = String::new();
            write_inline(v, &mut s);
            s
        }
        _ => json_scalar(v),
    }
}

fn csv_field(v: &Value) -> String {
    let s = text(v);
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s
    }
}

/// Rows of `table_key` flattened to columns; `[re, im]` cells become
/// `name_re,name_im`. Without a table the top-level fields form a
/// `field,value` table.
fn render_csv(v: &Value, table_key: Option<&str>) -> String {
    let rows = table_key.and_then(|k| v.get(k)).and_then(Value::as_array);
    let mut out = String::new();
    match rows {
        Some(rows) if !rows.is_empty() => {
            let first = rows[0].as_object().expect("table rows are objects");
            let mut header = Vec::new();
            for (k, x) in first {
                if is_pair(x) {
                    header.push(format!("{k}_re"));
                    header.push(format!("{k}_im"));
                } else {
                    header.push(k.clone());
                }
            }
            out.push_str(&header.join(","));
            out.push('\n');
            for row in rows {
                let mut cells = Vec::new();
                for x in row.as_object().expect("table rows are objects").values() {
                    match x {
                        Value::Array(a) if is_pair(x) => {
                            cells.push(csv_field(&a[0]));
                            cells.push(csv_field(&a[1]));
                        }
                        _ => cells.push(csv_field(x)),
                    }
                }
                out.push_str(&cells.join(","));
                out.push('\n');
            }
        }
        _ => {
            out.push_str("field,value\n");
            if let Value::Object(o) = v {
                for (k, x) in o {
                    out.push_str(&format!("{},{}\n", k, csv_field(x)));
                }
            }
        }
    }
    out
}

fn is_pair(v: &Value) -> bool {
    matches!(v, Value::Array(a) if a.len() == 2 && a.iter().all(Value::is_number))
}

fn render_pretty(v: &Value, table_key: Option<&str>) -> String {
    let mut out = String::new();
    let Value::Object(o) = v else {
        return text(v) + "\n";
    };
    let width = o.keys().map(|k| k.chars().count()).max().unwrap_or(0);
    for (k, x) in o {
        if Some(k.as_str()) == table_key {
            continue;
        }
        let pad = width - k.chars().count();
        out.push_str(&format!("{k}{}  {}\n", " ".repeat(pad), text(x)));
    }
    if let Some(rows) = table_key.and_then(|k| o.get(k)).and_then(Value::as_array) {
        out.push('\n');
        if let Some(Value::Object(first)) = rows.first() {
            out.push_str(&first.keys().cloned().collect::<Vec<_>>().join("  "));
            out.push('\n');
        }
        for row in rows {
            let cells: Vec<String> = match row {
                Value::Object(r) => r.values().map(text).collect(),
                _ => vec![text(row)],
            };
            out.push_str(&cells.join("  "));
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn json_is_stable_and_round_trips() {
        let v = json!({"b": 0.1, "a": [1.0 / 3.0, -0.0], "rows": [{"n": 0, "c": [1e-300, 2.5]}]});
        let s = render(&v, Some("rows"), Format::Json);
        assert_eq!(s, render(&v, Some("rows"), Format::Json));
        // insertion order kept
        assert!(s.find("\"b\"").unwrap() < s.find("\"a\"").unwrap());
        assert!(s.contains("3.3333333333333331e-1"));
        let back: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(back["a"][0].as_f64().unwrap(), 1.0 / 3.0);
        assert_eq!(back["rows"][0]["c"][0].as_f64().unwrap(), 1e-300);
    }

    #[test]
    fn csv_splits_complex_cells() {
        let v = json!({"rows": [{"n": 0, "c": [1.0, -2.0]}, {"n": 1, "c": [0.5, 0.0]}]});
        let s = render(&v, Some("rows"), Format::Csv);
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines[0], "n,c_re,c_im");
        assert_eq!(lines.len(), 3);
        assert!(lines[1].starts_with("0,1.0000000000000000e0,"));
    }

    #[test]
    fn pretty_shows_complex_as_a_plus_bi() {
        let v = json!({"lambda": [1.0, -2.0]});
        assert!(render(&v, None, Format::Pretty).contains("1.0000000000000000e0-2.0000000000000000e0i"));
    }
}
