//! Plain-text rendering of the JSON documents: scalars as `key: value` lines, arrays of
//! objects as aligned tables over their scalar fields.

use serde_json::Value;

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(a) => format!("[{}]", a.iter().map(cell).collect::<Vec<_>>().join(",")),
        Value::Object(_) => serde_json::to_string(v).unwrap(),
        o => o.to_string(),
    }
}

fn is_table(a: &[Value]) -> bool {
    !a.is_empty() && a.iter().all(Value::is_object)
}

fn table(name: &str, rows: &[Value], out: &mut String) {
    let nested: Vec<&String> =
        rows.iter().flat_map(|r| r.as_object().unwrap()).filter(|(_, v)| matches!(v, Value::Array(a) if is_table(a))).map(|(k, _)| k).collect();
    let mut cols: Vec<String> = Vec::new();
    for r in rows {
        for k in r.as_object().unwrap().keys() {
            if !nested.contains(&k) && !cols.contains(k) {
                cols.push(k.clone());
            }
        }
    }
    let cells: Vec<Vec<String>> = rows.iter().map(|r| cols.iter().map(|c| r.get(c).map_or("-".into(), cell)).collect()).collect();
    let widths: Vec<usize> =
        cols.iter().enumerate().map(|(i, c)| cells.iter().map(|r| r[i].chars().count()).chain([c.chars().count()]).max().unwrap()).collect();
    let line = |xs: &[String]| xs.iter().zip(&widths).map(|(x, w)| format!("{x:<w$}")).collect::<Vec<_>>().join("  ").trim_end().to_string();
    out.push_str(&format!("\n{name}\n"));
    out.push_str(&line(&cols));
    out.push('\n');
    out.push_str(&line(&widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>()));
    out.push('\n');
    for r in &cells {
        out.push_str(&line(r));
        out.push('\n');
    }
    for (i, r) in rows.iter().enumerate() {
        for (k, v) in r.as_object().unwrap() {
            if let Value::Array(a) = v {
                if is_table(a) {
                    table(&format!("{name}[{i}].{k}"), a, out);
                }
            }
        }
    }
}

fn walk(prefix: &str, v: &Value, out: &mut String, tables: &mut Vec<(String, Vec<Value>)>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                walk(&key, x, out, tables);
            }
        }
        Value::Array(a) if is_table(a) => tables.push((prefix.to_string(), a.clone())),
        x => out.push_str(&format!("{prefix}: {}\n", cell(x))),
    }
}

pub fn render(v: &Value) -> String {
    let mut out = String::new();
    let mut tables = Vec::new();
    walk("", v, &mut out, &mut tables);
    for (name, rows) in tables {
        table(&name, &rows, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn scalars_and_tables() {
        let v = json!({"kind": "x", "rows": [{"a": 1, "b": "long"}, {"a": 22, "b": null}]});
        let s = render(&v);
        assert!(s.starts_with("kind: x\n"));
        assert!(s.contains("a   b\n--  ----\n1   long\n22  -\n"), "{s}");
    }
}
