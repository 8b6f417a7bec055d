use serde_json::Value;

use crate::config::Output;

pub fn render(value: &Value, output: Output) -> String {
    match output {
        Output::Json => value.to_string(),
        Output::Table => table(value),
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn table(value: &Value) -> String {
    let Value::Object(map) = value else {
        return cell(value);
    };
    let mut out = Vec::new();
    let width = map.keys().map(String::len).max().unwrap_or(0);
    let mut nested = Vec::new();
    for (k, v) in map {
        match v {
            Value::Array(rows) if !rows.is_empty() && rows.iter().all(Value::is_object) => nested.push((k, rows)),
            _ => out.push(format!("{k:<width$}  {}", cell(v))),
        }
    }
    for (k, rows) in nested {
        out.push(String::new());
        out.push(format!("{k}:"));
        let cols: Vec<&String> = rows[0].as_object().unwrap().keys().collect();
        let cells: Vec<Vec<String>> =
            rows.iter().map(|r| cols.iter().map(|c| r.get(c.as_str()).map_or_else(String::new, cell)).collect()).collect();
        let widths: Vec<usize> =
            (0..cols.len()).map(|i| cells.iter().map(|r| r[i].len()).chain([cols[i].len()]).max().unwrap()).collect();
        let line = |vals: Vec<&str>| {
            vals.iter().zip(&widths).map(|(v, w)| format!("{v:<w$}")).collect::<Vec<_>>().join("  ").trim_end().to_string()
        };
        out.push(line(cols.iter().map(|s| s.as_str()).collect()));
        for r in &cells {
            out.push(line(r.iter().map(String::as_str).collect()));
        }
    }
    out.join("\n")
}
