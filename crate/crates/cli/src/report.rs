//! Plain-text rendering of certificates. The timestamp is left out so that
//! reports of reruns compare equal.

use std::fmt::Write;

use anyhow::{bail, Result};
use serde_json::Value;

use envelope_core::certify::{Certificate, SCHEMA};

pub fn parse(text: &str) -> Result<Certificate> {
    let v: Value = serde_json::from_str(text)?;
    match v.get("schema").and_then(Value::as_str) {
        Some(SCHEMA) => {}
        Some(other) => bail!("schema: unsupported version {other:?}"),
        None => bail!("schema: missing"),
    }
    Ok(serde_json::from_value(v)?)
}

pub fn render(c: &Certificate) -> String {
    let mut out = String::new();
    section(&mut out, c, 0);
    out
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn section(out: &mut String, c: &Certificate, depth: usize) {
    let pad = "  ".repeat(depth);
    let check = c.claim.get("check").map(scalar).unwrap_or_else(|| "claim".into());
    let _ = writeln!(out, "{pad}== {check} ==");
    if let Value::Object(m) = &c.claim {
        for (k, v) in m.iter().filter(|(k, _)| k.as_str() != "check") {
            let _ = writeln!(out, "{pad}{k}: {}", scalar(v));
        }
    }
    if let Some(cat) = &c.category {
        let r = if cat.restricted_unit { ", restricted unit" } else { "" };
        let _ = writeln!(out, "{pad}category: {} over {} at t = {}, ideal {}{r}", cat.flavor, cat.field, cat.t, cat.ideal);
    }
    if let Some(b) = &c.bound {
        let d = b.degree.map(|d| format!("degree ≤ {d}, ")).unwrap_or_default();
        let _ = writeln!(out, "{pad}bound: {d}{} test objects", b.family.len());
    }
    let _ = writeln!(out, "{pad}verdict: {}", c.verdict.as_str());

    if !c.cases.is_empty() {
        let first = c.cases.iter().position(|k| !k.pass);
        let rows: Vec<Vec<String>> = c
            .cases
            .iter()
            .enumerate()
            .map(|(n, k)| {
                let mark = match (k.pass, Some(n) == first) {
                    (true, _) => "ok".to_string(),
                    (false, true) => format!("FAIL << first failure, defect {}", k.defect),
                    (false, false) => "FAIL".to_string(),
                };
                vec![
                    k.object.clone(),
                    join(&k.dims),
                    join(&k.ranks),
                    k.defect.to_string(),
                    k.note.clone().unwrap_or_default(),
                    mark,
                ]
            })
            .collect();
        table(out, &pad, &["object", "dims", "ranks", "defect", "note", "status"], &rows);
    }
    if !c.witnesses.is_empty() {
        let _ = writeln!(out, "{pad}witnesses: {}", c.witnesses.len());
    }
    if let Some(Value::Object(tables)) = &c.tables {
        for (name, v) in tables {
            render_table(out, &pad, name, v);
        }
    }
    for (n, s) in c.sections.iter().enumerate() {
        let _ = writeln!(out, "{pad}-- section {} --", n + 1);
        section(out, s, depth + 1);
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn render_table(out: &mut String, pad: &str, name: &str, v: &Value) {
    let _ = writeln!(out, "{pad}{name}:");
    let Value::Array(rows) = v else {
        let _ = writeln!(out, "{pad}  {}", scalar(v));
        return;
    };
    let Some(Value::Object(first)) = rows.first() else {
        let _ = writeln!(out, "{pad}  {}", scalar(v));
        return;
    };
    let headers: Vec<&str> = first.keys().map(String::as_str).collect();
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| headers.iter().map(|h| r.get(*h).map(scalar).unwrap_or_default()).collect())
        .collect();
    table(out, pad, &headers, &body);
}

fn table(out: &mut String, pad: &str, headers: &[&str], rows: &[Vec<String>]) {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let parts: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        parts.join(" | ").trim_end().to_string()
    };
    let _ = writeln!(out, "{pad}  {}", line(headers.to_vec()));
    let _ = writeln!(out, "{pad}  {}", widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("-+-"));
    for r in rows {
        let _ = writeln!(out, "{pad}  {}", line(r.iter().map(String::as_str).collect()));
    }
}
