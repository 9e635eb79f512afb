//! Text renderings for the CLI. Polynomials and series themselves use the
//! library's `Display`; this only lays out tables.

use quotstab::{MultiTruncatedSeries, RunReport};
use serde_json::Value;

fn status_word(v: &Value) -> &str {
    v.as_str().unwrap_or("?")
}

/// One row per check: name, status, number of comparisons, first witness.
pub fn run_table(run: &RunReport) -> String {
    let json = run.to_json();
    let details = json["details"].as_array().cloned().unwrap_or_default();
    let rows: Vec<[String; 4]> = details
        .iter()
        .map(|d| {
            let detail = &d["detail"];
            let checked = detail["checked"]
                .as_u64()
                .map_or_else(|| "-".into(), |c| c.to_string());
            let witness = match detail {
                Value::String(err) => err.clone(),
                _ => detail["failures"]
                    .as_array()
                    .and_then(|f| f.first())
                    .map(|f| {
                        format!(
                            "{}: expected {}, got {}",
                            f["witness"].as_str().unwrap_or(""),
                            f["expected"].as_str().unwrap_or(""),
                            f["actual"].as_str().unwrap_or("")
                        )
                    })
                    .unwrap_or_default(),
            };
            [
                d["name"].as_str().unwrap_or("").to_string(),
                status_word(&d["status"]).to_string(),
                checked,
                witness,
            ]
        })
        .collect();
    let header = [
        "check".to_string(),
        "status".into(),
        "checked".into(),
        "witness".into(),
    ];
    let mut widths = [0usize; 3];
    for row in std::iter::once(&header).chain(&rows) {
        for (w, cell) in widths.iter_mut().zip(row.iter()) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |row: &[String; 4]| {
        format!(
            "{:<w0$}  {:<w1$}  {:>w2$}  {}",
            row[0],
            row[1],
            row[2],
            row[3],
            w0 = widths[0],
            w1 = widths[1],
            w2 = widths[2]
        )
        .trim_end()
        .to_string()
    };
    let mut out = vec![format!("{}: {}", run.command, status_word(&json["status"]))];
    out.push(line(&header));
    out.extend(rows.iter().map(line));
    if let Some(Value::Array(skipped)) = run.params.get("skipped") {
        for s in skipped {
            out.push(format!("skipped by profile: {}", s.as_str().unwrap_or("")));
        }
    }
    out.join("\n")
}

/// `t^(e_1,...,e_l): coefficient` lines in exponent order.
pub fn series_table(gf: &MultiTruncatedSeries) -> String {
    let rows: Vec<(String, String)> = gf
        .terms()
        .map(|(e, c)| {
            let exp: Vec<String> = e.iter().map(u32::to_string).collect();
            (format!("t^({})", exp.join(",")), c.to_string())
        })
        .collect();
    let width = rows.iter().map(|(e, _)| e.len()).max().unwrap_or(0);
    rows.iter()
        .map(|(e, c)| format!("{e:<width$}  {c}"))
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn basis_text(rows: &[Vec<u8>]) -> String {
    let body: Vec<String> = rows
        .iter()
        .map(|r| r.iter().map(u8::to_string).collect::<String>())
        .collect();
    format!("[{}]", body.join(" "))
}

pub fn submodule_table(labels: &[String], rows: &[(String, String)]) -> String {
    let mut out = vec![
        format!("basis: {}", labels.join(", ")),
        format!("{} submodules", rows.len()),
    ];
    let width = rows.iter().map(|(b, _)| b.len()).max().unwrap_or(0);
    out.extend(rows.iter().map(|(b, h)| format!("{b:<width$}  h={h}")));
    out.join("\n")
}
