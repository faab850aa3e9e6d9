use std::fmt::Write as _;

use qrat::LaurentPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

pub const CSV_HEADER: &str = "label,lowest_exp,coeffs";

pub fn csv_row(label: &str, p: &LaurentPoly) -> String {
    let coeffs: Vec<String> = p.coeffs().iter().map(|c| c.to_string()).collect();
    format!("{label},{},{}", p.lowest_exp(), coeffs.join(" "))
}

/// Labelled polynomials in the chosen format. A single unlabelled text item
/// prints the bare polynomial.
pub fn polys(format: Format, items: &[(&str, &LaurentPoly)], json: serde_json::Value) -> String {
    match format {
        Format::Text if items.len() == 1 => format!("{}\n", items[0].1),
        Format::Text => items.iter().fold(String::new(), |mut s, (l, p)| {
            let _ = writeln!(s, "{l}: {p}");
            s
        }),
        Format::Json => format!("{json}\n"),
        Format::Csv => {
            let mut s = format!("{CSV_HEADER}\n");
            for (l, p) in items {
                let _ = writeln!(s, "{}", csv_row(l, p));
            }
            s
        }
    }
}

pub fn to_json<T: serde::Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).unwrap_or(serde_json::Value::Null)
}

/// `{1,4,5}` with 1-based labels; `{}` for the empty set.
pub fn vertex_set(v: &[usize]) -> String {
    let inner: Vec<String> = v.iter().map(|x| (x + 1).to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

pub fn closure_table(format: Format, table: &[Vec<Vec<usize>>]) -> String {
    match format {
        Format::Text => {
            let rows: Vec<(String, String, String)> = table
                .iter()
                .enumerate()
                .map(|(l, sets)| {
                    let listed: Vec<String> = sets.iter().map(|s| vertex_set(s)).collect();
                    (l.to_string(), listed.join(", "), sets.len().to_string())
                })
                .collect();
            let w = rows.iter().map(|r| r.1.len()).max().unwrap_or(0).max("l-closures".len());
            let mut s = format!("{:<3} {:<w$}  count\n", "l", "l-closures");
            for (l, sets, n) in rows {
                let _ = writeln!(s, "{l:<3} {sets:<w$}  {n}");
            }
            s
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = table
                .iter()
                .enumerate()
                .map(|(l, sets)| {
                    let one_based: Vec<Vec<usize>> = sets.iter().map(|s| s.iter().map(|v| v + 1).collect()).collect();
                    serde_json::json!({"l": l, "closures": one_based, "count": sets.len()})
                })
                .collect();
            format!("{}\n", serde_json::Value::Array(rows))
        }
        Format::Csv => {
            let mut s = String::from("l,closures,count\n");
            for (l, sets) in table.iter().enumerate() {
                let listed: Vec<String> = sets.iter().map(|x| vertex_set(x)).collect();
                let _ = writeln!(s, "{l},\"{}\",{}", listed.join(" "), sets.len());
            }
            s
        }
    }
}
