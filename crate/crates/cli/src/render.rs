use finmet::{BlockMetric, FinMap, FinSpace, Matrix};
use serde_json::{json, Value};

pub fn rows_json(m: &Matrix) -> Value {
    Value::Array(
        m.rows()
            .map(|r| Value::Array(r.iter().map(|v| Value::String(v.to_string())).collect()))
            .collect(),
    )
}

/// A right-aligned table with row and column labels, indented two spaces.
pub fn table(rows: &[String], cols: &[String], m: &Matrix) -> String {
    let row_w = rows.iter().map(String::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols.len())
        .map(|j| {
            (0..rows.len())
                .map(|i| m.get(i, j).to_string().len())
                .chain([cols[j].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    let header: Vec<String> = cols.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
    out.push_str(format!("  {:row_w$}  {}\n", "", header.join("  ")).trim_end());
    out.push('\n');
    for (i, label) in rows.iter().enumerate() {
        let cells: Vec<String> = widths
            .iter()
            .enumerate()
            .map(|(j, w)| format!("{:>w$}", m.get(i, j).to_string()))
            .collect();
        out.push_str(&format!("  {label:row_w$}  {}\n", cells.join("  ")));
    }
    out
}

pub fn square_table(labels: &[String], m: &Matrix) -> String {
    if labels.is_empty() {
        return "  (empty)\n".to_string();
    }
    table(labels, labels, m)
}

pub fn space_text(title: &str, s: &FinSpace) -> String {
    let noun = if s.len() == 1 { "point" } else { "points" };
    format!("{title} ({} {noun})\n{}", s.len(), square_table(s.labels(), s.dist()))
}

pub fn space_json(s: &FinSpace) -> Value {
    json!({ "points": s.labels(), "dist": rows_json(s.dist()) })
}

pub fn map_text(title: &str, f: &FinMap) -> String {
    let mut out = format!("{title}\n");
    for x in 0..f.source().len() {
        out.push_str(&format!("  {} -> {}\n", f.source().label(x), f.target().label(f.apply(x))));
    }
    if f.source().is_empty() {
        out.push_str("  (empty)\n");
    }
    out
}

pub fn map_json(f: &FinMap) -> Value {
    let images: Vec<&str> = (0..f.source().len()).map(|x| f.target().label(f.apply(x))).collect();
    json!({ "source": f.source().labels(), "assignment": images })
}

pub fn blocks_text(g: &BlockMetric) -> String {
    square_table(&g.point_labels(), &g.to_matrix())
}

pub fn blocks_json(g: &BlockMetric) -> Value {
    json!({
        "base": g.base().labels(),
        "g00": rows_json(g.block(0, 0)),
        "g01": rows_json(g.block(0, 1)),
        "g10": rows_json(g.block(1, 0)),
        "g11": rows_json(g.block(1, 1)),
    })
}
