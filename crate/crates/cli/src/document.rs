//! The JSON document format: a list of named, kind-tagged entries.
//!
//! Matrices are lists of rows of value tokens (`"p/q"`, `"p"` or `"inf"`);
//! maps list the target label of each source point in order.

use std::fmt::Write;

use finmet::ExtValue;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub entries: Vec<Entry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Entry {
    Space(SpaceEntry),
    Map(MapEntry),
    Submetric(SubmetricEntry),
    Corelation(CorelationEntry),
    Cost(CostEntry),
    Relation(RelationEntry),
}

pub type Rows = Vec<Vec<ExtValue>>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceEntry {
    pub name: String,
    pub points: Vec<String>,
    pub dist: Rows,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapEntry {
    pub name: String,
    pub source: String,
    pub target: String,
    pub assignment: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubmetricEntry {
    pub name: String,
    pub base: String,
    pub gamma: Rows,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorelationEntry {
    pub name: String,
    pub base: String,
    pub g00: Rows,
    pub g01: Rows,
    pub g10: Rows,
    pub g11: Rows,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CostEntry {
    pub name: String,
    pub points: Vec<String>,
    pub rho: Rows,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationEntry {
    pub name: String,
    pub points: Vec<String>,
    pub rel: Vec<Vec<bool>>,
}

impl Entry {
    pub fn name(&self) -> &str {
        match self {
            Entry::Space(e) => &e.name,
            Entry::Map(e) => &e.name,
            Entry::Submetric(e) => &e.name,
            Entry::Corelation(e) => &e.name,
            Entry::Cost(e) => &e.name,
            Entry::Relation(e) => &e.name,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Entry::Space(_) => "space",
            Entry::Map(_) => "map",
            Entry::Submetric(_) => "submetric",
            Entry::Corelation(_) => "corelation",
            Entry::Cost(_) => "cost",
            Entry::Relation(_) => "relation",
        }
    }
}

pub fn parse(text: &str) -> serde_json::Result<Document> {
    serde_json::from_str(text)
}

fn quote(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

fn inline<T: ToString>(items: &[T], quoted: bool) -> String {
    let cells: Vec<String> = items
        .iter()
        .map(|i| if quoted { quote(&i.to_string()) } else { i.to_string() })
        .collect();
    format!("[{}]", cells.join(", "))
}

fn rows_field<T: ToString>(out: &mut String, key: &str, rows: &[Vec<T>], quoted: bool) {
    if rows.is_empty() {
        write!(out, "      {}: []", quote(key)).unwrap();
        return;
    }
    writeln!(out, "      {}: [", quote(key)).unwrap();
    let lines: Vec<String> = rows.iter().map(|r| format!("        {}", inline(r, quoted))).collect();
    writeln!(out, "{}", lines.join(",\n")).unwrap();
    write!(out, "      ]").unwrap();
}

enum Field<'a> {
    Str(&'a str),
    List(&'a [String]),
    Rows(&'a Rows),
    Bools(&'a [Vec<bool>]),
}

fn entry_fields(entry: &Entry) -> Vec<(&'static str, Field<'_>)> {
    match entry {
        Entry::Space(e) => vec![
            ("name", Field::Str(&e.name)),
            ("points", Field::List(&e.points)),
            ("dist", Field::Rows(&e.dist)),
        ],
        Entry::Map(e) => vec![
            ("name", Field::Str(&e.name)),
            ("source", Field::Str(&e.source)),
            ("target", Field::Str(&e.target)),
            ("assignment", Field::List(&e.assignment)),
        ],
        Entry::Submetric(e) => vec![
            ("name", Field::Str(&e.name)),
            ("base", Field::Str(&e.base)),
            ("gamma", Field::Rows(&e.gamma)),
        ],
        Entry::Corelation(e) => vec![
            ("name", Field::Str(&e.name)),
            ("base", Field::Str(&e.base)),
            ("g00", Field::Rows(&e.g00)),
            ("g01", Field::Rows(&e.g01)),
            ("g10", Field::Rows(&e.g10)),
            ("g11", Field::Rows(&e.g11)),
        ],
        Entry::Cost(e) => vec![
            ("name", Field::Str(&e.name)),
            ("points", Field::List(&e.points)),
            ("rho", Field::Rows(&e.rho)),
        ],
        Entry::Relation(e) => vec![
            ("name", Field::Str(&e.name)),
            ("points", Field::List(&e.points)),
            ("rel", Field::Bools(&e.rel)),
        ],
    }
}

/// Canonical pretty form: one field per line, one matrix row per line.
pub fn write(doc: &Document) -> String {
    let mut out = String::from("{\n  \"entries\": [");
    if doc.entries.is_empty() {
        out.push_str("]\n}\n");
        return out;
    }
    out.push('\n');
    let mut blocks = Vec::with_capacity(doc.entries.len());
    for entry in &doc.entries {
        let mut block = String::from("    {\n");
        let mut fields = vec![format!("      \"kind\": {}", quote(entry.kind()))];
        for (key, field) in entry_fields(entry) {
            let mut f = String::new();
            match field {
                Field::Str(s) => write!(f, "      {}: {}", quote(key), quote(s)).unwrap(),
                Field::List(items) => write!(f, "      {}: {}", quote(key), inline(items, true)).unwrap(),
                Field::Rows(rows) => rows_field(&mut f, key, rows, true),
                Field::Bools(rows) => rows_field(&mut f, key, rows, false),
            }
            fields.push(f);
        }
        block.push_str(&fields.join(",\n"));
        block.push_str("\n    }");
        blocks.push(block);
    }
    out.push_str(&blocks.join(",\n"));
    out.push_str("\n  ]\n}\n");
    out
}
