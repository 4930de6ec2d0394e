//! The crossed-module document format.
//!
//! A document is a JSON object
//!
//! ```json
//! {
//!   "name": "d_z2",
//!   "x1": { "table": [[0, 1], [1, 0]] },
//!   "x2": { "table": [[0, 1], [1, 0]] },
//!   "action": [[0, 1], [0, 1]],
//!   "boundary": [0, 1]
//! }
//! ```
//!
//! Group elements are `0..n` with `0` the identity; `table[a][b]` is the
//! index of `a b`, `action[g][m]` is the index of `m^g` and `boundary[m]`
//! the index of `d(m)` in `X1`. `name` is optional. Every array is
//! shape-checked before any group axiom is tested.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::crossed::CrossedModule;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDoc {
    pub table: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct XModDocument {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub x1: GroupDoc,
    pub x2: GroupDoc,
    pub action: Vec<Vec<usize>>,
    pub boundary: Vec<usize>,
}

fn shape(field: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Shape {
        field: field.into(),
        message: message.into(),
    }
}

fn index_array(value: &Value, field: &str, bound: usize, len: Option<usize>) -> Result<Vec<usize>> {
    let items = value
        .as_array()
        .ok_or_else(|| shape(field, "expected an array"))?;
    if let Some(n) = len {
        if items.len() != n {
            return Err(shape(
                field,
                format!("expected {n} entries, found {}", items.len()),
            ));
        }
    }
    items
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let k = v
                .as_u64()
                .ok_or_else(|| shape(format!("{field}[{i}]"), "expected a non-negative integer"))?;
            if k as usize >= bound {
                return Err(shape(
                    format!("{field}[{i}]"),
                    format!("index {k} out of range 0..{bound}"),
                ));
            }
            Ok(k as usize)
        })
        .collect()
}

fn index_matrix(
    value: &Value,
    field: &str,
    rows: Option<usize>,
    cols: usize,
    bound: usize,
) -> Result<Vec<Vec<usize>>> {
    let items = value
        .as_array()
        .ok_or_else(|| shape(field, "expected an array of arrays"))?;
    if let Some(n) = rows {
        if items.len() != n {
            return Err(shape(
                field,
                format!("expected {n} rows, found {}", items.len()),
            ));
        }
    }
    items
        .iter()
        .enumerate()
        .map(|(i, row)| index_array(row, &format!("{field}[{i}]"), bound, Some(cols)))
        .collect()
}

fn group_table(root: &Value, key: &str) -> Result<Vec<Vec<usize>>> {
    let table = root
        .get(key)
        .ok_or_else(|| shape(key, "missing"))?
        .get("table")
        .ok_or_else(|| shape(format!("{key}.table"), "missing"))?;
    let n = table
        .as_array()
        .ok_or_else(|| shape(format!("{key}.table"), "expected an array of arrays"))?
        .len();
    if n == 0 {
        return Err(shape(
            format!("{key}.table"),
            "a group has at least one element",
        ));
    }
    index_matrix(table, &format!("{key}.table"), Some(n), n, n)
}

impl XModDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let root: Value = serde_json::from_str(text).map_err(|e| Error::Syntax {
            line: e.line(),
            message: e.to_string(),
        })?;
        if !root.is_object() {
            return Err(shape("<document>", "expected an object"));
        }
        let name = match root.get("name") {
            None | Some(Value::Null) => None,
            Some(Value::String(s)) => Some(s.clone()),
            Some(_) => return Err(shape("name", "expected a string")),
        };
        let x1 = group_table(&root, "x1")?;
        let x2 = group_table(&root, "x2")?;
        let (n1, n2) = (x1.len(), x2.len());
        let action = index_matrix(
            root.get("action")
                .ok_or_else(|| shape("action", "missing"))?,
            "action",
            Some(n1),
            n2,
            n2,
        )?;
        let boundary = index_array(
            root.get("boundary")
                .ok_or_else(|| shape("boundary", "missing"))?,
            "boundary",
            n1,
            Some(n2),
        )?;
        Ok(Self {
            name,
            x1: GroupDoc { table: x1 },
            x2: GroupDoc { table: x2 },
            action,
            boundary,
        })
    }

    pub fn to_crossed_module(&self) -> Result<CrossedModule> {
        CrossedModule::from_tables(
            &self.x1.table,
            &self.x2.table,
            self.action.clone(),
            self.boundary.clone(),
        )
    }

    pub fn from_crossed_module(x: &CrossedModule, name: Option<&str>) -> Self {
        Self {
            name: name.map(str::to_owned),
            x1: GroupDoc {
                table: x.x1.table_rows(),
            },
            x2: GroupDoc {
                table: x.x2.table_rows(),
            },
            action: x.action.table().to_vec(),
            boundary: x.boundary.map().to_vec(),
        }
    }

    /// Serializes with one table row per line.
    pub fn to_json(&self) -> String {
        let row = |r: &[usize]| serde_json::to_string(r).expect("integers serialize");
        let rows = |m: &[Vec<usize>], indent: &str| {
            let body: Vec<String> = m.iter().map(|r| format!("{indent}  {}", row(r))).collect();
            format!("[\n{}\n{indent}]", body.join(",\n"))
        };
        let mut out = String::from("{\n");
        if let Some(name) = &self.name {
            let quoted = serde_json::to_string(name).expect("strings serialize");
            out += &format!("  \"name\": {quoted},\n");
        }
        out += &format!(
            "  \"x1\": {{ \"table\": {} }},\n",
            rows(&self.x1.table, "  ")
        );
        out += &format!(
            "  \"x2\": {{ \"table\": {} }},\n",
            rows(&self.x2.table, "  ")
        );
        out += &format!("  \"action\": {},\n", rows(&self.action, "  "));
        out += &format!("  \"boundary\": {}\n}}", row(&self.boundary));
        out
    }
}

pub fn parse_crossed_module(text: &str) -> Result<CrossedModule> {
    XModDocument::parse(text)?.to_crossed_module()
}

/// Hex SHA-256 of the raw input bytes.
pub fn input_hash(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Bundled documents, addressable by name from the command line.
pub const FIXTURES: &[(&str, &str)] = &[
    ("trivial", include_str!("../fixtures/trivial.json")),
    ("d_z2", include_str!("../fixtures/d_z2.json")),
    ("d_z3", include_str!("../fixtures/d_z3.json")),
    ("d_z4", include_str!("../fixtures/d_z4.json")),
    ("d_s3", include_str!("../fixtures/d_s3.json")),
    (
        "x4_double_cover",
        include_str!("../fixtures/x4_double_cover.json"),
    ),
    (
        "trivial_boundary_z2",
        include_str!("../fixtures/trivial_boundary_z2.json"),
    ),
    (
        "trivial_boundary_z2_z2",
        include_str!("../fixtures/trivial_boundary_z2_z2.json"),
    ),
    (
        "inversion_on_z3",
        include_str!("../fixtures/inversion_on_z3.json"),
    ),
    (
        "peiffer_violation",
        include_str!("../fixtures/peiffer_violation.json"),
    ),
];

pub fn fixture(name: &str) -> Option<&'static str> {
    FIXTURES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| *text)
}
