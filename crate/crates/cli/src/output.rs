//! JSON and CSV rendering of command results.
//!
//! Objects keep insertion order and floats use the shortest round-trip form,
//! so identical runs produce identical bytes. Non-finite floats become `null`
//! in JSON and empty cells in CSV.

use capspectra::{MetaValue, VerificationReport};
use serde_json::{Map, Value};

pub const SCHEMA: i64 = 1;

/// Insertion-ordered JSON object builder.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Object(Map<String, Value>);

impl Object {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn field(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.0.insert(key.to_string(), value.into());
        self
    }

    pub fn render(self) -> String {
        let mut s = serde_json::to_string_pretty(&Value::Object(self.0)).expect("JSON values always serialize");
        s.push('\n');
        s
    }
}

impl From<Object> for Value {
    fn from(o: Object) -> Self {
        Value::Object(o.0)
    }
}

/// Shortest round-trip scientific form; empty for NaN and infinities.
pub fn float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:e}")
    } else {
        String::new()
    }
}

fn meta_value(v: &MetaValue) -> Value {
    match v {
        MetaValue::Num(x) => Value::from(*x),
        MetaValue::Int(i) => Value::from(*i),
        MetaValue::Text(s) => Value::from(s.as_str()),
        MetaValue::Flag(b) => Value::from(*b),
    }
}

pub fn report(r: &VerificationReport) -> Value {
    let metadata: Map<String, Value> = r.metadata.iter().map(|(k, v)| (k.clone(), meta_value(v))).collect();
    Object::new()
        .field("name", r.name.as_str())
        .field("lhs", r.lhs)
        .field("rhs", r.rhs)
        .field("margin", r.margin)
        .field("tolerance", r.tolerance)
        .field("pass", r.pass)
        .field("metadata", Value::Object(metadata))
        .into()
}

pub fn reports(rs: &[&VerificationReport]) -> Value {
    Value::Array(rs.iter().map(|r| report(r)).collect())
}

fn meta_text(v: &MetaValue) -> String {
    match v {
        MetaValue::Num(x) => float(*x),
        MetaValue::Int(i) => i.to_string(),
        MetaValue::Text(s) => s.clone(),
        MetaValue::Flag(b) => b.to_string(),
    }
}

fn table<R: AsRef<[String]>>(header: &[&str], rows: &[R]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("writing to memory");
    for row in rows {
        w.write_record(row.as_ref()).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flushing to memory")).expect("CSV of UTF-8 fields")
}

/// One row per report; metadata is folded into a `key=value;...` column.
pub fn reports_csv(rs: &[&VerificationReport]) -> String {
    let rows: Vec<Vec<String>> = rs
        .iter()
        .map(|r| {
            let meta = r
                .metadata
                .iter()
                .map(|(k, v)| format!("{k}={}", meta_text(v)))
                .collect::<Vec<_>>()
                .join(";");
            vec![
                r.name.clone(),
                float(r.lhs),
                float(r.rhs),
                float(r.margin),
                float(r.tolerance),
                r.pass.to_string(),
                meta,
            ]
        })
        .collect();
    table(&["name", "lhs", "rhs", "margin", "tolerance", "pass", "metadata"], &rows)
}

/// Two-column key/value table.
pub fn pairs_csv(rows: &[(&str, String)]) -> String {
    let rows: Vec<Vec<String>> = rows.iter().map(|(k, v)| vec![k.to_string(), v.clone()]).collect();
    table(&["key", "value"], &rows)
}
