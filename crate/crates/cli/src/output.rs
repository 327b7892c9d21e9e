use clap::ValueEnum;
use serde::Serialize;
use serde_json::{Map, Number, Value};

use crate::fail::{CliError, CliResult};

/// Integers of magnitude at least `2^53` are written as decimal strings.
pub const SAFE_LIMIT: u64 = 1 << 53;

const BIG_SUFFIX: &str = "#big";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

/// A report in both output forms.
#[derive(Debug, Clone)]
pub struct Output {
    pub json: Value,
    pub table: Table,
}

impl Output {
    pub fn new(report: &impl Serialize, table: Table) -> CliResult<Self> {
        let json = serde_json::to_value(report).map_err(|e| CliError::Input(format!("serializing report: {e}")))?;
        Ok(Self { json, table })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&encode_big(self.json.clone())).expect("JSON value");
                s.push('\n');
                s
            }
            Format::Tsv => self.table.to_tsv(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self { header: header.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_tsv(&self) -> String {
        let mut out = self.header.join("\t");
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.join("\t"));
            out.push('\n');
        }
        out
    }
}

/// Comma-joined coordinates.
pub fn joined(xs: &[i64]) -> String {
    xs.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

fn is_big(n: &Number) -> bool {
    match (n.as_u64(), n.as_i64()) {
        (Some(u), _) => u >= SAFE_LIMIT,
        (None, Some(i)) => i.unsigned_abs() >= SAFE_LIMIT,
        _ => false,
    }
}

/// Replaces large integers outside nested objects by strings; true if any changed.
fn stringify(v: &mut Value) -> bool {
    match v {
        Value::Number(n) if is_big(n) => {
            *v = Value::String(n.to_string());
            true
        }
        Value::Array(items) => items.iter_mut().fold(false, |acc, x| stringify(x) | acc),
        Value::Object(_) => {
            let inner = std::mem::take(v);
            *v = encode_big(inner);
            false
        }
        _ => false,
    }
}

/// Writes every integer of magnitude `>= 2^53` as a decimal string and adds
/// a sibling `"<key>#big": true` to the object holding it.
pub fn encode_big(v: Value) -> Value {
    match v {
        Value::Object(map) => {
            let mut out = Map::new();
            for (k, mut x) in map {
                let flagged = stringify(&mut x);
                out.insert(k.clone(), x);
                if flagged {
                    out.insert(format!("{k}{BIG_SUFFIX}"), Value::Bool(true));
                }
            }
            Value::Object(out)
        }
        mut other => {
            stringify(&mut other);
            other
        }
    }
}

fn numify(v: &mut Value) -> Result<(), String> {
    match v {
        Value::String(s) => {
            let n = if let Ok(u) = s.parse::<u64>() {
                Number::from(u)
            } else {
                Number::from(s.parse::<i64>().map_err(|_| format!("{s:?} is not an integer"))?)
            };
            *v = Value::Number(n);
            Ok(())
        }
        Value::Array(items) => items.iter_mut().try_for_each(numify),
        _ => Ok(()),
    }
}

/// Inverse of [`encode_big`].
pub fn decode_big(v: Value) -> Result<Value, String> {
    match v {
        Value::Object(map) => {
            let flagged: Vec<String> = map
                .iter()
                .filter_map(|(k, x)| {
                    let base = k.strip_suffix(BIG_SUFFIX)?;
                    (x == &Value::Bool(true) && map.contains_key(base)).then(|| base.to_string())
                })
                .collect();
            let mut out = Map::new();
            for (k, x) in map {
                if k.strip_suffix(BIG_SUFFIX).is_some_and(|b| flagged.iter().any(|f| f == b)) {
                    continue;
                }
                let mut x = decode_nested(x)?;
                if flagged.contains(&k) {
                    numify(&mut x)?;
                }
                out.insert(k, x);
            }
            Ok(Value::Object(out))
        }
        other => decode_nested(other),
    }
}

fn decode_nested(v: Value) -> Result<Value, String> {
    match v {
        Value::Object(_) => decode_big(v),
        Value::Array(items) => Ok(Value::Array(items.into_iter().map(decode_nested).collect::<Result<_, _>>()?)),
        other => Ok(other),
    }
}
