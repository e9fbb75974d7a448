//! Canonical report emission: byte-stable JSON and CSV.
//!
//! Two runs with the same inputs must produce identical bytes, so floats are
//! printed through one fixed `%.17g`-style formatter and JSON object keys are
//! always sorted.

use serde_json::Value;

/// Formats a float like C's `%.17g`: 17 significant digits, trailing zeros
/// trimmed, scientific notation outside [1e-4, 1e17).
pub fn fmt_g17(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    // %.17g: precision 17 significant digits.
    let exp = x.abs().log10().floor() as i32;
    let formatted = if exp < -4 || exp >= 17 {
        let s = format!("{:.*e}", 16, x);
        // Rust prints "1.5e3" / "1.5e-3"; normalize to "e+03" / "e-03".
        let (mantissa, e) = s.split_once('e').expect("exponent present");
        let mantissa = trim_zeros(mantissa);
        let e: i32 = e.parse().expect("numeric exponent");
        format!("{}e{}{:02}", mantissa, if e < 0 { '-' } else { '+' }, e.abs())
    } else {
        let prec = (16 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", prec, x))
    };
    formatted
}

fn trim_zeros(s: &str) -> String {
    if !s.contains('.') {
        return s.to_string();
    }
    let t = s.trim_end_matches('0');
    t.trim_end_matches('.').to_string()
}

/// Serializes a JSON value with sorted keys and canonical number formatting.
pub fn to_canonical_json(value: &Value) -> Vec<u8> {
    let mut out = Vec::new();
    write_value(&mut out, value);
    out
}

/// Same as [`to_canonical_json`] plus a trailing newline, for file output.
pub fn to_canonical_json_line(value: &Value) -> Vec<u8> {
    let mut out = to_canonical_json(value);
    out.push(b'\n');
    out
}

fn write_value(out: &mut Vec<u8>, value: &Value) {
    match value {
        Value::Null => out.extend_from_slice(b"null"),
        Value::Bool(b) => out.extend_from_slice(if *b { b"true" } else { b"false" }),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                out.extend_from_slice(i.to_string().as_bytes());
            } else if let Some(u) = n.as_u64() {
                out.extend_from_slice(u.to_string().as_bytes());
            } else {
                let f = n.as_f64().unwrap_or(f64::NAN);
                out.extend_from_slice(fmt_g17(f).as_bytes());
            }
        }
        Value::String(s) => {
            out.extend_from_slice(serde_json::to_string(s).expect("string").as_bytes());
        }
        Value::Array(items) => {
            out.push(b'[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(b',');
                }
                write_value(out, item);
            }
            out.push(b']');
        }
        Value::Object(map) => {
            // serde_json's default map is a BTreeMap: iteration is key-sorted.
            out.push(b'{');
            for (i, (k, v)) in map.iter().enumerate() {
                if i > 0 {
                    out.push(b',');
                }
                out.extend_from_slice(serde_json::to_string(k).expect("key").as_bytes());
                out.push(b':');
                write_value(out, v);
            }
            out.push(b'}');
        }
    }
}

/// A plot-ready CSV table with canonical float formatting.
pub struct CsvTable {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new(header: &[&str]) -> Self {
        CsvTable {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, cells: Vec<CsvCell>) {
        assert_eq!(cells.len(), self.header.len(), "csv row arity mismatch");
        self.rows
            .push(cells.into_iter().map(|c| c.render()).collect());
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = String::new();
        out.push_str(&self.header.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out.into_bytes()
    }
}

pub enum CsvCell {
    Int(i64),
    Float(f64),
    Str(String),
}

impl CsvCell {
    fn render(self) -> String {
        match self {
            CsvCell::Int(i) => i.to_string(),
            CsvCell::Float(f) => fmt_g17(f),
            CsvCell::Str(s) => {
                if s.contains(',') || s.contains('"') || s.contains('\n') {
                    format!("\"{}\"", s.replace('"', "\"\""))
                } else {
                    s
                }
            }
        }
    }
}
