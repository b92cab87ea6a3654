//! The JSON-lines record format shared by the command-line tools: one tuple
//! per line, every integer a decimal string (entries routinely exceed any
//! native numeric range and must round-trip exactly).

use crate::constructions::{FamilyInstance, FamilyParams};
use crate::quality::{MembershipReport, QualityResult, Tuple};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};
use std::io::{BufRead, Write};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RecordError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// One tuple record: entries, optional family/params metadata, optional
/// structural parts and generator mode.
#[derive(Debug, Clone)]
pub struct TupleRecord {
    pub entries: Vec<BigInt>,
    pub family: Option<String>,
    pub params: Option<Value>,
    pub structural_parts: Option<Vec<BigInt>>,
    pub mode: Option<String>,
}

impl TupleRecord {
    pub fn from_instance(instance: &FamilyInstance) -> Self {
        TupleRecord {
            entries: instance.tuple.entries().to_vec(),
            family: Some(instance.params.family_name().to_string()),
            params: Some(params_to_json(&instance.params)),
            structural_parts: Some(
                instance.structural_parts.iter().map(|p| p.value().clone()).collect(),
            ),
            mode: Some(instance.mode.as_str().to_string()),
        }
    }

    pub fn from_tuple(tuple: &Tuple) -> Self {
        TupleRecord {
            entries: tuple.entries().to_vec(),
            family: None,
            params: None,
            structural_parts: None,
            mode: None,
        }
    }

    pub fn tuple(&self) -> QualityResult<Tuple> {
        Tuple::new(self.entries.clone())
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert(
            "entries".into(),
            Value::Array(self.entries.iter().map(|e| Value::String(e.to_string())).collect()),
        );
        if let Some(f) = &self.family {
            obj.insert("family".into(), Value::String(f.clone()));
        }
        if let Some(p) = &self.params {
            obj.insert("params".into(), p.clone());
        }
        if let Some(parts) = &self.structural_parts {
            obj.insert(
                "structural_parts".into(),
                Value::Array(parts.iter().map(|e| Value::String(e.to_string())).collect()),
            );
        }
        if let Some(m) = &self.mode {
            obj.insert("mode".into(), Value::String(m.clone()));
        }
        Value::Object(obj)
    }

    pub fn to_json_line(&self) -> String {
        self.to_json().to_string()
    }

    pub fn parse(line: &str, line_no: usize) -> Result<Self, RecordError> {
        let err = |message: String| RecordError::Parse { line: line_no, message };
        let v: Value = serde_json::from_str(line).map_err(|e| err(e.to_string()))?;
        let obj = v.as_object().ok_or_else(|| err("record is not a JSON object".into()))?;
        let entries = obj
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| err("missing \"entries\" array".into()))?;
        let parse_int = |v: &Value, what: &str| -> Result<BigInt, RecordError> {
            let s = v.as_str().ok_or_else(|| {
                RecordError::Parse {
                    line: line_no,
                    message: format!("{what} must be a decimal string, got {v}"),
                }
            })?;
            s.parse().map_err(|_| RecordError::Parse {
                line: line_no,
                message: format!("{what} is not a decimal integer: {s:?}"),
            })
        };
        let entries = entries
            .iter()
            .map(|v| parse_int(v, "entry"))
            .collect::<Result<Vec<_>, _>>()?;
        let structural_parts = match obj.get("structural_parts").and_then(Value::as_array) {
            Some(parts) => Some(
                parts
                    .iter()
                    .map(|v| parse_int(v, "structural part"))
                    .collect::<Result<Vec<_>, _>>()?,
            ),
            None => None,
        };
        Ok(TupleRecord {
            entries,
            family: obj.get("family").and_then(Value::as_str).map(String::from),
            params: obj.get("params").cloned(),
            structural_parts,
            mode: obj.get("mode").and_then(Value::as_str).map(String::from),
        })
    }
}

/// Parse every nonempty line of a reader as a record, keeping 1-based line
/// numbers for diagnostics.
pub fn read_records(reader: impl BufRead) -> Result<Vec<(usize, TupleRecord)>, RecordError> {
    let mut out = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push((idx + 1, TupleRecord::parse(&line, idx + 1)?));
    }
    Ok(out)
}

/// Write records as JSON lines (LF endings).
pub fn write_records(mut w: impl Write, records: &[TupleRecord]) -> std::io::Result<()> {
    for r in records {
        writeln!(w, "{}", r.to_json_line())?;
    }
    Ok(())
}

pub fn params_to_json(params: &FamilyParams) -> Value {
    match params {
        FamilyParams::Konyagin { k } => json!({ "k": k }),
        FamilyParams::Odd { n, forbidden, pell_index, y_policy } => json!({
            "n": n,
            "forbidden": forbidden,
            "pell_index": pell_index,
            "y_policy": y_policy,
        }),
        FamilyParams::General {
            n,
            forbidden,
            s,
            t,
            y,
            exponent,
            exponent_multiple,
            order_mod_10y_minus_1,
            order_mod_10y_plus_1,
            congruences_held,
        } => json!({
            "n": n,
            "forbidden": forbidden,
            "s": s,
            "t": t,
            "y": y,
            "exponent": exponent,
            "exponent_multiple": exponent_multiple,
            "order_mod_10y_minus_1": order_mod_10y_minus_1,
            "order_mod_10y_plus_1": order_mod_10y_plus_1,
            "congruences_held": congruences_held,
        }),
        FamilyParams::NineFifths { ell, h } => json!({ "ell": ell, "h": h }),
        FamilyParams::AnQuadruple { h } => json!({ "h": h }),
        FamilyParams::Geometric { n, y } => json!({ "n": n, "y": y }),
    }
}

/// A machine-readable rendering of a membership report.
pub fn report_to_json(report: &MembershipReport) -> Value {
    let mut obj = Map::new();
    obj.insert("universe".into(), Value::String(report.universe.tag().into()));
    obj.insert("verdict".into(), Value::Bool(report.verdict));
    obj.insert(
        "sum_zero".into(),
        json!({ "ok": report.sum_zero.ok, "residual": report.sum_zero.residual.to_string() }),
    );
    if let Some(c) = &report.pairwise {
        let witness = c.witness.as_ref().map(|w| {
            json!({ "i": w.i, "j": w.j, "gcd": w.gcd.to_string() })
        });
        obj.insert("pairwise_coprime".into(), json!({ "ok": c.ok, "witness": witness }));
    }
    if let Some(c) = &report.setwise {
        obj.insert(
            "setwise_coprime".into(),
            json!({ "ok": c.ok, "gcd": c.gcd.to_string() }),
        );
    }
    if let Some(c) = &report.subsum {
        let witness = c.witness.as_ref().map(|w| {
            Value::Array(w.coefficients.iter().map(|&x| Value::from(x as i64)).collect())
        });
        obj.insert("subsum".into(), json!({ "ok": c.ok, "witness": witness }));
    }
    if let Some(c) = &report.forbidden {
        let witness = c
            .witness
            .as_ref()
            .map(|(i, f)| json!({ "index": i, "divisor": f.to_string() }));
        obj.insert("forbidden_factor".into(), json!({ "ok": c.ok, "witness": witness }));
    }
    Value::Object(obj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::konyagin_quintuple;

    #[test]
    fn round_trip_instance() {
        let inst = konyagin_quintuple(1).unwrap();
        let rec = TupleRecord::from_instance(&inst);
        let line = rec.to_json_line();
        let parsed = TupleRecord::parse(&line, 1).unwrap();
        assert_eq!(parsed.entries, rec.entries);
        assert_eq!(parsed.structural_parts, rec.structural_parts);
        assert_eq!(parsed.family.as_deref(), Some("konyagin"));
        assert_eq!(parsed.mode.as_deref(), Some("certified"));
    }

    #[test]
    fn entries_must_be_decimal_strings() {
        assert!(TupleRecord::parse(r#"{"entries": [1, 2, -3]}"#, 7).is_err());
        assert!(TupleRecord::parse(r#"{"entries": ["1", "2", "-3"]}"#, 7).is_ok());
        let e = TupleRecord::parse("not json", 3).unwrap_err();
        assert!(e.to_string().starts_with("line 3:"));
    }

    #[test]
    fn read_records_with_line_numbers() {
        let input = "{\"entries\": [\"1\", \"2\", \"-3\"]}\n\n{\"entries\": [\"8192\", \"-8181\", \"-11\"]}\n";
        let recs = read_records(input.as_bytes()).unwrap();
        assert_eq!(recs.len(), 2);
        assert_eq!(recs[0].0, 1);
        assert_eq!(recs[1].0, 3);
    }
}
