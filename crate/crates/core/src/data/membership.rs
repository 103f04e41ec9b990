use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{check_probability, is_blank};
use crate::{Error, Result};

/// Column names of the membership CSV schema, in canonical output order.
pub const MEMBERSHIP_COLUMNS: [&str; 12] = [
    "exemplar",
    "conceptA",
    "conceptB",
    "muA",
    "muB",
    "muAp",
    "muBp",
    "muAandB",
    "muAandBp",
    "muApandB",
    "muApandBp",
    "muAorB",
];

/// Membership weights of one exemplar with respect to two concepts, their
/// negations and their combinations.
///
/// Negation weights are stored as measured: nothing forces
/// `mu_ap == 1 - mu_a`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MembershipRecord {
    pub exemplar: String,
    #[serde(rename = "conceptA", default)]
    pub concept_a: String,
    #[serde(rename = "conceptB", default)]
    pub concept_b: String,
    #[serde(rename = "muA")]
    pub mu_a: f64,
    #[serde(rename = "muB")]
    pub mu_b: f64,
    #[serde(rename = "muAp", default)]
    pub mu_ap: Option<f64>,
    #[serde(rename = "muBp", default)]
    pub mu_bp: Option<f64>,
    #[serde(rename = "muAandB", default)]
    pub mu_a_and_b: Option<f64>,
    #[serde(rename = "muAandBp", default)]
    pub mu_a_and_bp: Option<f64>,
    #[serde(rename = "muApandB", default)]
    pub mu_ap_and_b: Option<f64>,
    #[serde(rename = "muApandBp", default)]
    pub mu_ap_and_bp: Option<f64>,
    #[serde(rename = "muAorB", default)]
    pub mu_a_or_b: Option<f64>,
}

impl MembershipRecord {
    fn bare(exemplar: &str, mu_a: f64, mu_b: f64) -> Self {
        MembershipRecord {
            exemplar: exemplar.to_string(),
            concept_a: String::new(),
            concept_b: String::new(),
            mu_a,
            mu_b,
            mu_ap: None,
            mu_bp: None,
            mu_a_and_b: None,
            mu_a_and_bp: None,
            mu_ap_and_b: None,
            mu_ap_and_bp: None,
            mu_a_or_b: None,
        }
    }

    pub fn conjunction(exemplar: &str, mu_a: f64, mu_b: f64, mu_a_and_b: f64) -> Result<Self> {
        let mut r = Self::bare(exemplar, mu_a, mu_b);
        r.mu_a_and_b = Some(mu_a_and_b);
        r.validate()?;
        Ok(r)
    }

    pub fn disjunction(exemplar: &str, mu_a: f64, mu_b: f64, mu_a_or_b: f64) -> Result<Self> {
        let mut r = Self::bare(exemplar, mu_a, mu_b);
        r.mu_a_or_b = Some(mu_a_or_b);
        r.validate()?;
        Ok(r)
    }

    /// Full negation record: `singles = [μ(A), μ(B), μ(A'), μ(B')]` and
    /// `conjunctions = [μ(A∧B), μ(A∧B'), μ(A'∧B), μ(A'∧B')]`.
    pub fn with_negations(exemplar: &str, singles: [f64; 4], conjunctions: [f64; 4]) -> Result<Self> {
        let mut r = Self::bare(exemplar, singles[0], singles[1]);
        r.mu_ap = Some(singles[2]);
        r.mu_bp = Some(singles[3]);
        r.mu_a_and_b = Some(conjunctions[0]);
        r.mu_a_and_bp = Some(conjunctions[1]);
        r.mu_ap_and_b = Some(conjunctions[2]);
        r.mu_ap_and_bp = Some(conjunctions[3]);
        r.validate()?;
        Ok(r)
    }

    pub fn with_concepts(mut self, a: &str, b: &str) -> Self {
        self.concept_a = a.to_string();
        self.concept_b = b.to_string();
        self
    }

    /// Optional weights in canonical column order, paired with their column name.
    fn optional_fields(&self) -> [(&'static str, Option<f64>); 7] {
        [
            ("muAp", self.mu_ap),
            ("muBp", self.mu_bp),
            ("muAandB", self.mu_a_and_b),
            ("muAandBp", self.mu_a_and_bp),
            ("muApandB", self.mu_ap_and_b),
            ("muApandBp", self.mu_ap_and_bp),
            ("muAorB", self.mu_a_or_b),
        ]
    }

    pub fn validate(&self) -> Result<()> {
        let who = self.exemplar.as_str();
        check_probability(who, "muA", self.mu_a)?;
        check_probability(who, "muB", self.mu_b)?;
        for (name, value) in self.optional_fields() {
            if let Some(v) = value {
                check_probability(who, name, v)?;
            }
        }
        let has_combination = self.mu_a_and_b.is_some()
            || self.mu_a_and_bp.is_some()
            || self.mu_ap_and_b.is_some()
            || self.mu_ap_and_bp.is_some()
            || self.mu_a_or_b.is_some();
        if !has_combination {
            return Err(Error::validation(
                who,
                "no conjunction or disjunction weight present",
            ));
        }
        Ok(())
    }

    /// True when all eight weights needed for the negation analysis are present.
    pub fn has_negation_quadruple(&self) -> bool {
        self.negation_quadruple().is_ok()
    }

    /// `([μ(A), μ(B), μ(A'), μ(B')], [μ(A∧B), μ(A∧B'), μ(A'∧B), μ(A'∧B')])`,
    /// or the first missing field.
    pub fn negation_quadruple(&self) -> Result<([f64; 4], [f64; 4])> {
        let need = |name: &str, v: Option<f64>| {
            v.ok_or_else(|| Error::IncompleteRecord {
                exemplar: self.exemplar.clone(),
                field: name.to_string(),
            })
        };
        Ok((
            [
                self.mu_a,
                self.mu_b,
                need("muAp", self.mu_ap)?,
                need("muBp", self.mu_bp)?,
            ],
            [
                need("muAandB", self.mu_a_and_b)?,
                need("muAandBp", self.mu_a_and_bp)?,
                need("muApandB", self.mu_ap_and_b)?,
                need("muApandBp", self.mu_ap_and_bp)?,
            ],
        ))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
}

impl TableFormat {
    /// Guess the format from a file extension; anything but `.json` is CSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => TableFormat::Json,
            _ => TableFormat::Csv,
        }
    }
}

impl std::str::FromStr for TableFormat {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(TableFormat::Csv),
            "json" => Ok(TableFormat::Json),
            other => Err(format!("unknown table format `{other}` (expected csv or json)")),
        }
    }
}

/// Read membership records from CSV or JSON. Row order is preserved; an
/// empty source yields an empty list.
pub fn parse_membership_table<R: Read>(mut source: R, format: TableFormat) -> Result<Vec<MembershipRecord>> {
    let mut bytes = Vec::new();
    source.read_to_end(&mut bytes)?;
    if is_blank(&bytes) {
        return Ok(Vec::new());
    }
    match format {
        TableFormat::Csv => parse_csv(&bytes),
        TableFormat::Json => parse_json(&bytes),
    }
}

fn parse_csv(bytes: &[u8]) -> Result<Vec<MembershipRecord>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(bytes);
    let headers = reader
        .headers()
        .map_err(|e| Error::Parse {
            row: 1,
            column: String::new(),
            message: e.to_string(),
        })?
        .clone();

    let mut columns: Vec<&'static str> = Vec::with_capacity(headers.len());
    for name in headers.iter() {
        let known = MEMBERSHIP_COLUMNS
            .iter()
            .find(|c| **c == name)
            .ok_or_else(|| Error::Parse {
                row: 1,
                column: name.to_string(),
                message: "unknown column".into(),
            })?;
        if columns.contains(known) {
            return Err(Error::Parse {
                row: 1,
                column: name.to_string(),
                message: "duplicate column".into(),
            });
        }
        columns.push(known);
    }
    for required in ["exemplar", "muA", "muB"] {
        if !columns.contains(&required) {
            return Err(Error::Parse {
                row: 1,
                column: required.to_string(),
                message: "required column missing from header".into(),
            });
        }
    }

    let mut out = Vec::new();
    for (i, row) in reader.records().enumerate() {
        let line = i + 2;
        let row = row.map_err(|e| Error::Parse {
            row: line,
            column: String::new(),
            message: e.to_string(),
        })?;
        let mut record = MembershipRecord::bare("", f64::NAN, f64::NAN);
        for (column, cell) in columns.iter().zip(row.iter()) {
            let number = || -> Result<Option<f64>> {
                if cell.is_empty() {
                    return Ok(None);
                }
                cell.parse::<f64>().map(Some).map_err(|_| Error::Parse {
                    row: line,
                    column: column.to_string(),
                    message: format!("`{cell}` is not a number"),
                })
            };
            match *column {
                "exemplar" => record.exemplar = cell.to_string(),
                "conceptA" => record.concept_a = cell.to_string(),
                "conceptB" => record.concept_b = cell.to_string(),
                "muA" => record.mu_a = required(number()?, line, column)?,
                "muB" => record.mu_b = required(number()?, line, column)?,
                "muAp" => record.mu_ap = number()?,
                "muBp" => record.mu_bp = number()?,
                "muAandB" => record.mu_a_and_b = number()?,
                "muAandBp" => record.mu_a_and_bp = number()?,
                "muApandB" => record.mu_ap_and_b = number()?,
                "muApandBp" => record.mu_ap_and_bp = number()?,
                "muAorB" => record.mu_a_or_b = number()?,
                _ => unreachable!("columns are checked against the schema"),
            }
        }
        if record.exemplar.is_empty() {
            return Err(Error::Parse {
                row: line,
                column: "exemplar".into(),
                message: "empty exemplar label".into(),
            });
        }
        record.validate()?;
        out.push(record);
    }
    Ok(out)
}

fn required(v: Option<f64>, row: usize, column: &str) -> Result<f64> {
    v.ok_or_else(|| Error::Parse {
        row,
        column: column.to_string(),
        message: "required value is empty".into(),
    })
}

fn parse_json(bytes: &[u8]) -> Result<Vec<MembershipRecord>> {
    let doc: Value = serde_json::from_slice(bytes)?;
    let rows = doc
        .as_array()
        .ok_or_else(|| Error::Schema("membership JSON must be an array of objects".into()))?;
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let index = i + 1;
        let obj = row.as_object().ok_or_else(|| Error::Parse {
            row: index,
            column: String::new(),
            message: "entry is not an object".into(),
        })?;
        for key in obj.keys() {
            if !MEMBERSHIP_COLUMNS.contains(&key.as_str()) {
                return Err(Error::Parse {
                    row: index,
                    column: key.clone(),
                    message: "unknown field".into(),
                });
            }
        }
        let text = |name: &str| -> Result<String> {
            match obj.get(name) {
                None | Some(Value::Null) => Ok(String::new()),
                Some(Value::String(s)) => Ok(s.clone()),
                Some(_) => Err(Error::Parse {
                    row: index,
                    column: name.to_string(),
                    message: "expected a string".into(),
                }),
            }
        };
        let number = |name: &str| -> Result<Option<f64>> {
            match obj.get(name) {
                None | Some(Value::Null) => Ok(None),
                Some(Value::Number(n)) => Ok(n.as_f64()),
                Some(_) => Err(Error::Parse {
                    row: index,
                    column: name.to_string(),
                    message: "expected a number or null".into(),
                }),
            }
        };
        let exemplar = text("exemplar")?;
        if exemplar.is_empty() {
            return Err(Error::Parse {
                row: index,
                column: "exemplar".into(),
                message: "missing exemplar label".into(),
            });
        }
        let record = MembershipRecord {
            exemplar,
            concept_a: text("conceptA")?,
            concept_b: text("conceptB")?,
            mu_a: required(number("muA")?, index, "muA")?,
            mu_b: required(number("muB")?, index, "muB")?,
            mu_ap: number("muAp")?,
            mu_bp: number("muBp")?,
            mu_a_and_b: number("muAandB")?,
            mu_a_and_bp: number("muAandBp")?,
            mu_ap_and_b: number("muApandB")?,
            mu_ap_and_bp: number("muApandBp")?,
            mu_a_or_b: number("muAorB")?,
        };
        record.validate()?;
        out.push(record);
    }
    Ok(out)
}

/// Canonical CSV: full header, empty cells for absent weights, shortest
/// round-trip float representation.
pub fn records_to_csv(records: &[MembershipRecord]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record(MEMBERSHIP_COLUMNS)
        .expect("writing to a Vec cannot fail");
    for r in records {
        let mut row = vec![
            r.exemplar.clone(),
            r.concept_a.clone(),
            r.concept_b.clone(),
            r.mu_a.to_string(),
            r.mu_b.to_string(),
        ];
        row.extend(
            r.optional_fields()
                .iter()
                .map(|(_, v)| v.map(|x| x.to_string()).unwrap_or_default()),
        );
        writer.write_record(&row).expect("writing to a Vec cannot fail");
    }
    String::from_utf8(writer.into_inner().expect("flush to Vec")).expect("csv output is UTF-8")
}

pub fn records_to_json(records: &[MembershipRecord]) -> String {
    serde_json::to_string_pretty(records).expect("records always serialize")
}
