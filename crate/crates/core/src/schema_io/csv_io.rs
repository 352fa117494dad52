use std::collections::HashMap;

use super::data::{parse_cell, Dataset, Value};
use super::schema::Schema;
use crate::error::{Error, Result};

/// Parses a headed CSV document against `schema`.
///
/// Columns may appear in any order; the result is in schema order. Data rows
/// are numbered from 1 in diagnostics.
pub fn parse_csv(text: &str, schema: &Schema) -> Result<Dataset> {
    parse_table(text, schema, false)
}

/// Like [`parse_csv`], but the target column may be left out of the header,
/// in which case every target cell is missing.
pub fn parse_query_csv(text: &str, schema: &Schema) -> Result<Dataset> {
    parse_table(text, schema, true)
}

fn parse_table(text: &str, schema: &Schema, target_optional: bool) -> Result<Dataset> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(text.as_bytes());

    let header = reader
        .headers()
        .map_err(|e| Error::Csv(e.to_string()))?
        .clone();
    let mut position = HashMap::new();
    for (i, name) in header.iter().enumerate() {
        if position.insert(name.to_string(), i).is_some() {
            return Err(Error::HeaderMismatch(format!("duplicate column `{name}`")));
        }
    }
    let mut source = Vec::with_capacity(schema.len());
    let mut present = 0;
    for attr in schema.attributes() {
        match position.get(&attr.name) {
            Some(&i) => {
                source.push(Some(i));
                present += 1;
            }
            None if target_optional && schema.target() == Some(attr.name.as_str()) => {
                source.push(None)
            }
            None => {
                return Err(Error::HeaderMismatch(format!(
                    "missing column `{}`",
                    attr.name
                )))
            }
        }
    }
    if header.len() != present {
        let extra: Vec<_> = header
            .iter()
            .filter(|h| schema.index_of(h).is_none())
            .collect();
        return Err(Error::HeaderMismatch(format!(
            "unexpected columns {extra:?}"
        )));
    }

    let mut columns = vec![Vec::new(); schema.len()];
    for (i, record) in reader.records().enumerate() {
        let row = i + 1;
        let record = record.map_err(|e| Error::Csv(e.to_string()))?;
        if record.len() != header.len() {
            return Err(Error::RaggedRow {
                row,
                expected: header.len(),
                found: record.len(),
            });
        }
        for ((attr, src), column) in schema.attributes().iter().zip(&source).zip(&mut columns) {
            column.push(match src {
                Some(i) => parse_cell(attr, &record[*i], row)?,
                None => Value::Missing,
            });
        }
    }
    Dataset::new(schema.clone(), columns)
}

/// Parses a single header-less CSV line in schema order.
///
/// The line holds either every schema attribute or every attribute except the
/// target; in the latter case the target slot is filled with `Missing`.
pub fn parse_record(line: &str, schema: &Schema) -> Result<Vec<Value>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(line.as_bytes());
    let record = match reader.records().next() {
        Some(r) => r.map_err(|e| Error::Csv(e.to_string()))?,
        None => return Err(Error::Csv("empty record".into())),
    };
    let target = schema.target_index();
    let features = schema.feature_indices().count();
    let full = record.len() == schema.len();
    if !full && record.len() != features {
        return Err(Error::RaggedRow {
            row: 1,
            expected: schema.len(),
            found: record.len(),
        });
    }
    let mut cells = record.iter();
    let mut out = Vec::with_capacity(schema.len());
    for (i, attr) in schema.attributes().iter().enumerate() {
        if !full && Some(i) == target {
            out.push(Value::Missing);
            continue;
        }
        let cell = cells.next().expect("width checked above");
        out.push(parse_cell(attr, cell, 1)?);
    }
    Ok(out)
}

/// Renders a dataset as headed CSV, schema order, missing as empty cells.
pub fn render_csv(data: &Dataset) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    let names: Vec<&str> = data
        .schema()
        .attributes()
        .iter()
        .map(|a| a.name.as_str())
        .collect();
    writer.write_record(&names).expect("in-memory write");
    for row in data.rows() {
        let cells: Vec<String> = row.to_values().iter().map(ToString::to_string).collect();
        writer.write_record(&cells).expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 input")
}
