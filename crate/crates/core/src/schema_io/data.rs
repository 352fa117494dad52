use std::fmt;

use super::schema::{is_missing_marker, Kind, Schema};
use crate::error::{Error, Result};

/// One cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Number(f64),
    Category(String),
    Missing,
}

impl Value {
    pub fn is_missing(&self) -> bool {
        matches!(self, Value::Missing)
    }

    pub fn as_number(&self) -> Option<f64> {
        match self {
            Value::Number(x) => Some(*x),
            _ => None,
        }
    }

    pub fn as_category(&self) -> Option<&str> {
        match self {
            Value::Category(c) => Some(c),
            _ => None,
        }
    }

    pub fn category(token: impl Into<String>) -> Self {
        Value::Category(token.into())
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Number(x) => write!(f, "{x}"),
            Value::Category(c) => f.write_str(c),
            Value::Missing => Ok(()),
        }
    }
}

/// Read access to one record's values, indexed by schema position.
pub trait Record {
    fn value(&self, attr: usize) -> &Value;
    fn width(&self) -> usize;
}

impl Record for [Value] {
    fn value(&self, attr: usize) -> &Value {
        &self[attr]
    }
    fn width(&self) -> usize {
        self.len()
    }
}

impl Record for Vec<Value> {
    fn value(&self, attr: usize) -> &Value {
        &self[attr]
    }
    fn width(&self) -> usize {
        self.len()
    }
}

impl<R: Record + ?Sized> Record for &R {
    fn value(&self, attr: usize) -> &Value {
        (**self).value(attr)
    }
    fn width(&self) -> usize {
        (**self).width()
    }
}

/// Borrowed view of one dataset row.
#[derive(Debug, Clone, Copy)]
pub struct RowRef<'a> {
    data: &'a Dataset,
    row: usize,
}

impl RowRef<'_> {
    pub fn index(&self) -> usize {
        self.row
    }

    pub fn to_values(&self) -> Vec<Value> {
        self.data
            .columns
            .iter()
            .map(|c| c[self.row].clone())
            .collect()
    }
}

impl Record for RowRef<'_> {
    fn value(&self, attr: usize) -> &Value {
        &self.data.columns[attr][self.row]
    }
    fn width(&self) -> usize {
        self.data.columns.len()
    }
}

/// Column-major table conforming to a schema.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    schema: Schema,
    columns: Vec<Vec<Value>>,
}

impl Dataset {
    /// Builds a dataset, checking column count, lengths and cell kinds.
    pub fn new(schema: Schema, columns: Vec<Vec<Value>>) -> Result<Self> {
        if columns.len() != schema.len() {
            return Err(Error::InvalidSchema(format!(
                "dataset has {} columns, schema declares {}",
                columns.len(),
                schema.len()
            )));
        }
        let n = columns.first().map_or(0, Vec::len);
        if n == 0 {
            return Err(Error::EmptyDataset);
        }
        for (spec, column) in schema.attributes().iter().zip(&columns) {
            if column.len() != n {
                return Err(Error::InvalidSchema(format!(
                    "column `{}` has {} values, expected {n}",
                    spec.name,
                    column.len()
                )));
            }
            for (row, v) in column.iter().enumerate() {
                check_value(spec, v, row + 1)?;
            }
        }
        Ok(Dataset { schema, columns })
    }

    /// Builds a dataset from row-major records.
    pub fn from_rows(schema: Schema, rows: Vec<Vec<Value>>) -> Result<Self> {
        let width = schema.len();
        let mut columns = vec![Vec::with_capacity(rows.len()); width];
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != width {
                return Err(Error::RaggedRow {
                    row: i + 1,
                    expected: width,
                    found: row.len(),
                });
            }
            for (col, v) in columns.iter_mut().zip(row) {
                col.push(v);
            }
        }
        Dataset::new(schema, columns)
    }

    pub fn schema(&self) -> &Schema {
        &self.schema
    }

    pub fn n_rows(&self) -> usize {
        self.columns[0].len()
    }

    pub fn column(&self, attr: usize) -> &[Value] {
        &self.columns[attr]
    }

    pub fn columns(&self) -> &[Vec<Value>] {
        &self.columns
    }

    pub fn row(&self, row: usize) -> RowRef<'_> {
        assert!(row < self.n_rows(), "row {row} out of bounds");
        RowRef { data: self, row }
    }

    pub fn rows(&self) -> impl Iterator<Item = RowRef<'_>> + '_ {
        (0..self.n_rows()).map(move |row| RowRef { data: self, row })
    }

    /// New dataset containing the selected rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Result<Dataset> {
        let columns = self
            .columns
            .iter()
            .map(|c| rows.iter().map(|&r| c[r].clone()).collect())
            .collect();
        Dataset::new(self.schema.clone(), columns)
    }

    /// Same data under a schema that differs only in weights/exponents/modes.
    pub fn with_schema(&self, schema: Schema) -> Result<Dataset> {
        Dataset::new(schema, self.columns.clone())
    }
}

pub(crate) fn check_value(spec: &super::AttributeSpec, v: &Value, row: usize) -> Result<()> {
    match (spec.kind, v) {
        (_, Value::Missing) => Ok(()),
        (Kind::Numeric, Value::Number(x)) if x.is_finite() => Ok(()),
        (Kind::Categorical, Value::Category(_)) => Ok(()),
        (Kind::Ordinal, Value::Category(token)) => {
            if spec.level_index(token).is_some() {
                Ok(())
            } else {
                Err(Error::UnknownLevel {
                    row,
                    column: spec.name.clone(),
                    token: token.clone(),
                })
            }
        }
        _ => Err(Error::TypeMismatch {
            name: spec.name.clone(),
            kind: spec.kind.as_str(),
        }),
    }
}

/// Parses one cell according to the column kind. `row` is used for diagnostics.
pub(crate) fn parse_cell(spec: &super::AttributeSpec, cell: &str, row: usize) -> Result<Value> {
    if is_missing_marker(cell) {
        return Ok(Value::Missing);
    }
    match spec.kind {
        Kind::Numeric => match cell.parse::<f64>() {
            Ok(x) if x.is_finite() => Ok(Value::Number(x)),
            _ => Err(Error::BadNumber {
                row,
                column: spec.name.clone(),
                cell: cell.to_string(),
            }),
        },
        Kind::Categorical => Ok(Value::Category(cell.to_string())),
        Kind::Ordinal => {
            if spec.level_index(cell).is_some() {
                Ok(Value::Category(cell.to_string()))
            } else {
                Err(Error::UnknownLevel {
                    row,
                    column: spec.name.clone(),
                    token: cell.to_string(),
                })
            }
        }
    }
}
