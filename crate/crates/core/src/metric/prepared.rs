use std::collections::HashMap;

use super::distance::{aggregate, power_transform};
use super::fitted::{AttributeModel, FittedMetric};
use crate::dist_models::{EmpiricalCdfModel, GaussianModel, RangeModel};
use crate::error::{Error, Result};
use crate::schema_io::{check_value, AttributeSpec, Dataset, Record, Value};

/// How two cached coordinates combine into a raw distance.
#[derive(Debug, Clone)]
enum Kernel {
    /// Coordinates are `erf(z/√2)`.
    Gaussian,
    /// Coordinates are `#samples <= x`.
    Empirical(EmpiricalCdfModel),
    Range(RangeModel),
    /// Coordinates are cumulative masses `F(level)`.
    Ordinal,
    /// Coordinates are identities (raw values or interned tokens); 0 on equality.
    Equality,
}

#[derive(Debug, Clone)]
struct PreparedAttr {
    attr: usize,
    weight: f64,
    exponent: f64,
    kernel: Kernel,
    model: AttributeModel,
    /// Token ids for categorical columns.
    dictionary: Option<HashMap<String, u32>>,
    /// One coordinate per row; NaN marks a missing value.
    coords: Vec<f64>,
}

const MISSING: f64 = f64::NAN;

impl PreparedAttr {
    fn project(&self, spec: &AttributeSpec, v: &Value) -> Result<f64> {
        let mismatch = || Error::TypeMismatch {
            name: spec.name.clone(),
            kind: spec.kind.as_str(),
        };
        if v.is_missing() {
            return Ok(MISSING);
        }
        Ok(match (&self.model, &self.kernel) {
            (AttributeModel::Gaussian(m), Kernel::Gaussian) => {
                m.erf_coordinate(v.as_number().ok_or_else(mismatch)?)
            }
            (AttributeModel::Gaussian(_), Kernel::Equality) => {
                v.as_number().ok_or_else(mismatch)?
            }
            (_, Kernel::Empirical(m)) => m.count_le(v.as_number().ok_or_else(mismatch)?) as f64,
            (_, Kernel::Range(_)) => v.as_number().ok_or_else(mismatch)?,
            (AttributeModel::Ordinal(m), Kernel::Ordinal) => {
                m.cdf()[m.level_index(v.as_category().ok_or_else(mismatch)?)?]
            }
            (_, Kernel::Equality) => {
                let token = v.as_category().ok_or_else(mismatch)?;
                let dict = self
                    .dictionary
                    .as_ref()
                    .expect("categorical column has a dictionary");
                // tokens unseen in the prepared rows get an id no row carries
                dict.get(token).copied().unwrap_or(u32::MAX) as f64
            }
            _ => unreachable!("kernel built from model"),
        })
    }

    #[inline]
    fn combine(&self, a: f64, b: f64) -> Option<f64> {
        if a.is_nan() || b.is_nan() {
            return None;
        }
        let d = match &self.kernel {
            Kernel::Gaussian => GaussianModel::coordinate_gap(a, b),
            Kernel::Empirical(m) => m.count_gap(a as usize, b as usize),
            Kernel::Range(m) => m.distance(a, b),
            Kernel::Ordinal => (a - b).abs(),
            Kernel::Equality => {
                if a == b {
                    0.0
                } else {
                    1.0
                }
            }
        };
        Some(power_transform(d, self.exponent))
    }
}

/// Rows of a dataset projected once into per-attribute coordinates, so that
/// each pairwise distance is a handful of subtractions.
///
/// Results are bit-identical to [`record_distance`](super::record_distance):
/// both paths share the same combining arithmetic and summation order.
#[derive(Debug, Clone)]
pub struct PreparedData {
    n: usize,
    attrs: Vec<PreparedAttr>,
}

impl PreparedData {
    pub fn new(fm: &FittedMetric, data: &Dataset) -> Result<Self> {
        let schema = fm.schema();
        if data.schema().attributes().len() != schema.len()
            || data
                .schema()
                .attributes()
                .iter()
                .zip(schema.attributes())
                .any(|(a, b)| a.name != b.name || a.kind != b.kind || a.levels != b.levels)
        {
            return Err(Error::InvalidSchema(
                "dataset does not conform to the model schema".into(),
            ));
        }
        let n = data.n_rows();
        let mut attrs = Vec::with_capacity(fm.models().len());
        for (i, spec, model) in fm.features() {
            let kernel = match model {
                AttributeModel::Gaussian(m) if m.degenerate => Kernel::Equality,
                AttributeModel::Gaussian(_) => Kernel::Gaussian,
                AttributeModel::Empirical(m) => Kernel::Empirical(m.clone()),
                AttributeModel::Range(m) => Kernel::Range(*m),
                AttributeModel::Ordinal(_) => Kernel::Ordinal,
                AttributeModel::Categorical => Kernel::Equality,
            };
            let dictionary = matches!(model, AttributeModel::Categorical).then(|| {
                let mut dict = HashMap::new();
                for v in data.column(i) {
                    if let Value::Category(token) = v {
                        let next = dict.len() as u32;
                        dict.entry(token.clone()).or_insert(next);
                    }
                }
                dict
            });
            let mut attr = PreparedAttr {
                attr: i,
                weight: spec.weight,
                exponent: spec.exponent,
                kernel,
                model: model.clone(),
                dictionary,
                coords: Vec::new(),
            };
            attr.coords = data
                .column(i)
                .iter()
                .map(|v| attr.project(spec, v))
                .collect::<Result<_>>()?;
            attrs.push(attr);
        }
        Ok(PreparedData { n, attrs })
    }

    pub fn n_rows(&self) -> usize {
        self.n
    }

    /// Distance between prepared rows `i` and `j`.
    #[inline]
    pub fn distance(&self, i: usize, j: usize) -> Result<f64> {
        aggregate(
            self.attrs
                .iter()
                .map(|a| (a.weight, a.combine(a.coords[i], a.coords[j]))),
        )
    }

    /// Projects an outside record (full schema width) into coordinates.
    pub fn project<R: Record + ?Sized>(&self, fm: &FittedMetric, record: &R) -> Result<Vec<f64>> {
        let schema = fm.schema();
        if record.width() != schema.len() {
            return Err(Error::RecordWidth {
                found: record.width(),
                expected: schema.len(),
            });
        }
        self.attrs
            .iter()
            .map(|a| {
                let spec = &schema.attributes()[a.attr];
                let v = record.value(a.attr);
                check_value(spec, v, 1)?;
                a.project(spec, v)
            })
            .collect()
    }

    /// Distance between a projected record and prepared row `row`.
    #[inline]
    pub fn distance_to(&self, query: &[f64], row: usize) -> Result<f64> {
        aggregate(
            self.attrs
                .iter()
                .zip(query)
                .map(|(a, &q)| (a.weight, a.combine(q, a.coords[row]))),
        )
    }
}
