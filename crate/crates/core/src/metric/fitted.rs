use serde::{Deserialize, Serialize};

use crate::dist_models::{
    fit_empirical, fit_gaussian, fit_ordinal, fit_range, EmpiricalCdfModel, GaussianModel,
    OrdinalCdfModel, RangeModel,
};
use crate::error::{Error, Result};
use crate::schema_io::{AttributeSpec, Dataset, Mode, Schema, Value};

/// Fitted state behind one attribute's distance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum AttributeModel {
    Gaussian(GaussianModel),
    Empirical(EmpiricalCdfModel),
    Ordinal(OrdinalCdfModel),
    Range(RangeModel),
    Categorical,
}

impl AttributeModel {
    pub fn matches(&self, mode: Mode) -> bool {
        matches!(
            (self, mode),
            (AttributeModel::Gaussian(_), Mode::ProbGaussian)
                | (AttributeModel::Empirical(_), Mode::ProbEmpirical)
                | (AttributeModel::Ordinal(_), Mode::ProbOrdinal)
                | (AttributeModel::Range(_), Mode::Gower)
                | (AttributeModel::Categorical, Mode::ExactMatch)
        )
    }

    /// Fits the model the attribute's mode calls for, from its non-missing values.
    pub fn fit(spec: &AttributeSpec, column: &[Value]) -> Result<Self> {
        let empty = || Error::EmptyAttribute(spec.name.clone());
        let numbers = || -> Vec<f64> { column.iter().filter_map(Value::as_number).collect() };
        let model = match spec.mode {
            Mode::ProbGaussian => {
                AttributeModel::Gaussian(fit_gaussian(&numbers()).map_err(|_| empty())?)
            }
            Mode::ProbEmpirical => {
                AttributeModel::Empirical(fit_empirical(&numbers()).map_err(|_| empty())?)
            }
            Mode::Gower => AttributeModel::Range(fit_range(&numbers()).map_err(|_| empty())?),
            Mode::ProbOrdinal => {
                let tokens = column.iter().filter_map(Value::as_category);
                AttributeModel::Ordinal(fit_ordinal(tokens, &spec.levels).map_err(|e| match e {
                    Error::NoSamples => empty(),
                    other => other,
                })?)
            }
            Mode::ExactMatch => {
                if column.iter().all(Value::is_missing) {
                    return Err(empty());
                }
                AttributeModel::Categorical
            }
        };
        Ok(model)
    }

    pub(crate) fn check(&self, spec: &AttributeSpec) -> Result<()> {
        if !self.matches(spec.mode) {
            return Err(Error::ModelMismatch {
                name: spec.name.clone(),
                mode: spec.mode.as_str(),
            });
        }
        match self {
            AttributeModel::Gaussian(m) => m.check(),
            AttributeModel::Empirical(m) => m.check(),
            AttributeModel::Ordinal(m) => {
                m.check()?;
                if m.levels() != spec.levels.as_slice() {
                    return Err(Error::CorruptModel(format!(
                        "attribute `{}`: model levels differ from schema levels",
                        spec.name
                    )));
                }
                Ok(())
            }
            AttributeModel::Range(m) => m.check(),
            AttributeModel::Categorical => Ok(()),
        }
    }
}

/// A schema together with one fitted model per non-target attribute.
#[derive(Debug, Clone, PartialEq)]
pub struct FittedMetric {
    schema: Schema,
    /// Schema index of each feature, in schema order.
    features: Vec<usize>,
    models: Vec<AttributeModel>,
}

impl FittedMetric {
    /// Fits every feature attribute on the dataset's non-missing values.
    pub fn fit(data: &Dataset) -> Result<Self> {
        let schema = data.schema().clone();
        let features: Vec<usize> = schema.feature_indices().collect();
        let models = features
            .iter()
            .map(|&i| AttributeModel::fit(&schema.attributes()[i], data.column(i)))
            .collect::<Result<Vec<_>>>()?;
        Ok(FittedMetric {
            schema,
            features,
            models,
        })
    }

    /// Assembles a metric from parts, checking model/mode alignment.
    pub fn from_parts(schema: Schema, models: Vec<AttributeModel>) -> Result<Self> {
        schema.validate()?;
        let features: Vec<usize> = schema.feature_indices().collect();
        if models.len() != features.len() {
            return Err(Error::CorruptModel(format!(
                "{} models for {} feature attributes",
                models.len(),
                features.len()
            )));
        }
        for (&i, model) in features.iter().zip(&models) {
            model.check(&schema.attributes()[i])?;
        }
        Ok(FittedMetric {
            schema,
            features,
            models,
        })
    }

    pub fn schema(&self) -> &Schema {
        &self.schema
    }

    pub fn models(&self) -> &[AttributeModel] {
        &self.models
    }

    /// `(schema index, spec, model)` for each feature attribute, in schema order.
    pub fn features(&self) -> impl Iterator<Item = (usize, &AttributeSpec, &AttributeModel)> + '_ {
        self.features
            .iter()
            .zip(&self.models)
            .map(|(&i, m)| (i, &self.schema.attributes()[i], m))
    }

    pub fn model_for(&self, name: &str) -> Option<&AttributeModel> {
        let idx = self.schema.index_of(name)?;
        let pos = self.features.iter().position(|&i| i == idx)?;
        Some(&self.models[pos])
    }
}
