use serde::{Deserialize, Serialize};

use super::Schema;
use crate::error::{Error, Result};
use crate::metric::{AttributeModel, FittedMetric};

/// Version tag written into every model document.
pub const MODEL_VERSION: &str = "mixmetric-model/1";

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelDocument {
    version: String,
    schema: Schema,
    models: Vec<ModelEntry>,
}

#[derive(Serialize, Deserialize)]
struct ModelEntry {
    attribute: String,
    #[serde(flatten)]
    model: AttributeModel,
}

/// Renders a fitted metric as a JSON document. Floats are written in shortest
/// round-trip form, so loading reproduces every parameter bit for bit.
pub fn save_model(fm: &FittedMetric) -> String {
    let doc = ModelDocument {
        version: MODEL_VERSION.to_string(),
        schema: fm.schema().clone(),
        models: fm
            .features()
            .map(|(_, spec, model)| ModelEntry {
                attribute: spec.name.clone(),
                model: model.clone(),
            })
            .collect(),
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("model document serializes");
    text.push('\n');
    text
}

pub fn load_model(text: &str) -> Result<FittedMetric> {
    let raw: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::CorruptModel(e.to_string()))?;
    match raw.get("version").and_then(|v| v.as_str()) {
        Some(MODEL_VERSION) => {}
        Some(other) => {
            return Err(Error::VersionMismatch {
                found: other.to_string(),
                expected: MODEL_VERSION.to_string(),
            })
        }
        None => return Err(Error::CorruptModel("missing version tag".into())),
    }
    let doc: ModelDocument =
        serde_json::from_value(raw).map_err(|e| Error::CorruptModel(e.to_string()))?;
    let features: Vec<&str> = doc
        .schema
        .feature_indices()
        .map(|i| doc.schema.attributes()[i].name.as_str())
        .collect();
    if features.len() != doc.models.len()
        || features
            .iter()
            .zip(&doc.models)
            .any(|(name, e)| *name != e.attribute)
    {
        return Err(Error::CorruptModel(
            "model entries do not line up with schema attributes".into(),
        ));
    }
    let models = doc.models.into_iter().map(|e| e.model).collect();
    FittedMetric::from_parts(doc.schema, models)
}
