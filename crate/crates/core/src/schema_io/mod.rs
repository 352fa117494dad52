//! Schema declarations, CSV ingestion and the fitted-model document.

mod csv_io;
mod data;
mod model_doc;
mod schema;

pub use csv_io::{parse_csv, parse_query_csv, parse_record, render_csv};
pub use data::{Dataset, Record, RowRef, Value};
pub use model_doc::{load_model, save_model, MODEL_VERSION};
pub use schema::{parse_schema, AttributeSpec, Kind, Mode, Schema};

pub(crate) use data::check_value;
