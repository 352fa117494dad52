//! Mixed-data record distances.
//!
//! Each attribute is compared either by its probabilistic distance, the
//! probability mass a fitted distribution puts between the two values
//! (`|F(x1) − F(x2)|`), or by the classic Gower terms (range-normalized
//! difference, exact match). Per-attribute distances can be raised to a power
//! and are combined by a weighted mean with pairwise deletion of missing values.
//!
//! On top of that sit a parallel condensed pairwise matrix and a
//! similarity-weighted nearest-neighbour predictor.

pub mod cli;
pub mod dist_models;
pub mod error;
pub mod format;
pub mod matrix;
pub mod metric;
pub mod predictor;
pub mod schema_io;

pub use error::{Error, Result};
pub use matrix::{condensed_index, pairwise_matrix, CondensedMatrix, Parallelism};
pub use metric::{record_distance, record_similarity, AttributeModel, FittedMetric};
pub use predictor::{loo_accuracy, train, PredictionResult, TrainedPredictor};
pub use schema_io::{parse_csv, parse_schema, AttributeSpec, Dataset, Kind, Mode, Schema, Value};
