//! Per-attribute distances, power transforms and the weighted record-level aggregate.

mod distance;
mod fitted;
mod prepared;

pub use distance::{
    attribute_distance, gower_numeric, match_distance, power_transform, prob_distance_cdf,
    prob_distance_gaussian, prob_distance_ordinal, record_distance, record_similarity,
};
pub use fitted::{AttributeModel, FittedMetric};
pub use prepared::PreparedData;
