//! Similarity-weighted nearest-neighbour voting over continuous match scores.
//!
//! Each training row scores `s = 1 − D(query, row)`; the `k` most similar rows
//! vote for their class with weight `s`.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::Parallelism;
use crate::metric::{FittedMetric, PreparedData};
use crate::schema_io::{Dataset, Record};

#[derive(Debug, Clone)]
pub struct TrainedPredictor {
    fm: FittedMetric,
    data: Dataset,
    /// Row index in the caller's dataset for each retained training row.
    row_ids: Vec<usize>,
    classes: Vec<String>,
    /// Class index of each retained training row.
    labels: Vec<usize>,
    prepared: PreparedData,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PredictionResult {
    pub label: String,
    /// One entry per known class, in lexicographic class order.
    pub class_scores: Vec<(String, f64)>,
    /// `(row index, similarity)` of the selected neighbours, most similar first.
    pub neighbors: Vec<(usize, f64)>,
}

impl PredictionResult {
    pub fn score(&self, class: &str) -> Option<f64> {
        self.class_scores
            .iter()
            .find(|(c, _)| c == class)
            .map(|(_, s)| *s)
    }
}

/// Rows with a non-missing target, and their labels.
fn labelled_rows(data: &Dataset) -> Result<(usize, Vec<usize>)> {
    let target = data.schema().target_index().ok_or(Error::NoTarget)?;
    let rows: Vec<usize> = data
        .column(target)
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_missing())
        .map(|(i, _)| i)
        .collect();
    if rows.is_empty() {
        return Err(Error::NoUsableRows);
    }
    Ok((target, rows))
}

/// Fits every attribute model on the labelled rows and keeps them as the
/// neighbour pool. Rows whose target is missing are dropped.
pub fn train(data: &Dataset) -> Result<TrainedPredictor> {
    let (_, rows) = labelled_rows(data)?;
    let fm = FittedMetric::fit(&data.select_rows(&rows)?)?;
    TrainedPredictor::with_metric(fm, data)
}

impl TrainedPredictor {
    /// Uses an already fitted metric with `data` as the neighbour pool.
    pub fn with_metric(fm: FittedMetric, data: &Dataset) -> Result<Self> {
        let (target, row_ids) = labelled_rows(data)?;
        let training = data.select_rows(&row_ids)?;
        let tokens: Vec<&str> = training
            .column(target)
            .iter()
            .map(|v| {
                v.as_category()
                    .expect("target is categorical and non-missing")
            })
            .collect();
        let classes: Vec<String> = tokens
            .iter()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .map(String::from)
            .collect();
        let labels = tokens
            .iter()
            .map(|t| {
                classes
                    .binary_search_by(|c| c.as_str().cmp(t))
                    .expect("class collected")
            })
            .collect();
        let prepared = PreparedData::new(&fm, &training)?;
        Ok(TrainedPredictor {
            fm,
            data: training,
            row_ids,
            classes,
            labels,
            prepared,
        })
    }

    pub fn metric(&self) -> &FittedMetric {
        &self.fm
    }

    pub fn classes(&self) -> &[String] {
        &self.classes
    }

    pub fn n_rows(&self) -> usize {
        self.data.n_rows()
    }

    pub fn training_data(&self) -> &Dataset {
        &self.data
    }

    /// Votes among the `k` most similar rows (similarity ties go to the lower
    /// row index, class ties to the lexicographically smaller label). Rows with
    /// no attribute comparable to the query are not candidates.
    pub fn predict<R: Record + ?Sized>(&self, query: &R, k: usize) -> Result<PredictionResult> {
        if k == 0 {
            return Err(Error::InvalidK);
        }
        let query = self.prepared.project(&self.fm, query)?;
        let mut candidates = Vec::with_capacity(self.n_rows());
        for t in 0..self.n_rows() {
            match self.prepared.distance_to(&query, t) {
                Ok(d) => candidates.push((t, 1.0 - d)),
                Err(Error::NoComparableAttributes | Error::ZeroWeight) => {}
                Err(e) => return Err(e),
            }
        }
        if candidates.is_empty() {
            return Err(Error::NoComparableAttributes);
        }
        candidates.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        candidates.truncate(k);

        let mut scores = vec![0.0; self.classes.len()];
        for &(t, s) in &candidates {
            scores[self.labels[t]] += s;
        }
        let mut best = 0;
        for (c, &s) in scores.iter().enumerate().skip(1) {
            if s > scores[best] {
                best = c;
            }
        }
        Ok(PredictionResult {
            label: self.classes[best].clone(),
            class_scores: self.classes.iter().cloned().zip(scores).collect(),
            neighbors: candidates
                .into_iter()
                .map(|(t, s)| (self.row_ids[t], s))
                .collect(),
        })
    }
}

/// Leave-one-out accuracy: each labelled row is predicted by a predictor
/// refitted on all other rows. Folds run in parallel; the result is the same
/// for any thread count.
pub fn loo_accuracy(data: &Dataset, k: usize, parallelism: Parallelism) -> Result<f64> {
    if k == 0 {
        return Err(Error::InvalidK);
    }
    let (target, rows) = labelled_rows(data)?;
    if rows.len() < 2 {
        return Err(Error::Row {
            row: rows[0],
            source: Box::new(Error::NoUsableRows),
        });
    }
    let fold = |held: usize| -> Result<bool> {
        let rest: Vec<usize> = rows.iter().copied().filter(|&r| r != held).collect();
        let wrap = |e| Error::Row {
            row: held,
            source: Box::new(e),
        };
        let predictor = train(&data.select_rows(&rest).map_err(wrap)?).map_err(wrap)?;
        let query = data.row(held);
        let result = predictor.predict(&query, k).map_err(wrap)?;
        Ok(Some(result.label.as_str()) == query.value(target).as_category())
    };
    let outcomes: Vec<Result<bool>> =
        parallelism.install(|| rows.par_iter().map(|&r| fold(r)).collect())?;
    let mut correct = 0usize;
    for outcome in outcomes {
        if outcome? {
            correct += 1;
        }
    }
    Ok(correct as f64 / rows.len() as f64)
}
