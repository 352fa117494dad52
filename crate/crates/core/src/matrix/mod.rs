//! Condensed pairwise distance matrices.

mod export;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::metric::{FittedMetric, PreparedData};
use crate::schema_io::Dataset;

pub use export::{read_matrix, write_binary, write_text, MatrixFormat, BINARY_MAGIC};

/// Strict upper triangle of a symmetric `n × n` distance matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CondensedMatrix {
    n: usize,
    values: Vec<f64>,
}

impl CondensedMatrix {
    pub fn from_values(n: usize, values: Vec<f64>) -> Result<Self> {
        if values.len() != condensed_len(n) {
            return Err(Error::MatrixFormat(format!(
                "expected {} values for n = {n}, found {}",
                condensed_len(n),
                values.len()
            )));
        }
        if let Some(bad) = values.iter().find(|v| !(0.0..=1.0).contains(*v)) {
            return Err(Error::MatrixFormat(format!("entry {bad} outside [0, 1]")));
        }
        Ok(CondensedMatrix { n, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Entry for an unordered pair; the diagonal is 0.
    pub fn get(&self, i: usize, j: usize) -> Result<f64> {
        if i == j && i < self.n {
            return Ok(0.0);
        }
        let (lo, hi) = if i < j { (i, j) } else { (j, i) };
        Ok(self.values[condensed_index(self.n, lo, hi)?])
    }
}

pub fn condensed_len(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Flat position of pair `(i, j)`, `i < j < n`: `i·n − i(i+1)/2 + (j − i − 1)`.
pub fn condensed_index(n: usize, i: usize, j: usize) -> Result<usize> {
    if i >= j || j >= n {
        return Err(Error::IndexOutOfRange { n, i, j });
    }
    Ok(i * n - i * (i + 1) / 2 + (j - i - 1))
}

/// How many worker threads the matrix computation may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Parallelism {
    /// Rayon's global pool (one thread per core).
    #[default]
    Auto,
    Threads(usize),
}

impl Parallelism {
    pub(crate) fn install<T: Send>(self, f: impl FnOnce() -> T + Send) -> Result<T> {
        match self {
            Parallelism::Auto => Ok(f()),
            Parallelism::Threads(t) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(t.max(1))
                    .build()
                    .map_err(|e| Error::Io(format!("thread pool: {e}")))?;
                Ok(pool.install(f))
            }
        }
    }
}

/// Fills one output row: distances from `i` to every `j > i`.
fn fill_row(prepared: &PreparedData, i: usize, out: &mut [f64]) -> Result<()> {
    for (offset, slot) in out.iter_mut().enumerate() {
        let j = i + 1 + offset;
        *slot = prepared.distance(i, j).map_err(|e| Error::Pair {
            i,
            j,
            source: Box::new(e),
        })?;
    }
    Ok(())
}

fn check_n(data: &Dataset) -> Result<usize> {
    let n = data.n_rows();
    if n < 2 {
        return Err(Error::TooFewRecords(n));
    }
    Ok(n)
}

/// Pairwise record distances, parallel over rows of the upper triangle.
///
/// Every entry is computed independently with a fixed summation order, so the
/// result does not depend on the thread count. On failure the error for the
/// first offending pair in condensed order is returned.
pub fn pairwise_matrix(
    fm: &FittedMetric,
    data: &Dataset,
    parallelism: Parallelism,
) -> Result<CondensedMatrix> {
    let n = check_n(data)?;
    let prepared = PreparedData::new(fm, data)?;
    let mut values = vec![0.0; condensed_len(n)];

    let mut rows: Vec<(usize, &mut [f64])> = Vec::with_capacity(n - 1);
    let mut rest = values.as_mut_slice();
    for i in 0..n - 1 {
        let (head, tail) = rest.split_at_mut(n - 1 - i);
        rows.push((i, head));
        rest = tail;
    }

    let outcome: Vec<Result<()>> = parallelism.install(|| {
        rows.into_par_iter()
            .map(|(i, out)| fill_row(&prepared, i, out))
            .collect()
    })?;
    outcome.into_iter().collect::<Result<()>>()?;
    Ok(CondensedMatrix { n, values })
}

/// Single-threaded reference loop over the same kernel.
pub fn pairwise_matrix_serial(fm: &FittedMetric, data: &Dataset) -> Result<CondensedMatrix> {
    let n = check_n(data)?;
    let prepared = PreparedData::new(fm, data)?;
    let mut values = Vec::with_capacity(condensed_len(n));
    for i in 0..n {
        for j in i + 1..n {
            values.push(prepared.distance(i, j).map_err(|e| Error::Pair {
                i,
                j,
                source: Box::new(e),
            })?);
        }
    }
    Ok(CondensedMatrix { n, values })
}
