//! Scoring centrality metrics against simulated influence.

mod grid;
mod ranking;

use thiserror::Error;

use crate::epidemic::TimePoint;
use crate::scalar::RealScalar;

pub use grid::{aggregate_datasets, evaluate_metrics, AggregateCell, EvaluationCell, EvaluationGrid};
pub use ranking::{precision_at, relative_gain, relative_gain_at, top_k, top_k_size};

pub const DEFAULT_TOP_FRACTION: f64 = 0.005;
/// Precision below which no metric is considered informative in a cell.
pub const PRECISION_FLOOR: f64 = 0.1;

#[derive(Debug, Error, PartialEq)]
pub enum EvalError {
    #[error("vectors have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("need at least two observations, got {0}")]
    TooShort(usize),
    #[error("correlation undefined for a constant vector")]
    ConstantVector,
    #[error("top fraction {0} outside (0, 1]")]
    InvalidFraction(f64),
    #[error("influence table does not cover time {0}")]
    MissingTime(TimePoint),
    #[error("influence table must hold one curve per node in node order")]
    IncompleteTable,
    #[error("reference group has zero mean influence")]
    ZeroReference,
}

/// Pearson product-moment correlation.
pub fn pearson<T: RealScalar>(x: &[T], y: &[T]) -> Result<T, EvalError> {
    if x.len() != y.len() {
        return Err(EvalError::LengthMismatch(x.len(), y.len()));
    }
    if x.len() < 2 {
        return Err(EvalError::TooShort(x.len()));
    }
    if x.iter().all(|&v| v == x[0]) || y.iter().all(|&v| v == y[0]) {
        return Err(EvalError::ConstantVector);
    }
    let n = T::from_count(x.len() as u64);
    let mx = x.iter().fold(T::zero(), |a, &v| a + v) / n;
    let my = y.iter().fold(T::zero(), |a, &v| a + v) / n;
    let (mut sxy, mut sxx, mut syy) = (T::zero(), T::zero(), T::zero());
    for (&a, &b) in x.iter().zip(y) {
        let dx = a - mx;
        let dy = b - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    let r = sxy / (sxx.sqrt() * syy.sqrt());
    Ok(r.max(-T::one()).min(T::one()))
}
