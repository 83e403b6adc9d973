use std::collections::BTreeMap;

use super::{pearson, precision_at, EvalError};
use crate::centrality::{CentralityScores, Metric};
use crate::epidemic::{InfluenceTable, TimePoint};
use crate::scalar::RealScalar;

/// Agreement of one metric with simulated influence at one (lambda, t).
#[derive(Clone, Debug, PartialEq)]
pub struct EvaluationCell<T> {
    pub metric: Metric,
    pub lambda_ratio: f64,
    pub time: TimePoint,
    /// `None` when the correlation is undefined (constant scores or influence).
    pub r: Option<T>,
    pub precision: Option<T>,
    /// Divided by the best metric in the same (lambda, t); `None` when that
    /// best value is not positive.
    pub normalized_r: Option<T>,
    pub normalized_precision: Option<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EvaluationGrid<T> {
    pub dataset: String,
    pub cells: Vec<EvaluationCell<T>>,
}

impl<T: RealScalar> EvaluationGrid<T> {
    pub fn cell(&self, metric: Metric, lambda_ratio: f64, time: TimePoint) -> Option<&EvaluationCell<T>> {
        self.cells
            .iter()
            .find(|c| c.metric == metric && c.lambda_ratio == lambda_ratio && c.time == time)
    }

    /// True when some metric reaches precision above `floor` at (lambda, t).
    pub fn any_precision_above(&self, lambda_ratio: f64, time: TimePoint, floor: f64) -> bool {
        self.cells
            .iter()
            .filter(|c| c.lambda_ratio == lambda_ratio && c.time == time)
            .any(|c| c.precision.is_some_and(|p| p.to_real() > floor))
    }

    /// Appends another grid's cells, e.g. from a different lambda ratio.
    pub fn extend(&mut self, other: EvaluationGrid<T>) {
        self.cells.extend(other.cells);
    }
}

fn normalize_by_best<T: RealScalar>(values: &[Option<T>]) -> Vec<Option<T>> {
    let best = values.iter().flatten().copied().fold(None, |acc: Option<T>, v| match acc {
        Some(b) if b >= v => Some(b),
        _ => Some(v),
    });
    match best {
        Some(b) if b > T::zero() => values.iter().map(|v| v.map(|x| x / b)).collect(),
        _ => vec![None; values.len()],
    }
}

/// Scores every metric against the influence table at each requested time.
///
/// The table must hold one curve per node in node order.
pub fn evaluate_metrics<T: RealScalar>(
    dataset: &str,
    scores: &[CentralityScores<T>],
    table: &InfluenceTable<T>,
    lambda_ratio: f64,
    times: &[TimePoint],
    top_fraction: f64,
) -> Result<EvaluationGrid<T>, EvalError> {
    if table.curves.len() != table.nodes || table.curves.iter().enumerate().any(|(i, c)| c.seed != i) {
        return Err(EvalError::IncompleteTable);
    }
    for s in scores {
        if s.scores.len() != table.nodes {
            return Err(EvalError::LengthMismatch(s.scores.len(), table.nodes));
        }
    }
    let mut cells = Vec::with_capacity(times.len() * scores.len());
    for &time in times {
        let truth = table.values_at(time).ok_or(EvalError::MissingTime(time))?;
        let mut rs = Vec::with_capacity(scores.len());
        let mut ps = Vec::with_capacity(scores.len());
        for s in scores {
            rs.push(pearson(&s.scores, &truth).ok());
            ps.push(Some(precision_at(&s.scores, &truth, top_fraction)?));
        }
        let nr = normalize_by_best(&rs);
        let np = normalize_by_best(&ps);
        for (i, s) in scores.iter().enumerate() {
            cells.push(EvaluationCell {
                metric: s.metric,
                lambda_ratio,
                time,
                r: rs[i],
                precision: ps[i],
                normalized_r: nr[i],
                normalized_precision: np[i],
            });
        }
    }
    Ok(EvaluationGrid {
        dataset: dataset.to_string(),
        cells,
    })
}

/// Mean normalized scores of one metric at one (lambda, t) across datasets.
#[derive(Clone, Debug, PartialEq)]
pub struct AggregateCell<T> {
    pub metric: Metric,
    pub lambda_ratio: f64,
    pub time: TimePoint,
    pub mean_normalized_r: Option<T>,
    pub mean_normalized_precision: Option<T>,
    /// Datasets that contributed a defined value.
    pub datasets_r: usize,
    pub datasets_precision: usize,
}

/// Averages normalized values per (lambda, t, metric); missing cells are
/// skipped, not counted as zero. Output is ordered by lambda, t, metric.
pub fn aggregate_datasets<T: RealScalar>(grids: &[EvaluationGrid<T>]) -> Vec<AggregateCell<T>> {
    // positive finite f64 bit patterns order like the values
    type Key = (u64, TimePoint, Metric);
    let mut acc: BTreeMap<Key, (Vec<T>, Vec<T>)> = BTreeMap::new();
    for grid in grids {
        for c in &grid.cells {
            let entry = acc.entry((c.lambda_ratio.to_bits(), c.time, c.metric)).or_default();
            if let Some(v) = c.normalized_r {
                entry.0.push(v);
            }
            if let Some(v) = c.normalized_precision {
                entry.1.push(v);
            }
        }
    }
    let mean = |v: &[T]| {
        (!v.is_empty()).then(|| v.iter().fold(T::zero(), |a, &x| a + x) / T::from_count(v.len() as u64))
    };
    acc.into_iter()
        .map(|((bits, time, metric), (rs, ps))| AggregateCell {
            metric,
            lambda_ratio: f64::from_bits(bits),
            time,
            mean_normalized_r: mean(&rs),
            mean_normalized_precision: mean(&ps),
            datasets_r: rs.len(),
            datasets_precision: ps.len(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centrality::MetricParams;
    use crate::epidemic::{InfluenceCurve, SimulationConfig};

    fn table(q1: &[f64], q_inf: &[f64]) -> InfluenceTable<f64> {
        let config = SimulationConfig::new(0.5, 1.0, 1, 1, 0).unwrap();
        let curves = q1
            .iter()
            .zip(q_inf)
            .enumerate()
            .map(|(i, (&a, &b))| InfluenceCurve {
                seed: i,
                q: vec![a],
                q_inf: b,
                se: vec![0.0],
                se_inf: 0.0,
                runs: 1,
                fingerprint: String::new(),
            })
            .collect();
        InfluenceTable {
            config,
            fingerprint: String::new(),
            nodes: q1.len(),
            curves,
        }
    }

    fn scores(metric: Metric, v: &[f64]) -> CentralityScores<f64> {
        CentralityScores {
            metric,
            params: MetricParams::None,
            scores: v.to_vec(),
        }
    }

    #[test]
    fn best_metric_normalizes_to_one() {
        let t = table(&[0.1, 0.2, 0.3, 0.4], &[0.4, 0.3, 0.2, 0.1]);
        let s = [
            scores(Metric::Degree, &[1.0, 2.0, 3.0, 4.0]),
            scores(Metric::KCore, &[1.0, 3.0, 2.0, 4.0]),
            scores(Metric::Clustering, &[1.0, 1.0, 1.0, 1.0]),
        ];
        let times = [TimePoint::Step(1), TimePoint::Infinity];
        let g = evaluate_metrics("toy", &s, &t, 1.0, &times, 0.25).unwrap();
        assert_eq!(g.cells.len(), 6);

        let deg = g.cell(Metric::Degree, 1.0, TimePoint::Step(1)).unwrap();
        assert_eq!(deg.normalized_r, Some(1.0));
        assert_eq!(deg.normalized_precision, Some(1.0));
        let kc = g.cell(Metric::KCore, 1.0, TimePoint::Step(1)).unwrap();
        assert!(kc.normalized_r.unwrap() < 1.0);
        let cl = g.cell(Metric::Clustering, 1.0, TimePoint::Step(1)).unwrap();
        assert_eq!(cl.r, None);
        assert_eq!(cl.normalized_r, None);

        // at infinity every defined correlation is negative, so none normalizes;
        // constant clustering ties break to node 0, the true top node
        let deg_inf = g.cell(Metric::Degree, 1.0, TimePoint::Infinity).unwrap();
        assert!(deg_inf.r.unwrap() < 0.0);
        assert_eq!(deg_inf.normalized_r, None);
        assert_eq!(deg_inf.precision, Some(0.0));
        assert_eq!(deg_inf.normalized_precision, Some(0.0));
        let cl_inf = g.cell(Metric::Clustering, 1.0, TimePoint::Infinity).unwrap();
        assert_eq!(cl_inf.normalized_precision, Some(1.0));
    }

    #[test]
    fn missing_time_is_an_error() {
        let t = table(&[0.1, 0.2], &[0.1, 0.2]);
        let s = [scores(Metric::Degree, &[1.0, 2.0])];
        let err = evaluate_metrics("toy", &s, &t, 1.0, &[TimePoint::Step(2)], 0.5).unwrap_err();
        assert_eq!(err, EvalError::MissingTime(TimePoint::Step(2)));
    }

    #[test]
    fn aggregate_skips_missing_cells() {
        let cell = |r: Option<f64>, p: Option<f64>| EvaluationCell {
            metric: Metric::Degree,
            lambda_ratio: 2.0,
            time: TimePoint::Step(3),
            r: r,
            precision: p,
            normalized_r: r,
            normalized_precision: p,
        };
        let grids = [
            EvaluationGrid {
                dataset: "a".into(),
                cells: vec![cell(Some(0.5), Some(1.0))],
            },
            EvaluationGrid {
                dataset: "b".into(),
                cells: vec![cell(None, Some(0.0))],
            },
        ];
        let agg = aggregate_datasets(&grids);
        assert_eq!(agg.len(), 1);
        assert_eq!(agg[0].mean_normalized_r, Some(0.5));
        assert_eq!(agg[0].datasets_r, 1);
        assert_eq!(agg[0].mean_normalized_precision, Some(0.5));
        assert_eq!(agg[0].datasets_precision, 2);
    }
}
