//! Tables and figures written to the output directory.

mod heatmap;
mod scatter;

use std::collections::BTreeMap;
use std::io::{Read, Write};

use fastinf_core::epidemic::{InfluenceTable, TimePoint};
use fastinf_core::evaluation::{AggregateCell, EvaluationCell, EvaluationGrid};
use fastinf_core::{CentralityScores, Graph, GraphStats, Metric};

use crate::PipelineError;

pub use heatmap::{diverging_color, Channel, HeatmapData};
pub use scatter::{hub_scatter, write_hub_scatter, HubRow, TOP_SPREADERS};

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

#[derive(Clone, Debug, PartialEq)]
pub struct StatsRow {
    pub dataset: String,
    pub stats: GraphStats,
    pub duplicates_dropped: usize,
    pub self_loops_dropped: usize,
}

pub const STATS_HEADER: [&str; 10] = [
    "dataset",
    "N",
    "L",
    "mean_degree",
    "mean_sq_degree",
    "lambda_c",
    "components",
    "giant_component",
    "duplicates_dropped",
    "self_loops_dropped",
];

pub fn write_stats<W: Write>(out: W, rows: &[StatsRow]) -> Result<(), PipelineError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(STATS_HEADER)?;
    for r in rows {
        let s = &r.stats;
        w.write_record([
            r.dataset.clone(),
            s.nodes.to_string(),
            s.edges.to_string(),
            s.mean_degree.to_string(),
            s.mean_sq_degree.to_string(),
            opt(s.epidemic_threshold),
            s.component_count.to_string(),
            s.giant_component_size.to_string(),
            r.duplicates_dropped.to_string(),
            r.self_loops_dropped.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_scores<W: Write>(out: W, g: &Graph, scores: &[CentralityScores<f64>]) -> Result<(), PipelineError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["node_label", "metric", "score", "parameters"])?;
    for s in scores {
        let params = s.params.to_string();
        for (i, v) in s.scores.iter().enumerate() {
            w.write_record([g.label(i), s.metric.id(), &v.to_string(), &params])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Long format: one row per node, spreading rate and time point.
pub fn write_influence<W: Write>(
    out: W,
    g: &Graph,
    tables: &[(f64, &InfluenceTable<f64>)],
    times: &[TimePoint],
) -> Result<(), PipelineError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["node_label", "lambda_ratio", "t", "q", "se"])?;
    for (ratio, table) in tables {
        for c in &table.curves {
            for &t in times {
                let se = match t {
                    TimePoint::Infinity => Some(c.se_inf),
                    TimePoint::Step(s) => c.se.get(s as usize - 1).copied(),
                };
                w.write_record([
                    g.label(c.seed).to_string(),
                    ratio.to_string(),
                    t.to_string(),
                    opt(c.at(t)),
                    opt(se),
                ])?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

pub const EVALUATION_HEADER: [&str; 8] = [
    "dataset",
    "metric",
    "lambda_ratio",
    "t",
    "r",
    "precision",
    "normalized_r",
    "normalized_precision",
];

pub fn write_evaluation<W: Write>(out: W, grids: &[EvaluationGrid<f64>]) -> Result<(), PipelineError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(EVALUATION_HEADER)?;
    for g in grids {
        for c in &g.cells {
            w.write_record([
                g.dataset.clone(),
                c.metric.id().to_string(),
                c.lambda_ratio.to_string(),
                c.time.to_string(),
                opt(c.r),
                opt(c.precision),
                opt(c.normalized_r),
                opt(c.normalized_precision),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Parses [`write_evaluation`] output back into per-dataset grids, in order
/// of first appearance.
pub fn read_evaluation<R: Read>(input: R) -> Result<Vec<EvaluationGrid<f64>>, PipelineError> {
    let mut reader = csv::Reader::from_reader(input);
    let headers = reader.headers()?.clone();
    if headers.iter().collect::<Vec<_>>() != EVALUATION_HEADER {
        return Err(PipelineError::Spec(format!("unexpected evaluation header {headers:?}")));
    }
    let mut grids: Vec<EvaluationGrid<f64>> = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record?;
        let bad = |what: &str| PipelineError::Spec(format!("evaluation row {}: bad {what}", line + 1));
        let num = |k: usize| -> Result<Option<f64>, PipelineError> {
            match &record[k] {
                "" => Ok(None),
                s => s.parse().map(Some).map_err(|_| bad(EVALUATION_HEADER[k])),
            }
        };
        let cell = EvaluationCell {
            metric: record[1].parse::<Metric>().map_err(|_| bad("metric"))?,
            lambda_ratio: record[2].parse().map_err(|_| bad("lambda_ratio"))?,
            time: record[3].parse::<TimePoint>().map_err(|_| bad("t"))?,
            r: num(4)?,
            precision: num(5)?,
            normalized_r: num(6)?,
            normalized_precision: num(7)?,
        };
        let dataset = &record[0];
        match grids.iter_mut().find(|g| g.dataset == dataset) {
            Some(g) => g.cells.push(cell),
            None => grids.push(EvaluationGrid {
                dataset: dataset.to_string(),
                cells: vec![cell],
            }),
        }
    }
    Ok(grids)
}

pub fn write_aggregate<W: Write>(out: W, cells: &[AggregateCell<f64>]) -> Result<(), PipelineError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "metric",
        "lambda_ratio",
        "t",
        "mean_normalized_r",
        "mean_normalized_precision",
        "datasets_r",
        "datasets_precision",
    ])?;
    for c in cells {
        w.write_record([
            c.metric.id().to_string(),
            c.lambda_ratio.to_string(),
            c.time.to_string(),
            opt(c.mean_normalized_r),
            opt(c.mean_normalized_precision),
            c.datasets_r.to_string(),
            c.datasets_precision.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Time-resolved summaries of one dataset at one spreading rate.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveSummary {
    pub lambda_ratio: f64,
    pub time: TimePoint,
    /// Correlation of degree with `q(t)`.
    pub r_degree: Option<f64>,
    /// Correlation of `q(t)` with `q_inf`.
    pub r_late: Option<f64>,
    /// Relative gain of the top nodes by `q(t)` over the top nodes by `q_inf`.
    pub relative_gain: Option<f64>,
}

pub fn write_curve_summaries<W: Write>(out: W, dataset: &str, rows: &[CurveSummary]) -> Result<(), PipelineError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["dataset", "lambda_ratio", "t", "r_degree", "r_late", "relative_gain"])?;
    for r in rows {
        w.write_record([
            dataset.to_string(),
            r.lambda_ratio.to_string(),
            r.time.to_string(),
            opt(r.r_degree),
            opt(r.r_late),
            opt(r.relative_gain),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Distinct spreading rates in a grid, ascending.
pub fn lambda_ratios(grid: &EvaluationGrid<f64>) -> Vec<f64> {
    let mut seen: BTreeMap<u64, f64> = BTreeMap::new();
    for c in &grid.cells {
        seen.insert(c.lambda_ratio.to_bits(), c.lambda_ratio);
    }
    seen.into_values().collect()
}
