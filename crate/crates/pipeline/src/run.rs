//! The centrality, simulation and evaluation chain over a set of datasets.

use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use fastinf_core::centrality::{clustering_coefficient, degree, social_capital};
use fastinf_core::epidemic::{InfluenceTable, TimePoint};
use fastinf_core::evaluation::relative_gain_at;
use fastinf_core::graph::{degree_stats, epidemic_threshold, load_edge_list, ParseOptions};
use fastinf_core::{
    aggregate_datasets, compute_all, evaluate_metrics, pearson, CentralityConfig, CentralityScores, EvaluationGrid,
    Graph, SimulationConfig,
};
use serde::Serialize;

use crate::cache::{CacheStats, InfluenceCache};
use crate::fetch::sha256_file;
use crate::report::{self, Channel, CurveSummary, HeatmapData, StatsRow};
use crate::spec::{DatasetSpec, ExperimentSpec, LARGE_NETWORK_NODES};
use crate::PipelineError;

pub const MANIFEST: &str = "manifest.json";

pub fn load_dataset(d: &DatasetSpec, data_dir: &Path) -> Result<(Graph, StatsRow), PipelineError> {
    let path = d.resolve(data_dir);
    let file = File::open(&path).map_err(|e| PipelineError::io(&path, e))?;
    let report = load_edge_list(BufReader::new(file), &ParseOptions::default())?;
    let row = StatsRow {
        dataset: d.name.clone(),
        stats: degree_stats(&report.graph),
        duplicates_dropped: report.duplicates_dropped,
        self_loops_dropped: report.self_loops_dropped,
    };
    Ok((report.graph, row))
}

/// Total single-seed realisations an experiment needs on `nodes` nodes.
pub fn simulation_cost(spec: &ExperimentSpec, nodes: usize) -> u64 {
    spec.runs as u64 * nodes as u64 * spec.lambda_ratios.len() as u64
}

fn check_size(spec: &ExperimentSpec, name: &str, nodes: usize) -> Result<(), PipelineError> {
    if nodes > LARGE_NETWORK_NODES && !spec.allow_large {
        return Err(PipelineError::TooLarge {
            name: name.to_string(),
            nodes,
            runs: simulation_cost(spec, nodes),
        });
    }
    Ok(())
}

pub fn centrality_config(spec: &ExperimentSpec) -> CentralityConfig {
    CentralityConfig {
        dsc_steps: spec.dsc_steps,
        ..CentralityConfig::default()
    }
}

pub fn simulation_config(
    spec: &ExperimentSpec,
    lambda_ratio: f64,
    lambda_c: f64,
) -> Result<SimulationConfig, PipelineError> {
    Ok(SimulationConfig::from_lambda_ratio(
        lambda_ratio,
        lambda_c,
        spec.mu,
        spec.runs,
        spec.horizon(),
        spec.master_seed,
    )?)
}

/// Everything computed for one dataset.
#[derive(Debug)]
pub struct DatasetAnalysis {
    pub graph: Graph,
    pub stats: StatsRow,
    pub lambda_c: f64,
    pub scores: Vec<CentralityScores<f64>>,
    pub tables: Vec<(f64, InfluenceTable<f64>)>,
    pub grid: EvaluationGrid<f64>,
    pub summaries: Vec<CurveSummary>,
}

pub fn analyze_dataset(
    spec: &ExperimentSpec,
    d: &DatasetSpec,
    cache: &InfluenceCache,
) -> Result<DatasetAnalysis, PipelineError> {
    let (graph, stats) = load_dataset(d, &spec.data_dir)?;
    check_size(spec, &d.name, graph.node_count())?;
    let lambda_c = epidemic_threshold(&stats.stats)?;
    let scores = compute_all::<f64>(&graph, &spec.metrics, &centrality_config(spec))?;
    let degrees = degree::<f64>(&graph).scores;

    let mut tables = Vec::new();
    let mut grid = EvaluationGrid {
        dataset: d.name.clone(),
        cells: Vec::new(),
    };
    let mut summaries = Vec::new();
    for &ratio in &spec.lambda_ratios {
        let config = simulation_config(spec, ratio, lambda_c)?;
        let table = cache.get_or_compute(&graph, &config)?;
        grid.extend(evaluate_metrics(&d.name, &scores, &table, ratio, &spec.times, spec.top_fraction)?);
        let late = table.values_at(TimePoint::Infinity).expect("q_inf always present");
        for &t in &spec.times {
            let q = table.values_at(t).expect("horizon covers every finite time");
            summaries.push(CurveSummary {
                lambda_ratio: ratio,
                time: t,
                r_degree: pearson(&degrees, &q).ok(),
                r_late: pearson(&q, &late).ok(),
                relative_gain: relative_gain_at(&q, &late, spec.top_fraction).ok(),
            });
        }
        tables.push((ratio, table));
    }
    Ok(DatasetAnalysis {
        graph,
        stats,
        lambda_c,
        scores,
        tables,
        grid,
        summaries,
    })
}

fn create(path: &Path) -> Result<BufWriter<File>, PipelineError> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(|e| PipelineError::io(parent, e))?;
    }
    Ok(BufWriter::new(File::create(path).map_err(|e| PipelineError::io(path, e))?))
}

fn write_text(path: &Path, text: &str) -> Result<(), PipelineError> {
    let mut f = create(path)?;
    f.write_all(text.as_bytes()).map_err(|e| PipelineError::io(path, e))?;
    f.flush().map_err(|e| PipelineError::io(path, e))
}

fn dataset_dir(spec: &ExperimentSpec, name: &str) -> PathBuf {
    spec.out.join(name)
}

/// Writes the per-dataset tables and figures.
pub fn write_dataset_artifacts(spec: &ExperimentSpec, a: &DatasetAnalysis) -> Result<(), PipelineError> {
    let dir = dataset_dir(spec, &a.grid.dataset);
    report::write_stats(create(&dir.join("stats.csv"))?, std::slice::from_ref(&a.stats))?;
    report::write_scores(create(&dir.join("scores.csv"))?, &a.graph, &a.scores)?;
    let tables: Vec<(f64, &InfluenceTable<f64>)> = a.tables.iter().map(|(r, t)| (*r, t)).collect();
    report::write_influence(create(&dir.join("influence.csv"))?, &a.graph, &tables, &spec.times)?;
    report::write_evaluation(create(&dir.join("evaluation.csv"))?, std::slice::from_ref(&a.grid))?;
    report::write_curve_summaries(create(&dir.join("curves.csv"))?, &a.grid.dataset, &a.summaries)?;

    let social = social_capital::<f64>(&a.graph).scores;
    let clustering = clustering_coefficient::<f64>(&a.graph).scores;
    for (ratio, table) in &a.tables {
        for channel in [Channel::Correlation, Channel::Precision] {
            let svg = HeatmapData::from_grid(&a.grid, *ratio, channel).to_svg();
            write_text(&dir.join(format!("heatmap_{}_lambda{ratio}.svg", channel.id())), &svg)?;
        }
        for &t in &spec.hub_times {
            let Some(q) = table.values_at(t) else { continue };
            let rows = report::hub_scatter(&a.graph, &social, &clustering, &q, spec.hub_fraction)?;
            report::write_hub_scatter(create(&dir.join(format!("hubs_lambda{ratio}_t{t}.csv")))?, &a.graph, &rows)?;
        }
    }
    Ok(())
}

/// Cross-dataset tables and figures.
pub fn write_summary_artifacts(
    spec: &ExperimentSpec,
    stats: &[StatsRow],
    grids: &[EvaluationGrid<f64>],
) -> Result<(), PipelineError> {
    report::write_stats(create(&spec.out.join("stats.csv"))?, stats)?;
    report::write_evaluation(create(&spec.out.join("evaluation.csv"))?, grids)?;
    write_aggregate_artifacts(&spec.out, grids)
}

pub fn write_aggregate_artifacts(out: &Path, grids: &[EvaluationGrid<f64>]) -> Result<(), PipelineError> {
    let cells = aggregate_datasets(grids);
    report::write_aggregate(create(&out.join("aggregate.csv"))?, &cells)?;
    let mut ratios: Vec<f64> = cells.iter().map(|c| c.lambda_ratio).collect();
    ratios.dedup();
    for ratio in ratios {
        for channel in [Channel::Correlation, Channel::Precision] {
            let svg = HeatmapData::from_aggregate(&cells, ratio, channel).to_svg();
            write_text(&out.join(format!("aggregate_{}_lambda{ratio}.svg", channel.id())), &svg)?;
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DatasetStatus {
    pub name: String,
    /// `None` on success.
    pub error: Option<String>,
    pub lambda_c: Option<f64>,
    /// Simulation fingerprint per spreading rate.
    pub simulations: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Manifest {
    pub spec: String,
    pub datasets: Vec<DatasetStatus>,
    /// Relative path to sha256 of every artifact except the cache.
    pub artifacts: BTreeMap<String, String>,
}

#[derive(Debug)]
pub struct Bundle {
    pub manifest: Manifest,
    pub cache: CacheStats,
    pub grids: Vec<EvaluationGrid<f64>>,
}

fn collect_files(root: &Path, dir: &Path, skip: &Path, out: &mut Vec<PathBuf>) -> Result<(), PipelineError> {
    let mut entries: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| PipelineError::io(dir, e))?
        .map(|e| e.map(|e| e.path()))
        .collect::<Result<_, _>>()
        .map_err(|e| PipelineError::io(dir, e))?;
    entries.sort();
    for p in entries {
        if p == skip || p == root.join(MANIFEST) {
            continue;
        }
        if p.is_dir() {
            collect_files(root, &p, skip, out)?;
        } else {
            out.push(p);
        }
    }
    Ok(())
}

fn hash_artifacts(out: &Path, cache_dir: &Path) -> Result<BTreeMap<String, String>, PipelineError> {
    let mut files = Vec::new();
    collect_files(out, out, cache_dir, &mut files)?;
    files
        .into_iter()
        .map(|p| {
            let rel = p.strip_prefix(out).unwrap_or(&p);
            let key = rel.components().map(|c| c.as_os_str().to_string_lossy()).collect::<Vec<_>>().join("/");
            Ok((key, sha256_file(&p)?))
        })
        .collect()
}

/// Runs every dataset through the full chain and writes the bundle.
///
/// A failing dataset is recorded in the manifest and skipped; the others
/// still run.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<Bundle, PipelineError> {
    spec.validate()?;
    fs::create_dir_all(&spec.out).map_err(|e| PipelineError::io(&spec.out, e))?;
    let cache = InfluenceCache::new(spec.cache_dir());
    let mut statuses = Vec::new();
    let mut stats = Vec::new();
    let mut grids = Vec::new();
    for d in &spec.datasets {
        let result = analyze_dataset(spec, d, &cache).and_then(|a| write_dataset_artifacts(spec, &a).map(|_| a));
        match result {
            Ok(a) => {
                statuses.push(DatasetStatus {
                    name: d.name.clone(),
                    error: None,
                    lambda_c: Some(a.lambda_c),
                    simulations: a.tables.iter().map(|(r, t)| (r.to_string(), t.fingerprint.clone())).collect(),
                });
                stats.push(a.stats);
                grids.push(a.grid);
            }
            Err(e) => statuses.push(DatasetStatus {
                name: d.name.clone(),
                error: Some(e.to_string()),
                lambda_c: None,
                simulations: BTreeMap::new(),
            }),
        }
    }
    write_summary_artifacts(spec, &stats, &grids)?;
    let manifest = Manifest {
        spec: spec.describe(),
        datasets: statuses,
        artifacts: hash_artifacts(&spec.out, &spec.cache_dir())?,
    };
    let mut text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    text.push('\n');
    write_text(&spec.out.join(MANIFEST), &text)?;
    Ok(Bundle {
        manifest,
        cache: cache.stats(),
        grids,
    })
}

