use std::fs::File;
use std::io::{self, BufReader};
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use fastinf_core::compute_all;
use fastinf_pipeline::catalog;
use fastinf_pipeline::fetch::fetch_dataset;
use fastinf_pipeline::report::{self, Channel, HeatmapData};
use fastinf_pipeline::run::{self, simulation_cost};
use fastinf_pipeline::spec::LARGE_NETWORK_NODES;
use fastinf_pipeline::{ExperimentSpec, InfluenceCache, Overrides};

#[derive(Parser)]
#[command(name = "fastinf", version, about = "Rank fast and late-time spreaders in networks")]
struct Cli {
    /// TOML experiment file; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads for simulation and path metrics (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct SpecFlags {
    /// `name=path`, an edge-list path, or a known network name. Repeatable.
    #[arg(long = "dataset")]
    datasets: Vec<String>,
    #[arg(long, value_delimiter = ',')]
    lambda_ratios: Option<Vec<f64>>,
    /// e.g. `1-30,inf`.
    #[arg(long)]
    times: Option<String>,
    #[arg(long, value_delimiter = ',')]
    metrics: Option<Vec<String>>,
    #[arg(long)]
    runs: Option<u32>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    top_fraction: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    data_dir: Option<PathBuf>,
    #[arg(long)]
    allow_large: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Download datasets and pin their hashes.
    Fetch(SpecFlags),
    /// Summary statistics per dataset.
    Stats(SpecFlags),
    /// Metric scores per node.
    Centrality(SpecFlags),
    /// Influence curves for every node at each spreading rate.
    Simulate(SpecFlags),
    /// Metric-versus-influence grids per dataset.
    Evaluate(SpecFlags),
    /// Mean relative performance across datasets from evaluation tables.
    Aggregate {
        #[command(flatten)]
        flags: SpecFlags,
        /// Evaluation tables to combine (default: `<out>/evaluation.csv`).
        #[arg(long)]
        input: Vec<PathBuf>,
    },
    /// Heatmaps from evaluation tables.
    Report {
        #[command(flatten)]
        flags: SpecFlags,
        #[arg(long)]
        input: Vec<PathBuf>,
    },
    /// The whole chain with manifest.
    Run(SpecFlags),
}

fn build_spec(config: &Option<PathBuf>, flags: SpecFlags) -> Result<ExperimentSpec> {
    let mut spec = match config {
        Some(path) => ExperimentSpec::load(path)?,
        None => ExperimentSpec::default(),
    };
    spec.apply(Overrides {
        datasets: flags.datasets,
        lambda_ratios: flags.lambda_ratios,
        times: flags.times,
        metrics: flags.metrics,
        runs: flags.runs,
        master_seed: flags.seed,
        top_fraction: flags.top_fraction,
        out: flags.out,
        data_dir: flags.data_dir,
        allow_large: flags.allow_large,
    })?;
    Ok(spec)
}

fn announce_cost(spec: &ExperimentSpec, name: &str, nodes: usize) {
    if nodes > LARGE_NETWORK_NODES {
        eprintln!(
            "{name}: {nodes} nodes, {} single-seed runs across {} spreading rates",
            simulation_cost(spec, nodes),
            spec.lambda_ratios.len()
        );
    }
}

fn read_grids(inputs: &[PathBuf], spec: &ExperimentSpec) -> Result<Vec<fastinf_core::Grid>> {
    let defaults = [spec.out.join("evaluation.csv")];
    let inputs = if inputs.is_empty() { &defaults[..] } else { inputs };
    let mut grids = Vec::new();
    for path in inputs {
        let f = File::open(path).with_context(|| format!("opening {}", path.display()))?;
        grids.extend(report::read_evaluation(BufReader::new(f))?);
    }
    Ok(grids)
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    match cli.command {
        Command::Fetch(flags) => {
            let spec = build_spec(&cli.config, flags)?;
            for d in &spec.datasets {
                let Some(url) = &d.url else {
                    eprintln!(
                        "{}: no download URL; place the edge list at {}",
                        d.name,
                        d.resolve(&spec.data_dir).display()
                    );
                    continue;
                };
                let got = fetch_dataset(url, &spec.data_dir, &d.name)?;
                println!(
                    "{}\t{}\t{}\t{}",
                    d.name,
                    got.sha256,
                    if got.downloaded { "downloaded" } else { "cached" },
                    got.edges.display()
                );
            }
        }
        Command::Stats(flags) => {
            let spec = build_spec(&cli.config, flags)?;
            spec.validate()?;
            let mut rows = Vec::new();
            for d in &spec.datasets {
                let (_, row) = run::load_dataset(d, &spec.data_dir)?;
                if let Some(entry) = catalog::lookup(&d.name) {
                    let p = entry.published;
                    let s = &row.stats;
                    if s.nodes != p.nodes || s.edges != p.edges {
                        eprintln!(
                            "{}: loaded N={} L={}, published N={} L={}",
                            d.name, s.nodes, s.edges, p.nodes, p.edges
                        );
                    }
                }
                rows.push(row);
            }
            report::write_stats(io::stdout().lock(), &rows)?;
        }
        Command::Centrality(flags) => {
            let spec = build_spec(&cli.config, flags)?;
            spec.validate()?;
            for d in &spec.datasets {
                let (g, _) = run::load_dataset(d, &spec.data_dir)?;
                let scores = compute_all::<f64>(&g, &spec.metrics, &run::centrality_config(&spec))?;
                let path = spec.out.join(&d.name).join("scores.csv");
                std::fs::create_dir_all(path.parent().unwrap())?;
                report::write_scores(File::create(&path)?, &g, &scores)?;
                eprintln!("{}: wrote {}", d.name, path.display());
            }
        }
        Command::Simulate(flags) => {
            let spec = build_spec(&cli.config, flags)?;
            spec.validate()?;
            let cache = InfluenceCache::new(spec.cache_dir());
            for d in &spec.datasets {
                let (g, row) = run::load_dataset(d, &spec.data_dir)?;
                announce_cost(&spec, &d.name, g.node_count());
                if g.node_count() > LARGE_NETWORK_NODES && !spec.allow_large {
                    bail!("{}: pass --allow-large to simulate a network this size", d.name);
                }
                let lambda_c = fastinf_core::epidemic_threshold(&row.stats)?;
                let mut tables = Vec::new();
                for &ratio in &spec.lambda_ratios {
                    let config = run::simulation_config(&spec, ratio, lambda_c)?;
                    tables.push((ratio, cache.get_or_compute(&g, &config)?));
                }
                let refs: Vec<_> = tables.iter().map(|(r, t)| (*r, t)).collect();
                let path = spec.out.join(&d.name).join("influence.csv");
                std::fs::create_dir_all(path.parent().unwrap())?;
                report::write_influence(File::create(&path)?, &g, &refs, &spec.times)?;
            }
            let s = cache.stats();
            eprintln!("cache: {} hits, {} misses ({:.0}% hit rate)", s.hits, s.misses, 100.0 * s.hit_rate());
        }
        Command::Evaluate(flags) => {
            let spec = build_spec(&cli.config, flags)?;
            spec.validate()?;
            let cache = InfluenceCache::new(spec.cache_dir());
            let mut grids = Vec::new();
            for d in &spec.datasets {
                let a = run::analyze_dataset(&spec, d, &cache).with_context(|| d.name.clone())?;
                run::write_dataset_artifacts(&spec, &a)?;
                grids.push(a.grid);
            }
            report::write_evaluation(File::create(spec.out.join("evaluation.csv"))?, &grids)?;
        }
        Command::Aggregate { flags, input } => {
            let spec = build_spec(&cli.config, flags)?;
            let grids = read_grids(&input, &spec)?;
            std::fs::create_dir_all(&spec.out)?;
            run::write_aggregate_artifacts(&spec.out, &grids)?;
        }
        Command::Report { flags, input } => {
            let spec = build_spec(&cli.config, flags)?;
            let grids = read_grids(&input, &spec)?;
            for grid in &grids {
                let dir = spec.out.join(&grid.dataset);
                std::fs::create_dir_all(&dir)?;
                for ratio in report::lambda_ratios(grid) {
                    for channel in [Channel::Correlation, Channel::Precision] {
                        let svg = HeatmapData::from_grid(grid, ratio, channel).to_svg();
                        std::fs::write(dir.join(format!("heatmap_{}_lambda{ratio}.svg", channel.id())), svg)?;
                    }
                }
            }
            run::write_aggregate_artifacts(&spec.out, &grids)?;
        }
        Command::Run(flags) => {
            let spec = build_spec(&cli.config, flags)?;
            let bundle = run::run_experiment(&spec)?;
            for d in &bundle.manifest.datasets {
                match &d.error {
                    Some(e) => eprintln!("{}: FAILED: {e}", d.name),
                    None => eprintln!("{}: ok", d.name),
                }
            }
            let s = bundle.cache;
            eprintln!("cache: {} hits, {} misses ({:.0}% hit rate)", s.hits, s.misses, 100.0 * s.hit_rate());
            if bundle.manifest.datasets.iter().all(|d| d.error.is_some()) {
                bail!("every dataset failed");
            }
        }
    }
    Ok(())
}
