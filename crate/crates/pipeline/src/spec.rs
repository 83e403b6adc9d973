//! Experiment configuration.
//!
//! A spec is read from a TOML file and then patched by command-line flags.
//! Every field has a default, so an empty file plus `--dataset` is a valid
//! experiment.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use fastinf_core::epidemic::{TimePoint, DEFAULT_HORIZON, DEFAULT_RUNS};
use fastinf_core::evaluation::DEFAULT_TOP_FRACTION;
use fastinf_core::Metric;
use serde::Deserialize;

use crate::catalog;
use crate::PipelineError;

/// Networks above this size need `allow_large`.
pub const LARGE_NETWORK_NODES: usize = 25_000;

#[derive(Clone, Debug, PartialEq)]
pub struct DatasetSpec {
    pub name: String,
    pub path: Option<PathBuf>,
    pub url: Option<String>,
}

impl DatasetSpec {
    /// Parses `name=path`, a path to an existing file, or a catalog name.
    pub fn parse(arg: &str) -> Result<Self, PipelineError> {
        if let Some((name, path)) = arg.split_once('=') {
            return Ok(DatasetSpec {
                name: name.trim().to_string(),
                path: Some(PathBuf::from(path.trim())),
                url: catalog::lookup(name.trim()).and_then(|e| e.url.map(str::to_string)),
            });
        }
        let path = Path::new(arg);
        if path.is_file() {
            let name = path
                .file_stem()
                .and_then(|s| s.to_str())
                .map(|s| s.trim_start_matches("out.").to_string())
                .unwrap_or_else(|| arg.to_string());
            return Ok(DatasetSpec {
                name,
                path: Some(path.to_path_buf()),
                url: None,
            });
        }
        match catalog::lookup(arg) {
            Some(entry) => Ok(DatasetSpec {
                name: entry.name.to_string(),
                path: None,
                url: entry.url.map(str::to_string),
            }),
            None => Err(PipelineError::Spec(format!(
                "dataset {arg:?} is neither an existing file nor a known network name"
            ))),
        }
    }

    /// Local edge-list file: the explicit path, else the fetched copy under
    /// `data_dir`.
    pub fn resolve(&self, data_dir: &Path) -> PathBuf {
        match &self.path {
            Some(p) => p.clone(),
            None => catalog::local_path(data_dir, &self.name),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentSpec {
    pub datasets: Vec<DatasetSpec>,
    pub lambda_ratios: Vec<f64>,
    /// Strictly ascending; finite steps before [`TimePoint::Infinity`].
    pub times: Vec<TimePoint>,
    pub metrics: Vec<Metric>,
    pub runs: u32,
    pub master_seed: u64,
    pub top_fraction: f64,
    pub mu: f64,
    pub dsc_steps: u32,
    /// Fraction of nodes by degree shown in hub scatter tables.
    pub hub_fraction: f64,
    pub hub_times: Vec<TimePoint>,
    pub out: PathBuf,
    pub data_dir: PathBuf,
    /// Simulation cache; defaults to `<out>/cache`.
    pub cache_dir: Option<PathBuf>,
    pub allow_large: bool,
}

impl Default for ExperimentSpec {
    fn default() -> Self {
        let mut times: Vec<TimePoint> = (1..=DEFAULT_HORIZON).map(TimePoint::Step).collect();
        times.push(TimePoint::Infinity);
        ExperimentSpec {
            datasets: Vec::new(),
            lambda_ratios: vec![1.0, 2.0, 5.0, 10.0],
            times,
            metrics: Metric::ALL.to_vec(),
            runs: DEFAULT_RUNS,
            master_seed: 0,
            top_fraction: DEFAULT_TOP_FRACTION,
            mu: 1.0,
            dsc_steps: 5,
            hub_fraction: 0.05,
            hub_times: vec![TimePoint::Step(2), TimePoint::Step(5), TimePoint::Infinity],
            out: PathBuf::from("out"),
            data_dir: PathBuf::from("data"),
            cache_dir: None,
            allow_large: false,
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecFile {
    datasets: Option<Vec<DatasetEntry>>,
    lambda_ratios: Option<Vec<f64>>,
    times: Option<String>,
    metrics: Option<Vec<String>>,
    runs: Option<u32>,
    master_seed: Option<u64>,
    top_fraction: Option<f64>,
    mu: Option<f64>,
    dsc_steps: Option<u32>,
    hub_fraction: Option<f64>,
    hub_times: Option<String>,
    out: Option<PathBuf>,
    data_dir: Option<PathBuf>,
    cache_dir: Option<PathBuf>,
    allow_large: Option<bool>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum DatasetEntry {
    Short(String),
    Full {
        name: String,
        path: Option<PathBuf>,
        url: Option<String>,
    },
}

/// Command-line values that take precedence over the file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub datasets: Vec<String>,
    pub lambda_ratios: Option<Vec<f64>>,
    pub times: Option<String>,
    pub metrics: Option<Vec<String>>,
    pub runs: Option<u32>,
    pub master_seed: Option<u64>,
    pub top_fraction: Option<f64>,
    pub out: Option<PathBuf>,
    pub data_dir: Option<PathBuf>,
    pub allow_large: bool,
}

impl ExperimentSpec {
    pub fn from_toml(text: &str) -> Result<Self, PipelineError> {
        let file: SpecFile = toml::from_str(text).map_err(|e| PipelineError::Spec(e.to_string()))?;
        let mut spec = ExperimentSpec::default();
        if let Some(entries) = file.datasets {
            spec.datasets = entries
                .into_iter()
                .map(|e| match e {
                    DatasetEntry::Short(s) => DatasetSpec::parse(&s),
                    DatasetEntry::Full { name, path, url } => Ok(DatasetSpec {
                        url: url.or_else(|| catalog::lookup(&name).and_then(|c| c.url.map(str::to_string))),
                        name,
                        path,
                    }),
                })
                .collect::<Result<_, _>>()?;
        }
        if let Some(v) = file.lambda_ratios {
            spec.lambda_ratios = v;
        }
        if let Some(t) = file.times {
            spec.times = parse_times(&t)?;
        }
        if let Some(m) = file.metrics {
            spec.metrics = parse_metrics(&m)?;
        }
        if let Some(t) = file.hub_times {
            spec.hub_times = parse_times(&t)?;
        }
        macro_rules! take {
            ($($field:ident),*) => { $( if let Some(v) = file.$field { spec.$field = v; } )* };
        }
        take!(runs, master_seed, top_fraction, mu, dsc_steps, hub_fraction, out, data_dir, allow_large);
        spec.cache_dir = file.cache_dir;
        Ok(spec)
    }

    pub fn load(path: &Path) -> Result<Self, PipelineError> {
        let text = std::fs::read_to_string(path).map_err(|e| PipelineError::io(path, e))?;
        Self::from_toml(&text)
    }

    pub fn apply(&mut self, o: Overrides) -> Result<(), PipelineError> {
        if !o.datasets.is_empty() {
            self.datasets = o.datasets.iter().map(|d| DatasetSpec::parse(d)).collect::<Result<_, _>>()?;
        }
        if let Some(v) = o.lambda_ratios {
            self.lambda_ratios = v;
        }
        if let Some(t) = o.times {
            self.times = parse_times(&t)?;
        }
        if let Some(m) = o.metrics {
            self.metrics = parse_metrics(&m)?;
        }
        if let Some(v) = o.runs {
            self.runs = v;
        }
        if let Some(v) = o.master_seed {
            self.master_seed = v;
        }
        if let Some(v) = o.top_fraction {
            self.top_fraction = v;
        }
        if let Some(v) = o.out {
            self.out = v;
        }
        if let Some(v) = o.data_dir {
            self.data_dir = v;
        }
        self.allow_large |= o.allow_large;
        Ok(())
    }

    pub fn validate(&self) -> Result<(), PipelineError> {
        let fail = |m: &str| Err(PipelineError::Spec(m.to_string()));
        if self.datasets.is_empty() {
            return fail("no datasets given");
        }
        if self.lambda_ratios.is_empty() || self.lambda_ratios.iter().any(|&r| !(r > 0.0 && r.is_finite())) {
            return fail("lambda ratios must be positive and finite");
        }
        if self.times.is_empty() || self.times.windows(2).any(|w| w[0] >= w[1]) {
            return fail("times must be non-empty and strictly ascending");
        }
        if self.times.contains(&TimePoint::Step(0)) || self.hub_times.contains(&TimePoint::Step(0)) {
            return fail("time 0 is not a measurement point");
        }
        if self.metrics.is_empty() {
            return fail("no metrics selected");
        }
        if self.runs == 0 {
            return fail("runs must be at least 1");
        }
        if !(self.top_fraction > 0.0 && self.top_fraction <= 1.0) || !(self.hub_fraction > 0.0 && self.hub_fraction <= 1.0) {
            return fail("fractions must lie in (0, 1]");
        }
        if !(0.0..=1.0).contains(&self.mu) {
            return fail("mu must lie in [0, 1]");
        }
        let mut names: Vec<&str> = self.datasets.iter().map(|d| d.name.as_str()).collect();
        names.sort_unstable();
        if names.windows(2).any(|w| w[0] == w[1]) {
            return fail("dataset names must be unique");
        }
        Ok(())
    }

    /// Number of simulated steps needed to cover every finite time.
    pub fn horizon(&self) -> u32 {
        self.times
            .iter()
            .chain(&self.hub_times)
            .filter_map(|t| match t {
                TimePoint::Step(s) => Some(*s),
                TimePoint::Infinity => None,
            })
            .max()
            .unwrap_or(1)
    }

    pub fn cache_dir(&self) -> PathBuf {
        self.cache_dir.clone().unwrap_or_else(|| self.out.join("cache"))
    }

    /// Canonical text form, recorded in the manifest.
    pub fn describe(&self) -> String {
        let mut s = String::new();
        for d in &self.datasets {
            let _ = writeln!(s, "dataset = {}", d.name);
        }
        let ratios: Vec<String> = self.lambda_ratios.iter().map(f64::to_string).collect();
        let metrics: Vec<&str> = self.metrics.iter().map(|m| m.id()).collect();
        let _ = writeln!(s, "lambda_ratios = {}", ratios.join(","));
        let _ = writeln!(s, "times = {}", format_times(&self.times));
        let _ = writeln!(s, "metrics = {}", metrics.join(","));
        let _ = writeln!(s, "runs = {}", self.runs);
        let _ = writeln!(s, "master_seed = {}", self.master_seed);
        let _ = writeln!(s, "top_fraction = {}", self.top_fraction);
        let _ = writeln!(s, "mu = {}", self.mu);
        let _ = writeln!(s, "dsc_steps = {}", self.dsc_steps);
        let _ = writeln!(s, "hub_fraction = {}", self.hub_fraction);
        let _ = writeln!(s, "hub_times = {}", format_times(&self.hub_times));
        s
    }
}

/// Parses lists such as `1-30,inf` or `1,2,5,10`.
pub fn parse_times(text: &str) -> Result<Vec<TimePoint>, PipelineError> {
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if let Some((a, b)) = part.split_once('-') {
            let parse = |x: &str| {
                x.trim()
                    .parse::<u32>()
                    .map_err(|_| PipelineError::Spec(format!("invalid time range {part:?}")))
            };
            let (a, b) = (parse(a)?, parse(b)?);
            if a > b {
                return Err(PipelineError::Spec(format!("empty time range {part:?}")));
            }
            out.extend((a..=b).map(TimePoint::Step));
        } else {
            out.push(part.parse::<TimePoint>().map_err(PipelineError::Spec)?);
        }
    }
    Ok(out)
}

/// Inverse of [`parse_times`], compressing consecutive runs into ranges.
pub fn format_times(times: &[TimePoint]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < times.len() {
        match times[i] {
            TimePoint::Infinity => {
                parts.push("inf".to_string());
                i += 1;
            }
            TimePoint::Step(a) => {
                let mut j = i;
                while let (Some(TimePoint::Step(x)), Some(TimePoint::Step(y))) = (times.get(j), times.get(j + 1)) {
                    if *y != x + 1 {
                        break;
                    }
                    j += 1;
                }
                match times[j] {
                    TimePoint::Step(b) if j > i => parts.push(format!("{a}-{b}")),
                    _ => parts.push(a.to_string()),
                }
                i = j + 1;
            }
        }
    }
    parts.join(",")
}

pub fn parse_metrics<S: AsRef<str>>(ids: &[S]) -> Result<Vec<Metric>, PipelineError> {
    ids.iter()
        .map(|s| s.as_ref().trim().parse::<Metric>().map_err(|e| PipelineError::Spec(e.to_string())))
        .collect()
}
