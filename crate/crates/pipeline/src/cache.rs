//! On-disk cache of simulated influence tables, keyed by fingerprint.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use fastinf_core::epidemic::{influence_curves, InfluenceCurve, InfluenceTable};
use fastinf_core::{Graph, SimulationConfig};

use crate::PipelineError;

#[derive(Debug)]
pub struct InfluenceCache {
    dir: PathBuf,
    hits: AtomicU64,
    misses: AtomicU64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CacheStats {
    pub hits: u64,
    pub misses: u64,
}

impl CacheStats {
    pub fn hit_rate(&self) -> f64 {
        let total = self.hits + self.misses;
        if total == 0 {
            0.0
        } else {
            self.hits as f64 / total as f64
        }
    }
}

impl InfluenceCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        InfluenceCache {
            dir: dir.into(),
            hits: AtomicU64::new(0),
            misses: AtomicU64::new(0),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn stats(&self) -> CacheStats {
        CacheStats {
            hits: self.hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
        }
    }

    fn path_for(&self, fingerprint: &str) -> PathBuf {
        self.dir.join(format!("{fingerprint}.csv"))
    }

    /// Returns the cached table for `config` on `g`, simulating and storing
    /// it on a miss.
    pub fn get_or_compute(&self, g: &Graph, config: &SimulationConfig) -> Result<InfluenceTable<f64>, PipelineError> {
        let fingerprint = config.fingerprint(g);
        if let Some(table) = self.load(&fingerprint, g.node_count(), config)? {
            self.hits.fetch_add(1, Ordering::Relaxed);
            return Ok(table);
        }
        self.misses.fetch_add(1, Ordering::Relaxed);
        let table = influence_curves::<f64>(g, config)?;
        self.store(&table)?;
        Ok(table)
    }

    pub fn load(
        &self,
        fingerprint: &str,
        nodes: usize,
        config: &SimulationConfig,
    ) -> Result<Option<InfluenceTable<f64>>, PipelineError> {
        let path = self.path_for(fingerprint);
        if !path.is_file() {
            return Ok(None);
        }
        let horizon = config.horizon as usize;
        let bad = |message: String| PipelineError::Format {
            what: "influence cache".into(),
            path: path.clone(),
            message,
        };
        let mut reader = csv::Reader::from_path(&path)?;
        let mut curves = Vec::with_capacity(nodes);
        for (i, record) in reader.records().enumerate() {
            let record = record?;
            if record.len() != 4 + 2 * horizon {
                return Err(bad(format!("row {i} has {} fields", record.len())));
            }
            let num = |k: usize| -> Result<f64, PipelineError> {
                record[k].parse::<f64>().map_err(|e| bad(format!("row {i}: {e}")))
            };
            let seed: usize = record[0].parse().map_err(|_| bad(format!("row {i}: bad seed")))?;
            if seed != i {
                return Err(bad(format!("row {i} holds seed {seed}")));
            }
            curves.push(InfluenceCurve {
                seed,
                runs: record[1].parse().map_err(|_| bad(format!("row {i}: bad run count")))?,
                q_inf: num(2)?,
                se_inf: num(3)?,
                q: (0..horizon).map(|t| num(4 + t)).collect::<Result<_, _>>()?,
                se: (0..horizon).map(|t| num(4 + horizon + t)).collect::<Result<_, _>>()?,
                fingerprint: fingerprint.to_string(),
            });
        }
        if curves.len() != nodes {
            return Err(bad(format!("{} rows for {nodes} nodes", curves.len())));
        }
        Ok(Some(InfluenceTable {
            config: config.clone(),
            fingerprint: fingerprint.to_string(),
            nodes,
            curves,
        }))
    }

    pub fn store(&self, table: &InfluenceTable<f64>) -> Result<(), PipelineError> {
        fs::create_dir_all(&self.dir).map_err(|e| PipelineError::io(&self.dir, e))?;
        let path = self.path_for(&table.fingerprint);
        let partial = path.with_extension("part");
        let horizon = table.config.horizon as usize;
        {
            let mut w = csv::Writer::from_path(&partial)?;
            let mut header = vec!["seed".to_string(), "runs".into(), "q_inf".into(), "se_inf".into()];
            header.extend((1..=horizon).map(|t| format!("q{t}")));
            header.extend((1..=horizon).map(|t| format!("se{t}")));
            w.write_record(&header)?;
            for c in &table.curves {
                let mut row = vec![c.seed.to_string(), c.runs.to_string(), c.q_inf.to_string(), c.se_inf.to_string()];
                row.extend(c.q.iter().map(f64::to_string));
                row.extend(c.se.iter().map(f64::to_string));
                w.write_record(&row)?;
            }
            w.flush().map_err(|e| PipelineError::io(&partial, e))?;
        }
        fs::rename(&partial, &path).map_err(|e| PipelineError::io(&path, e))
    }
}
