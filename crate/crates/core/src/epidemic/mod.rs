//! Discrete-time SIR spreading from a single seed.
//!
//! [`influence_curves`] estimates, for each seed node, the expected fraction
//! of nodes ever infected after `t` steps (`q(t)`) and at absorption
//! (`q_inf`). Run `j` of seed `i` always draws from the same random stream,
//! and per-run counts are accumulated as integers, so results are
//! bit-identical for any thread count or scheduling.
//!
//! [`exact_influence_small`] enumerates the process exactly on tiny graphs
//! and serves as the reference for the Monte Carlo engine.

mod exact;
mod rng;
mod sim;

use std::fmt;
use std::str::FromStr;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::graph::Graph;

pub use exact::{exact_influence_small, ExactInfluence, EXACT_MAX_NODES};
pub use rng::{run_rng, GENERATOR_ID};
pub use sim::{influence_curves, influence_curves_for, simulate_run, RunOutcome};

pub const ENGINE_VERSION: &str = "sir-sync-1";
pub const DEFAULT_RUNS: u32 = 1000;
pub const DEFAULT_HORIZON: u32 = 30;

#[derive(Debug, Error, PartialEq)]
pub enum EpidemicError {
    #[error("{name} = {value} is not a probability in [0, 1]")]
    InvalidProbability { name: &'static str, value: f64 },
    #[error("lambda ratio {ratio} with lambda_c = {lambda_c} and mu = {mu} gives beta = {beta} > 1")]
    BetaOutOfRange { ratio: f64, lambda_c: f64, mu: f64, beta: f64 },
    #[error("lambda ratio must be positive, got {0}")]
    InvalidRatio(f64),
    #[error("run count must be at least 1")]
    NoRuns,
    #[error("horizon must be at least 1 step")]
    NoHorizon,
    #[error("seed node {node} out of range for graph with {nodes} nodes")]
    SeedOutOfRange { node: usize, nodes: usize },
    #[error("exact enumeration supports at most {max} nodes, graph has {nodes}")]
    TooLargeForExact { nodes: usize, max: usize },
    #[error("exact enumeration requires mu = 1, got {0}")]
    ExactNeedsFullRecovery(f64),
}

fn check_probability(name: &'static str, value: f64) -> Result<(), EpidemicError> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(EpidemicError::InvalidProbability { name, value })
    }
}

/// Parameters of one batch of SIR simulations.
#[derive(Clone, Debug, PartialEq)]
pub struct SimulationConfig {
    /// Per-step infection probability along each infected-susceptible edge.
    pub beta: f64,
    /// Per-step recovery probability of an infected node.
    pub mu: f64,
    pub runs: u32,
    /// Number of recorded steps; `q_inf` is always measured at absorption.
    pub horizon: u32,
    pub master_seed: u64,
}

impl SimulationConfig {
    pub fn new(beta: f64, mu: f64, runs: u32, horizon: u32, master_seed: u64) -> Result<Self, EpidemicError> {
        let config = SimulationConfig {
            beta,
            mu,
            runs,
            horizon,
            master_seed,
        };
        config.validate()?;
        Ok(config)
    }

    /// Sets `beta = ratio * lambda_c * mu`. A product above 1 is an error,
    /// never clamped.
    pub fn from_lambda_ratio(
        ratio: f64,
        lambda_c: f64,
        mu: f64,
        runs: u32,
        horizon: u32,
        master_seed: u64,
    ) -> Result<Self, EpidemicError> {
        if !(ratio > 0.0) {
            return Err(EpidemicError::InvalidRatio(ratio));
        }
        check_probability("mu", mu)?;
        let beta = ratio * lambda_c * mu;
        if beta > 1.0 {
            return Err(EpidemicError::BetaOutOfRange {
                ratio,
                lambda_c,
                mu,
                beta,
            });
        }
        Self::new(beta, mu, runs, horizon, master_seed)
    }

    pub fn validate(&self) -> Result<(), EpidemicError> {
        check_probability("beta", self.beta)?;
        check_probability("mu", self.mu)?;
        if self.runs == 0 {
            return Err(EpidemicError::NoRuns);
        }
        if self.horizon == 0 {
            return Err(EpidemicError::NoHorizon);
        }
        Ok(())
    }

    /// Cache key over graph structure, parameters, engine and generator.
    pub fn fingerprint(&self, g: &Graph) -> String {
        let mut h = Sha256::new();
        h.update(g.content_digest());
        h.update(self.beta.to_bits().to_le_bytes());
        h.update(self.mu.to_bits().to_le_bytes());
        h.update(self.runs.to_le_bytes());
        h.update(self.horizon.to_le_bytes());
        h.update(self.master_seed.to_le_bytes());
        h.update(ENGINE_VERSION.as_bytes());
        h.update(GENERATOR_ID.as_bytes());
        hex::encode(&h.finalize()[..12])
    }
}

/// A point on the time axis: a finite step count or the absorbing state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TimePoint {
    Step(u32),
    Infinity,
}

impl fmt::Display for TimePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TimePoint::Step(t) => write!(f, "{t}"),
            TimePoint::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for TimePoint {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(TimePoint::Infinity),
            other => other
                .parse::<u32>()
                .map(TimePoint::Step)
                .map_err(|_| format!("invalid time point {other:?}")),
        }
    }
}

/// Estimated influence of one seed node.
#[derive(Clone, Debug, PartialEq)]
pub struct InfluenceCurve<T> {
    pub seed: usize,
    /// `q[t - 1]` is the mean ever-infected fraction after `t` steps.
    pub q: Vec<T>,
    pub q_inf: T,
    /// Standard errors of the run means, same layout as `q`.
    pub se: Vec<f64>,
    pub se_inf: f64,
    pub runs: u32,
    pub fingerprint: String,
}

impl<T: Clone> InfluenceCurve<T> {
    /// `None` for steps beyond the recorded horizon or for step 0.
    pub fn at(&self, time: TimePoint) -> Option<T> {
        match time {
            TimePoint::Infinity => Some(self.q_inf.clone()),
            TimePoint::Step(0) => None,
            TimePoint::Step(t) => self.q.get(t as usize - 1).cloned(),
        }
    }
}

/// Influence curves for a set of seeds simulated under one configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct InfluenceTable<T> {
    pub config: SimulationConfig,
    pub fingerprint: String,
    pub nodes: usize,
    pub curves: Vec<InfluenceCurve<T>>,
}

impl<T: Clone> InfluenceTable<T> {
    /// Influence of every curve at `time`, in curve order.
    pub fn values_at(&self, time: TimePoint) -> Option<Vec<T>> {
        self.curves.iter().map(|c| c.at(time)).collect()
    }

    pub fn horizon(&self) -> u32 {
        self.config.horizon
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::path;

    #[test]
    fn ratio_to_beta() {
        let c = SimulationConfig::from_lambda_ratio(2.0, 0.1, 1.0, 10, 5, 0).unwrap();
        assert!((c.beta - 0.2).abs() < 1e-15);
    }

    #[test]
    fn beta_above_one_is_rejected() {
        let err = SimulationConfig::from_lambda_ratio(10.0, 0.2, 1.0, 10, 5, 0).unwrap_err();
        assert!(matches!(err, EpidemicError::BetaOutOfRange { .. }));
    }

    #[test]
    fn invalid_configs() {
        assert!(SimulationConfig::new(0.5, 1.0, 0, 5, 0).is_err());
        assert!(SimulationConfig::new(0.5, 1.0, 1, 0, 0).is_err());
        assert!(SimulationConfig::new(-0.1, 1.0, 1, 1, 0).is_err());
        assert!(SimulationConfig::new(0.5, 1.1, 1, 1, 0).is_err());
        assert!(SimulationConfig::from_lambda_ratio(0.0, 0.1, 1.0, 1, 1, 0).is_err());
    }

    #[test]
    fn fingerprint_tracks_every_input() {
        let g = path(4);
        let base = SimulationConfig::new(0.3, 1.0, 100, 10, 7).unwrap();
        let fp = base.fingerprint(&g);
        assert_eq!(fp, base.fingerprint(&g));
        let variants = [
            SimulationConfig { beta: 0.31, ..base.clone() },
            SimulationConfig { mu: 0.9, ..base.clone() },
            SimulationConfig { runs: 101, ..base.clone() },
            SimulationConfig { horizon: 11, ..base.clone() },
            SimulationConfig { master_seed: 8, ..base.clone() },
        ];
        for v in variants {
            assert_ne!(v.fingerprint(&g), fp);
        }
        assert_ne!(base.fingerprint(&path(5)), fp);
    }

    #[test]
    fn time_points_parse_and_order() {
        assert_eq!("inf".parse::<TimePoint>().unwrap(), TimePoint::Infinity);
        assert_eq!("5".parse::<TimePoint>().unwrap(), TimePoint::Step(5));
        assert!("x".parse::<TimePoint>().is_err());
        assert!(TimePoint::Step(1000) < TimePoint::Infinity);
        assert_eq!(TimePoint::Infinity.to_string(), "inf");
    }
}
