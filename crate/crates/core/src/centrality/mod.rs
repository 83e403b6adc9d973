//! Node-scoring metrics.
//!
//! Local metrics (degree, social capital, H-index, LocalRank, clustering) and
//! the counting-based global ones (k-core, betweenness, closeness) are generic
//! over [`Scalar`], so they can be evaluated in exact rational arithmetic.
//! Eigenvector centrality needs a floating-point type.

mod kcore;
mod local;
mod paths;
mod spectral;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{degree_stats, Graph, GraphError};
use crate::scalar::{RealScalar, Scalar};

pub use kcore::k_core;
pub use local::{clustering_coefficient, degree, h_index, local_rank, second_neighborhood_sizes, social_capital};
pub use paths::{betweenness, closeness};
pub use spectral::{dynamics_sensitive, eigenvector, EigenOptions};

#[derive(Debug, Error)]
pub enum CentralityError {
    #[error("{name} = {value} is not a probability in [0, 1]")]
    InvalidProbability { name: &'static str, value: f64 },
    #[error("eigenvector centrality is undefined on a graph without edges")]
    NoEdges,
    #[error("default dynamics-sensitive beta needs the epidemic threshold: {0}")]
    Threshold(#[from] GraphError),
    #[error("unknown metric {0:?}")]
    UnknownMetric(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Metric {
    Degree,
    SocialCapital,
    HIndex,
    LocalRank,
    DynamicsSensitive,
    KCore,
    Eigenvector,
    Betweenness,
    Closeness,
    Clustering,
}

impl Metric {
    pub const ALL: [Metric; 10] = [
        Metric::Degree,
        Metric::SocialCapital,
        Metric::HIndex,
        Metric::LocalRank,
        Metric::DynamicsSensitive,
        Metric::KCore,
        Metric::Eigenvector,
        Metric::Betweenness,
        Metric::Closeness,
        Metric::Clustering,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Metric::Degree => "degree",
            Metric::SocialCapital => "social_capital",
            Metric::HIndex => "h_index",
            Metric::LocalRank => "local_rank",
            Metric::DynamicsSensitive => "dsc",
            Metric::KCore => "k_core",
            Metric::Eigenvector => "eigenvector",
            Metric::Betweenness => "betweenness",
            Metric::Closeness => "closeness",
            Metric::Clustering => "clustering",
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Metric {
    type Err = CentralityError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Metric::ALL
            .into_iter()
            .find(|m| m.id() == s)
            .ok_or_else(|| CentralityError::UnknownMetric(s.to_string()))
    }
}

/// Parameters a score vector was computed with.
#[derive(Clone, Debug, PartialEq)]
pub enum MetricParams {
    None,
    Dynamics { beta: f64, mu: f64, steps: u32 },
    Eigen { tol: f64, max_iter: usize, iterations: usize, converged: bool },
}

impl fmt::Display for MetricParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricParams::None => Ok(()),
            MetricParams::Dynamics { beta, mu, steps } => write!(f, "beta={beta};mu={mu};t={steps}"),
            MetricParams::Eigen {
                tol,
                max_iter,
                iterations,
                converged,
            } => write!(
                f,
                "tol={tol:e};max_iter={max_iter};iterations={iterations};converged={converged}"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CentralityScores<T> {
    pub metric: Metric,
    pub params: MetricParams,
    pub scores: Vec<T>,
}

impl<T> CentralityScores<T> {
    pub(crate) fn plain(metric: Metric, scores: Vec<T>) -> Self {
        CentralityScores {
            metric,
            params: MetricParams::None,
            scores,
        }
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }
}

/// Settings for the parameterised metrics.
#[derive(Clone, Debug, PartialEq)]
pub struct CentralityConfig {
    /// Infection probability for DSC; `None` uses the graph's epidemic threshold.
    pub dsc_beta: Option<f64>,
    pub dsc_mu: f64,
    pub dsc_steps: u32,
    pub eigen: EigenOptions,
}

impl Default for CentralityConfig {
    fn default() -> Self {
        CentralityConfig {
            dsc_beta: None,
            dsc_mu: 1.0,
            dsc_steps: 5,
            eigen: EigenOptions::default(),
        }
    }
}

pub(crate) fn check_probability(name: &'static str, value: f64) -> Result<(), CentralityError> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(CentralityError::InvalidProbability { name, value })
    }
}

/// Computes one metric with the given configuration.
pub fn compute<T: RealScalar>(
    g: &Graph,
    metric: Metric,
    config: &CentralityConfig,
) -> Result<CentralityScores<T>, CentralityError> {
    Ok(match metric {
        Metric::Degree => degree(g),
        Metric::SocialCapital => social_capital(g),
        Metric::HIndex => h_index(g),
        Metric::LocalRank => local_rank(g),
        Metric::DynamicsSensitive => {
            let beta = match config.dsc_beta {
                Some(b) => b,
                None => crate::graph::epidemic_threshold(&degree_stats(g))?,
            };
            dynamics_sensitive(g, beta, config.dsc_mu, config.dsc_steps)?
        }
        Metric::KCore => k_core(g),
        Metric::Eigenvector => eigenvector(g, &config.eigen)?,
        Metric::Betweenness => betweenness(g),
        Metric::Closeness => closeness(g),
        Metric::Clustering => clustering_coefficient(g),
    })
}

pub fn compute_all<T: RealScalar>(
    g: &Graph,
    metrics: &[Metric],
    config: &CentralityConfig,
) -> Result<Vec<CentralityScores<T>>, CentralityError> {
    metrics.iter().map(|&m| compute(g, m, config)).collect()
}

pub(crate) fn count<T: Scalar>(n: usize) -> T {
    T::from_count(n as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators;

    #[test]
    fn metric_ids_round_trip() {
        for m in Metric::ALL {
            assert_eq!(m.id().parse::<Metric>().unwrap(), m);
        }
        assert!("pagerank".parse::<Metric>().is_err());
    }

    #[test]
    fn compute_all_produces_one_vector_per_metric() {
        // lambda_c = 1/2
        let g = generators::star(5);
        let scores = compute_all::<f64>(&g, &Metric::ALL, &CentralityConfig::default()).unwrap();
        assert_eq!(scores.len(), 10);
        for s in &scores {
            assert_eq!(s.len(), 6);
            assert!(s.scores.iter().all(|x| x.is_finite()));
        }
        let dsc = scores.iter().find(|s| s.metric == Metric::DynamicsSensitive).unwrap();
        assert!(matches!(dsc.params, MetricParams::Dynamics { mu, steps: 5, .. } if mu == 1.0));
    }

    #[test]
    fn default_dsc_beta_fails_on_degenerate_threshold() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let err = compute::<f64>(&g, Metric::DynamicsSensitive, &CentralityConfig::default()).unwrap_err();
        assert!(matches!(err, CentralityError::Threshold(_)));
    }

    #[test]
    fn params_render_for_csv() {
        let p = MetricParams::Dynamics {
            beta: 0.5,
            mu: 1.0,
            steps: 3,
        };
        assert_eq!(p.to_string(), "beta=0.5;mu=1;t=3");
        assert_eq!(MetricParams::None.to_string(), "");
    }
}
