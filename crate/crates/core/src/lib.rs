//! Spreading-influence ranking on undirected graphs.
//!
//! The crate covers graph loading and statistics, ten node centrality
//! metrics, a reproducible discrete-time SIR engine that estimates each
//! node's influence as a function of time, and the evaluation of metrics
//! against that influence.
//!
//! Numeric code is generic over [`Scalar`]; the aliases below fix the common
//! instantiations.

pub mod centrality;
pub mod epidemic;
pub mod evaluation;
pub mod graph;
pub mod scalar;

pub use centrality::{compute, compute_all, CentralityConfig, CentralityError, CentralityScores, Metric, MetricParams};
pub use epidemic::{
    exact_influence_small, influence_curves, influence_curves_for, simulate_run, EpidemicError, ExactInfluence,
    InfluenceCurve, InfluenceTable, SimulationConfig, TimePoint,
};
pub use evaluation::{
    aggregate_datasets, evaluate_metrics, pearson, precision_at, relative_gain, relative_gain_at, AggregateCell,
    EvalError, EvaluationCell, EvaluationGrid,
};
pub use graph::{degree_stats, epidemic_threshold, load_edge_list, Graph, GraphError, GraphStats, ParseOptions};
pub use scalar::{RealScalar, Scalar};

pub use num_rational::BigRational;

pub type Scores = CentralityScores<f64>;
pub type Scores32 = CentralityScores<f32>;
pub type ExactScores = CentralityScores<BigRational>;
pub type Curve = InfluenceCurve<f64>;
pub type Curve32 = InfluenceCurve<f32>;
pub type Influence = InfluenceTable<f64>;
pub type Influence32 = InfluenceTable<f32>;
pub type ExactCurve = ExactInfluence<BigRational>;
pub type Cell = EvaluationCell<f64>;
pub type Grid = EvaluationGrid<f64>;
pub type Aggregate = AggregateCell<f64>;
