//! Immutable undirected simple graphs in compressed adjacency form.
//!
//! Every other module reads networks through [`Graph`]. Node ids are dense
//! (`0..N`); the original labels from the source file are kept alongside so
//! reports can refer to nodes by the names the dataset used.

mod components;
pub mod generators;
mod io;
mod stats;

use sha2::{Digest, Sha256};
use thiserror::Error;

pub use components::{connected_components, Components};
pub use io::{load_edge_list, Delimiter, LoadReport, ParseOptions};
pub use stats::{degree_stats, epidemic_threshold, threshold_from_moments, GraphStats};

pub type NodeId = usize;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("edge list contains no edges")]
    EmptyInput,
    #[error("graph must have at least one node")]
    NoNodes,
    #[error("node {node} out of range for graph with {nodes} nodes")]
    NodeOutOfRange { node: usize, nodes: usize },
    #[error("label count {labels} does not match node count {nodes}")]
    LabelCount { labels: usize, nodes: usize },
    #[error(
        "epidemic threshold undefined: <k^2> = {mean_sq_degree} does not exceed <k> = {mean_degree}"
    )]
    DegenerateThreshold { mean_degree: f64, mean_sq_degree: f64 },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Undirected simple graph. Adjacency lists are sorted and duplicate-free,
/// contain no self-loops and are symmetric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<u32>,
    labels: Vec<String>,
}

/// Counts of input edges discarded while building a simple graph.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BuildReport {
    pub duplicates_dropped: usize,
    pub self_loops_dropped: usize,
}

impl Graph {
    /// Builds a graph on `n` nodes labelled `"0"..`, symmetrizing the edges
    /// and discarding self-loops and repeated pairs.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let labels = (0..n).map(|i| i.to_string()).collect();
        Self::build(labels, edges).map(|(g, _)| g)
    }

    /// Like [`Graph::from_edges`] but with explicit labels, also returning
    /// how many input edges were dropped.
    pub fn build<I>(labels: Vec<String>, edges: I) -> Result<(Self, BuildReport), GraphError>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let n = labels.len();
        if n == 0 {
            return Err(GraphError::NoNodes);
        }
        assert!(n <= u32::MAX as usize, "node count exceeds u32 id space");
        let mut report = BuildReport::default();
        let mut pairs: Vec<(u32, u32)> = Vec::new();
        let mut raw = 0usize;
        for (u, v) in edges {
            for node in [u, v] {
                if node >= n {
                    return Err(GraphError::NodeOutOfRange { node, nodes: n });
                }
            }
            if u == v {
                report.self_loops_dropped += 1;
                continue;
            }
            raw += 1;
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            pairs.push((a as u32, b as u32));
        }
        pairs.sort_unstable();
        pairs.dedup();
        report.duplicates_dropped = raw - pairs.len();

        let mut degree = vec![0usize; n];
        for &(a, b) in &pairs {
            degree[a as usize] += 1;
            degree[b as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut cursor = offsets[..n].to_vec();
        let mut targets = vec![0u32; offsets[n]];
        for &(a, b) in &pairs {
            targets[cursor[a as usize]] = b;
            cursor[a as usize] += 1;
            targets[cursor[b as usize]] = a;
            cursor[b as usize] += 1;
        }
        for i in 0..n {
            targets[offsets[i]..offsets[i + 1]].sort_unstable();
        }
        Ok((
            Graph {
                offsets,
                targets,
                labels,
            },
            report,
        ))
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    #[inline]
    pub fn degree(&self, node: NodeId) -> usize {
        self.offsets[node + 1] - self.offsets[node]
    }

    #[inline]
    pub fn neighbors(&self, node: NodeId) -> &[u32] {
        &self.targets[self.offsets[node]..self.offsets[node + 1]]
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.neighbors(u).binary_search(&(v as u32)).is_ok()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.node_count()).map(|i| self.degree(i)).collect()
    }

    pub fn label(&self, node: NodeId) -> &str {
        &self.labels[node]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Iterates each undirected edge once as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        (0..self.node_count()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .map(|&v| v as usize)
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// Writes the graph as a whitespace-separated edge list using the
    /// original labels.
    pub fn write_edge_list<W: std::io::Write>(&self, mut out: W) -> std::io::Result<()> {
        for (u, v) in self.edges() {
            writeln!(out, "{} {}", self.labels[u], self.labels[v])?;
        }
        Ok(())
    }

    /// SHA-256 over the adjacency structure; labels are not included.
    pub fn content_digest(&self) -> [u8; 32] {
        let mut h = Sha256::new();
        h.update((self.node_count() as u64).to_le_bytes());
        for &o in &self.offsets {
            h.update((o as u64).to_le_bytes());
        }
        for &t in &self.targets {
            h.update(t.to_le_bytes());
        }
        h.finalize().into()
    }
}
