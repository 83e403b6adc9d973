use super::{connected_components, Graph, GraphError};

/// Degree moments and connectivity summary of a graph.
#[derive(Clone, Debug, PartialEq)]
pub struct GraphStats {
    pub nodes: usize,
    pub edges: usize,
    pub mean_degree: f64,
    pub mean_sq_degree: f64,
    pub component_count: usize,
    pub giant_component_size: usize,
    /// `None` when the threshold is undefined (`<k^2> <= <k>`).
    pub epidemic_threshold: Option<f64>,
}

pub fn degree_stats(g: &Graph) -> GraphStats {
    let n = g.node_count();
    let sq: u64 = (0..n).map(|i| (g.degree(i) as u64).pow(2)).sum();
    let components = connected_components(g);
    let mut stats = GraphStats {
        nodes: n,
        edges: g.edge_count(),
        mean_degree: 2.0 * g.edge_count() as f64 / n as f64,
        mean_sq_degree: sq as f64 / n as f64,
        component_count: components.count(),
        giant_component_size: components.giant_size(),
        epidemic_threshold: None,
    };
    stats.epidemic_threshold = epidemic_threshold(&stats).ok();
    stats
}

/// Degree-based mean-field SIR threshold `<k> / (<k^2> - <k>)`.
pub fn epidemic_threshold(stats: &GraphStats) -> Result<f64, GraphError> {
    threshold_from_moments(stats.mean_degree, stats.mean_sq_degree)
}

pub fn threshold_from_moments(mean_degree: f64, mean_sq_degree: f64) -> Result<f64, GraphError> {
    let denom = mean_sq_degree - mean_degree;
    if !(denom > 0.0) || !(mean_degree > 0.0) {
        return Err(GraphError::DegenerateThreshold {
            mean_degree,
            mean_sq_degree,
        });
    }
    Ok(mean_degree / denom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn path_moments() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let s = degree_stats(&g);
        assert_relative_eq!(s.mean_degree, 4.0 / 3.0);
        assert_relative_eq!(s.mean_sq_degree, 2.0);
        assert_relative_eq!(s.epidemic_threshold.unwrap(), (4.0 / 3.0) / (2.0 - 4.0 / 3.0));
    }

    #[test]
    fn star_moments() {
        let g = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let s = degree_stats(&g);
        assert_eq!(s.mean_degree, 1.5);
        assert_eq!(s.mean_sq_degree, 3.0);
        assert_eq!(s.component_count, 1);
    }

    #[test]
    fn published_moments_give_published_thresholds() {
        assert!((threshold_from_moments(9.6, 179.8).unwrap() - 0.0564).abs() < 5e-5);
        assert!((threshold_from_moments(43.71, 6708.3).unwrap() - 0.00656).abs() < 5e-6);
    }

    #[test]
    fn perfect_matching_has_no_threshold() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let s = degree_stats(&g);
        assert_eq!(s.epidemic_threshold, None);
        assert!(matches!(
            epidemic_threshold(&s),
            Err(GraphError::DegenerateThreshold { .. })
        ));
    }
}
