use super::{check_probability, count, CentralityError, CentralityScores, Metric, MetricParams};
use crate::graph::Graph;
use crate::scalar::{RealScalar, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct EigenOptions {
    /// Stop once successive iterates differ by less than this in max-norm.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for EigenOptions {
    fn default() -> Self {
        EigenOptions {
            tol: 1e-12,
            max_iter: 10_000,
        }
    }
}

/// Leading eigenvector of the adjacency matrix, unit Euclidean norm.
///
/// Power iteration runs on `A + I`: same eigenvectors, but the leading
/// eigenvalue stays strictly dominant on bipartite graphs where plain `A`
/// would oscillate. Starts from the uniform vector. On disconnected graphs
/// nodes outside the component with the largest eigenvalue decay toward zero.
/// Non-convergence within `max_iter` is reported in the params, not as an
/// error.
pub fn eigenvector<T: RealScalar>(g: &Graph, options: &EigenOptions) -> Result<CentralityScores<T>, CentralityError> {
    let n = g.node_count();
    if g.edge_count() == 0 {
        return Err(CentralityError::NoEdges);
    }
    let tol = T::from_real(options.tol);
    let mut x = vec![T::one() / count::<T>(n).sqrt(); n];
    let mut next = vec![T::zero(); n];
    let mut iterations = 0;
    let mut converged = false;
    while iterations < options.max_iter {
        iterations += 1;
        for (i, slot) in next.iter_mut().enumerate() {
            let mut acc = x[i];
            for &j in g.neighbors(i) {
                acc += x[j as usize];
            }
            *slot = acc;
        }
        let norm = next.iter().fold(T::zero(), |a, &v| a + v * v).sqrt();
        let mut diff = T::zero();
        for (xi, &ni) in x.iter_mut().zip(&next) {
            let v = ni / norm;
            diff = diff.max((v - *xi).abs());
            *xi = v;
        }
        if diff < tol {
            converged = true;
            break;
        }
    }
    Ok(CentralityScores {
        metric: Metric::Eigenvector,
        params: MetricParams::Eigen {
            tol: options.tol,
            max_iter: options.max_iter,
            iterations,
            converged,
        },
        scores: x,
    })
}

/// Dynamics-sensitive centrality
/// `s(t) = (bA + bAH + ... + bAH^t)^T e` with `H = bA + (1 - mu) I`,
/// evaluated by repeated sparse products in O(t L).
pub fn dynamics_sensitive<T: Scalar>(g: &Graph, beta: f64, mu: f64, steps: u32) -> Result<CentralityScores<T>, CentralityError> {
    check_probability("beta", beta)?;
    check_probability("mu", mu)?;
    let n = g.node_count();
    let b = T::from_real(beta);
    let stay = T::one() - T::from_real(mu);
    let mut term: Vec<T> = (0..n).map(|i| b.clone() * count::<T>(g.degree(i))).collect();
    let mut total = term.clone();
    let mut next = vec![T::zero(); n];
    for _ in 0..steps {
        for (i, slot) in next.iter_mut().enumerate() {
            let mut acc = T::zero();
            for &j in g.neighbors(i) {
                acc += term[j as usize].clone();
            }
            *slot = b.clone() * acc + stay.clone() * term[i].clone();
        }
        std::mem::swap(&mut term, &mut next);
        for (s, u) in total.iter_mut().zip(&term) {
            *s += u.clone();
        }
    }
    Ok(CentralityScores {
        metric: Metric::DynamicsSensitive,
        params: MetricParams::Dynamics { beta, mu, steps },
        scores: total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centrality::social_capital;
    use crate::graph::generators::{complete, path, star};
    use approx::assert_relative_eq;

    #[test]
    fn star_hub_to_leaf_ratio() {
        let e = eigenvector::<f64>(&star(3), &EigenOptions::default()).unwrap();
        assert_relative_eq!(e.scores[0] / e.scores[1], 3f64.sqrt(), epsilon = 1e-9);
        let norm: f64 = e.scores.iter().map(|x| x * x).sum();
        assert_relative_eq!(norm, 1.0, epsilon = 1e-12);
        assert!(matches!(e.params, MetricParams::Eigen { converged: true, .. }));
    }

    #[test]
    fn path_eigenvector() {
        let e = eigenvector::<f64>(&path(3), &EigenOptions::default()).unwrap().scores;
        assert_relative_eq!(e[1] / e[0], 2f64.sqrt(), epsilon = 1e-9);
        assert_relative_eq!(e[0], e[2], epsilon = 1e-12);
    }

    #[test]
    fn triangle_is_uniform() {
        let e = eigenvector::<f64>(&complete(3), &EigenOptions::default()).unwrap().scores;
        for x in e {
            assert_relative_eq!(x, 1.0 / 3f64.sqrt(), epsilon = 1e-12);
        }
    }

    #[test]
    fn edgeless_graph_errors() {
        let g = Graph::from_edges(3, std::iter::empty()).unwrap();
        assert!(matches!(eigenvector::<f64>(&g, &EigenOptions::default()), Err(CentralityError::NoEdges)));
    }

    #[test]
    fn iteration_cap_reports_non_convergence() {
        let opts = EigenOptions { tol: 0.0, max_iter: 3 };
        let e = eigenvector::<f64>(&path(5), &opts).unwrap();
        assert!(matches!(e.params, MetricParams::Eigen { iterations: 3, converged: false, .. }));
    }

    #[test]
    fn dsc_on_path() {
        let s0 = dynamics_sensitive::<f64>(&path(3), 0.5, 1.0, 0).unwrap().scores;
        assert_eq!(s0, vec![0.5, 1.0, 0.5]);
        let s1 = dynamics_sensitive::<f64>(&path(3), 0.5, 1.0, 1).unwrap().scores;
        assert_eq!(s1, vec![1.0, 1.5, 1.0]);
    }

    #[test]
    fn dsc_unit_parameters_equal_social_capital() {
        let g = star(4);
        let dsc = dynamics_sensitive::<f64>(&g, 1.0, 1.0, 1).unwrap().scores;
        assert_eq!(dsc, social_capital::<f64>(&g).scores);
    }

    #[test]
    fn dsc_partial_recovery_keeps_mass() {
        // mu = 0 keeps every term and adds the neighbour spread
        let s = dynamics_sensitive::<f64>(&path(2), 0.5, 0.0, 1).unwrap().scores;
        // u0 = [0.5, 0.5]; u1 = 0.5*A*u0 + u0 = [0.75, 0.75]
        assert_eq!(s, vec![1.25, 1.25]);
    }

    #[test]
    fn dsc_rejects_bad_probabilities() {
        assert!(dynamics_sensitive::<f64>(&path(3), 1.5, 1.0, 1).is_err());
        assert!(dynamics_sensitive::<f64>(&path(3), 0.5, -0.1, 1).is_err());
        assert!(dynamics_sensitive::<f64>(&path(3), f64::NAN, 1.0, 1).is_err());
    }
}
