use fastinf_core::centrality::{
    betweenness, closeness, degree, dynamics_sensitive, eigenvector, h_index, k_core, social_capital, EigenOptions,
};
use fastinf_core::epidemic::{influence_curves, TimePoint};
use fastinf_core::evaluation::{precision_at, relative_gain_at, top_k};
use fastinf_core::graph::{connected_components, degree_stats, load_edge_list, ParseOptions};
use fastinf_core::{evaluate_metrics, pearson, CentralityScores, Graph, Metric, MetricParams, SimulationConfig};
use proptest::prelude::*;

fn graph_strategy(max_nodes: usize) -> impl Strategy<Value = Graph> {
    (1..=max_nodes).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 0..(3 * n)).prop_map(move |edges| Graph::from_edges(n, edges).unwrap())
    })
}

fn connected_graph_strategy(max_nodes: usize) -> impl Strategy<Value = Graph> {
    // a random spanning tree plus extra edges
    (2..=max_nodes).prop_flat_map(|n| {
        (
            prop::collection::vec(any::<prop::sample::Index>(), n - 1),
            prop::collection::vec((0..n, 0..n), 0..(2 * n)),
        )
            .prop_map(move |(parents, extra)| {
                let tree = parents.iter().enumerate().map(|(i, p)| (i + 1, p.index(i + 1)));
                Graph::from_edges(n, tree.chain(extra)).unwrap()
            })
    })
}

proptest! {
    #[test]
    fn coreness_h_index_degree_sandwich(g in graph_strategy(40)) {
        let c = k_core::<f64>(&g).scores;
        let h = h_index::<f64>(&g).scores;
        let d = degree::<f64>(&g).scores;
        for i in 0..g.node_count() {
            prop_assert!(c[i] <= h[i] && h[i] <= d[i]);
        }
    }

    #[test]
    fn degree_sum_is_twice_edge_count(g in graph_strategy(40)) {
        let sum: usize = g.degrees().iter().sum();
        prop_assert_eq!(sum, 2 * g.edge_count());
        let s = degree_stats(&g);
        prop_assert!(s.mean_sq_degree + 1e-12 >= s.mean_degree * s.mean_degree);
    }

    #[test]
    fn reload_is_identity(g in graph_strategy(30)) {
        let mut text = Vec::new();
        g.write_edge_list(&mut text).unwrap();
        let again = load_edge_list(&text[..], &ParseOptions::default());
        // isolated nodes do not survive an edge list, so compare on the edge set
        if g.degrees().iter().all(|&k| k > 0) && g.edge_count() > 0 {
            let again = again.unwrap().graph;
            prop_assert_eq!(again.edges().collect::<Vec<_>>().len(), g.edge_count());
            let mut text2 = Vec::new();
            again.write_edge_list(&mut text2).unwrap();
            let third = load_edge_list(&text2[..], &ParseOptions::default()).unwrap().graph;
            prop_assert_eq!(third, again);
        }
    }

    #[test]
    fn component_sizes_partition_nodes(g in graph_strategy(40)) {
        let c = connected_components(&g);
        prop_assert_eq!(c.sizes.iter().sum::<usize>(), g.node_count());
        for (u, v) in g.edges() {
            prop_assert_eq!(c.membership[u], c.membership[v]);
        }
    }

    #[test]
    fn social_capital_on_regular_graphs(n in 3usize..30, r in 0usize..3) {
        // cycle (r=2), perfect matching (r=1) or empty graph (r=0)
        let n = if r == 1 { n * 2 } else { n };
        let edges: Vec<(usize, usize)> = match r {
            0 => vec![],
            1 => (0..n / 2).map(|i| (2 * i, 2 * i + 1)).collect(),
            _ => (0..n).map(|i| (i, (i + 1) % n)).collect(),
        };
        let g = Graph::from_edges(n, edges).unwrap();
        for s in social_capital::<f64>(&g).scores {
            prop_assert_eq!(s, (r + r * r) as f64);
        }
    }

    #[test]
    fn dsc_grows_with_t(g in graph_strategy(25), beta in 0.0f64..=1.0, mu in 0.0f64..=1.0, t in 0u32..6) {
        let a = dynamics_sensitive::<f64>(&g, beta, mu, t).unwrap().scores;
        let b = dynamics_sensitive::<f64>(&g, beta, mu, t + 1).unwrap().scores;
        for (x, y) in a.iter().zip(&b) {
            prop_assert!(x <= y);
        }
    }

    #[test]
    fn dsc_unit_is_social_capital(g in graph_strategy(40)) {
        prop_assert_eq!(
            dynamics_sensitive::<f64>(&g, 1.0, 1.0, 1).unwrap().scores,
            social_capital::<f64>(&g).scores
        );
    }

    #[test]
    fn eigenvector_unit_and_nonnegative(g in graph_strategy(30)) {
        prop_assume!(g.edge_count() > 0);
        let e = eigenvector::<f64>(&g, &EigenOptions::default()).unwrap().scores;
        let norm: f64 = e.iter().map(|x| x * x).sum::<f64>().sqrt();
        prop_assert!((norm - 1.0).abs() < 1e-9);
        prop_assert!(e.iter().all(|&x| x >= 0.0));
    }

    #[test]
    fn leaves_have_no_betweenness(g in graph_strategy(30)) {
        let b = betweenness::<f64>(&g).scores;
        for i in 0..g.node_count() {
            if g.degree(i) <= 1 {
                prop_assert_eq!(b[i], 0.0);
            }
        }
    }

    #[test]
    fn closeness_in_unit_interval_when_connected(g in connected_graph_strategy(30)) {
        for c in closeness::<f64>(&g).scores {
            prop_assert!(c > 0.0 && c <= 1.0);
        }
    }

    #[test]
    fn curves_monotone_and_bounded(g in graph_strategy(12), beta in 0.0f64..=1.0, mu in 0.05f64..=1.0, seed in any::<u64>()) {
        let config = SimulationConfig::new(beta, mu, 20, 8, seed).unwrap();
        let table = influence_curves::<f64>(&g, &config).unwrap();
        let n = g.node_count() as f64;
        for c in &table.curves {
            prop_assert!(c.q.windows(2).all(|w| w[0] <= w[1]));
            prop_assert!(c.q[0] >= 1.0 / n - 1e-15);
            prop_assert!(c.q.iter().all(|&x| x <= 1.0));
            prop_assert!(*c.q.last().unwrap() <= c.q_inf);
        }
    }

    #[test]
    fn pearson_affine_invariance(
        pairs in prop::collection::vec((-100.0f64..100.0, -100.0f64..100.0), 3..40),
        a in 0.1f64..10.0,
        b in -50.0f64..50.0,
    ) {
        let x: Vec<f64> = pairs.iter().map(|p| p.0).collect();
        let y: Vec<f64> = pairs.iter().map(|p| p.1).collect();
        if let Ok(r) = pearson(&x, &y) {
            let scaled: Vec<f64> = x.iter().map(|v| a * v + b).collect();
            let flipped: Vec<f64> = x.iter().map(|v| -a * v + b).collect();
            prop_assert!((pearson(&scaled, &y).unwrap() - r).abs() < 1e-9);
            prop_assert!((pearson(&flipped, &y).unwrap() + r).abs() < 1e-9);
            prop_assert!((-1.0..=1.0).contains(&r));
        }
    }

    #[test]
    fn precision_ignores_monotone_transforms(
        values in prop::collection::vec((0u32..50, 0u32..50), 1..200),
        fraction in 0.001f64..=1.0,
    ) {
        let scores: Vec<f64> = values.iter().map(|v| v.0 as f64).collect();
        let truth: Vec<f64> = values.iter().map(|v| v.1 as f64).collect();
        let transformed: Vec<f64> = scores.iter().map(|s| (s / 7.0).exp() + 3.0 * s).collect();
        let p = precision_at(&scores, &truth, fraction).unwrap();
        prop_assert_eq!(p, precision_at(&transformed, &truth, fraction).unwrap());
        prop_assert!((0.0..=1.0).contains(&p));
    }

    #[test]
    fn relative_gain_never_negative(
        values in prop::collection::vec((0.0f64..1.0, 0.0f64..1.0), 1..100),
        fraction in 0.01f64..=1.0,
    ) {
        let q_t: Vec<f64> = values.iter().map(|v| v.0 + 1e-3).collect();
        let q_inf: Vec<f64> = values.iter().map(|v| v.1).collect();
        prop_assert!(relative_gain_at(&q_t, &q_inf, fraction).unwrap() >= 0.0);
        prop_assert_eq!(relative_gain_at(&q_t, &q_t, fraction).unwrap(), 0.0);
    }

    #[test]
    fn top_k_is_sorted_prefix(values in prop::collection::vec(0u8..10, 0..60), k in 0usize..70) {
        let picked = top_k(&values, k);
        prop_assert_eq!(picked.len(), k.min(values.len()));
        for w in picked.windows(2) {
            prop_assert!(values[w[0]] > values[w[1]] || (values[w[0]] == values[w[1]] && w[0] < w[1]));
        }
        if let Some(&last) = picked.last() {
            for i in 0..values.len() {
                if !picked.contains(&i) {
                    prop_assert!(values[i] < values[last] || (values[i] == values[last] && i > last));
                }
            }
        }
    }

    #[test]
    fn one_best_metric_per_cell(raw in prop::collection::vec(prop::collection::vec(0.0f64..1.0, 12), 2..5)) {
        let g = Graph::from_edges(12, (1..12).map(|i| (i - 1, i))).unwrap();
        let config = SimulationConfig::new(0.5, 1.0, 30, 4, 1).unwrap();
        let table = influence_curves::<f64>(&g, &config).unwrap();
        let scores: Vec<CentralityScores<f64>> = raw
            .into_iter()
            .zip(Metric::ALL)
            .map(|(scores, metric)| CentralityScores { metric, params: MetricParams::None, scores })
            .collect();
        let times = [TimePoint::Step(1), TimePoint::Step(3), TimePoint::Infinity];
        let grid = evaluate_metrics("p", &scores, &table, 1.0, &times, 0.25).unwrap();
        for &t in &times {
            let cells: Vec<_> = grid.cells.iter().filter(|c| c.time == t).collect();
            for c in &cells {
                if let Some(v) = c.normalized_r {
                    prop_assert!(v <= 1.0);
                }
                if let Some(v) = c.normalized_precision {
                    prop_assert!(v <= 1.0);
                }
            }
            if cells.iter().any(|c| c.normalized_r.is_some()) {
                prop_assert!(cells.iter().any(|c| c.normalized_r == Some(1.0)));
            }
        }
    }
}
