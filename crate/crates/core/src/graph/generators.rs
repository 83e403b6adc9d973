//! Small deterministic and random graph families used by tests and demos.

use rand::Rng;

use super::Graph;

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
}

pub fn cycle(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
}

/// Star with node 0 as the hub and `leaves` leaves.
pub fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).expect("valid star")
}

pub fn complete(n: usize) -> Graph {
    let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
    Graph::from_edges(n, edges).expect("valid complete graph")
}

/// G(n, p) random graph.
pub fn erdos_renyi<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(p) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, edges).expect("valid random graph")
}

/// Preferential attachment: each new node links to `m` distinct existing
/// nodes chosen proportionally to degree, starting from a clique on `m + 1`
/// nodes.
pub fn barabasi_albert<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Graph {
    assert!(m >= 1 && n > m, "need n > m >= 1");
    let mut edges = Vec::new();
    let mut endpoints: Vec<usize> = Vec::new();
    for i in 0..=m {
        for j in i + 1..=m {
            edges.push((i, j));
            endpoints.push(i);
            endpoints.push(j);
        }
    }
    let mut chosen = Vec::with_capacity(m);
    for v in m + 1..n {
        chosen.clear();
        while chosen.len() < m {
            let u = endpoints[rng.random_range(0..endpoints.len())];
            if !chosen.contains(&u) {
                chosen.push(u);
            }
        }
        for &u in &chosen {
            edges.push((u, v));
            endpoints.push(u);
            endpoints.push(v);
        }
    }
    Graph::from_edges(n, edges).expect("valid preferential attachment graph")
}

/// Preferential attachment with triad formation: after each degree-driven
/// link, with probability `triad_p` the next link closes a triangle with a
/// random neighbour of the previous target.
pub fn holme_kim<R: Rng + ?Sized>(n: usize, m: usize, triad_p: f64, rng: &mut R) -> Graph {
    assert!(m >= 1 && n > m, "need n > m >= 1");
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut endpoints: Vec<usize> = Vec::new();
    let link = |a: usize, b: usize, adj: &mut Vec<Vec<usize>>, endpoints: &mut Vec<usize>| {
        adj[a].push(b);
        adj[b].push(a);
        endpoints.push(a);
        endpoints.push(b);
    };
    for i in 0..=m {
        for j in i + 1..=m {
            link(i, j, &mut adj, &mut endpoints);
        }
    }
    for v in m + 1..n {
        let mut last: Option<usize> = None;
        let mut added = 0;
        while added < m {
            let candidate = match last {
                Some(prev) if rng.random_bool(triad_p) => {
                    let nbrs = &adj[prev];
                    nbrs[rng.random_range(0..nbrs.len())]
                }
                _ => endpoints[rng.random_range(0..endpoints.len())],
            };
            if candidate == v || adj[v].contains(&candidate) {
                // fall back to a preferential pick on the next attempt
                last = None;
                continue;
            }
            link(candidate, v, &mut adj, &mut endpoints);
            last = Some(candidate);
            added += 1;
        }
    }
    let edges: Vec<(usize, usize)> = adj
        .iter()
        .enumerate()
        .flat_map(|(u, nbrs)| nbrs.iter().map(move |&v| (u, v)))
        .collect();
    Graph::from_edges(n, edges).expect("valid clustered graph")
}
