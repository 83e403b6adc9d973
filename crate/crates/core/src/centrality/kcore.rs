use super::{count, CentralityScores, Metric};
use crate::graph::Graph;
use crate::scalar::Scalar;

/// Coreness of every node (bucket-based pruning, O(N + L)).
///
/// A node's score is the pruning stage `k` at which it is removed; isolated
/// nodes get 0.
pub fn k_core<T: Scalar>(g: &Graph) -> CentralityScores<T> {
    let n = g.node_count();
    let mut deg: Vec<usize> = g.degrees();
    let max_deg = deg.iter().copied().max().unwrap_or(0);

    // bin[d] = start of degree-d block in `order`
    let mut bin = vec![0usize; max_deg + 2];
    for &d in &deg {
        bin[d + 1] += 1;
    }
    for d in 1..bin.len() {
        bin[d] += bin[d - 1];
    }
    let mut pos = vec![0usize; n];
    let mut order = vec![0usize; n];
    let mut next = bin.clone();
    for v in 0..n {
        pos[v] = next[deg[v]];
        order[pos[v]] = v;
        next[deg[v]] += 1;
    }

    for i in 0..n {
        let v = order[i];
        for &u in g.neighbors(v) {
            let u = u as usize;
            if deg[u] > deg[v] {
                let du = deg[u];
                let pu = pos[u];
                let pw = bin[du];
                let w = order[pw];
                if u != w {
                    order.swap(pu, pw);
                    pos[u] = pw;
                    pos[w] = pu;
                }
                bin[du] += 1;
                deg[u] -= 1;
            }
        }
    }
    CentralityScores::plain(Metric::KCore, deg.into_iter().map(count).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::{complete, path, star};

    #[test]
    fn small_cases() {
        assert_eq!(k_core::<f64>(&complete(3)).scores, vec![2.0; 3]);
        assert_eq!(k_core::<f64>(&star(3)).scores, vec![1.0; 4]);
        assert_eq!(k_core::<f64>(&path(4)).scores, vec![1.0; 4]);
        let pendant = Graph::from_edges(4, [(0, 1), (1, 2), (0, 2), (0, 3)]).unwrap();
        assert_eq!(k_core::<f64>(&pendant).scores, vec![2.0, 2.0, 2.0, 1.0]);
    }

    #[test]
    fn isolated_node_has_zero_core() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(k_core::<f64>(&g).scores, vec![1.0, 1.0, 0.0]);
    }

    #[test]
    fn clique_attached_to_tail() {
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for i in 0..5 {
            for j in i + 1..5 {
                edges.push((i, j));
            }
        }
        edges.extend([(4, 5), (5, 6)]);
        let g = Graph::from_edges(7, edges).unwrap();
        assert_eq!(k_core::<f64>(&g).scores, vec![4.0, 4.0, 4.0, 4.0, 4.0, 1.0, 1.0]);
    }
}
