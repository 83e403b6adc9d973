use rayon::prelude::*;

use super::{count, CentralityScores, Metric};
use crate::graph::Graph;
use crate::scalar::Scalar;

pub fn degree<T: Scalar>(g: &Graph) -> CentralityScores<T> {
    let scores = (0..g.node_count()).map(|i| count(g.degree(i))).collect();
    CentralityScores::plain(Metric::Degree, scores)
}

/// Degree plus the sum of the neighbours' degrees.
pub fn social_capital<T: Scalar>(g: &Graph) -> CentralityScores<T> {
    let scores = (0..g.node_count())
        .map(|i| {
            let s: usize = g.degree(i) + g.neighbors(i).iter().map(|&j| g.degree(j as usize)).sum::<usize>();
            count(s)
        })
        .collect();
    CentralityScores::plain(Metric::SocialCapital, scores)
}

/// Largest `h` such that at least `h` entries are `>= h`.
pub(crate) fn h_of(values: &mut [usize]) -> usize {
    values.sort_unstable_by(|a, b| b.cmp(a));
    values
        .iter()
        .enumerate()
        .take_while(|&(i, &v)| v > i)
        .count()
}

pub fn h_index<T: Scalar>(g: &Graph) -> CentralityScores<T> {
    let mut buf = Vec::new();
    let scores = (0..g.node_count())
        .map(|i| {
            buf.clear();
            buf.extend(g.neighbors(i).iter().map(|&j| g.degree(j as usize)));
            count(h_of(&mut buf))
        })
        .collect();
    CentralityScores::plain(Metric::HIndex, scores)
}

/// Number of distinct nodes at distance 1 or 2 from each node, excluding the
/// node itself.
pub fn second_neighborhood_sizes(g: &Graph) -> Vec<usize> {
    let n = g.node_count();
    (0..n)
        .into_par_iter()
        .map_init(
            || vec![usize::MAX; n],
            |mark, l| {
                mark[l] = l;
                let mut reached = 0;
                for &j in g.neighbors(l) {
                    let j = j as usize;
                    if mark[j] != l {
                        mark[j] = l;
                        reached += 1;
                    }
                    for &u in g.neighbors(j) {
                        let u = u as usize;
                        if mark[u] != l {
                            mark[u] = l;
                            reached += 1;
                        }
                    }
                }
                reached
            },
        )
        .collect()
}

/// LocalRank: sum over neighbours `j` of the summed second-neighbourhood
/// sizes of `j`'s neighbours.
pub fn local_rank<T: Scalar>(g: &Graph) -> CentralityScores<T> {
    let reach = second_neighborhood_sizes(g);
    let inner: Vec<u64> = (0..g.node_count())
        .map(|j| g.neighbors(j).iter().map(|&l| reach[l as usize] as u64).sum())
        .collect();
    let scores = (0..g.node_count())
        .map(|i| T::from_count(g.neighbors(i).iter().map(|&j| inner[j as usize]).sum()))
        .collect();
    CentralityScores::plain(Metric::LocalRank, scores)
}

/// Local clustering coefficient; zero for nodes with fewer than two neighbours.
pub fn clustering_coefficient<T: Scalar>(g: &Graph) -> CentralityScores<T> {
    let n = g.node_count();
    let mut mark = vec![usize::MAX; n];
    let scores = (0..n)
        .map(|i| {
            let k = g.degree(i);
            if k < 2 {
                return T::zero();
            }
            for &j in g.neighbors(i) {
                mark[j as usize] = i;
            }
            // each neighbour-neighbour link is seen from both ends
            let twice_links: usize = g
                .neighbors(i)
                .iter()
                .map(|&j| g.neighbors(j as usize).iter().filter(|&&u| mark[u as usize] == i).count())
                .sum();
            count::<T>(twice_links) / count::<T>(k * (k - 1))
        })
        .collect();
    CentralityScores::plain(Metric::Clustering, scores)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::{complete, cycle, path, star};

    fn triangle_with_pendant() -> Graph {
        Graph::from_edges(4, [(0, 1), (1, 2), (0, 2), (0, 3)]).unwrap()
    }

    #[test]
    fn degree_examples() {
        assert_eq!(degree::<f64>(&path(3)).scores, vec![1.0, 2.0, 1.0]);
        assert_eq!(degree::<f64>(&star(3)).scores, vec![3.0, 1.0, 1.0, 1.0]);
        assert_eq!(degree::<f64>(&complete(3)).scores, vec![2.0; 3]);
    }

    #[test]
    fn social_capital_examples() {
        assert_eq!(social_capital::<f64>(&path(3)).scores, vec![3.0, 4.0, 3.0]);
        assert_eq!(social_capital::<f64>(&star(3)).scores, vec![6.0, 4.0, 4.0, 4.0]);
        // 4-regular
        let s = social_capital::<f64>(&complete(5)).scores;
        assert!(s.iter().all(|&x| x == 4.0 + 16.0));
        let s = social_capital::<f64>(&cycle(7)).scores;
        assert!(s.iter().all(|&x| x == 2.0 + 4.0));
    }

    /// Literal scan of the definition over h = 0..=k.
    fn h_by_scan(values: &[usize]) -> usize {
        (0..=values.len())
            .filter(|&h| values.iter().filter(|&&v| v >= h).count() >= h)
            .max()
            .unwrap()
    }

    #[test]
    fn h_of_neighbor_degrees() {
        let mut v = vec![3, 3, 2, 1];
        assert_eq!(h_by_scan(&v), 2);
        assert_eq!(h_of(&mut v), 2);
        for case in [vec![], vec![0], vec![5], vec![1, 1, 1], vec![4, 4, 4, 4, 9], vec![2, 2]] {
            assert_eq!(h_of(&mut case.clone()), h_by_scan(&case), "{case:?}");
        }
    }

    #[test]
    fn h_index_examples() {
        // center 0 has neighbours with degrees 3, 3, 2, 1
        let g = Graph::from_edges(6, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (2, 5)]).unwrap();
        assert_eq!(h_index::<f64>(&g).scores[0], 2.0);
        assert_eq!(h_index::<f64>(&complete(3)).scores, vec![2.0; 3]);
        assert_eq!(h_index::<f64>(&path(3)).scores[1], 1.0);
    }

    #[test]
    fn local_rank_on_five_path() {
        let g = path(5);
        assert_eq!(second_neighborhood_sizes(&g), vec![2, 3, 4, 3, 2]);
        let l = local_rank::<f64>(&g).scores;
        assert_eq!(l[0], 6.0);
        assert_eq!(l[1], 9.0);
        assert_eq!(l[2], 12.0);
        assert_eq!(l[3], 9.0);
        assert_eq!(l[4], 6.0);
    }

    #[test]
    fn clustering_examples() {
        assert_eq!(clustering_coefficient::<f64>(&complete(3)).scores, vec![1.0; 3]);
        assert_eq!(clustering_coefficient::<f64>(&star(3)).scores[0], 0.0);
        let c = clustering_coefficient::<f64>(&triangle_with_pendant()).scores;
        assert!((c[0] - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(c[1], 1.0);
        assert_eq!(c[3], 0.0);
    }
}
