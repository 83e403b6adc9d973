use std::collections::VecDeque;

use rayon::prelude::*;

use super::{count, CentralityScores, Metric};
use crate::graph::Graph;
use crate::scalar::Scalar;

// Sources are processed in fixed-size blocks and the block partials are added
// in block order, so floating-point output does not depend on thread count.
const SOURCE_BLOCK: usize = 64;

struct BfsScratch<T> {
    dist: Vec<usize>,
    sigma: Vec<T>,
    delta: Vec<T>,
    order: Vec<usize>,
    queue: VecDeque<usize>,
}

impl<T: Scalar> BfsScratch<T> {
    fn new(n: usize) -> Self {
        BfsScratch {
            dist: vec![usize::MAX; n],
            sigma: vec![T::zero(); n],
            delta: vec![T::zero(); n],
            order: Vec::with_capacity(n),
            queue: VecDeque::new(),
        }
    }

    /// Accumulates the dependencies of `s` on every other node into `acc`.
    fn accumulate(&mut self, g: &Graph, s: usize, acc: &mut [T]) {
        for &v in &self.order {
            self.dist[v] = usize::MAX;
            self.sigma[v] = T::zero();
            self.delta[v] = T::zero();
        }
        self.order.clear();

        self.dist[s] = 0;
        self.sigma[s] = T::one();
        self.queue.push_back(s);
        while let Some(v) = self.queue.pop_front() {
            self.order.push(v);
            let dv = self.dist[v];
            for &w in g.neighbors(v) {
                let w = w as usize;
                if self.dist[w] == usize::MAX {
                    self.dist[w] = dv + 1;
                    self.queue.push_back(w);
                }
                if self.dist[w] == dv + 1 {
                    let sv = self.sigma[v].clone();
                    self.sigma[w] += sv;
                }
            }
        }
        for idx in (0..self.order.len()).rev() {
            let w = self.order[idx];
            let dw = self.dist[w];
            if dw == 0 {
                continue;
            }
            let coeff = (T::one() + self.delta[w].clone()) / self.sigma[w].clone();
            for &v in g.neighbors(w) {
                let v = v as usize;
                if self.dist[v] != usize::MAX && self.dist[v] + 1 == dw {
                    let add = self.sigma[v].clone() * coeff.clone();
                    self.delta[v] += add;
                }
            }
            acc[w] += self.delta[w].clone();
        }
    }
}

/// Shortest-path betweenness, each unordered source-target pair counted once.
///
/// Ordered-pair conventions give exactly twice these values.
pub fn betweenness<T: Scalar>(g: &Graph) -> CentralityScores<T> {
    let n = g.node_count();
    let sources: Vec<usize> = (0..n).collect();
    let partials: Vec<Vec<T>> = sources
        .par_chunks(SOURCE_BLOCK)
        .map(|block| {
            let mut scratch = BfsScratch::new(n);
            let mut acc = vec![T::zero(); n];
            for &s in block {
                scratch.accumulate(g, s, &mut acc);
            }
            acc
        })
        .collect();
    let mut total = vec![T::zero(); n];
    for part in partials {
        for (t, p) in total.iter_mut().zip(part) {
            *t += p;
        }
    }
    let two = count::<T>(2);
    let scores = total.into_iter().map(|x| x / two.clone()).collect();
    CentralityScores::plain(Metric::Betweenness, scores)
}

fn bfs_distance_sum(g: &Graph, s: usize, dist: &mut [usize], queue: &mut VecDeque<usize>, touched: &mut Vec<usize>) -> (usize, u64) {
    for &v in touched.iter() {
        dist[v] = usize::MAX;
    }
    touched.clear();
    dist[s] = 0;
    touched.push(s);
    queue.push_back(s);
    let mut total = 0u64;
    while let Some(v) = queue.pop_front() {
        total += dist[v] as u64;
        for &w in g.neighbors(v) {
            let w = w as usize;
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                touched.push(w);
                queue.push_back(w);
            }
        }
    }
    (touched.len(), total)
}

/// Closeness with the component-size correction for disconnected graphs:
/// `C_i = (|G_i| - 1) / (N - 1) / d_i`, where `d_i` is the mean distance to the
/// other members of `i`'s component. Isolated nodes score 0.
pub fn closeness<T: Scalar>(g: &Graph) -> CentralityScores<T> {
    let n = g.node_count();
    let sums: Vec<(usize, u64)> = (0..n)
        .into_par_iter()
        .map_init(
            || (vec![usize::MAX; n], VecDeque::new(), Vec::new()),
            |(dist, queue, touched), s| bfs_distance_sum(g, s, dist, queue, touched),
        )
        .collect();
    let scores = sums
        .into_iter()
        .map(|(reached, total)| {
            if reached <= 1 {
                T::zero()
            } else {
                let r = count::<T>(reached - 1);
                r.clone() * r / (count::<T>(n - 1) * T::from_count(total))
            }
        })
        .collect();
    CentralityScores::plain(Metric::Closeness, scores)
}
