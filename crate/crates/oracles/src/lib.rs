//! Slow reference implementations written straight from the definitions.
//!
//! Everything here works on plain adjacency lists and exact arithmetic and
//! shares no code with `fastinf-core`, so agreement between the two is
//! evidence rather than tautology. Intended for graphs of a few dozen nodes.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Adjacency = Vec<Vec<usize>>;

/// Symmetric adjacency lists from an undirected edge list; loops and
/// duplicates are dropped.
pub fn adjacency(n: usize, edges: &[(usize, usize)]) -> Adjacency {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        if u != v && !adj[u].contains(&v) {
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    adj
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn int(n: u128) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// All-pairs hop distances by Floyd-Warshall; `None` when unreachable.
pub fn distance_matrix(adj: &Adjacency) -> Vec<Vec<Option<usize>>> {
    let n = adj.len();
    let mut d = vec![vec![None; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = Some(0);
        for &j in &adj[i] {
            row[j] = Some(1);
        }
    }
    for k in 0..n {
        for i in 0..n {
            let Some(ik) = d[i][k] else { continue };
            for j in 0..n {
                if let Some(kj) = d[k][j] {
                    if d[i][j].is_none_or(|ij| ik + kj < ij) {
                        d[i][j] = Some(ik + kj);
                    }
                }
            }
        }
    }
    d
}

/// Every shortest path from `s` to `t`, as node sequences.
pub fn shortest_paths(adj: &Adjacency, dist: &[Vec<Option<usize>>], s: usize, t: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let Some(total) = dist[s][t] else { return out };
    let mut stack = vec![s];
    fn walk(
        adj: &Adjacency,
        dist: &[Vec<Option<usize>>],
        t: usize,
        total: usize,
        stack: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let cur = *stack.last().unwrap();
        if cur == t {
            out.push(stack.clone());
            return;
        }
        let step = stack.len();
        for &w in &adj[cur] {
            if dist[w][t] == Some(total - step) {
                stack.push(w);
                walk(adj, dist, t, total, stack, out);
                stack.pop();
            }
        }
    }
    walk(adj, dist, t, total, &mut stack, &mut out);
    out
}

/// Betweenness over unordered pairs by enumerating every shortest path.
pub fn betweenness(adj: &Adjacency) -> Vec<BigRational> {
    let n = adj.len();
    let dist = distance_matrix(adj);
    let mut score = vec![BigRational::zero(); n];
    for s in 0..n {
        for t in s + 1..n {
            let paths = shortest_paths(adj, &dist, s, t);
            if paths.is_empty() {
                continue;
            }
            let mut through = vec![0u128; n];
            for p in &paths {
                for &v in &p[1..p.len() - 1] {
                    through[v] += 1;
                }
            }
            let total = int(paths.len() as u128);
            for (v, &c) in through.iter().enumerate() {
                if c > 0 {
                    score[v] += int(c) / total.clone();
                }
            }
        }
    }
    score
}

/// `(|G_i| - 1)^2 / ((N - 1) * sum of distances within G_i)`; 0 when the
/// node reaches nobody.
pub fn closeness(adj: &Adjacency) -> Vec<BigRational> {
    let n = adj.len();
    let dist = distance_matrix(adj);
    (0..n)
        .map(|i| {
            let reach: Vec<usize> = dist[i].iter().flatten().copied().collect();
            let others = reach.len() as u128 - 1;
            let sum: usize = reach.iter().sum();
            if others == 0 {
                BigRational::zero()
            } else {
                int(others * others) / (int(n as u128 - 1) * int(sum as u128))
            }
        })
        .collect()
}

/// Coreness by literally pruning nodes of degree below `k` for k = 1, 2, ...
pub fn coreness(adj: &Adjacency) -> Vec<usize> {
    let n = adj.len();
    let mut alive = vec![true; n];
    let mut core = vec![0; n];
    let mut remaining = n;
    let mut k = 1;
    while remaining > 0 {
        loop {
            let doomed: Vec<usize> = (0..n)
                .filter(|&i| alive[i] && adj[i].iter().filter(|&&j| alive[j]).count() < k)
                .collect();
            if doomed.is_empty() {
                break;
            }
            for i in doomed {
                alive[i] = false;
                core[i] = k - 1;
                remaining -= 1;
            }
        }
        k += 1;
    }
    core
}

/// Largest `h` such that at least `h` neighbours have degree `>= h`, by scan.
pub fn h_index(adj: &Adjacency) -> Vec<usize> {
    adj.iter()
        .map(|nb| {
            (0..=nb.len())
                .rev()
                .find(|&h| nb.iter().filter(|&&j| adj[j].len() >= h).count() >= h)
                .unwrap_or(0)
        })
        .collect()
}

/// `sum_{u in G(v)} sum_{w in G(u)} N(w)` where `N(w)` counts nodes at
/// distance 1 or 2 from `w`.
pub fn local_rank(adj: &Adjacency) -> Vec<u64> {
    let dist = distance_matrix(adj);
    let near: Vec<u64> = dist
        .iter()
        .map(|row| row.iter().filter(|d| matches!(d, Some(1) | Some(2))).count() as u64)
        .collect();
    let q: Vec<u64> = adj.iter().map(|nb| nb.iter().map(|&w| near[w]).sum()).collect();
    adj.iter().map(|nb| nb.iter().map(|&u| q[u]).sum()).collect()
}

/// `k_i + sum of neighbour degrees`.
pub fn social_capital(adj: &Adjacency) -> Vec<u64> {
    adj.iter()
        .map(|nb| (nb.len() + nb.iter().map(|&j| adj[j].len()).sum::<usize>()) as u64)
        .collect()
}

fn mat_mul(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = a.len();
    let mut c = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                c[i][j] += a[i][k].clone() * b[k][j].clone();
            }
        }
    }
    c
}

/// `(bA + bAH + ... + bAH^t)^T e` with `H = bA + (1 - mu) I`, by dense
/// matrix powers.
pub fn dynamics_sensitive(adj: &Adjacency, beta: &BigRational, mu: &BigRational, t: u32) -> Vec<BigRational> {
    let n = adj.len();
    let mut ba = vec![vec![BigRational::zero(); n]; n];
    for (i, nb) in adj.iter().enumerate() {
        for &j in nb {
            ba[i][j] = beta.clone();
        }
    }
    let mut h = ba.clone();
    for (i, row) in h.iter_mut().enumerate() {
        row[i] += BigRational::one() - mu.clone();
    }
    let mut sum = vec![vec![BigRational::zero(); n]; n];
    let mut power = ba.clone();
    for step in 0..=t {
        for i in 0..n {
            for j in 0..n {
                sum[i][j] += power[i][j].clone();
            }
        }
        if step < t {
            power = mat_mul(&power, &h);
        }
    }
    // column sums of the transposed matrix = row sums of sum^T e
    (0..n)
        .map(|j| (0..n).fold(BigRational::zero(), |acc, i| acc + sum[i][j].clone()))
        .collect()
}

/// Exact expected influence of SIR with `mu = 1`.
///
/// With one-step infectious periods every edge is tried at most once, from
/// whichever endpoint is infected first, so the process is bond percolation
/// with open probability `beta` and infection times are hop distances in the
/// open subgraph. Sums over all `2^L` edge subsets.
pub struct Percolation {
    /// `q[t - 1]` for `t = 1..=horizon`.
    pub q: Vec<BigRational>,
    pub q_inf: BigRational,
}

pub fn percolation_influence(adj: &Adjacency, seed: usize, beta: &BigRational, horizon: usize) -> Percolation {
    let n = adj.len();
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| adj[u].iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
        .collect();
    let l = edges.len();
    assert!(l <= 24, "percolation oracle is exponential in the edge count");
    // reached[open][t] = number of (subset, node) pairs with |subset| = open
    // and node within distance t of the seed, summed over subsets
    let mut reached = vec![vec![0u128; horizon + 1]; l + 1];
    let mut component = vec![0u128; l + 1];
    let mut open_adj = vec![Vec::new(); n];
    let mut dist = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for mask in 0u32..(1u32 << l) {
        for list in &mut open_adj {
            list.clear();
        }
        for (e, &(u, v)) in edges.iter().enumerate() {
            if mask & (1 << e) != 0 {
                open_adj[u].push(v);
                open_adj[v].push(u);
            }
        }
        dist.fill(usize::MAX);
        dist[seed] = 0;
        queue.push_back(seed);
        while let Some(u) = queue.pop_front() {
            for &v in &open_adj[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        let open = mask.count_ones() as usize;
        for &d in &dist {
            if d == usize::MAX {
                continue;
            }
            component[open] += 1;
            for slot in reached[open].iter_mut().skip(d.max(1)) {
                *slot += 1;
            }
        }
    }
    let closed_p = BigRational::one() - beta.clone();
    let weight = |open: usize| -> BigRational {
        let mut w = BigRational::one();
        for _ in 0..open {
            w *= beta.clone();
        }
        for _ in open..l {
            w *= closed_p.clone();
        }
        w
    };
    let nodes = int(n as u128);
    let mut q = vec![BigRational::zero(); horizon];
    let mut q_inf = BigRational::zero();
    for open in 0..=l {
        let w = weight(open);
        for t in 1..=horizon {
            q[t - 1] += w.clone() * int(reached[open][t]);
        }
        q_inf += w * int(component[open]);
    }
    Percolation {
        q: q.into_iter().map(|x| x / nodes.clone()).collect(),
        q_inf: q_inf / nodes,
    }
}
