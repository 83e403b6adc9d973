use std::collections::BTreeMap;

use super::{check_probability, EpidemicError};
use crate::graph::Graph;
use crate::scalar::Scalar;

pub const EXACT_MAX_NODES: usize = 12;

/// Exact expectations of the ever-infected fraction.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactInfluence<T> {
    /// `q[t - 1]` after `t` steps.
    pub q: Vec<T>,
    pub q_inf: T,
}

/// Exact `q(t)` and `q_inf` for a single seed by enumerating every
/// per-step infection outcome.
///
/// With `mu = 1` a node is infectious for exactly one step, so the process is
/// a Markov chain on (frontier, ever-infected) node sets. Each susceptible
/// node with `m` infectious neighbours is infected independently with
/// probability `1 - (1 - beta)^m`.
pub fn exact_influence_small<T: Scalar>(
    g: &Graph,
    seed: usize,
    beta: f64,
    mu: f64,
    horizon: u32,
) -> Result<ExactInfluence<T>, EpidemicError> {
    let n = g.node_count();
    if n > EXACT_MAX_NODES {
        return Err(EpidemicError::TooLargeForExact {
            nodes: n,
            max: EXACT_MAX_NODES,
        });
    }
    check_probability("beta", beta)?;
    if mu != 1.0 {
        return Err(EpidemicError::ExactNeedsFullRecovery(mu));
    }
    if seed >= n {
        return Err(EpidemicError::SeedOutOfRange { node: seed, nodes: n });
    }
    if horizon == 0 {
        return Err(EpidemicError::NoHorizon);
    }

    let b = T::from_real(beta);
    let escape = T::one() - b;
    // escape_pow[m] = (1 - beta)^m
    let mut escape_pow = vec![T::one()];
    for m in 1..=n {
        let prev = escape_pow[m - 1].clone();
        escape_pow.push(prev * escape.clone());
    }
    let adjacency: Vec<u32> = (0..n)
        .map(|i| g.neighbors(i).iter().fold(0u32, |acc, &j| acc | (1 << j)))
        .collect();
    let nodes_t = T::from_count(n as u64);

    // (frontier, ever) -> probability
    let mut dist: BTreeMap<(u32, u32), T> = BTreeMap::new();
    dist.insert((1 << seed, 1 << seed), T::one());

    let mut q = Vec::with_capacity(horizon as usize);
    let mut step = 0u32;
    loop {
        let live = dist.keys().any(|&(frontier, _)| frontier != 0);
        if !live && step >= horizon {
            break;
        }
        step += 1;
        let mut next: BTreeMap<(u32, u32), T> = BTreeMap::new();
        for ((frontier, ever), p) in dist {
            if frontier == 0 {
                *next.entry((0, ever)).or_insert_with(T::zero) += p;
                continue;
            }
            let mut candidates = Vec::new();
            let mut hit = Vec::new();
            for u in 0..n {
                if ever & (1 << u) != 0 {
                    continue;
                }
                let m = (adjacency[u] & frontier).count_ones() as usize;
                if m > 0 {
                    candidates.push(u);
                    hit.push(T::one() - escape_pow[m].clone());
                }
            }
            for subset in 0u32..(1u32 << candidates.len()) {
                let mut prob = p.clone();
                let mut infected = 0u32;
                for (k, &u) in candidates.iter().enumerate() {
                    if subset & (1 << k) != 0 {
                        prob *= hit[k].clone();
                        infected |= 1 << u;
                    } else {
                        prob *= T::one() - hit[k].clone();
                    }
                }
                if prob == T::zero() {
                    continue;
                }
                *next.entry((infected, ever | infected)).or_insert_with(T::zero) += prob;
            }
        }
        dist = next;
        if step <= horizon {
            let mean = dist.iter().fold(T::zero(), |acc, (&(_, ever), p)| {
                acc + p.clone() * T::from_count(ever.count_ones() as u64)
            });
            q.push(mean / nodes_t.clone());
        }
    }
    let q_inf = dist.iter().fold(T::zero(), |acc, (&(_, ever), p)| {
        acc + p.clone() * T::from_count(ever.count_ones() as u64)
    }) / nodes_t;
    Ok(ExactInfluence { q, q_inf })
}
