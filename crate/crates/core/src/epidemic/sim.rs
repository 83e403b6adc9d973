use rand::distr::{Bernoulli, Distribution};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::rng::{master_key, stream_for};
use super::{EpidemicError, InfluenceCurve, InfluenceTable, SimulationConfig};
use crate::graph::Graph;
use crate::scalar::Scalar;

const RUN_BLOCK: u32 = 64;

const SUSCEPTIBLE: u8 = 0;
const INFECTED: u8 = 1;
const RECOVERED: u8 = 2;

/// Result of a single SIR realisation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutcome {
    /// `ever_infected[t - 1]`: nodes ever infected (seed included) after step
    /// `t`, for `t = 1..=horizon`; constant after the run halts.
    pub ever_infected: Vec<u32>,
    /// Nodes ever infected when the process died out.
    pub final_size: u32,
    /// Step at which no infected node remained.
    pub halting_step: u32,
}

struct Simulator<'g> {
    g: &'g Graph,
    infect: Bernoulli,
    recover: Bernoulli,
    full_recovery: bool,
    never_recovers: bool,
    never_infects: bool,
    horizon: usize,
    state: Vec<u8>,
    touched: Vec<u32>,
    active: Vec<u32>,
    next: Vec<u32>,
}

impl<'g> Simulator<'g> {
    fn new(g: &'g Graph, config: &SimulationConfig) -> Self {
        Simulator {
            g,
            infect: Bernoulli::new(config.beta).expect("validated beta"),
            recover: Bernoulli::new(config.mu).expect("validated mu"),
            full_recovery: config.mu >= 1.0,
            never_recovers: config.mu <= 0.0,
            never_infects: config.beta <= 0.0,
            horizon: config.horizon as usize,
            state: vec![SUSCEPTIBLE; g.node_count()],
            touched: Vec::new(),
            active: Vec::new(),
            next: Vec::new(),
        }
    }

    fn can_spread(&self) -> bool {
        self.active
            .iter()
            .any(|&i| self.g.neighbors(i as usize).iter().any(|&j| self.state[j as usize] == SUSCEPTIBLE))
    }

    /// Synchronous update: every node infected at the start of a step tries
    /// each susceptible neighbour once; nodes infected during the step start
    /// spreading on the next one; then the nodes infected at the start of the
    /// step recover with probability `mu`. With `mu = 0` nobody recovers and
    /// the run ends once the ever-infected set can no longer grow.
    fn run<R: Rng>(&mut self, seed: usize, rng: &mut R, trace: &mut [u32]) -> (u32, u32) {
        debug_assert_eq!(trace.len(), self.horizon);
        self.active.clear();
        self.active.push(seed as u32);
        self.touched.push(seed as u32);
        self.state[seed] = INFECTED;
        let mut ever = 1u32;
        let mut step = 0usize;

        while !self.active.is_empty() {
            step += 1;
            self.next.clear();
            for idx in 0..self.active.len() {
                let i = self.active[idx] as usize;
                for &j in self.g.neighbors(i) {
                    if self.state[j as usize] == SUSCEPTIBLE && self.infect.sample(rng) {
                        self.state[j as usize] = INFECTED;
                        self.next.push(j);
                    }
                }
            }
            ever += self.next.len() as u32;
            self.touched.extend_from_slice(&self.next);

            if self.full_recovery {
                for &i in &self.active {
                    self.state[i as usize] = RECOVERED;
                }
                self.active.clear();
            } else {
                let recover = self.recover;
                let state = &mut self.state;
                self.active.retain(|&i| {
                    if recover.sample(rng) {
                        state[i as usize] = RECOVERED;
                        false
                    } else {
                        true
                    }
                });
            }
            self.active.extend_from_slice(&self.next);

            if step <= self.horizon {
                trace[step - 1] = ever;
            }
            if self.never_recovers && (self.never_infects || !self.can_spread()) {
                break;
            }
        }
        if step < self.horizon {
            trace[step..].fill(ever);
        }
        for &v in &self.touched {
            self.state[v as usize] = SUSCEPTIBLE;
        }
        self.touched.clear();
        (ever, step as u32)
    }
}

/// Runs one realisation from `seed_node`, drawing from `rng`.
pub fn simulate_run<R: Rng>(
    g: &Graph,
    seed_node: usize,
    config: &SimulationConfig,
    rng: &mut R,
) -> Result<RunOutcome, EpidemicError> {
    config.validate()?;
    check_seed(g, seed_node)?;
    let mut sim = Simulator::new(g, config);
    let mut trace = vec![0u32; config.horizon as usize];
    let (final_size, halting_step) = sim.run(seed_node, rng, &mut trace);
    Ok(RunOutcome {
        ever_infected: trace,
        final_size,
        halting_step,
    })
}

fn check_seed(g: &Graph, seed: usize) -> Result<(), EpidemicError> {
    if seed >= g.node_count() {
        Err(EpidemicError::SeedOutOfRange {
            node: seed,
            nodes: g.node_count(),
        })
    } else {
        Ok(())
    }
}

#[derive(Clone)]
struct Moments {
    sum: Vec<u64>,
    sum_sq: Vec<u128>,
    final_sum: u64,
    final_sq: u128,
}

impl Moments {
    fn new(horizon: usize) -> Self {
        Moments {
            sum: vec![0; horizon],
            sum_sq: vec![0; horizon],
            final_sum: 0,
            final_sq: 0,
        }
    }

    fn add_run(&mut self, trace: &[u32], final_size: u32) {
        for ((s, sq), &c) in self.sum.iter_mut().zip(self.sum_sq.iter_mut()).zip(trace) {
            *s += c as u64;
            *sq += (c as u128) * (c as u128);
        }
        self.final_sum += final_size as u64;
        self.final_sq += (final_size as u128) * (final_size as u128);
    }

    fn merge(&mut self, other: &Moments) {
        for (a, b) in self.sum.iter_mut().zip(&other.sum) {
            *a += b;
        }
        for (a, b) in self.sum_sq.iter_mut().zip(&other.sum_sq) {
            *a += b;
        }
        self.final_sum += other.final_sum;
        self.final_sq += other.final_sq;
    }
}

fn standard_error(sum: u64, sum_sq: u128, runs: u32, nodes: usize) -> f64 {
    if runs < 2 {
        return 0.0;
    }
    let r = runs as f64;
    let mean = sum as f64 / r;
    let var = ((sum_sq as f64 - r * mean * mean) / (r - 1.0)).max(0.0);
    (var / r).sqrt() / nodes as f64
}

/// Influence curves for every node of `g`.
pub fn influence_curves<T: Scalar>(g: &Graph, config: &SimulationConfig) -> Result<InfluenceTable<T>, EpidemicError> {
    let seeds: Vec<usize> = (0..g.node_count()).collect();
    influence_curves_for(g, &seeds, config)
}

/// Influence curves for the given seed nodes, in the given order.
///
/// Each `(seed, run)` pair draws from its own stream, so a seed's curve does
/// not depend on which other seeds are simulated alongside it.
pub fn influence_curves_for<T: Scalar>(
    g: &Graph,
    seeds: &[usize],
    config: &SimulationConfig,
) -> Result<InfluenceTable<T>, EpidemicError> {
    config.validate()?;
    for &s in seeds {
        check_seed(g, s)?;
    }
    let horizon = config.horizon as usize;
    let base: ChaCha8Rng = master_key(config.master_seed);
    let blocks_per_seed = config.runs.div_ceil(RUN_BLOCK);
    let work: Vec<(usize, u32)> = seeds
        .iter()
        .flat_map(|&s| (0..blocks_per_seed).map(move |b| (s, b)))
        .collect();

    let partials: Vec<Moments> = work
        .par_iter()
        .map_init(
            || (Simulator::new(g, config), vec![0u32; horizon]),
            |(sim, trace), &(seed, block)| {
                let mut m = Moments::new(horizon);
                let first = block * RUN_BLOCK;
                let last = (first + RUN_BLOCK).min(config.runs);
                for run in first..last {
                    let mut rng = stream_for(&base, seed, run);
                    let (final_size, _) = sim.run(seed, &mut rng, trace);
                    m.add_run(trace, final_size);
                }
                m
            },
        )
        .collect();

    let fingerprint = config.fingerprint(g);
    let n = g.node_count();
    let denom = T::from_count(config.runs as u64 * n as u64);
    let curves = partials
        .chunks(blocks_per_seed as usize)
        .zip(seeds)
        .map(|(chunk, &seed)| {
            let mut total = Moments::new(horizon);
            for m in chunk {
                total.merge(m);
            }
            InfluenceCurve {
                seed,
                q: total.sum.iter().map(|&s| T::from_count(s) / denom.clone()).collect(),
                q_inf: T::from_count(total.final_sum) / denom.clone(),
                se: total
                    .sum
                    .iter()
                    .zip(&total.sum_sq)
                    .map(|(&s, &sq)| standard_error(s, sq, config.runs, n))
                    .collect(),
                se_inf: standard_error(total.final_sum, total.final_sq, config.runs, n),
                runs: config.runs,
                fingerprint: fingerprint.clone(),
            }
        })
        .collect();
    Ok(InfluenceTable {
        config: config.clone(),
        fingerprint,
        nodes: n,
        curves,
    })
}
