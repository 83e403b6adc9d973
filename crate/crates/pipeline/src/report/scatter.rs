use std::io::Write;

use fastinf_core::evaluation::{top_k, top_k_size};
use fastinf_core::Graph;

use crate::PipelineError;

/// Size of the highlighted group of strongest spreaders.
pub const TOP_SPREADERS: usize = 50;

#[derive(Clone, Debug, PartialEq)]
pub struct HubRow {
    pub node: usize,
    pub degree: usize,
    pub social_capital: f64,
    pub clustering: f64,
    pub influence: f64,
    /// 1-based rank by influence among the listed hubs.
    pub influence_rank: usize,
    /// Among the [`TOP_SPREADERS`] nodes of the whole network by influence.
    pub top_spreader: bool,
}

/// The top `fraction` of nodes by degree, with their influence ranks.
pub fn hub_scatter(
    g: &Graph,
    social_capital: &[f64],
    clustering: &[f64],
    influence: &[f64],
    fraction: f64,
) -> Result<Vec<HubRow>, PipelineError> {
    let n = g.node_count();
    let k = top_k_size(n, fraction)?;
    let hubs = top_k(&g.degrees(), k);
    let hub_influence: Vec<f64> = hubs.iter().map(|&i| influence[i]).collect();
    let mut rank = vec![0; hubs.len()];
    for (r, pos) in top_k(&hub_influence, hubs.len()).into_iter().enumerate() {
        rank[pos] = r + 1;
    }
    let mut is_top = vec![false; n];
    for i in top_k(influence, TOP_SPREADERS) {
        is_top[i] = true;
    }
    Ok(hubs
        .iter()
        .enumerate()
        .map(|(pos, &i)| HubRow {
            node: i,
            degree: g.degree(i),
            social_capital: social_capital[i],
            clustering: clustering[i],
            influence: influence[i],
            influence_rank: rank[pos],
            top_spreader: is_top[i],
        })
        .collect())
}

pub fn write_hub_scatter<W: Write>(out: W, g: &Graph, rows: &[HubRow]) -> Result<(), PipelineError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "node_label",
        "degree",
        "social_capital",
        "clustering",
        "influence",
        "influence_rank",
        "top_spreader",
    ])?;
    for r in rows {
        w.write_record([
            g.label(r.node).to_string(),
            r.degree.to_string(),
            r.social_capital.to_string(),
            r.clustering.to_string(),
            r.influence.to_string(),
            r.influence_rank.to_string(),
            r.top_spreader.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use fastinf_core::graph::generators::barabasi_albert;
    use rand::SeedableRng;

    #[test]
    fn five_percent_of_hundred_nodes() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let g = barabasi_albert(100, 2, &mut rng);
        let zeros = vec![0.0; 100];
        let influence: Vec<f64> = (0..100).map(|i| ((i * 37) % 100) as f64).collect();
        let rows = hub_scatter(&g, &zeros, &zeros, &influence, 0.05).unwrap();
        assert_eq!(rows.len(), 5);
        let mut ranks: Vec<usize> = rows.iter().map(|r| r.influence_rank).collect();
        ranks.sort_unstable();
        assert_eq!(ranks, vec![1, 2, 3, 4, 5]);
        let best = rows.iter().find(|r| r.influence_rank == 1).unwrap();
        assert!(rows.iter().all(|r| r.influence <= best.influence));
        for r in &rows {
            assert_eq!(r.top_spreader, r.influence >= 50.0);
        }
        let degrees: Vec<usize> = rows.iter().map(|r| r.degree).collect();
        assert!(degrees.windows(2).all(|w| w[0] >= w[1]));
    }
}
