use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::swap::Ensemble;
use super::StepOrder;
use crate::error::{Error, Result};
use crate::gates::BellLabel;
use crate::scalar::Real;

/// Count of one ensemble branch in a sampled run.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleRow {
    pub bell_34: BellLabel,
    pub bell_12: BellLabel,
    pub final_bell_12: BellLabel,
    pub final_bell_34: BellLabel,
    pub probability: f64,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleCounts {
    pub shots: u64,
    pub seed: u64,
    /// One row per ensemble branch, in ensemble order, zero counts included.
    pub rows: Vec<SampleRow>,
}

impl SampleCounts {
    /// Counts aggregated by final Bell labels `(bell_12, bell_34)`, as
    /// `(bell_12, bell_34, exact probability, count)` sorted by label.
    pub fn class_counts(&self) -> Vec<(BellLabel, BellLabel, f64, u64)> {
        let mut classes: Vec<(BellLabel, BellLabel, f64, u64)> = Vec::new();
        for r in &self.rows {
            match classes
                .iter_mut()
                .find(|c| c.0 == r.final_bell_12 && c.1 == r.final_bell_34)
            {
                Some(c) => {
                    c.2 += r.probability;
                    c.3 += r.count;
                }
                None => classes.push((r.final_bell_12, r.final_bell_34, r.probability, r.count)),
            }
        }
        classes.sort_by_key(|c| (c.0, c.1));
        classes
    }
}

/// Index of the first cumulative weight exceeding `u * total`.
fn inverse_cdf(weights: &[f64], u: f64) -> usize {
    let total: f64 = weights.iter().sum();
    let target = u * total;
    let mut acc = 0.0;
    for (i, &w) in weights.iter().enumerate() {
        acc += w;
        if target < acc {
            return i;
        }
    }
    // u*total can round up to total itself
    weights.iter().rposition(|&w| w > 0.0).unwrap_or(0)
}

/// Trajectory sampling of the two measurement rounds: each shot draws the
/// first Bell outcome from its marginal, then the second from the
/// conditional distribution. Shots consume two uniforms each from one ChaCha8
/// stream seeded with `seed`, so counts depend only on `(seed, shots)`.
pub fn sample<T: Real>(e: &Ensemble<T>, shots: u64, seed: u64) -> Result<SampleCounts> {
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    let first_label = |i: usize| match e.order {
        StepOrder::MiddleBondFirst => e.branches[i].bell_34,
        StepOrder::OuterBondFirst => e.branches[i].bell_12,
    };
    // first-round outcomes and, for each, the branches it leads to
    let mut tree: Vec<(BellLabel, Vec<usize>)> = Vec::new();
    for i in 0..e.branches.len() {
        let label = first_label(i);
        match tree.iter_mut().find(|(l, _)| *l == label) {
            Some((_, members)) => members.push(i),
            None => tree.push((label, vec![i])),
        }
    }
    let prob = |i: usize| e.branches[i].probability.as_f64();
    let marginals: Vec<f64> = tree
        .iter()
        .map(|(_, m)| m.iter().map(|&i| prob(i)).sum())
        .collect();
    let conditionals: Vec<Vec<f64>> = tree
        .iter()
        .map(|(_, m)| m.iter().map(|&i| prob(i)).collect())
        .collect();

    let mut counts = vec![0u64; e.branches.len()];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..shots {
        let u1: f64 = rng.gen();
        let u2: f64 = rng.gen();
        let k = inverse_cdf(&marginals, u1);
        let l = inverse_cdf(&conditionals[k], u2);
        counts[tree[k].1[l]] += 1;
    }

    let rows = e
        .branches
        .iter()
        .zip(counts)
        .map(|(b, count)| SampleRow {
            bell_34: b.bell_34,
            bell_12: b.bell_12,
            final_bell_12: b.final_bell_12(),
            final_bell_34: b.final_bell_34(),
            probability: b.probability.as_f64(),
            count,
        })
        .collect();
    Ok(SampleCounts { shots, seed, rows })
}
