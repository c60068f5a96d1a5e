//! Asynchronous log-linear learning: at each tick one uniformly chosen agent
//! resamples its action from the logit response to its neighbours.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{check_beta, switch_gain, ActionProfile};
use crate::gibbs::GibbsDistribution;
use crate::graph::Graph;

/// Profiles are counted in a dense table up to this many agents.
pub const DENSE_MAX_N: usize = 20;
/// Largest `n` for [`transition_matrix`].
pub const TRANSITION_MAX_N: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum InitialProfile {
    UniformRandom,
    Fixed(Vec<bool>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainConfig {
    /// Total number of updates, burn-in included.
    pub steps: usize,
    /// Discarded prefix; `None` means `100 · n · max(1, β)`.
    pub burn_in: Option<usize>,
    pub seed: u64,
    pub initial: InitialProfile,
}

impl ChainConfig {
    /// `samples` recorded updates after the default burn-in.
    pub fn with_samples(g: &Graph, beta: f64, samples: usize, seed: u64) -> Self {
        let burn_in = default_burn_in(g.n(), beta);
        Self { steps: burn_in + samples, burn_in: Some(burn_in), seed, initial: InitialProfile::UniformRandom }
    }

    pub fn resolved_burn_in(&self, n: usize, beta: f64) -> usize {
        self.burn_in.unwrap_or_else(|| default_burn_in(n, beta))
    }
}

pub fn default_burn_in(n: usize, beta: f64) -> usize {
    (100.0 * n as f64 * beta.max(1.0)).ceil() as usize
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Counts {
    Dense(Vec<u64>),
    Sparse(HashMap<ActionProfile, u64>),
}

/// Visit counts over profiles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmpiricalDistribution {
    n: usize,
    counts: Counts,
    total: u64,
}

impl EmpiricalDistribution {
    pub fn new(n: usize) -> Self {
        let counts = if n <= DENSE_MAX_N {
            Counts::Dense(vec![0; 1 << n])
        } else {
            Counts::Sparse(HashMap::new())
        };
        Self { n, counts, total: 0 }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn record(&mut self, a: &ActionProfile) {
        self.add(a, 1);
    }

    fn add(&mut self, a: &ActionProfile, k: u64) {
        debug_assert_eq!(a.n(), self.n);
        match &mut self.counts {
            Counts::Dense(v) => v[a.to_index().expect("dense n <= 20") as usize] += k,
            Counts::Sparse(m) => *m.entry(a.clone()).or_insert(0) += k,
        }
        self.total += k;
    }

    fn record_index(&mut self, index: usize) {
        match &mut self.counts {
            Counts::Dense(v) => v[index] += 1,
            Counts::Sparse(_) => unreachable!("index recording is dense only"),
        }
        self.total += 1;
    }

    pub fn count(&self, a: &ActionProfile) -> u64 {
        match &self.counts {
            Counts::Dense(v) => v[a.to_index().expect("dense n <= 20") as usize],
            Counts::Sparse(m) => m.get(a).copied().unwrap_or(0),
        }
    }

    pub fn frequency(&self, a: &ActionProfile) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            self.count(a) as f64 / self.total as f64
        }
    }

    /// Number of distinct profiles visited.
    pub fn support(&self) -> usize {
        match &self.counts {
            Counts::Dense(v) => v.iter().filter(|&&c| c > 0).count(),
            Counts::Sparse(m) => m.len(),
        }
    }

    /// Frequencies indexed like [`GibbsDistribution`]; dense storage only.
    pub fn probabilities(&self) -> Result<Vec<f64>> {
        match &self.counts {
            Counts::Dense(v) => {
                let t = self.total.max(1) as f64;
                Ok(v.iter().map(|&c| c as f64 / t).collect())
            }
            Counts::Sparse(_) => Err(Error::TooLarge { n: self.n, cap: DENSE_MAX_N }),
        }
    }

    /// Adds another histogram's counts into this one.
    pub fn merge(&mut self, other: &EmpiricalDistribution) -> Result<()> {
        if other.n != self.n {
            return Err(Error::SizeMismatch(self.n, other.n));
        }
        match (&mut self.counts, &other.counts) {
            (Counts::Dense(a), Counts::Dense(b)) => {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                self.total += other.total;
            }
            (Counts::Sparse(_), Counts::Sparse(b)) => {
                for (p, &k) in b {
                    self.add(p, k);
                }
            }
            _ => unreachable!("storage is determined by n"),
        }
        Ok(())
    }

    /// Total-variation distance to an exact law on the same agents.
    pub fn tv_to(&self, exact: &GibbsDistribution) -> Result<f64> {
        tv_distance(&self.probabilities()?, &exact.probabilities())
    }
}

/// Probability that agent `i` picks action `1`: `sigmoid(β (Σ_{N_i} a_j − θ d_i))`.
pub fn logit_choice_prob(g: &Graph, a: &ActionProfile, i: usize, theta: f64, beta: f64) -> Result<f64> {
    if a.n() != g.n() {
        return Err(Error::SizeMismatch(a.n(), g.n()));
    }
    if i >= g.n() {
        return Err(Error::AgentOutOfRange { index: i, n: g.n() });
    }
    Ok(sigmoid(beta * switch_gain(g, a, i, theta)))
}

#[inline]
fn sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

/// One asynchronous update; returns the new profile.
pub fn step<R: Rng + ?Sized>(g: &Graph, a: &ActionProfile, theta: f64, beta: f64, rng: &mut R) -> ActionProfile {
    let mut next = a.clone();
    let i = rng.gen_range(0..g.n());
    let p = sigmoid(beta * switch_gain(g, a, i, theta));
    next.set(i, rng.gen::<f64>() < p);
    next
}

fn validate(g: &Graph, beta: f64, config: &ChainConfig) -> Result<(usize, ActionProfile, ChaCha8Rng)> {
    check_beta(beta)?;
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    let burn_in = config.resolved_burn_in(g.n(), beta);
    if burn_in >= config.steps {
        return Err(Error::Precondition(format!(
            "burn-in {burn_in} must be smaller than steps {}",
            config.steps
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let start = match &config.initial {
        InitialProfile::UniformRandom => ActionProfile::from_bits((0..g.n()).map(|_| rng.gen::<bool>())),
        InitialProfile::Fixed(bits) => {
            if bits.len() != g.n() {
                return Err(Error::SizeMismatch(bits.len(), g.n()));
            }
            ActionProfile::from_bits(bits.iter().copied())
        }
    };
    Ok((burn_in, start, rng))
}

/// Runs one chain and histograms the profiles visited after burn-in.
pub fn simulate(g: &Graph, theta: f64, beta: f64, config: &ChainConfig) -> Result<EmpiricalDistribution> {
    let (burn_in, start, mut rng) = validate(g, beta, config)?;
    let n = g.n();
    let mut hist = EmpiricalDistribution::new(n);

    if n <= DENSE_MAX_N {
        // Bit-vector state with per-agent thresholds, kept as an index.
        let masks = g.neighbor_masks();
        let thresholds: Vec<f64> = (0..n).map(|i| theta * g.degree(i) as f64).collect();
        let mut state = start.to_index().expect("n <= 20");
        for t in 0..config.steps {
            let i = rng.gen_range(0..n);
            let active = (state & masks[i]).count_ones() as f64;
            let p = sigmoid(beta * (active - thresholds[i]));
            if rng.gen::<f64>() < p {
                state |= 1 << i;
            } else {
                state &= !(1 << i);
            }
            if t >= burn_in {
                hist.record_index(state as usize);
            }
        }
    } else {
        let mut a = start;
        for t in 0..config.steps {
            let i = rng.gen_range(0..n);
            let p = sigmoid(beta * switch_gain(g, &a, i, theta));
            a.set(i, rng.gen::<f64>() < p);
            if t >= burn_in {
                hist.record(&a);
            }
        }
    }
    Ok(hist)
}

/// Independent chains, one per seed, run in parallel and merged.
pub fn simulate_many(
    g: &Graph,
    theta: f64,
    beta: f64,
    config: &ChainConfig,
    seeds: &[u64],
) -> Result<EmpiricalDistribution> {
    let runs: Vec<EmpiricalDistribution> = seeds
        .par_iter()
        .map(|&seed| simulate(g, theta, beta, &ChainConfig { seed, ..config.clone() }))
        .collect::<Result<_>>()?;
    let mut total = EmpiricalDistribution::new(g.n());
    for r in &runs {
        total.merge(r)?;
    }
    Ok(total)
}

/// Dense row-stochastic matrix over `2^n` profiles.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrix {
    size: usize,
    data: Vec<f64>,
}

impl TransitionMatrix {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, from: usize, to: usize) -> f64 {
        self.data[from * self.size + to]
    }

    pub fn row(&self, from: usize) -> &[f64] {
        &self.data[from * self.size..(from + 1) * self.size]
    }

    /// Row vector times matrix, `μP`.
    pub fn left_multiply(&self, mu: &[f64]) -> Result<Vec<f64>> {
        if mu.len() != self.size {
            return Err(Error::SizeMismatch(mu.len(), self.size));
        }
        let mut out = vec![0.0; self.size];
        for (from, &m) in mu.iter().enumerate() {
            if m == 0.0 {
                continue;
            }
            for (o, &p) in out.iter_mut().zip(self.row(from)) {
                *o += m * p;
            }
        }
        Ok(out)
    }
}

/// `P[a → a']` of the asynchronous chain; `a'` differs from `a` in at most
/// one coordinate.
pub fn transition_matrix(g: &Graph, theta: f64, beta: f64) -> Result<TransitionMatrix> {
    check_beta(beta)?;
    let n = g.n();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if n > TRANSITION_MAX_N {
        return Err(Error::TooLarge { n, cap: TRANSITION_MAX_N });
    }
    let size = 1usize << n;
    let masks = g.neighbor_masks();
    let mut data = vec![0.0; size * size];
    let pick = 1.0 / n as f64;
    for from in 0..size {
        let row = &mut data[from * size..(from + 1) * size];
        for i in 0..n {
            let active = (from as u64 & masks[i]).count_ones() as f64;
            let p1 = sigmoid(beta * (active - theta * g.degree(i) as f64));
            let up = from | (1 << i);
            let down = from & !(1 << i);
            row[up] += pick * p1;
            row[down] += pick * (1.0 - p1);
        }
    }
    Ok(TransitionMatrix { size, data })
}

/// `½ Σ |p − q|`.
pub fn tv_distance(p: &[f64], q: &[f64]) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::SizeMismatch(p.len(), q.len()));
    }
    Ok(0.5 * p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum::<f64>())
}
