//! Network design: which graph with a given edge budget coordinates best.
//!
//! Under uniform spins the Ising potential has mean zero and variance
//! `σ² = |E|/16 + c² Σ d_i²`, so at small `β` the partition function is
//! `≈ 2^n e^{β²σ²/2}`. With `|E|` fixed, only `Σ d_i²` varies, and the
//! regular (least majorized) degree sequence minimises it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};
use crate::game::{check_beta, ising_c};
use crate::gibbs::{DensityOfStates, GIBBS_MAX_N};
use crate::graph::{DegreeSequence, Graph};

/// Attempts allowed when joining components of a Havel–Hakimi graph.
pub const SWAP_BUDGET: usize = 10_000;
/// Smallest sample accepted by [`clt_sample`].
pub const MIN_CLT_SAMPLES: usize = 1_000;

const CLT_CHUNK: usize = 4_096;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PotentialVariance {
    pub sigma2: f64,
    /// `|E| / 16`
    pub edge_term: f64,
    /// `c² Σ d_i²`
    pub degree_term: f64,
    pub c: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CltReport {
    /// `max_i d_i / σ`
    pub max_degree_ratio: f64,
    /// `Σ d_i² / σ²`
    pub degree_sum_ratio: f64,
    /// Kolmogorov–Smirnov distance between `Φ̃(S)/σ` and `N(0, 1)`.
    pub ks_statistic: f64,
    pub sample_count: usize,
}

/// Price of irregularity, `log Z_irregular − log Z_regular`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PoIResult {
    pub exact_poi: f64,
    /// `β² c² n Var(d) / 2`
    pub approx_poi: f64,
    pub degree_variance: f64,
}

pub fn potential_variance(g: &Graph, theta: f64) -> PotentialVariance {
    let c = ising_c(theta);
    let edge_term = g.edge_count() as f64 / 16.0;
    let degree_term = c * c * g.degree_sequence().sum_of_squares() as f64;
    PotentialVariance { sigma2: edge_term + degree_term, edge_term, degree_term, c }
}

/// Degree sequence with sum `2m` and least `Σ d²`: entries `⌊2m/n⌋` and
/// `⌈2m/n⌉`, ascending.
pub fn optimal_degree_sequence(n: usize, m: usize) -> Result<DegreeSequence> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if m + 1 < n || m > n * (n - 1) / 2 {
        return Err(Error::EdgeCountOutOfRange { n, m });
    }
    let low = 2 * m / n;
    let high_count = 2 * m - low * n;
    let degrees = (0..n).map(|i| if i < n - high_count { low } else { low + 1 }).collect();
    DegreeSequence::new(degrees)
}

/// Connected simple graph with the given degrees.
///
/// Havel–Hakimi builds some realization; components are then joined by
/// degree-preserving swaps `(a,b),(c,d) → (a,c),(b,d)` across components, kept
/// only when the component count drops.
pub fn realize_degree_sequence<R: Rng + ?Sized>(seq: &DegreeSequence, rng: &mut R) -> Result<Graph> {
    if !seq.is_graphical() {
        return Err(Error::NotGraphical);
    }
    let n = seq.len();
    let m = seq.sum() / 2;
    if n > 1 && (seq.as_slice().contains(&0) || m + 1 < n) {
        return Err(Error::NoConnectedRealization);
    }
    let mut edges = havel_hakimi(seq.as_slice())?;
    let mut comps = component_labels(n, &edges);
    let mut count = comps.iter().max().map_or(0, |&c| c + 1);
    let mut attempts = 0;
    while count > 1 {
        if attempts == SWAP_BUDGET {
            return Err(Error::SwapBudgetExceeded(SWAP_BUDGET));
        }
        attempts += 1;
        let e = rng.gen_range(0..edges.len());
        let f = rng.gen_range(0..edges.len());
        let (a, b) = edges[e];
        let (c, d) = if rng.gen() { edges[f] } else { (edges[f].1, edges[f].0) };
        if comps[a] == comps[c] {
            continue;
        }
        let mut trial = edges.clone();
        trial[e] = (a.min(c), a.max(c));
        trial[f] = (b.min(d), b.max(d));
        let labels = component_labels(n, &trial);
        let trial_count = labels.iter().max().map_or(0, |&c| c + 1);
        if trial_count < count {
            edges = trial;
            comps = labels;
            count = trial_count;
        }
    }
    let g = Graph::from_edges(n, edges)?;
    debug_assert_eq!(g.degrees(), seq.as_slice());
    Ok(g)
}

fn havel_hakimi(degrees: &[usize]) -> Result<Vec<(usize, usize)>> {
    let mut residual: Vec<(usize, usize)> = degrees.iter().copied().zip(0..).collect();
    let mut edges = Vec::with_capacity(degrees.iter().sum::<usize>() / 2);
    loop {
        residual.sort_unstable_by(|x, y| y.cmp(x));
        let (d, v) = residual[0];
        if d == 0 {
            return Ok(edges);
        }
        if d >= residual.len() {
            return Err(Error::NotGraphical);
        }
        residual[0].0 = 0;
        for slot in residual.iter_mut().skip(1).take(d) {
            if slot.0 == 0 {
                return Err(Error::NotGraphical);
            }
            slot.0 -= 1;
            edges.push((v.min(slot.1), v.max(slot.1)));
        }
    }
}

/// Union-find component labels `0..count`.
fn component_labels(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
        }
    }
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    (0..n)
        .map(|v| {
            let r = find(&mut parent, v);
            if label[r] == usize::MAX {
                label[r] = next;
                next += 1;
            }
            label[r]
        })
        .collect()
}

/// `n log 2 + β² σ² / 2`.
pub fn gaussian_log_partition(sigma2: f64, beta: f64, n: usize) -> f64 {
    n as f64 * std::f64::consts::LN_2 + beta * beta * sigma2 / 2.0
}

/// `1 + β² σ² / 2`, the second-order expansion of `E[e^{βΦ̃(S)}]`.
pub fn taylor_mgf_small_beta(sigma2: f64, beta: f64) -> f64 {
    1.0 + beta * beta * sigma2 / 2.0
}

/// Compares a regular graph against an irregular one with the same `n` and
/// `|E|`. Since `μ(a*)` has the same numerator for both, the price equals
/// `log(μ_regular(a*) / μ_irregular(a*))`.
pub fn price_of_irregularity(regular: &Graph, irregular: &Graph, theta: f64, beta: f64) -> Result<PoIResult> {
    check_beta(beta)?;
    if regular.n() != irregular.n() {
        return Err(Error::SizeMismatch(regular.n(), irregular.n()));
    }
    if regular.edge_count() != irregular.edge_count() {
        return Err(Error::SizeMismatch(regular.edge_count(), irregular.edge_count()));
    }
    if !regular.is_connected() || !irregular.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = regular.n();
    if n > GIBBS_MAX_N {
        return Err(Error::TooLarge { n, cap: GIBBS_MAX_N });
    }
    let z_reg = DensityOfStates::of(regular)?.log_partition_ising(theta, beta);
    let z_irr = DensityOfStates::of(irregular)?.log_partition_ising(theta, beta);
    let c = ising_c(theta);
    let degree_variance = irregular.degree_variance().max(0.0);
    Ok(PoIResult {
        exact_poi: z_irr - z_reg,
        approx_poi: beta * beta * c * c * n as f64 * degree_variance / 2.0,
        degree_variance,
    })
}

/// Draws `Φ̃(S)/σ` for uniform spins `S`. Chunks draw from independent
/// streams seeded by `rng`, so results depend only on `rng`'s state, not on
/// thread count.
pub fn standardized_potential_samples<R: Rng + ?Sized>(
    g: &Graph,
    theta: f64,
    rng: &mut R,
    samples: usize,
) -> Result<Vec<f64>> {
    if samples < MIN_CLT_SAMPLES {
        return Err(Error::Precondition(format!(
            "need at least {MIN_CLT_SAMPLES} samples, got {samples}"
        )));
    }
    let pv = potential_variance(g, theta);
    if g.edge_count() == 0 || pv.sigma2 <= 0.0 {
        return Err(Error::ZeroVariance);
    }
    let sigma = pv.sigma2.sqrt();
    let c = pv.c;
    let seeds: Vec<u64> = (0..samples.div_ceil(CLT_CHUNK)).map(|_| rng.gen()).collect();
    Ok(seeds
        .par_iter()
        .enumerate()
        .flat_map_iter(|(k, &seed)| {
            let len = CLT_CHUNK.min(samples - k * CLT_CHUNK);
            let mut r = ChaCha8Rng::seed_from_u64(seed);
            let mut spins = vec![0i32; g.n()];
            (0..len)
                .map(|_| {
                    for s in spins.iter_mut() {
                        *s = if r.gen::<bool>() { 1 } else { -1 };
                    }
                    let pair: i32 = g.edges().iter().map(|&(i, j)| spins[i] * spins[j]).sum();
                    let field: i64 =
                        g.degrees().iter().zip(&spins).map(|(&d, &s)| d as i64 * s as i64).sum();
                    (0.25 * pair as f64 + c * field as f64) / sigma
                })
                .collect::<Vec<_>>()
        })
        .collect())
}

/// `sup_x |F_n(x) − Φ(x)|` for the empirical CDF of `values`.
pub fn ks_statistic_normal(values: &[f64]) -> f64 {
    let mut z = values.to_vec();
    z.sort_unstable_by(f64::total_cmp);
    let normal = Normal::standard();
    let n = z.len() as f64;
    z.iter()
        .enumerate()
        .fold(0.0f64, |acc, (i, &x)| {
            let f = normal.cdf(x);
            acc.max((i + 1) as f64 / n - f).max(f - i as f64 / n)
        })
        .clamp(0.0, 1.0)
}

/// Samples `Φ̃(S)/σ` and reports its distance to the standard normal along
/// with the two degree conditions of the central limit argument.
pub fn clt_sample<R: Rng + ?Sized>(g: &Graph, theta: f64, rng: &mut R, samples: usize) -> Result<CltReport> {
    let z = standardized_potential_samples(g, theta, rng, samples)?;
    let sigma2 = potential_variance(g, theta).sigma2;
    Ok(CltReport {
        max_degree_ratio: g.max_degree() as f64 / sigma2.sqrt(),
        degree_sum_ratio: g.degree_sequence().sum_of_squares() as f64 / sigma2,
        ks_statistic: ks_statistic_normal(&z),
        sample_count: samples,
    })
}

/// Connected graph with `m` edges whose degree sequence is not constant,
/// drawn as a random connected graph and rejected while regular.
pub fn random_irregular_graph<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Result<Graph> {
    if m == n * (n - 1) / 2 {
        return Err(Error::Precondition("the only graph with this edge count is complete".into()));
    }
    loop {
        let g = crate::graph::random_connected_graph(n, m, rng)?;
        if g.regular_degree().is_none() {
            return Ok(g);
        }
    }
}
