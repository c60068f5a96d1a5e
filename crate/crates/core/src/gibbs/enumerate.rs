//! Gray-code walk over all `2^n` profiles.
//!
//! The reduced potential depends on a profile only through two integers: the
//! number of edges inside the active set and the active degree sum. The walk
//! keeps both counters exact and updates them in `O(1)` per flip using
//! neighbour bitmasks, so no floating error accumulates along the walk.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::graph::Graph;

/// Low bits walked sequentially inside one parallel chunk.
const CHUNK_BITS: usize = 16;

/// Exact counters of one profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) struct Counts {
    pub inside: u32,
    pub weighted: u32,
}

struct Walker {
    masks: Vec<u64>,
    degrees: Vec<u32>,
}

impl Walker {
    fn new(g: &Graph) -> Self {
        Self {
            masks: g.neighbor_masks(),
            degrees: g.degrees().iter().map(|&d| d as u32).collect(),
        }
    }

    fn counts_of(&self, profile: u64) -> Counts {
        let mut inside = 0;
        let mut weighted = 0;
        let mut rest = profile;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            inside += (profile & self.masks[i]).count_ones();
            weighted += self.degrees[i];
        }
        Counts { inside: inside / 2, weighted }
    }

    /// Visits every profile whose high bits equal `high` (low `bits` bits
    /// free), in Gray order. The callback receives the low-bit offset.
    fn walk_chunk<F: FnMut(usize, Counts)>(&self, high: u64, bits: usize, mut visit: F) {
        let mut profile = high << bits;
        let mut c = self.counts_of(profile);
        visit(0, c);
        for k in 1u64..(1u64 << bits) {
            let i = k.trailing_zeros() as usize;
            let bit = 1u64 << i;
            let active_nbrs = (profile & self.masks[i]).count_ones();
            if profile & bit == 0 {
                c.inside += active_nbrs;
                c.weighted += self.degrees[i];
            } else {
                c.inside -= active_nbrs;
                c.weighted -= self.degrees[i];
            }
            profile ^= bit;
            visit((profile & ((1u64 << bits) - 1)) as usize, c);
        }
    }
}

/// Fills `out[profile] = value(counts(profile))` for every profile.
pub(crate) fn fill_values<F>(g: &Graph, out: &mut [f64], value: F)
where
    F: Fn(Counts) -> f64 + Sync,
{
    let n = g.n();
    debug_assert_eq!(out.len(), 1usize << n);
    let walker = Walker::new(g);
    let bits = n.min(CHUNK_BITS);
    out.par_chunks_mut(1 << bits).enumerate().for_each(|(high, chunk)| {
        walker.walk_chunk(high as u64, bits, |offset, c| chunk[offset] = value(c));
    });
}

/// Multiplicity of every `(inside, weighted)` pair over all profiles.
#[derive(Debug, Clone)]
pub struct DensityOfStates {
    n: usize,
    edges: usize,
    states: Vec<(Counts, u64)>,
}

impl DensityOfStates {
    pub(crate) fn new(g: &Graph) -> Self {
        let n = g.n();
        let walker = Walker::new(g);
        let bits = n.min(CHUNK_BITS);
        let chunks = 1u64 << (n - bits);
        let merged = (0..chunks)
            .into_par_iter()
            .fold(HashMap::new, |mut acc: HashMap<Counts, u64>, high| {
                walker.walk_chunk(high, bits, |_, c| *acc.entry(c).or_insert(0) += 1);
                acc
            })
            .reduce(HashMap::new, |mut a, b| {
                for (k, v) in b {
                    *a.entry(k).or_insert(0) += v;
                }
                a
            });
        let mut states: Vec<_> = merged.into_iter().collect();
        states.sort_unstable_by_key(|&(c, _)| (c.inside, c.weighted));
        Self { n, edges: g.edge_count(), states }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    /// `log Σ_states count · exp(value(state))`.
    pub(crate) fn log_sum_exp<F: Fn(Counts) -> f64>(&self, value: F) -> f64 {
        let max = self.states.iter().map(|&(c, _)| value(c)).fold(f64::NEG_INFINITY, f64::max);
        let sum: f64 = self
            .states
            .iter()
            .map(|&(c, count)| count as f64 * (value(c) - max).exp())
            .sum();
        max + sum.ln()
    }

    /// Number of distinct `(inside, weighted)` pairs.
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Number of profiles counted, `2^n`.
    pub fn total(&self) -> u64 {
        self.states.iter().map(|&(_, k)| k).sum()
    }
}
