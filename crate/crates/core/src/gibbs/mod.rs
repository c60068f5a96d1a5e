//! Exact Gibbs–Boltzmann stationary law of log-linear learning.
//!
//! `μ(a | β) ∝ exp(β f₀(a))` over all `2^n` profiles. Everything is kept in
//! log space: at `n = 14`, `K = 13`, `β = 10` the exponent exceeds 300.

mod bounds;
mod enumerate;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{check_beta, ActionProfile, PotentialKind};
use crate::graph::Graph;

pub use bounds::{beta_min_upper_bound, sigmoid_lower_bound_regular, spectral_lower_bound};
pub use enumerate::DensityOfStates;

/// Largest `n` for which the full probability vector is materialised.
pub const GIBBS_MAX_N: usize = 26;
/// Largest `n` for streamed partition functions.
pub const STREAM_MAX_N: usize = 30;

const BRACKET_DOUBLINGS: usize = 60;
pub const DEFAULT_BETA_TOL: f64 = 1e-6;

/// Stationary law over all profiles, indexed by [`ActionProfile::to_index`].
#[derive(Debug, Clone)]
pub struct GibbsDistribution {
    n: usize,
    log_weights: Vec<f64>,
    log_partition: f64,
}

impl GibbsDistribution {
    fn from_log_weights(n: usize, log_weights: Vec<f64>) -> Self {
        let log_partition = log_sum_exp(&log_weights);
        Self { n, log_weights, log_partition }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn log_weights(&self) -> &[f64] {
        &self.log_weights
    }

    pub fn log_partition(&self) -> f64 {
        self.log_partition
    }

    pub fn log_probability(&self, index: u64) -> f64 {
        self.log_weights[index as usize] - self.log_partition
    }

    pub fn probability(&self, index: u64) -> f64 {
        self.log_probability(index).exp()
    }

    pub fn probability_of(&self, a: &ActionProfile) -> f64 {
        assert_eq!(a.n(), self.n);
        self.probability(a.to_index().expect("n <= 64"))
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.log_weights.iter().map(|w| (w - self.log_partition).exp()).collect()
    }

    pub fn prob_all_ones(&self) -> f64 {
        self.probability(self.all_ones_index())
    }

    pub fn prob_all_zeros(&self) -> f64 {
        self.probability(0)
    }

    fn all_ones_index(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }
}

/// Outcome of the minimum-rationality search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BetaMinResult {
    pub beta_min: f64,
    pub delta: f64,
    pub achieved_mu: f64,
    pub iterations: usize,
}

pub(crate) fn log_sum_exp(values: &[f64]) -> f64 {
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + values.iter().map(|v| (v - max).exp()).sum::<f64>().ln()
}

fn check_n(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::TooLarge { n, cap })
    } else {
        Ok(())
    }
}

/// Exact Gibbs law with log-weights `β f₀(a)`.
pub fn exact_gibbs(g: &Graph, theta: f64, beta: f64) -> Result<GibbsDistribution> {
    exact_gibbs_with(g, theta, beta, PotentialKind::Reduced)
}

/// Exact Gibbs law built from either potential form. The two differ only by
/// the constant `β θ |E|` in every log-weight.
pub fn exact_gibbs_with(
    g: &Graph,
    theta: f64,
    beta: f64,
    kind: PotentialKind,
) -> Result<GibbsDistribution> {
    check_n(g.n(), GIBBS_MAX_N)?;
    check_beta(beta)?;
    let shift = match kind {
        PotentialKind::Reduced => 0.0,
        PotentialKind::Full => theta * g.edge_count() as f64,
    };
    let mut lw = vec![0.0; 1usize << g.n()];
    enumerate::fill_values(g, &mut lw, |c| {
        beta * (c.inside as f64 - theta * c.weighted as f64 + shift)
    });
    Ok(GibbsDistribution::from_log_weights(g.n(), lw))
}

/// Gibbs law of the Ising potential over spin profiles; index bit `i` set
/// means `s_i = +1`.
pub fn exact_gibbs_ising(g: &Graph, theta: f64, beta: f64) -> Result<GibbsDistribution> {
    check_n(g.n(), GIBBS_MAX_N)?;
    check_beta(beta)?;
    let offset = ising_offset(g, theta);
    let mut lw = vec![0.0; 1usize << g.n()];
    enumerate::fill_values(g, &mut lw, |c| {
        beta * (c.inside as f64 - theta * c.weighted as f64 + offset)
    });
    Ok(GibbsDistribution::from_log_weights(g.n(), lw))
}

/// `Φ̃(2a − 1) − f₀(a)`, the same for every profile.
fn ising_offset(g: &Graph, theta: f64) -> f64 {
    (theta - 0.25) * g.edge_count() as f64
}

impl DensityOfStates {
    /// Enumerates all profiles once; afterwards partition functions at any
    /// `(θ, β)` cost `O(states)`.
    pub fn of(g: &Graph) -> Result<Self> {
        check_n(g.n(), STREAM_MAX_N)?;
        Ok(Self::new(g))
    }

    /// `log Σ_a exp(β f₀(a))`.
    pub fn log_partition(&self, theta: f64, beta: f64) -> f64 {
        self.log_sum_exp(|c| beta * (c.inside as f64 - theta * c.weighted as f64))
    }

    /// `log Σ_s exp(β Φ̃(s))`.
    pub fn log_partition_ising(&self, theta: f64, beta: f64) -> f64 {
        let offset = (theta - 0.25) * self.edge_count() as f64;
        self.log_sum_exp(|c| beta * (c.inside as f64 - theta * c.weighted as f64 + offset))
    }

    /// `μ(1 | β)`.
    pub fn prob_all_ones(&self, theta: f64, beta: f64) -> f64 {
        let e = self.edge_count() as f64;
        (beta * (1.0 - 2.0 * theta) * e - self.log_partition(theta, beta)).exp()
    }

    /// `μ(0 | β)`.
    pub fn prob_all_zeros(&self, theta: f64, beta: f64) -> f64 {
        (-self.log_partition(theta, beta)).exp()
    }

    /// Probability of the potential maximizer; at `θ = ½` this is `μ(1)`.
    pub fn prob_star(&self, theta: f64, beta: f64) -> f64 {
        if theta <= 0.5 {
            self.prob_all_ones(theta, beta)
        } else {
            self.prob_all_zeros(theta, beta)
        }
    }
}

/// Streamed `log Σ_a exp(β f₀(a))`.
pub fn log_partition(g: &Graph, theta: f64, beta: f64) -> Result<f64> {
    check_beta(beta)?;
    Ok(DensityOfStates::of(g)?.log_partition(theta, beta))
}

/// `log Z` over spin profiles with the Ising potential. `Z = 2^n E_S[e^{βΦ̃(S)}]`
/// for uniform `S`, so `log Z − n log 2` is the log-MGF of `Φ̃(S)`.
pub fn log_partition_ising(g: &Graph, theta: f64, beta: f64) -> Result<f64> {
    check_beta(beta)?;
    Ok(DensityOfStates::of(g)?.log_partition_ising(theta, beta))
}

/// `μ(a* | β)` at the potential maximizer. At `θ = ½` both coordinated
/// profiles maximize; this reports `μ(1)` (see [`coordinated_mass`]).
pub fn stationary_prob_star(g: &Graph, theta: f64, beta: f64) -> Result<f64> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    check_beta(beta)?;
    Ok(DensityOfStates::of(g)?.prob_star(theta, beta))
}

/// `μ(0) + μ(1)`.
pub fn coordinated_mass(g: &Graph, theta: f64, beta: f64) -> Result<f64> {
    check_beta(beta)?;
    let dos = DensityOfStates::of(g)?;
    Ok(dos.prob_all_ones(theta, beta) + dos.prob_all_zeros(theta, beta))
}

/// Smallest `β` with `μ(a* | β) ≥ 1 − δ`, by bisection to absolute `tol`.
///
/// `μ(a*)` is strictly increasing in `β` for `θ ≠ ½`, so the bracket
/// `[0, β_hi]` is grown by doubling from `β_hi = 1` and then halved. The
/// returned `beta_min` is the upper end of the final bracket, so
/// `achieved_mu ≥ 1 − δ` always holds.
pub fn beta_min(g: &Graph, theta: f64, delta: f64, tol: f64) -> Result<BetaMinResult> {
    if theta == 0.5 {
        return Err(Error::ThetaHalf);
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidDelta(delta));
    }
    if !(tol > 0.0) {
        return Err(Error::Precondition(format!("tolerance must be positive, got {tol}")));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let dos = DensityOfStates::of(g)?;
    beta_min_from(&dos, theta, delta, tol)
}

pub(crate) fn beta_min_from(
    dos: &DensityOfStates,
    theta: f64,
    delta: f64,
    tol: f64,
) -> Result<BetaMinResult> {
    let target = 1.0 - delta;
    let mu = |beta: f64| dos.prob_star(theta, beta);

    let at_zero = mu(0.0);
    if at_zero >= target {
        return Ok(BetaMinResult { beta_min: 0.0, delta, achieved_mu: at_zero, iterations: 0 });
    }
    let mut lo = 0.0;
    let mut hi = 1.0;
    let mut doublings = 0;
    while mu(hi) < target {
        if doublings == BRACKET_DOUBLINGS {
            return Err(Error::BracketExhausted(BRACKET_DOUBLINGS));
        }
        lo = hi;
        hi *= 2.0;
        doublings += 1;
    }
    let mut iterations = 0;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mu(mid) >= target {
            hi = mid;
        } else {
            lo = mid;
        }
        iterations += 1;
    }
    Ok(BetaMinResult { beta_min: hi, delta, achieved_mu: mu(hi), iterations })
}
