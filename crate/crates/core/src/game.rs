//! Payoffs, potentials and equilibria of the network stag hunt.
//!
//! Agent `i` playing `a_i` against neighbour `j` earns `a_i (a_j - θ)`, summed
//! over its neighbourhood. Two potentials are exposed: the reduced form
//! `f₀(a) = ½ aᵀAa − θ 1ᵀAa` and the full form `f₀(a) + θ|E|`. They differ by
//! a constant, so they induce the same Gibbs law.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Absolute tolerance for the exact-potential identity.
pub const POTENTIAL_TOL: f64 = 1e-9;

/// Largest graph accepted by [`verify_exact_potential`].
pub const VERIFY_MAX_N: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GameParams {
    /// Task difficulty.
    pub theta: f64,
    /// Rationality (inverse temperature).
    pub beta: f64,
}

impl GameParams {
    pub fn new(theta: f64, beta: f64) -> Result<Self> {
        check_beta(beta)?;
        if !theta.is_finite() {
            return Err(Error::Precondition(format!("theta must be finite, got {theta}")));
        }
        Ok(Self { theta, beta })
    }

    /// Ising field coefficient `¼ − θ/2`.
    pub fn c(&self) -> f64 {
        ising_c(self.theta)
    }
}

pub(crate) fn check_beta(beta: f64) -> Result<()> {
    if beta.is_finite() && beta >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidBeta(beta))
    }
}

#[inline]
pub fn ising_c(theta: f64) -> f64 {
    0.25 - theta / 2.0
}

/// A joint action of `n` agents, stored as a bitmask.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ActionProfile {
    n: usize,
    words: Vec<u64>,
    hamming: usize,
}

impl ActionProfile {
    pub fn zeros(n: usize) -> Self {
        Self { n, words: vec![0; n.div_ceil(64)], hamming: 0 }
    }

    pub fn ones(n: usize) -> Self {
        let mut a = Self::zeros(n);
        for i in 0..n {
            a.set(i, true);
        }
        a
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut a = Self::zeros(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            a.set(i, b);
        }
        a
    }

    /// Profile whose bit `i` is bit `i` of `index`. Needs `n <= 64`.
    pub fn from_index(n: usize, index: u64) -> Self {
        assert!(n <= 64, "index form needs n <= 64");
        let index = if n == 64 { index } else { index & ((1u64 << n) - 1) };
        let mut words = vec![0; n.div_ceil(64)];
        if !words.is_empty() {
            words[0] = index;
        }
        Self { n, words, hamming: index.count_ones() as usize }
    }

    /// Inverse of [`ActionProfile::from_index`]; `None` when `n > 64`.
    pub fn to_index(&self) -> Option<u64> {
        match self.n {
            0 => Some(0),
            1..=64 => Some(self.words[0]),
            _ => None,
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.n, "agent {i} out of range for {} agents", self.n);
        if self.get(i) != value {
            self.words[i / 64] ^= 1u64 << (i % 64);
            if value {
                self.hamming += 1;
            } else {
                self.hamming -= 1;
            }
        }
    }

    /// Copy with agent `i`'s action flipped.
    pub fn flipped(&self, i: usize) -> Self {
        let mut out = self.clone();
        out.set(i, !self.get(i));
        out
    }

    /// Number of agents playing `1`.
    #[inline]
    pub fn hamming(&self) -> usize {
        self.hamming
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.n).map(move |i| self.get(i))
    }

    pub fn is_all_ones(&self) -> bool {
        self.hamming == self.n
    }

    pub fn is_all_zeros(&self) -> bool {
        self.hamming == 0
    }
}

impl fmt::Debug for ActionProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.iter().map(|b| if b { '1' } else { '0' }).collect();
        write!(f, "ActionProfile({s})")
    }
}

/// The ±1 reparameterization `s_i = 2a_i − 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpinProfile {
    spins: Vec<i8>,
}

impl SpinProfile {
    pub fn new(spins: Vec<i8>) -> Result<Self> {
        if spins.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::Precondition("spins must be ±1".into()));
        }
        Ok(Self { spins })
    }

    pub fn all(n: usize, spin: i8) -> Self {
        assert!(spin == 1 || spin == -1);
        Self { spins: vec![spin; n] }
    }

    pub fn as_slice(&self) -> &[i8] {
        &self.spins
    }

    pub fn n(&self) -> usize {
        self.spins.len()
    }

    pub fn to_actions(&self) -> ActionProfile {
        ActionProfile::from_bits(self.spins.iter().map(|&s| s == 1))
    }
}

impl From<&ActionProfile> for SpinProfile {
    fn from(a: &ActionProfile) -> Self {
        Self { spins: a.iter().map(|b| if b { 1 } else { -1 }).collect() }
    }
}

/// One of the two coordinated profiles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Coordinated {
    /// Everyone plays `0`; `(0, 0)` in the two-player game.
    AllZeros,
    /// Everyone plays `1`; `(1, 1)` in the two-player game.
    AllOnes,
}

impl Coordinated {
    pub fn profile(self, n: usize) -> ActionProfile {
        match self {
            Coordinated::AllZeros => ActionProfile::zeros(n),
            Coordinated::AllOnes => ActionProfile::ones(n),
        }
    }
}

/// Pure equilibria, or potential maximizers, among the coordinated profiles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NashSet {
    members: Vec<Coordinated>,
}

impl NashSet {
    fn of(members: &[Coordinated]) -> Self {
        let mut members = members.to_vec();
        members.sort();
        Self { members }
    }

    pub fn members(&self) -> &[Coordinated] {
        &self.members
    }

    pub fn contains(&self, c: Coordinated) -> bool {
        self.members.contains(&c)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PotentialKind {
    /// `½ aᵀAa − θ 1ᵀAa`.
    Reduced,
    /// Reduced plus the constant `θ|E|`.
    Full,
}

/// Two-player payoff `a_i (a_j − θ)`.
#[inline]
pub fn pairwise_payoff(a_i: bool, a_j: bool, theta: f64) -> f64 {
    if a_i {
        f64::from(u8::from(a_j)) - theta
    } else {
        0.0
    }
}

#[inline]
fn active_neighbors(g: &Graph, a: &ActionProfile, i: usize) -> usize {
    g.neighbors(i).iter().filter(|&&j| a.get(j)).count()
}

/// Gain `U_i(1, a_{-i}) − U_i(0, a_{-i})` for agent `i`: active neighbours
/// minus `θ d_i`.
#[inline]
pub(crate) fn switch_gain(g: &Graph, a: &ActionProfile, i: usize, theta: f64) -> f64 {
    active_neighbors(g, a, i) as f64 - theta * g.degree(i) as f64
}

fn check_agent(g: &Graph, a: &ActionProfile, i: usize) -> Result<()> {
    if a.n() != g.n() {
        return Err(Error::SizeMismatch(a.n(), g.n()));
    }
    if i >= g.n() {
        return Err(Error::AgentOutOfRange { index: i, n: g.n() });
    }
    Ok(())
}

/// `U_i(a) = a_i (Σ_{j∈N_i} a_j − θ d_i)`.
pub fn utility(g: &Graph, a: &ActionProfile, i: usize, theta: f64) -> Result<f64> {
    check_agent(g, a, i)?;
    Ok(if a.get(i) { switch_gain(g, a, i, theta) } else { 0.0 })
}

/// `(edges inside the active set, Σ_i d_i a_i)`.
pub(crate) fn profile_counts(g: &Graph, a: &ActionProfile) -> (usize, usize) {
    let inside = g.edges().iter().filter(|&&(i, j)| a.get(i) && a.get(j)).count();
    let weighted = (0..g.n()).filter(|&i| a.get(i)).map(|i| g.degree(i)).sum();
    (inside, weighted)
}

/// `f₀(a)`: edges with both endpoints active, minus `θ Σ d_i a_i`.
pub fn potential_reduced(g: &Graph, a: &ActionProfile, theta: f64) -> f64 {
    let (inside, weighted) = profile_counts(g, a);
    inside as f64 - theta * weighted as f64
}

/// `½ aᵀAa − θ 1ᵀAa + (θ/2) 1ᵀA1`.
pub fn potential_full(g: &Graph, a: &ActionProfile, theta: f64) -> f64 {
    potential_reduced(g, a, theta) + theta * g.edge_count() as f64
}

pub fn potential(g: &Graph, a: &ActionProfile, theta: f64, kind: PotentialKind) -> f64 {
    match kind {
        PotentialKind::Reduced => potential_reduced(g, a, theta),
        PotentialKind::Full => potential_full(g, a, theta),
    }
}

/// Ising potential `⅛ sᵀAs + c 1ᵀAs` with `c = ¼ − θ/2`, constant dropped.
pub fn ising_potential(g: &Graph, s: &SpinProfile, theta: f64) -> f64 {
    let spins = s.as_slice();
    let coupling: i64 = g
        .edges()
        .iter()
        .map(|&(i, j)| i64::from(spins[i]) * i64::from(spins[j]))
        .sum();
    let field: i64 = (0..g.n()).map(|i| g.degree(i) as i64 * i64::from(spins[i])).sum();
    0.25 * coupling as f64 + ising_c(theta) * field as f64
}

/// Pure Nash equilibria of the two-player stag hunt.
pub fn pairwise_nash_set(theta: f64) -> NashSet {
    use Coordinated::*;
    if theta > 1.0 {
        NashSet::of(&[AllZeros])
    } else if theta >= 0.0 {
        NashSet::of(&[AllZeros, AllOnes])
    } else {
        NashSet::of(&[AllOnes])
    }
}

/// Maximizers of the potential on a connected graph: all-ones below
/// `θ = ½`, all-zeros above, both at the tie.
pub fn potential_maximizers(g: &Graph, theta: f64) -> Result<NashSet> {
    use Coordinated::*;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(if theta < 0.5 {
        NashSet::of(&[AllOnes])
    } else if theta > 0.5 {
        NashSet::of(&[AllZeros])
    } else {
        NashSet::of(&[AllZeros, AllOnes])
    })
}

/// Exhaustively checks that every unilateral deviation changes the chosen
/// potential by exactly the deviator's utility change.
pub fn verify_exact_potential(g: &Graph, theta: f64, kind: PotentialKind) -> Result<bool> {
    verify_exact_potential_with(g, theta, |a| potential(g, a, theta, kind))
}

/// [`verify_exact_potential`] for an arbitrary candidate potential.
pub fn verify_exact_potential_with<F>(g: &Graph, theta: f64, candidate: F) -> Result<bool>
where
    F: Fn(&ActionProfile) -> f64,
{
    let n = g.n();
    if n > VERIFY_MAX_N {
        return Err(Error::TooLarge { n, cap: VERIFY_MAX_N });
    }
    let profiles: Vec<ActionProfile> =
        (0..1u64 << n).map(|idx| ActionProfile::from_index(n, idx)).collect();
    let values: Vec<f64> = profiles.iter().map(&candidate).collect();
    for (idx, a) in profiles.iter().enumerate() {
        for i in 0..n {
            let other = idx ^ (1 << i);
            let du = utility(g, &profiles[other], i, theta)? - utility(g, a, i, theta)?;
            let dphi = values[other] - values[idx];
            if (du - dphi).abs() > POTENTIAL_TOL {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
