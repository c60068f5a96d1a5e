//! Log-linear learning on network stag-hunt games.
//!
//! Agents on an undirected graph each choose a safe action `0` or a risky
//! action `1`. The crate provides the game's potential and equilibria
//! ([`game`]), the exact Gibbs stationary law with analytic bounds
//! ([`gibbs`]), a log-linear learning chain simulator ([`lll`]), and
//! network-design tools built on degree-sequence majorization and a Gaussian
//! approximation of the partition function ([`design`]).

pub mod design;
pub mod error;
pub mod game;
pub mod gibbs;
pub mod graph;
pub mod lll;

pub use design::{CltReport, PoIResult, PotentialVariance};
pub use error::{Error, Result};
pub use game::{ActionProfile, Coordinated, GameParams, NashSet, PotentialKind, SpinProfile};
pub use gibbs::{BetaMinResult, DensityOfStates, GibbsDistribution};
pub use graph::{DegreeSequence, Graph, Matching};
pub use lll::{ChainConfig, EmpiricalDistribution, InitialProfile, TransitionMatrix};
