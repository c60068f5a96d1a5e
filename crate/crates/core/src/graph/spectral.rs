use super::Graph;
use crate::error::{Error, Result};

pub const DEFAULT_SPECTRAL_TOL: f64 = 1e-10;
const MAX_ITER: usize = 1_000_000;

/// Power iteration on `A + Δ·I` per connected component, where Δ is the
/// component's max degree. The shift makes the operator positive
/// semidefinite, so the Rayleigh quotient rises monotonically from the
/// average degree towards λ₁ and bipartite components do not oscillate.
/// Stops once the residual `‖Ax − ρx‖` drops below `tol`.
pub(super) fn spectral_radius(g: &Graph, tol: f64) -> Result<f64> {
    let mut best = 0.0f64;
    let mut local = vec![usize::MAX; g.n()];
    for comp in g.components() {
        if comp.len() == 1 {
            continue;
        }
        for (k, &v) in comp.iter().enumerate() {
            local[v] = k;
        }
        let adj: Vec<Vec<usize>> = comp
            .iter()
            .map(|&v| g.neighbors(v).iter().map(|&w| local[w]).collect())
            .collect();
        best = best.max(component_radius(&adj, tol)?);
    }
    Ok(best)
}

fn component_radius(adj: &[Vec<usize>], tol: f64) -> Result<f64> {
    let size = adj.len();
    let shift = adj.iter().map(Vec::len).max().unwrap_or(0) as f64;
    let mut x = vec![1.0 / (size as f64).sqrt(); size];
    let mut ax = vec![0.0; size];
    for _ in 0..MAX_ITER {
        for (i, nbrs) in adj.iter().enumerate() {
            ax[i] = nbrs.iter().map(|&j| x[j]).sum();
        }
        let rho: f64 = x.iter().zip(&ax).map(|(a, b)| a * b).sum();
        let residual = x
            .iter()
            .zip(&ax)
            .map(|(xi, axi)| (axi - rho * xi).powi(2))
            .sum::<f64>()
            .sqrt();
        if residual <= tol {
            return Ok(rho);
        }
        let mut norm = 0.0;
        for i in 0..size {
            x[i] = ax[i] + shift * x[i];
            norm += x[i] * x[i];
        }
        let norm = norm.sqrt();
        x.iter_mut().for_each(|v| *v /= norm);
    }
    Err(Error::NoConvergence(MAX_ITER))
}
