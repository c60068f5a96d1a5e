//! Closed-form bounds on the stationary mass of the coordinated maximizer.

use crate::error::{Error, Result};
use crate::graph::{Graph, DEFAULT_SPECTRAL_TOL};

/// Sufficient rationality for a `K`-regular graph on `n` agents:
/// `β_min(δ) ≤ (L/n − ln(1 − e^{L/n})) / |(½ − θ)K|` with `L = ln(1 − δ)`.
pub fn beta_min_upper_bound(k: usize, n: usize, theta: f64, delta: f64) -> Result<f64> {
    if theta == 0.5 {
        return Err(Error::ThetaHalf);
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidDelta(delta));
    }
    if k == 0 || n == 0 {
        return Err(Error::Precondition(format!("need k >= 1 and n >= 1, got k = {k}, n = {n}")));
    }
    let x = (-delta).ln_1p() / n as f64;
    // ln(1 − e^x) for x < 0, without cancellation near 0
    let tail = (-x.exp_m1()).ln();
    Ok((x - tail) / ((0.5 - theta) * k as f64).abs())
}

/// `(1 / (1 + e^{−βK|½−θ|}))^n`, a lower bound on `μ(a* | β)` for any
/// connected `K`-regular graph.
pub fn sigmoid_lower_bound_regular(k: usize, n: usize, theta: f64, beta: f64) -> f64 {
    sigmoid_power(beta * k as f64 * (0.5 - theta).abs(), n)
}

/// `(1 / (1 + e^{−βλ₁|1−2θ|/2}))^n` with `λ₁` the spectral radius.
///
/// This is a valid lower bound on regular graphs, where it coincides with
/// [`sigmoid_lower_bound_regular`]. On irregular graphs it can exceed the
/// exact value: for the star `K_{1,13}` at `θ = 0.3` it does once `β ≳ 3.7`.
pub fn spectral_lower_bound(g: &Graph, theta: f64, beta: f64) -> Result<f64> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let lambda = g.spectral_radius(DEFAULT_SPECTRAL_TOL)?;
    Ok(sigmoid_power(beta * lambda * (1.0 - 2.0 * theta).abs() / 2.0, g.n()))
}

fn sigmoid_power(x: f64, n: usize) -> f64 {
    // −n·ln(1 + e^{−x}), stable for large x
    (-(n as f64) * (-x).exp().ln_1p()).exp()
}
