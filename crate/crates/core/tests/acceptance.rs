//! End-to-end acceptance checks. Each test prints one `PASS`/`FAIL` line to
//! stderr (written directly, so it shows even when output is captured) and
//! then asserts.

use std::io::Write;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use netcoord::design::{
    gaussian_log_partition, potential_variance, price_of_irregularity, random_irregular_graph,
    standardized_potential_samples, ks_statistic_normal,
};
use netcoord::game::{ising_c, ising_potential, potential_reduced, verify_exact_potential, verify_exact_potential_with};
use netcoord::gibbs::{
    beta_min, beta_min_upper_bound, exact_gibbs, log_partition_ising, spectral_lower_bound,
    stationary_prob_star, DEFAULT_BETA_TOL,
};
use netcoord::graph::{
    build_k_regular, connected_graphs, erdos_renyi, random_connected_graph, random_spanning_tree,
};
use netcoord::lll::{simulate, transition_matrix, tv_distance, ChainConfig};
use netcoord::{ActionProfile, DensityOfStates, Graph, PotentialKind, SpinProfile};

fn report(id: u32, name: &str, pass: bool, detail: String) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    let _ = writeln!(std::io::stderr(), "criterion {id:>2} {verdict} {name}: {detail}");
    assert!(pass, "criterion {id} ({name}) failed: {detail}");
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_graph(r: &mut ChaCha8Rng, lo: usize, hi: usize) -> Graph {
    let n = r.gen_range(lo..=hi);
    let m = r.gen_range(n - 1..=n * (n - 1) / 2);
    random_connected_graph(n, m, r).unwrap()
}

#[test]
fn criterion_01_exact_potential_identity() {
    let mut r = rng(101);
    let mut identity_ok = 0;
    let mut control_rejected = 0;
    let total = 50;
    for _ in 0..total {
        let g = random_graph(&mut r, 3, 10);
        let theta = r.gen_range(-1.0..=2.0);
        if verify_exact_potential(&g, theta, PotentialKind::Reduced).unwrap()
            && verify_exact_potential(&g, theta, PotentialKind::Full).unwrap()
        {
            identity_ok += 1;
        }
        // a perturbation far above the 1e-9 tolerance
        let corrupted =
            verify_exact_potential_with(&g, theta, |a| potential_reduced(&g, a, theta) + 1e-6 * a.hamming() as f64)
                .unwrap();
        if !corrupted {
            control_rejected += 1;
        }
    }
    report(
        1,
        "exact potential identity",
        identity_ok == total && control_rejected == total,
        format!("{identity_ok}/{total} verified, {control_rejected}/{total} corrupted potentials rejected"),
    );
}

#[test]
fn criterion_02_stationarity_and_detailed_balance() {
    let mut r = rng(102);
    let mut worst_stationary: f64 = 0.0;
    let mut worst_balance: f64 = 0.0;
    for _ in 0..20 {
        let g = random_graph(&mut r, 2, 8);
        for beta in [0.5, 1.0, 2.0] {
            let mu = exact_gibbs(&g, 0.3, beta).unwrap().probabilities();
            let p = transition_matrix(&g, 0.3, beta).unwrap();
            let next = p.left_multiply(&mu).unwrap();
            let l1: f64 = mu.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
            worst_stationary = worst_stationary.max(l1);
            for a in 0..mu.len() {
                for i in 0..g.n() {
                    let b = a ^ (1 << i);
                    worst_balance = worst_balance.max((mu[a] * p.get(a, b) - mu[b] * p.get(b, a)).abs());
                }
            }
        }
    }
    report(
        2,
        "stationarity and detailed balance",
        worst_stationary < 1e-10 && worst_balance < 1e-10,
        format!("max |muP - mu|_1 = {worst_stationary:.3e}, max balance residual = {worst_balance:.3e}"),
    );
}

#[test]
fn criterion_03_chain_matches_gibbs() {
    let g = Graph::cycle(6).unwrap();
    let exact = exact_gibbs(&g, 0.3, 1.0).unwrap().probabilities();
    let tvs: Vec<f64> = (0..10u64)
        .map(|seed| {
            let cfg = ChainConfig::with_samples(&g, 1.0, 1_000_000, seed);
            let h = simulate(&g, 0.3, 1.0, &cfg).unwrap();
            tv_distance(&h.probabilities().unwrap(), &exact).unwrap()
        })
        .collect();
    let good = tvs.iter().filter(|&&d| d < 0.02).count();
    let worst = tvs.iter().cloned().fold(0.0, f64::max);
    report(3, "chain matches exact law", good >= 9, format!("{good}/10 seeds with TV < 0.02 (worst {worst:.4})"));
}

#[test]
fn criterion_04_monotone_in_beta_and_degree() {
    let grid: Vec<f64> = (0..61).map(|i| 3.0 * i as f64 / 60.0).collect();
    let series: Vec<Vec<f64>> = [3usize, 5, 7, 9, 11, 13]
        .iter()
        .map(|&k| {
            let dos = DensityOfStates::of(&build_k_regular(14, k, None).unwrap()).unwrap();
            grid.iter().map(|&b| dos.prob_all_ones(0.3, b)).collect()
        })
        .collect();
    let in_beta = series.iter().all(|s| s.windows(2).all(|w| w[1] > w[0] + 1e-12));
    let in_k = (1..grid.len()).all(|t| series.windows(2).all(|p| p[1][t] > p[0][t]));
    report(
        4,
        "monotone in rationality and degree",
        in_beta && in_k,
        format!("strict in beta: {in_beta}, strict in K: {in_k}"),
    );
}

#[test]
fn criterion_05_beta_min_against_bound() {
    let (n, theta, delta) = (14usize, 0.3, 0.1);
    let ks: Vec<usize> = (3..=13).collect();
    let exact: Vec<f64> = ks
        .iter()
        .map(|&k| beta_min(&build_k_regular(n, k, None).unwrap(), theta, delta, DEFAULT_BETA_TOL).unwrap().beta_min)
        .collect();
    let bound: Vec<f64> = ks.iter().map(|&k| beta_min_upper_bound(k, n, theta, delta).unwrap()).collect();
    let dominated = exact.iter().zip(&bound).all(|(e, b)| e <= b);
    let nonincreasing = exact.windows(2).all(|w| w[1] <= w[0]);
    let ratio = beta_min_upper_bound(3, n, theta, delta).unwrap() / beta_min_upper_bound(6, n, theta, delta).unwrap();
    let halves = ((ratio - 2.0) / 2.0).abs() <= 1e-12;
    report(
        5,
        "minimum rationality below bound",
        dominated && nonincreasing && halves,
        format!("bound dominates: {dominated}, nonincreasing: {nonincreasing}, bound(3)/bound(6) = {ratio}"),
    );
}

#[test]
fn criterion_06_edge_augmentation() {
    let mut r = rng(106);
    let mut g = random_spanning_tree(10, &mut r).unwrap();
    let mut mus = vec![stationary_prob_star(&g, 0.3, 1.0).unwrap()];
    for _ in 0..20 {
        let &(i, j) = g.non_edges().choose(&mut r).unwrap();
        g = g.add_edge_successor(i, j).unwrap();
        mus.push(stationary_prob_star(&g, 0.3, 1.0).unwrap());
    }
    let strict = mus.windows(2).all(|w| w[1] > w[0]);
    report(
        6,
        "edge addition raises coordination",
        strict,
        format!("mu from {:.4e} to {:.4e} over 20 added edges", mus[0], mus[20]),
    );
}

#[test]
fn criterion_07_spectral_bound_dominance() {
    let mut r = rng(107);
    let mut violations = 0;
    let mut worst_zero_gap: f64 = 0.0;
    for _ in 0..30 {
        let g = random_graph(&mut r, 2, 14);
        for b in 0..=40 {
            let beta = 0.1 * b as f64;
            let bound = spectral_lower_bound(&g, 0.3, beta).unwrap();
            let exact = stationary_prob_star(&g, 0.3, beta).unwrap();
            if bound > exact {
                violations += 1;
            }
            if b == 0 {
                let uniform = 0.5f64.powi(g.n() as i32);
                worst_zero_gap = worst_zero_gap.max((bound - exact).abs()).max((exact - uniform).abs());
            }
        }
    }
    report(
        7,
        "spectral lower bound",
        violations == 0 && worst_zero_gap <= 1e-12,
        format!("{violations} violations over 30 graphs x 41 betas, max gap at beta=0 {worst_zero_gap:.1e}"),
    );
}

#[test]
fn criterion_08_regular_graphs_are_optimal() {
    let family = connected_graphs(6, 9).unwrap();
    let best = family
        .iter()
        .map(|g| (DensityOfStates::of(g).unwrap().prob_all_ones(0.3, 0.1), g))
        .max_by(|a, b| a.0.total_cmp(&b.0))
        .unwrap();
    let exhaustive_ok = best.1.regular_degree() == Some(3);

    let mut r = rng(108);
    let circulant = DensityOfStates::of(&build_k_regular(14, 6, None).unwrap()).unwrap();
    let mut losses = 0;
    for _ in 0..100 {
        let g = random_irregular_graph(14, 42, &mut r).unwrap();
        let dos = DensityOfStates::of(&g).unwrap();
        for beta in [0.1, 0.5] {
            if dos.prob_all_ones(0.3, beta) >= circulant.prob_all_ones(0.3, beta) {
                losses += 1;
            }
        }
    }
    report(
        8,
        "regular graphs maximize coordination",
        exhaustive_ok && losses == 0,
        format!(
            "best of {} graphs on 6 vertices is 3-regular: {exhaustive_ok}; circulant lost {losses} of 200 contests",
            family.len()
        ),
    );
}

#[test]
fn criterion_09_variance_identity() {
    let mut r = rng(109);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let g = random_graph(&mut r, 2, 12);
        let theta = r.gen_range(-0.5..1.5);
        let values: Vec<f64> = (0..1u64 << g.n())
            .map(|i| ising_potential(&g, &SpinProfile::from(&ActionProfile::from_index(g.n(), i)), theta))
            .collect();
        let len = values.len() as f64;
        let mean = values.iter().sum::<f64>() / len;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / len;
        let sigma2 = potential_variance(&g, theta).sigma2;
        worst = worst.max((var - sigma2).abs() / sigma2);
    }
    report(9, "potential variance identity", worst <= 1e-9, format!("max relative error {worst:.2e}"));
}

#[test]
fn criterion_10_standardized_potential_approaches_normal() {
    let mut r = rng(110);
    let ks: Vec<f64> = [64usize, 256, 1024]
        .iter()
        .map(|&n| {
            let g = erdos_renyi(n, 10.0 / n as f64, &mut r).unwrap();
            ks_statistic_normal(&standardized_potential_samples(&g, 0.3, &mut r, 100_000).unwrap())
        })
        .collect();
    let decreasing = ks.windows(2).all(|w| w[1] < w[0]);
    report(
        10,
        "normal approximation improves with size",
        decreasing && ks[2] < 0.02,
        format!("KS at n = 64, 256, 1024: {:.4}, {:.4}, {:.4}", ks[0], ks[1], ks[2]),
    );
}

#[test]
fn criterion_11_price_of_irregularity_scaling() {
    let (theta, beta) = (0.3, 0.5);
    let mut r = rng(111);
    let mut points = Vec::new();
    for n in [10usize, 12, 14] {
        let regular = build_k_regular(n, 6, None).unwrap();
        for _ in 0..60 {
            let irr = random_irregular_graph(n, 3 * n, &mut r).unwrap();
            let poi = price_of_irregularity(&regular, &irr, theta, beta).unwrap();
            points.push((n as f64 * poi.degree_variance, poi.exact_poi));
        }
    }
    let m = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / m;
    let my = points.iter().map(|p| p.1).sum::<f64>() / m;
    let slope = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>()
        / points.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();
    let intercept = my - slope * mx;
    let c = ising_c(theta);
    let predicted = beta * beta * c * c / 2.0;
    let slope_ok = (slope - predicted).abs() <= 0.25 * predicted;
    let intercept_ok = intercept.abs() <= 0.05;
    report(
        11,
        "price of irregularity scaling",
        slope_ok && intercept_ok,
        format!("slope {slope:.5} vs predicted {predicted:.5} (ratio {:.2}), intercept {intercept:.4}", slope / predicted),
    );
}

#[test]
fn criterion_12_gaussian_log_partition() {
    let mut r = rng(112);
    let g = random_connected_graph(20, 40, &mut r).unwrap();
    let exact = log_partition_ising(&g, 0.3, 0.1).unwrap();
    let approx = gaussian_log_partition(potential_variance(&g, 0.3).sigma2, 0.1, 20);
    let rel = ((approx - exact) / exact).abs();
    report(12, "gaussian log-partition accuracy", rel < 0.01, format!("relative error {rel:.2e}"));
}
