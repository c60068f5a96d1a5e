use std::collections::BTreeMap;
use std::fs::File;
use std::io::BufReader;

use anyhow::{anyhow, bail, Context, Result};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use netcoord::design::{
    optimal_degree_sequence, potential_variance, price_of_irregularity, random_irregular_graph,
    realize_degree_sequence, standardized_potential_samples, ks_statistic_normal,
};
use netcoord::game::{potential, verify_exact_potential, verify_exact_potential_with, ising_c};
use netcoord::gibbs::{
    beta_min, beta_min_upper_bound, exact_gibbs, exact_gibbs_ising, sigmoid_lower_bound_regular,
    spectral_lower_bound, DEFAULT_BETA_TOL,
};
use netcoord::graph::{
    build_k_regular, erdos_renyi, random_connected_graph, random_spanning_tree, read_edge_list,
};
use netcoord::lll::{simulate, transition_matrix, tv_distance, ChainConfig};
use netcoord::{ActionProfile, DensityOfStates, Graph, PotentialKind, SpinProfile};

use crate::config::{Experiment, ExperimentConfig};
use crate::output::{Row, SeriesOutput};

pub fn run(cfg: &ExperimentConfig) -> Result<SeriesOutput> {
    match cfg.experiment {
        Experiment::MonotonicityBetaK => monotonicity(cfg),
        Experiment::BetaMin => beta_min_series(cfg),
        Experiment::EdgeAugmentation => edge_augmentation(cfg),
        Experiment::RegularVsIrregular => regular_vs_irregular(cfg),
        Experiment::CltHistogram => clt_histogram(cfg),
        Experiment::PoiScatter => poi_scatter(cfg),
        Experiment::VerifySuite => verify_suite(cfg),
    }
}

fn load_graph(cfg: &ExperimentConfig) -> Result<Option<Graph>> {
    let Some(path) = &cfg.graph_file else { return Ok(None) };
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let g = read_edge_list(BufReader::new(file)).with_context(|| format!("reading {}", path.display()))?;
    Ok(Some(g))
}

fn require_exact(g: &Graph, what: &str) -> Result<()> {
    if !g.is_connected() {
        bail!("{what} is not connected");
    }
    if g.n() > netcoord::gibbs::STREAM_MAX_N {
        bail!("{what} has {} agents, above the enumeration cap of {}", g.n(), netcoord::gibbs::STREAM_MAX_N);
    }
    Ok(())
}

fn monotonicity(cfg: &ExperimentConfig) -> Result<SeriesOutput> {
    let graphs: Vec<(String, Graph)> = match load_graph(cfg)? {
        Some(g) => {
            require_exact(&g, "graph file")?;
            vec![("file".into(), g)]
        }
        None => cfg
            .k_list
            .iter()
            .map(|&k| Ok((format!("K={k}"), build_k_regular(cfg.n, k, None)?)))
            .collect::<Result<_>>()?,
    };
    let grid = cfg.beta_grid.values();
    let rows = graphs
        .par_iter()
        .map(|(label, g)| {
            let dos = DensityOfStates::of(g)?;
            Ok(grid.iter().map(|&b| Row::new(b, dos.prob_star(cfg.theta, b), label.clone())).collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()?
        .concat();
    Ok(SeriesOutput::new(cfg, vec![], rows, BTreeMap::new()))
}

fn beta_min_series(cfg: &ExperimentConfig) -> Result<SeriesOutput> {
    let exact: Vec<f64> = cfg
        .k_list
        .par_iter()
        .map(|&k| {
            let g = build_k_regular(cfg.n, k, None)?;
            Ok(beta_min(&g, cfg.theta, cfg.delta, DEFAULT_BETA_TOL)?.beta_min)
        })
        .collect::<Result<_>>()?;
    let mut rows: Vec<Row> = cfg.k_list.iter().zip(&exact).map(|(&k, &b)| Row::new(k as f64, b, "exact")).collect();
    for &k in &cfg.k_list {
        rows.push(Row::new(k as f64, beta_min_upper_bound(k, cfg.n, cfg.theta, cfg.delta)?, "bound"));
    }
    Ok(SeriesOutput::new(cfg, vec![], rows, BTreeMap::new()))
}

fn edge_augmentation(cfg: &ExperimentConfig) -> Result<SeriesOutput> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let start = match load_graph(cfg)? {
        Some(g) => g,
        None => random_spanning_tree(cfg.n, &mut rng)?,
    };
    require_exact(&start, "starting graph")?;
    let mut chain = vec![start];
    for _ in 0..cfg.added_edges {
        let last = chain.last().expect("nonempty");
        let candidates = last.non_edges();
        let &(i, j) = candidates.choose(&mut rng).ok_or_else(|| anyhow!("graph became complete"))?;
        chain.push(last.add_edge_successor(i, j)?);
    }
    let rows = chain
        .par_iter()
        .map(|g| {
            let mu = DensityOfStates::of(g)?.prob_star(cfg.theta, cfg.beta);
            Ok(Row::new(g.edge_count() as f64, mu, "mu"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SeriesOutput::new(cfg, vec![cfg.seed], rows, BTreeMap::new()))
}

fn regular_vs_irregular(cfg: &ExperimentConfig) -> Result<SeriesOutput> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let seq = optimal_degree_sequence(cfg.n, cfg.edges)?;
    let regular = realize_degree_sequence(&seq, &mut rng)?;
    let irregular: Vec<Graph> = (0..cfg.graphs)
        .map(|_| random_irregular_graph(cfg.n, cfg.edges, &mut rng))
        .collect::<netcoord::Result<_>>()?;
    let grid = cfg.beta_grid.values();

    let reg_dos = DensityOfStates::of(&regular)?;
    let reg: Vec<f64> = grid.iter().map(|&b| reg_dos.prob_star(cfg.theta, b)).collect();
    let irr: Vec<Vec<f64>> = irregular
        .par_iter()
        .map(|g| {
            let dos = DensityOfStates::of(g)?;
            Ok(grid.iter().map(|&b| dos.prob_star(cfg.theta, b)).collect())
        })
        .collect::<Result<_>>()?;

    let mut rows = Vec::new();
    let mut wins = 0usize;
    let mut contests = 0usize;
    for (t, &b) in grid.iter().enumerate() {
        let column: Vec<f64> = irr.iter().map(|v| v[t]).collect();
        let mean = column.iter().sum::<f64>() / column.len() as f64;
        let max = column.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        rows.push(Row::new(b, reg[t], "regular"));
        rows.push(Row::new(b, mean, "irregular-mean"));
        rows.push(Row::new(b, max, "irregular-max"));
        if b > 0.0 {
            contests += column.len();
            wins += column.iter().filter(|&&mu| reg[t] > mu).count();
        }
    }
    let mut summary = BTreeMap::new();
    summary.insert("regular-win-fraction".into(), if contests == 0 { 1.0 } else { wins as f64 / contests as f64 });
    summary.insert("regular-degree-variance".into(), regular.degree_variance());
    Ok(SeriesOutput::new(cfg, vec![cfg.seed], rows, summary))
}

fn clt_histogram(cfg: &ExperimentConfig) -> Result<SeriesOutput> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let graphs: Vec<(String, Graph)> = match load_graph(cfg)? {
        Some(g) => vec![("file".into(), g)],
        None => cfg
            .n_list
            .iter()
            .map(|&n| {
                let p = (10.0 / n as f64).min(1.0);
                Ok((format!("n={n}"), erdos_renyi(n, p, &mut rng)?))
            })
            .collect::<Result<_>>()?,
    };
    let (lo, hi) = (-4.0, 4.0);
    let width = (hi - lo) / cfg.bins as f64;
    let centers: Vec<f64> = (0..cfg.bins).map(|b| lo + width * (b as f64 + 0.5)).collect();

    let mut rows = Vec::new();
    let mut summary = BTreeMap::new();
    for (label, g) in &graphs {
        let z = standardized_potential_samples(g, cfg.theta, &mut rng, cfg.samples)
            .with_context(|| format!("sampling {label}"))?;
        let mut counts = vec![0usize; cfg.bins];
        for &v in &z {
            if (lo..hi).contains(&v) {
                counts[((v - lo) / width) as usize] += 1;
            }
        }
        for (c, &k) in centers.iter().zip(&counts) {
            rows.push(Row::new(*c, k as f64 / (z.len() as f64 * width), label.clone()));
        }
        let sigma2 = potential_variance(g, cfg.theta).sigma2;
        summary.insert(format!("ks {label}"), ks_statistic_normal(&z));
        summary.insert(format!("max-degree-ratio {label}"), g.max_degree() as f64 / sigma2.sqrt());
        summary.insert(
            format!("degree-sum-ratio {label}"),
            g.degree_sequence().sum_of_squares() as f64 / sigma2,
        );
    }
    for &c in &centers {
        rows.push(Row::new(c, (-0.5 * c * c).exp() / (2.0 * std::f64::consts::PI).sqrt(), "normal"));
    }
    Ok(SeriesOutput::new(cfg, vec![cfg.seed], rows, summary))
}

/// Ordinary least squares `y ≈ slope·x + intercept`.
pub fn least_squares(points: &[(f64, f64)]) -> (f64, f64) {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

fn poi_scatter(cfg: &ExperimentConfig) -> Result<SeriesOutput> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut jobs = Vec::new();
    for &n in &cfg.n_list {
        let m = cfg.edge_factor * n;
        let regular = realize_degree_sequence(&optimal_degree_sequence(n, m)?, &mut rng)?;
        for _ in 0..cfg.graphs {
            jobs.push((n, regular.clone(), random_irregular_graph(n, m, &mut rng)?));
        }
    }
    let results = jobs
        .par_iter()
        .map(|(n, reg, irr)| Ok((*n, price_of_irregularity(reg, irr, cfg.theta, cfg.beta)?)))
        .collect::<Result<Vec<_>>>()?;

    let mut rows = Vec::new();
    for &n in &cfg.n_list {
        for (_, r) in results.iter().filter(|(k, _)| *k == n) {
            rows.push(Row::new(n as f64 * r.degree_variance, r.exact_poi, format!("exact n={n}")));
        }
        for (_, r) in results.iter().filter(|(k, _)| *k == n) {
            rows.push(Row::new(n as f64 * r.degree_variance, r.approx_poi, format!("approx n={n}")));
        }
    }
    let points: Vec<(f64, f64)> =
        results.iter().map(|(n, r)| (*n as f64 * r.degree_variance, r.exact_poi)).collect();
    let (slope, intercept) = least_squares(&points);
    let c = ising_c(cfg.theta);
    let mut summary = BTreeMap::new();
    summary.insert("slope".into(), slope);
    summary.insert("intercept".into(), intercept);
    summary.insert("predicted-slope".into(), cfg.beta * cfg.beta * c * c / 2.0);
    Ok(SeriesOutput::new(cfg, vec![cfg.seed], rows, summary))
}

type Check = (&'static str, fn(&mut ChaCha8Rng) -> netcoord::Result<bool>);

const CHECKS: &[Check] = &[
    ("exact-potential", check_exact_potential),
    ("corrupted-potential-rejected", check_corrupted_potential),
    ("stationarity", check_stationarity),
    ("detailed-balance", check_detailed_balance),
    ("spin-binary-agreement", check_spin_binary),
    ("monotone-in-beta", check_monotone_beta),
    ("edge-augmentation", check_edge_augmentation),
    ("sigmoid-bound", check_sigmoid_bound),
    ("spectral-bound-regular", check_spectral_bound),
    ("beta-min-below-bound", check_beta_min_bound),
    ("variance-identity", check_variance_identity),
    ("lll-agreement", check_lll_agreement),
];

fn verify_suite(cfg: &ExperimentConfig) -> Result<SeriesOutput> {
    let outcomes: Vec<bool> = CHECKS
        .par_iter()
        .enumerate()
        .map(|(i, (_, check))| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(i as u64));
            check(&mut rng).unwrap_or(false)
        })
        .collect();
    let rows = CHECKS
        .iter()
        .zip(&outcomes)
        .enumerate()
        .map(|(i, ((name, _), &ok))| Row::new(i as f64, if ok { 1.0 } else { 0.0 }, *name))
        .collect();
    let passed = outcomes.iter().filter(|&&ok| ok).count();
    let mut summary = BTreeMap::new();
    summary.insert("passed".into(), passed as f64);
    summary.insert("failed".into(), (outcomes.len() - passed) as f64);
    Ok(SeriesOutput::new(cfg, vec![cfg.seed], rows, summary))
}

fn random_graph(rng: &mut ChaCha8Rng, lo: usize, hi: usize) -> netcoord::Result<Graph> {
    let n = rng.gen_range(lo..=hi);
    let m = rng.gen_range(n - 1..=n * (n - 1) / 2);
    random_connected_graph(n, m, rng)
}

fn check_exact_potential(rng: &mut ChaCha8Rng) -> netcoord::Result<bool> {
    for _ in 0..10 {
        let g = random_graph(rng, 3, 9)?;
        let theta = rng.gen_range(-1.0..2.0);
        if !verify_exact_potential(&g, theta, PotentialKind::Reduced)?
            || !verify_exact_potential(&g, theta, PotentialKind::Full)?
        {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_corrupted_potential(_: &mut ChaCha8Rng) -> netcoord::Result<bool> {
    let g = Graph::path(4)?;
    // drops the −θ Σ d_i a_i term
    let ok = verify_exact_potential_with(&g, 0.3, |a| potential(&g, a, 0.0, PotentialKind::Reduced))?;
    Ok(!ok)
}

fn stationary_pair(rng: &mut ChaCha8Rng) -> netcoord::Result<(Graph, Vec<f64>, netcoord::TransitionMatrix)> {
    let g = random_graph(rng, 3, 8)?;
    let beta = [0.5, 1.0, 2.0][rng.gen_range(0..3)];
    let mu = exact_gibbs(&g, 0.3, beta)?.probabilities();
    let p = transition_matrix(&g, 0.3, beta)?;
    Ok((g, mu, p))
}

fn check_stationarity(rng: &mut ChaCha8Rng) -> netcoord::Result<bool> {
    for _ in 0..5 {
        let (_, mu, p) = stationary_pair(rng)?;
        let next = p.left_multiply(&mu)?;
        if mu.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum::<f64>() >= 1e-10 {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_detailed_balance(rng: &mut ChaCha8Rng) -> netcoord::Result<bool> {
    for _ in 0..5 {
        let (g, mu, p) = stationary_pair(rng)?;
        for a in 0..mu.len() {
            for i in 0..g.n() {
                let b = a ^ (1 << i);
                if (mu[a] * p.get(a, b) - mu[b] * p.get(b, a)).abs() >= 1e-10 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn check_spin_binary(rng: &mut ChaCha8Rng) -> netcoord::Result<bool> {
    let g = random_graph(rng, 4, 9)?;
    let a = exact_gibbs(&g, 0.3, 1.2)?.probabilities();
    let s = exact_gibbs_ising(&g, 0.3, 1.2)?.probabilities();
    Ok(a.iter().zip(&s).all(|(x, y)| (x - y).abs() <= 1e-12))
}

fn check_monotone_beta(rng: &mut ChaCha8Rng) -> netcoord::Result<bool> {
    for _ in 0..5 {
        let g = random_graph(rng, 3, 10)?;
        let dos = DensityOfStates::of(&g)?;
        let values: Vec<f64> = (0..=30).map(|k| dos.prob_star(0.3, 0.1 * k as f64)).collect();
        if values.windows(2).any(|w| w[1] <= w[0] && w[1] < 1.0 - 1e-9) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_edge_augmentation(rng: &mut ChaCha8Rng) -> netcoord::Result<bool> {
    let mut g = random_spanning_tree(9, rng)?;
    let mut last = DensityOfStates::of(&g)?.prob_star(0.3, 1.0);
    for _ in 0..10 {
        let &(i, j) = g.non_edges().choose(rng).expect("not complete");
        g = g.add_edge_successor(i, j)?;
        let mu = DensityOfStates::of(&g)?.prob_star(0.3, 1.0);
        if mu <= last {
            return Ok(false);
        }
        last = mu;
    }
    Ok(true)
}

fn check_sigmoid_bound(rng: &mut ChaCha8Rng) -> netcoord::Result<bool> {
    let g = build_k_regular(12, 5, Some(rng.gen()))?;
    let dos = DensityOfStates::of(&g)?;
    Ok((0..=20).all(|k| {
        let beta = 0.2 * k as f64;
        sigmoid_lower_bound_regular(5, 12, 0.3, beta) <= dos.prob_star(0.3, beta)
    }))
}

fn check_spectral_bound(rng: &mut ChaCha8Rng) -> netcoord::Result<bool> {
    for k in [3usize, 4, 6] {
        let g = build_k_regular(12, k, Some(rng.gen()))?;
        let dos = DensityOfStates::of(&g)?;
        for b in 0..=20 {
            let beta = 0.2 * b as f64;
            if spectral_lower_bound(&g, 0.7, beta)? > dos.prob_star(0.7, beta) + 1e-15 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn check_beta_min_bound(_: &mut ChaCha8Rng) -> netcoord::Result<bool> {
    for k in [3usize, 6, 9] {
        let g = build_k_regular(12, k, None)?;
        if beta_min(&g, 0.3, 0.1, DEFAULT_BETA_TOL)?.beta_min > beta_min_upper_bound(k, 12, 0.3, 0.1)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_variance_identity(rng: &mut ChaCha8Rng) -> netcoord::Result<bool> {
    let g = random_graph(rng, 4, 10)?;
    let theta = rng.gen_range(0.0..1.0);
    let values: Vec<f64> = (0..1u64 << g.n())
        .map(|i| netcoord::game::ising_potential(&g, &SpinProfile::from(&ActionProfile::from_index(g.n(), i)), theta))
        .collect();
    let len = values.len() as f64;
    let mean = values.iter().sum::<f64>() / len;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / len;
    let sigma2 = potential_variance(&g, theta).sigma2;
    Ok((var - sigma2).abs() <= 1e-9 * sigma2)
}

fn check_lll_agreement(rng: &mut ChaCha8Rng) -> netcoord::Result<bool> {
    let g = Graph::cycle(6)?;
    let cfg = ChainConfig::with_samples(&g, 1.0, 1_000_000, rng.gen());
    let h = simulate(&g, 0.3, 1.0, &cfg)?;
    let exact = exact_gibbs(&g, 0.3, 1.0)?.probabilities();
    Ok(tv_distance(&h.probabilities()?, &exact)? < 0.02)
}

pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|(name, _)| *name).collect()
}
