use std::collections::BinaryHeap;
use std::cmp::Reverse;

use rand::seq::index;
use rand::Rng;

use super::Graph;
use crate::error::{Error, Result};

/// Uniform random labelled spanning tree of `K_n` (random Prüfer code).
pub fn random_spanning_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Graph> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if n <= 2 {
        return Graph::path(n);
    }
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut remaining = vec![1usize; n];
    for &c in &code {
        remaining[c] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| remaining[v] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &c in &code {
        let Reverse(leaf) = leaves.pop().expect("Prüfer decoding always has a leaf");
        edges.push((leaf, c));
        remaining[c] -= 1;
        if remaining[c] == 1 {
            leaves.push(Reverse(c));
        }
    }
    let Reverse(u) = leaves.pop().expect("two leaves left");
    let Reverse(v) = leaves.pop().expect("two leaves left");
    edges.push((u, v));
    Graph::from_edges(n, edges)
}

/// Connected graph with exactly `m` edges: a uniform random spanning tree
/// plus `m - n + 1` distinct non-edges chosen uniformly.
///
/// The result is not uniform over connected graphs with `m` edges; trees are
/// over-represented relative to that distribution.
pub fn random_connected_graph<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Result<Graph> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let max = n * (n - 1) / 2;
    if m + 1 < n || m > max {
        return Err(Error::EdgeCountOutOfRange { n, m });
    }
    let tree = random_spanning_tree(n, rng)?;
    let extra = m + 1 - n;
    let candidates = tree.non_edges();
    let picked = index::sample(rng, candidates.len(), extra);
    let edges = tree.edges().iter().copied().chain(picked.iter().map(|k| candidates[k]));
    let g = Graph::from_edges(n, edges)?;
    debug_assert_eq!(g.edge_count(), m);
    Ok(g)
}

/// `G(n, p)`: each pair is an edge independently with probability `p`.
/// Connectivity is not enforced.
pub fn erdos_renyi<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Precondition(format!("edge probability {p} outside [0, 1]")));
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn tree_when_m_is_n_minus_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let g = random_connected_graph(5, 4, &mut rng).unwrap();
            assert_eq!(g.edge_count(), 4);
            assert!(g.is_connected());
        }
    }

    #[test]
    fn complete_when_m_is_max() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        assert_eq!(random_connected_graph(5, 10, &mut rng).unwrap(), Graph::complete(5).unwrap());
    }

    #[test]
    fn fourteen_forty_two() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let g = random_connected_graph(14, 42, &mut rng).unwrap();
            let mut deg = vec![0usize; 14];
            for &(i, j) in g.edges() {
                deg[i] += 1;
                deg[j] += 1;
            }
            assert_eq!(deg.iter().sum::<usize>(), 84);
            assert_eq!(deg, g.degrees());
            assert!(g.is_connected());
            assert!(g.degree_variance() >= 0.0);
        }
    }

    #[test]
    fn edge_count_out_of_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(
            random_connected_graph(5, 3, &mut rng),
            Err(Error::EdgeCountOutOfRange { n: 5, m: 3 })
        );
        assert_eq!(
            random_connected_graph(5, 11, &mut rng),
            Err(Error::EdgeCountOutOfRange { n: 5, m: 11 })
        );
    }

    #[test]
    fn spanning_tree_is_a_tree() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 1..30 {
            let t = random_spanning_tree(n, &mut rng).unwrap();
            assert_eq!(t.edge_count(), n - 1);
            assert!(t.is_connected());
        }
    }

    #[test]
    fn erdos_renyi_extremes() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(erdos_renyi(8, 0.0, &mut rng).unwrap().edge_count(), 0);
        assert_eq!(erdos_renyi(8, 1.0, &mut rng).unwrap(), Graph::complete(8).unwrap());
        assert!(erdos_renyi(8, 1.5, &mut rng).is_err());
    }

    #[test]
    fn erdos_renyi_mean_degree() {
        let n = 1024;
        let p = 10.0 / n as f64;
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let seeds = 20;
        let total: usize = (0..seeds)
            .map(|_| erdos_renyi(n, p, &mut rng).unwrap().edge_count())
            .sum();
        let mean_degree = 2.0 * total as f64 / (seeds * n) as f64;
        let expected = p * (n - 1) as f64;
        // sd of the pooled mean degree is about sqrt(expected / (seeds * n)) ~ 0.022
        assert!((mean_degree - expected).abs() < 0.1, "{mean_degree} vs {expected}");
    }
}
