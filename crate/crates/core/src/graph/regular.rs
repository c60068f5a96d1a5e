use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{maximum_matching, Graph};
use crate::error::{Error, Result};

/// Connected `k`-regular circulant graph: vertex `i` is joined to
/// `i ± 1, …, i ± ⌊k/2⌋ (mod n)`, plus the antipode `i + n/2` when `k` is odd.
///
/// With a seed the vertex labels are shuffled.
pub fn build_k_regular(n: usize, k: usize, seed: Option<u64>) -> Result<Graph> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if k >= n {
        return Err(Error::DegreeOutOfRange { n, k });
    }
    if (n * k) % 2 != 0 {
        return Err(Error::ParityViolation { n, k });
    }
    if n > 1 && (k == 0 || (k == 1 && n > 2)) {
        return Err(Error::DisconnectedRequest { n, k });
    }

    let mut offsets: Vec<usize> = (1..=k / 2).collect();
    if k % 2 == 1 {
        offsets.push(n / 2);
    }
    let edges = (0..n).flat_map(|i| offsets.iter().map(move |&o| (i, (i + o) % n)));
    let g = Graph::from_edges(n, edges)?;

    let g = match seed {
        Some(seed) => {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            g.relabel(&perm)?
        }
        None => g,
    };
    debug_assert_eq!(g.regular_degree(), Some(k));
    Ok(g)
}

/// Raises the degree of a connected `k`-regular graph using edges of its
/// complement.
///
/// For even `n` a perfect matching of the complement is added, giving a
/// `(k+1)`-regular graph. For odd `n` (where `k` is even and `k+1` is
/// impossible) a 2-factor of the complement is added, giving a
/// `(k+2)`-regular graph.
///
/// Fails with [`Error::NoComplementMatching`] when the complement of an
/// even-order graph has no perfect matching (e.g. `K_{3,3}`, whose complement
/// is two triangles).
pub fn augment_regular<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> Result<Graph> {
    let n = g.n();
    let k = g.regular_degree().ok_or(Error::NotRegular)?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }

    // Randomise the labelling seen by the matcher so repeated calls can
    // explore different augmentations.
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut inverse = vec![0; n];
    for (v, &p) in perm.iter().enumerate() {
        inverse[p] = v;
    }
    let comp = g.complement().relabel(&perm)?;
    let mut adj: Vec<Vec<usize>> = (0..n).map(|v| comp.neighbors(v).to_vec()).collect();
    for list in &mut adj {
        list.shuffle(rng);
    }

    let added: Vec<(usize, usize)> = if n % 2 == 0 {
        if k + 1 >= n {
            return Err(Error::Precondition(format!(
                "{k}-regular graph on {n} vertices is already complete"
            )));
        }
        let m = maximum_matching(&adj);
        if !m.is_perfect() {
            return Err(Error::NoComplementMatching);
        }
        m.pairs()
    } else {
        if k % 2 != 0 || k + 2 >= n {
            return Err(Error::Precondition(format!(
                "odd n = {n} needs even k < n - 2, got k = {k}"
            )));
        }
        two_factor(&adj)?
    };

    let edges = g
        .edges()
        .iter()
        .copied()
        .chain(added.into_iter().map(|(u, v)| (inverse[u], inverse[v])));
    let out = Graph::from_edges(n, edges)?;
    let step = if n % 2 == 0 { 1 } else { 2 };
    if out.regular_degree() != Some(k + step) {
        return Err(Error::Precondition("augmentation did not produce a regular graph".into()));
    }
    Ok(out)
}

/// Spanning 2-regular subgraph of a graph whose degrees are all even and
/// positive (Petersen): orient the edges along Euler circuits so every vertex
/// has equal in- and out-degree, then perfectly match out-copies to in-copies
/// in the resulting regular bipartite graph. Each vertex gets one successor,
/// and no 2-cycles arise because every undirected edge is oriented once.
fn two_factor(adj: &[Vec<usize>]) -> Result<Vec<(usize, usize)>> {
    let n = adj.len();
    let arcs = euler_orientation(adj);
    let mut bip = vec![Vec::new(); 2 * n];
    for &(u, v) in &arcs {
        bip[u].push(n + v);
        bip[n + v].push(u);
    }
    let m = maximum_matching(&bip);
    if !m.is_perfect() {
        return Err(Error::NoComplementMatching);
    }
    Ok((0..n)
        .map(|u| {
            let v = m.mate(u).expect("perfect") - n;
            (u, v)
        })
        .collect())
}

/// Orients every edge of an even-degree graph along Euler circuits
/// (Hierholzer), one circuit per component.
fn euler_orientation(adj: &[Vec<usize>]) -> Vec<(usize, usize)> {
    let n = adj.len();
    // Edge ids for each undirected edge; incidence lists reference them.
    let mut incidence: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    let mut edge_count = 0;
    for u in 0..n {
        for &v in &adj[u] {
            if u < v {
                incidence[u].push((v, edge_count));
                incidence[v].push((u, edge_count));
                edge_count += 1;
            }
        }
    }
    let mut used = vec![false; edge_count];
    let mut next = vec![0usize; n];
    let mut arcs = Vec::with_capacity(edge_count);

    for start in 0..n {
        // Iterative Hierholzer; arcs recorded as (from, to) when traversed.
        let mut stack = vec![start];
        while let Some(&v) = stack.last() {
            let mut advanced = false;
            while next[v] < incidence[v].len() {
                let (w, id) = incidence[v][next[v]];
                next[v] += 1;
                if !used[id] {
                    used[id] = true;
                    arcs.push((v, w));
                    stack.push(w);
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                stack.pop();
            }
        }
    }
    arcs
}
