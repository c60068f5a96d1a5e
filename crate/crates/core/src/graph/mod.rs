//! Undirected simple interaction graphs.
//!
//! Vertices are `0..n`. A [`Graph`] is immutable once built; every
//! constructor goes through [`Graph::from_edges`], which rejects self-loops
//! and out-of-range endpoints and silently merges duplicate edges.

mod edgelist;
mod exhaustive;
mod matching;
mod random;
mod regular;
mod spectral;

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use edgelist::{read_edge_list, write_edge_list};
pub use exhaustive::{connected_graphs, EXHAUSTIVE_MAX_N};
pub use matching::{maximum_matching, Matching};
pub use random::{erdos_renyi, random_connected_graph, random_spanning_tree};
pub use regular::{augment_regular, build_k_regular};
pub use spectral::DEFAULT_SPECTRAL_TOL;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    /// Sorted, each pair stored once with `i < j`.
    edges: Vec<(usize, usize)>,
    /// Sorted neighbor lists.
    adjacency: Vec<Vec<usize>>,
    degrees: Vec<usize>,
}

impl Graph {
    /// Builds a graph on `n` vertices. Edges are unordered; `(i, j)` and
    /// `(j, i)` are the same edge and repeats are merged.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut normalized = Vec::new();
        for (i, j) in edges {
            for v in [i, j] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            if i == j {
                return Err(Error::SelfLoop(i));
            }
            normalized.push((i.min(j), i.max(j)));
        }
        normalized.sort_unstable();
        normalized.dedup();

        let mut adjacency = vec![Vec::new(); n];
        for &(i, j) in &normalized {
            adjacency[i].push(j);
            adjacency[j].push(i);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        let degrees = adjacency.iter().map(Vec::len).collect();
        let g = Graph { n, edges: normalized, adjacency, degrees };
        debug_assert_eq!(g.degrees.iter().sum::<usize>(), 2 * g.edges.len());
        Ok(g)
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::from_edges(n, std::iter::empty())
    }

    pub fn complete(n: usize) -> Result<Self> {
        Self::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
    }

    pub fn path(n: usize) -> Result<Self> {
        Self::from_edges(n, (1..n).map(|i| (i - 1, i)))
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Precondition(format!("cycle needs n >= 3, got {n}")));
        }
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// Star `K_{1, n-1}` centred at vertex 0.
    pub fn star(n: usize) -> Result<Self> {
        Self::from_edges(n, (1..n).map(|i| (0, i)))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    #[inline]
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    #[inline]
    pub fn degree(&self, i: usize) -> usize {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn degree_sequence(&self) -> DegreeSequence {
        DegreeSequence { degrees: self.degrees.clone() }
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i < self.n && j < self.n && self.adjacency[i].binary_search(&j).is_ok()
    }

    /// `Some(k)` when every vertex has degree `k`.
    pub fn regular_degree(&self) -> Option<usize> {
        let k = self.degrees[0];
        self.degrees.iter().all(|&d| d == k).then_some(k)
    }

    /// Population variance of the degree sequence.
    pub fn degree_variance(&self) -> f64 {
        self.degree_sequence().variance()
    }

    /// Pairs `(i, j)`, `i < j`, that are not edges.
    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            let mut nbrs = self.adjacency[i].iter().copied().peekable();
            for j in i + 1..self.n {
                while nbrs.peek().is_some_and(|&x| x < j) {
                    nbrs.next();
                }
                if nbrs.peek() != Some(&j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn complement(&self) -> Graph {
        Graph::from_edges(self.n, self.non_edges()).expect("complement of a valid graph")
    }

    /// Connected components, each as a sorted vertex list, ordered by
    /// smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adjacency[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// True iff a traversal from vertex 0 reaches every vertex.
    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut stack = vec![0];
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// The successor graph obtained by adding the single edge `(i, j)`.
    pub fn add_edge_successor(&self, i: usize, j: usize) -> Result<Graph> {
        for v in [i, j] {
            if v >= self.n {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
            }
        }
        if i == j {
            return Err(Error::SelfLoop(i));
        }
        if self.has_edge(i, j) {
            return Err(Error::EdgeExists(i.min(j), i.max(j)));
        }
        Graph::from_edges(self.n, self.edges.iter().copied().chain([(i, j)]))
    }

    /// Returns the graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::SizeMismatch(perm.len(), self.n));
        }
        Graph::from_edges(self.n, self.edges.iter().map(|&(i, j)| (perm[i], perm[j])))
    }

    /// Largest adjacency eigenvalue, to within `tol`.
    pub fn spectral_radius(&self, tol: f64) -> Result<f64> {
        spectral::spectral_radius(self, tol)
    }

    /// Neighbor sets as bitmasks, for graphs of at most 64 vertices.
    pub(crate) fn neighbor_masks(&self) -> Vec<u64> {
        assert!(self.n <= 64, "bitmask view needs n <= 64");
        self.adjacency
            .iter()
            .map(|nbrs| nbrs.iter().fold(0u64, |m, &j| m | (1u64 << j)))
            .collect()
    }
}

/// Integer degree vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DegreeSequence {
    degrees: Vec<usize>,
}

impl DegreeSequence {
    /// Checks the even-sum and `d_i <= n - 1` invariants.
    pub fn new(degrees: Vec<usize>) -> Result<Self> {
        let n = degrees.len();
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        if let Some(&d) = degrees.iter().find(|&&d| d >= n) {
            return Err(Error::DegreeOutOfRange { n, k: d });
        }
        if degrees.iter().sum::<usize>() % 2 != 0 {
            return Err(Error::Precondition("degree sum is odd".into()));
        }
        Ok(Self { degrees })
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn sum(&self) -> usize {
        self.degrees.iter().sum()
    }

    pub fn sum_of_squares(&self) -> usize {
        self.degrees.iter().map(|d| d * d).sum()
    }

    /// Population variance `(1/n) sum d_i^2 - mean^2`.
    pub fn variance(&self) -> f64 {
        let n = self.degrees.len() as f64;
        let mean = self.sum() as f64 / n;
        self.sum_of_squares() as f64 / n - mean * mean
    }

    /// Erdős–Gallai test.
    pub fn is_graphical(&self) -> bool {
        let mut d = self.degrees.clone();
        if d.iter().sum::<usize>() % 2 != 0 {
            return false;
        }
        d.sort_unstable_by(|a, b| b.cmp(a));
        let n = d.len();
        let mut prefix = 0usize;
        for k in 1..=n {
            prefix += d[k - 1];
            let tail: usize = d[k..].iter().map(|&x| x.min(k)).sum();
            if prefix > k * (k - 1) + tail {
                return false;
            }
        }
        true
    }
}
