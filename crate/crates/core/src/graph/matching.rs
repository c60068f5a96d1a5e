//! Maximum-cardinality matching in general graphs (Edmonds' blossom
//! algorithm, O(V^3)).

use std::collections::VecDeque;

const NONE: usize = usize::MAX;

/// A set of vertex-disjoint pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    n: usize,
    mate: Vec<usize>,
}

impl Matching {
    /// Pairs `(u, v)` with `u < v`, sorted.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .filter(|&u| self.mate[u] != NONE && u < self.mate[u])
            .map(|u| (u, self.mate[u]))
            .collect()
    }

    pub fn mate(&self, v: usize) -> Option<usize> {
        (self.mate[v] != NONE).then_some(self.mate[v])
    }

    pub fn len(&self) -> usize {
        self.mate.iter().filter(|&&m| m != NONE).count() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Covers every vertex.
    pub fn is_perfect(&self) -> bool {
        self.mate.iter().all(|&m| m != NONE)
    }
}

struct Blossom<'a> {
    adj: &'a [Vec<usize>],
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl Blossom<'_> {
    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut on_path = vec![false; self.adj.len()];
        loop {
            a = self.base[a];
            on_path[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if on_path[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// BFS for an augmenting path from `root`; returns its free endpoint.
    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.adj.len();
        self.used.iter_mut().for_each(|u| *u = false);
        self.parent.iter_mut().for_each(|p| *p = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);

        while let Some(v) = self.queue.pop_front() {
            for idx in 0..self.adj[v].len() {
                let to = self.adj[v][idx];
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|b| *b = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    self.queue.push_back(next);
                }
            }
        }
        None
    }
}

/// Maximum-cardinality matching of the graph given by adjacency lists.
/// Neighbor order affects which maximum matching is returned.
pub fn maximum_matching(adj: &[Vec<usize>]) -> Matching {
    let n = adj.len();
    let mut state = Blossom {
        adj,
        mate: vec![NONE; n],
        parent: vec![NONE; n],
        base: (0..n).collect(),
        used: vec![false; n],
        in_blossom: vec![false; n],
        queue: VecDeque::new(),
    };

    // greedy warm start
    for v in 0..n {
        if state.mate[v] == NONE {
            if let Some(&w) = adj[v].iter().find(|&&w| state.mate[w] == NONE && w != v) {
                state.mate[v] = w;
                state.mate[w] = v;
            }
        }
    }

    for root in 0..n {
        if state.mate[root] != NONE {
            continue;
        }
        if let Some(mut v) = state.find_path(root) {
            while v != NONE {
                let pv = state.parent[v];
                let next = state.mate[pv];
                state.mate[v] = pv;
                state.mate[pv] = v;
                v = next;
            }
        }
    }
    Matching { n, mate: state.mate }
}
