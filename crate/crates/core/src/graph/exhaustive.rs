use super::Graph;
use crate::error::{Error, Result};

/// Largest vertex count accepted by [`connected_graphs`].
pub const EXHAUSTIVE_MAX_N: usize = 7;

/// Every connected labelled graph on `n` vertices with `m` edges.
pub fn connected_graphs(n: usize, m: usize) -> Result<Vec<Graph>> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if n > EXHAUSTIVE_MAX_N {
        return Err(Error::TooLarge { n, cap: EXHAUSTIVE_MAX_N });
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    if m > pairs.len() {
        return Err(Error::EdgeCountOutOfRange { n, m });
    }
    let p = pairs.len();
    let mut out = Vec::new();
    if m == 0 {
        let g = Graph::empty(n)?;
        if g.is_connected() {
            out.push(g);
        }
        return Ok(out);
    }
    // Gosper's hack over m-subsets of the pair list
    let mut set: u64 = (1 << m) - 1;
    let limit: u64 = 1 << p;
    while set < limit {
        let g = Graph::from_edges(n, (0..p).filter(|&b| set >> b & 1 == 1).map(|b| pairs[b]))?;
        if g.is_connected() {
            out.push(g);
        }
        let c = set & set.wrapping_neg();
        let r = set + c;
        set = (((r ^ set) >> 2) / c) | r;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_counts() {
        // labelled connected graphs: trees on 4 vertices (Cayley 4^2), 6-vertex 9-edge count
        assert_eq!(connected_graphs(4, 3).unwrap().len(), 16);
        assert_eq!(connected_graphs(3, 3).unwrap().len(), 1);
        assert_eq!(connected_graphs(4, 2).unwrap().len(), 0);
        assert_eq!(connected_graphs(6, 9).unwrap().len(), 4945);
        assert_eq!(connected_graphs(1, 0).unwrap().len(), 1);
    }

    #[test]
    fn all_distinct_and_sized() {
        let gs = connected_graphs(5, 6).unwrap();
        let mut edges: Vec<_> = gs.iter().map(|g| g.edges().to_vec()).collect();
        edges.sort();
        edges.dedup();
        assert_eq!(edges.len(), gs.len());
        assert!(gs.iter().all(|g| g.edge_count() == 6 && g.is_connected()));
    }

    #[test]
    fn too_large() {
        assert_eq!(connected_graphs(8, 10).unwrap_err(), Error::TooLarge { n: 8, cap: 7 });
    }
}
