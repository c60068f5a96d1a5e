//! Plain-text edge lists: a header line `n m`, then `m` lines `i j` with
//! 0-based vertex indices separated by whitespace.

use std::io::{BufRead, Write};

use super::Graph;
use crate::error::{Error, Result};

fn parse_pair(line: &str, lineno: usize) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace();
    let mut next = |what: &str| -> Result<usize> {
        it.next()
            .ok_or_else(|| Error::Parse { line: lineno, msg: format!("missing {what}") })?
            .parse()
            .map_err(|e| Error::Parse { line: lineno, msg: format!("bad {what}: {e}") })
    };
    let a = next("first field")?;
    let b = next("second field")?;
    if it.next().is_some() {
        return Err(Error::Parse { line: lineno, msg: "trailing fields".into() });
    }
    Ok((a, b))
}

pub fn read_edge_list<R: BufRead>(reader: R) -> Result<Graph> {
    let mut lines = reader
        .lines()
        .enumerate()
        .map(|(k, l)| l.map(|l| (k + 1, l)))
        .filter(|r| r.as_ref().map_or(true, |(_, l)| !l.trim().is_empty()));
    let io_err = |e: std::io::Error| Error::Parse { line: 0, msg: e.to_string() };

    let (lineno, header) = lines
        .next()
        .ok_or(Error::Parse { line: 1, msg: "missing header".into() })?
        .map_err(io_err)?;
    let (n, m) = parse_pair(&header, lineno)?;
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (lineno, line) = lines
            .next()
            .ok_or(Error::Parse { line: lineno + edges.len() + 1, msg: "too few edges".into() })?
            .map_err(io_err)?;
        let (i, j) = parse_pair(&line, lineno)?;
        if i == j {
            return Err(Error::SelfLoop(i));
        }
        if i >= n || j >= n {
            return Err(Error::VertexOutOfRange { vertex: i.max(j), n });
        }
        edges.push((i, j));
    }
    if let Some(extra) = lines.next() {
        let (lineno, _) = extra.map_err(io_err)?;
        return Err(Error::Parse { line: lineno, msg: "more edges than declared".into() });
    }
    Graph::from_edges(n, edges)
}

pub fn write_edge_list<W: Write>(g: &Graph, mut w: W) -> std::io::Result<()> {
    writeln!(w, "{} {}", g.n(), g.edge_count())?;
    for &(i, j) in g.edges() {
        writeln!(w, "{i} {j}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::random_connected_graph;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn reads_triangle() {
        let g = read_edge_list("3 3\n0 1\n1 2\n2 0\n".as_bytes()).unwrap();
        assert_eq!(g, Graph::complete(3).unwrap());
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(read_edge_list("3 1\n1 1\n".as_bytes()), Err(Error::SelfLoop(1)));
        assert_eq!(
            read_edge_list("3 1\n0 3\n".as_bytes()),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        );
        assert!(matches!(read_edge_list("3 2\n0 1\n".as_bytes()), Err(Error::Parse { .. })));
        assert!(matches!(read_edge_list("3 1\n0 x\n".as_bytes()), Err(Error::Parse { .. })));
        assert!(matches!(read_edge_list("3 1\n0 1\n1 2\n".as_bytes()), Err(Error::Parse { .. })));
    }

    proptest! {
        #[test]
        fn write_then_read(n in 2usize..20, extra in 0usize..20, seed in any::<u64>()) {
            let m = (n - 1 + extra).min(n * (n - 1) / 2);
            let g = random_connected_graph(n, m, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
            let mut buf = Vec::new();
            write_edge_list(&g, &mut buf).unwrap();
            prop_assert_eq!(read_edge_list(buf.as_slice()).unwrap(), g);
        }
    }
}
